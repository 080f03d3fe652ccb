// The perturbation H of the conjugated heat operator, held as explicit term
// data: the weight-0 second-order block H_h, its weight -1 correction, and
// the degree-raising/lowering wedge families with configurable Taylor order.
#pragma once

#include <string>
#include <vector>

#include "term.hpp"

namespace bergex {

struct HDatum {
  std::string tag;  // stable transcription tag, e.g. "hh.12", "dh.3", "cr.zzb"
  Term term;
};

struct HamiltonianData {
  std::vector<HDatum> charge0Terms;      // weight-0 block, charge 0
  std::vector<HDatum> chargePlus2Terms;  // weight-0 block, charge +2
  std::vector<HDatum> chargeMinus2Terms; // weight-0 block, charge -2
  std::vector<HDatum> deltaHTerms;       // weight -1 correction block
  std::vector<HDatum> creation;          // 2 e^{4kt} (wedge family), Taylor data
  std::vector<HDatum> annihilation;      // 2 e^{-4kt} (cowedge family)
  int taylorOrder = 2;
  int weightCutoff = 0;
  bool includeDeltaH = false;

  // Flattened operator (creation/annihilation truncated at #taylorOrder).
  OperatorExpr assemble() const;

  std::vector<const HDatum*> all() const;
};

// Transcribed H. taylorOrder in [0,2]; higher orders raise unsupported_error.
// cutoff <= 0 records the truncation depth of the second-order data
// (remainder entries for the discarded tail).
HamiltonianData buildH(int taylorOrder, int cutoff, bool includeDeltaH = false);

// charge -> component of the assembled operator
std::vector<std::pair<int, OperatorExpr>> chargeSplitH(const HamiltonianData& h);

}  // namespace bergex
