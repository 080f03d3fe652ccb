// Level-by-level recursion u_{l+1} = -L^{-1}(H u_l), degree/charge block
// extraction, and leading Hilbert-Schmidt / trace coefficients via diagonal
// Gaussian pairing.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hamiltonian.hpp"
#include "model_op.hpp"
#include "rewrite.hpp"
#include "term.hpp"

namespace bergex {

struct ExpansionReport {
  int level = 0;
  int cutoff = 0;
  std::vector<OperatorExpr> u;       // u_0 .. u_level
  std::vector<OperatorExpr> parked;  // boundary-class inputs parked at each step

  // Degree-projected block of u_l. Raises regime_error when a parked
  // boundary-class term would act nontrivially on the requested domain.
  OperatorExpr block(int l, int qout, int qin) const;
  OperatorExpr block(int l, int qout, int qin, int charge) const;
};

ExpansionReport computeU(int level, const HamiltonianData& h, int cutoff);

// One composition chain (-L^{-1} p_n) ... (-L^{-1} p_1) I for explicit
// operator pieces p_i (rightmost acts first).
OperatorExpr chainU(const std::vector<OperatorExpr>& pieces, int cutoff);

// Leading norm data of a diagonal Gaussian pairing. The convention factor
// (2 pi)^{-m} and k^{m} are implicit; coefficient = rational, exponent =
// m + kExpConst.
struct NormCoefficient {
  Rat rational;    // full rational coefficient (2-powers included)
  int kExpConst;   // k-exponent is m + kExpConst
  std::string functional;  // unevaluated local pairing expression (latex)
  std::vector<std::pair<Rat, std::string>> parts;  // block coefficients inside the norm
  std::string note;
};

// <block, block> leading extraction (t pinned to k^{-1/2} regime). qin = 0
// paths only need creation letters; parked terms are checked against qin.
NormCoefficient hsLeading(int qout, int qin, const Preset& preset, const HamiltonianData& h);

// Tr of the level-0 kernel: k^m (2 pi)^{-m} Vol(M) rk(E).
NormCoefficient traceLeading();

// Exact-zero check of the cross pairing of two charge blocks.
bool crossPairingVanishes(const OperatorExpr& a, const OperatorExpr& b);

struct OrderEstimate {
  int kExpConst;     // squared-norm exponent is m + kExpConst
  bool expDecaying;  // flagged when every surviving term is exponentially suppressed
};

// Predicted k-exponent of ||P_{2qout} Pi P_{2qin}||_HS^2 from weight
// bookkeeping, with relation-induced vanishing raising the first surviving
// level.
OrderEstimate orderEstimate(int qout, int qin, const Preset& preset, const HamiltonianData& h);

// Gaussian pairing of two explicit blocks; returns leading terms as a list of
// (rational coeff, k-exp-const, functional) entries aggregated per word pair.
struct PairEntry {
  Rat coeff;
  int kExpConst;
  std::string functional;
};
std::vector<PairEntry> pairBlocks(const OperatorExpr& a, const OperatorExpr& b);

}  // namespace bergex
