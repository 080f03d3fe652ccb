// Cyclic word combinatorics for curvature-trace monomials, and the formal
// verification of the degree-six trace exactness chain.
#pragma once

#include <string>
#include <vector>

#include "rewrite.hpp"

namespace bergex {

struct SurvivorClass {
  std::string rep;  // canonical representative, letters in {P,M,Z} = (2,0),(1,1),(0,2)
  int n20, n11, n02;
  int holoDeg, antiDeg;  // bidegree of the trace form
};

struct ChernSurvey {
  int p;
  std::string preset;
  std::vector<SurvivorClass> survivors;
  int maxF02 = 0;   // over survivors
  int minHolo = 0;  // Hodge filtration level of the surviving trace form
};

// Enumerate length-p cyclic words in the three curvature letters, kill those
// with a preset-vanishing factor in any rotation, and report survivors.
ChernSurvey chernWordSurvey(int p, const Preset& preset);

struct ChainStep {
  std::string name;
  bool pass;
  std::string residual;
};

// Built-in derivation checks; "p6" is the degree-six exactness chain.
std::vector<ChainStep> verifyTraceChain(const std::string& chainId);

}  // namespace bergex
