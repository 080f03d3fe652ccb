// The model operator L, its asymptotic inverse on monomial terms, and the
// Gaussian pair-moment machinery shared with norm extraction.
//
// Regime normalization (t < 1, k >> 1, tk >> 1): 1/tanh(tk) -> 1 and
// sinh(tk) -> e^{tk}/2; the exponentially small corrections are deposited in
// the remainder ledger, never dropped silently.
#pragma once

#include "term.hpp"

namespace bergex {

// mu annotation for a monomial term: sinh(tk)^{jDeg+kDeg} e^{(kDeg-jDeg) tk}.
struct MuFactor {
  int jDeg = 0;      // |J|
  int kDeg = 0;      // |K|
  int expShift = 0;  // kDeg - jDeg
};
MuFactor muFactorFor(const Term& t);

// Net exponent of the time integral e^{c(s-tk)}: c = 4*expd + 2*|zbar|.
int decayExponent(const Term& t);

enum class DecayClass { Neutral, Boundary, Decaying };

// Neutral: c > 0 with expd >= 0 (closed form applies at s = tk).
// Decaying: c > 0 but expd < 0 (evaluable, output exponentially suppressed).
// Boundary: c <= 0 (contribution from s = 0; not evaluated in this regime,
// except the exact c = 0 primitive handled inside linvAsymptotic).
DecayClass classifyDecay(const Term& t);
const char* decayName(DecayClass c);

// L(x) in the normalized regime:
//   L(e^{4dkt} t^tau z^J zbar^K W) =
//     k (4d + |J| + |K| + |K| - |J|) (...) + tau t^{tau-1}(...) + Delta_E(...)
// where Delta_E contracts one z against one zbar per output term (factor -4).
OperatorExpr applyL(const OperatorExpr& x);

struct LinvResult {
  OperatorExpr value;     // evaluated part
  OperatorExpr boundary;  // parked terms (boundary class; need s=0 data)
};

// Term-by-term asymptotic inverse. Neutral terms: leading coefficient
// 1/(k c) plus Wick-contraction corrections pairing one z against one zbar,
// each with its own (tk-s)-power integral; t-powers handled exactly. The
// c = 0, expd = 0, |zbar| = 0 case uses the exact primitive (t-branch).
// Boundary terms are parked, never silently evaluated.
LinvResult linvAsymptotic(const OperatorExpr& x, int cutoff);

// Gaussian pair moments of e^{-pi |y|^2}: E[y^J ybar^K] as (rational, piPow)
// with piPow = -(number of pairs); zero unless J and K pair perfectly.
// Indices are concrete small integers here.
struct WickMoment {
  Rat value;  // rational part
  int piPow;  // power of pi (negative)
  bool zero() const { return value == 0; }
};
WickMoment wickMoment(const std::vector<int>& J, const std::vector<int>& K);

}  // namespace bergex
