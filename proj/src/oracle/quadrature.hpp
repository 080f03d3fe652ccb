// Quadrature and exact-primitive cross-checks of the inverse-operator
// coefficients, and the Gaussian pair-moment table.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "../model_op.hpp"
#include "../term.hpp"

namespace bergex {

// recursive adaptive Simpson
double adaptiveQuad(const std::function<double(double)>& f, double a, double b, double tol,
                    int maxDepth = 40);

struct QuadratureTask {
  std::vector<int> J, K;  // concrete coordinate indices (1-based)
  int p = 0;              // input exponential scale e^{4 p tk}
  double tk = 30;
  double tol = 1e-6;
};

struct QuadComparison {
  double maxRelErr;
  bool pass;
  std::string detail;
};

// Evaluate the exact time integral (full sinh ratio, exact Gaussian moments)
// for every output monomial of the asymptotic inverse, and compare against
// the symbolic coefficients. Neutral class only.
QuadComparison quadLinv(const QuadratureTask& task, double kValue = 1024);

// Gaussian pair moments up to total degree `maxDeg` versus 2-D quadrature.
QuadComparison wickTableVsQuadrature(int maxDeg, double tol = 1e-9);

// Exact exponential-polynomial iteration of the raising chains: the top
// coefficient of (-Linv 2 e^{4kt})^a e^{4 p tk} must equal the double
// factorial closed form; returns the largest rational deviation (exact zero
// when correct) plus a numeric bound on the discarded scales at tk.
struct IterateCheck {
  bool exactMatch;
  double subleadingRatio;  // magnitude of dropped scales relative to the top
};
IterateCheck exactExponentialIterate(int a, int p, double tk);

// Numeric evaluation of a composition chain by nested quadrature; pieces are
// multiplication steps (monomial factors with concrete indices times
// 2 e^{4kt} wedge-words factored out) alternating with the inverse. Returns
// per-monomial relative errors against the symbolic coefficients.
struct ChainPiece {
  std::vector<int> J, K;  // monomial factor indices (1-based)
  double coeff = 2;       // scalar prefactor of the piece
  int expd = 1;           // exponential scale carried by the piece
};
QuadComparison quadChain(const std::vector<ChainPiece>& pieces,
                         const std::vector<std::pair<std::vector<int>, double>>& expected,
                         double tk, double kValue, double tol);

}  // namespace bergex
