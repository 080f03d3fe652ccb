// Concrete models: antiholomorphic exterior algebra over C^m tensored with
// r x r complex matrices; curvature atoms evaluated as explicit operators.
#pragma once

#include <complex>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "../term.hpp"

namespace bergex {

using Cx = std::complex<double>;

// dense operator on Lambda^{0,*}(C^m) tensor C^r
struct GOp {
  int dim = 0;
  std::vector<Cx> a;

  static GOp zero(int dim);
  static GOp id(int dim);
  GOp operator*(const GOp& o) const;
  GOp& operator+=(const GOp& o);
  GOp& operator*=(Cx s);
  GOp adjointOp() const;
  double maxAbs() const;
};

// polynomial matrix family in (z, zbar) up to total degree 2
struct PolyMat {
  // coefficient matrices: constant, z^mu, zbar^mu, z^mu z^nu, zbar^mu zbar^nu, z^mu zbar^nu
  std::vector<Cx> c0;
  std::vector<std::vector<Cx>> cz, czb;
  std::map<std::pair<int, int>, std::vector<Cx>> czz, czbzb, czzb;

  std::vector<Cx> eval(int r, const std::vector<Cx>& z) const;
  PolyMat dz(int mu, int r) const;    // exact holomorphic derivative
  PolyMat dzbar(int mu, int r) const; // exact antiholomorphic derivative
};

struct MatrixModel {
  int m = 4;
  int r = 2;
  uint64_t seed = 1;
  // component families F_{ab} (antisymmetric), curvature couplings
  std::map<std::pair<int, int>, PolyMat> f02;             // a<b
  std::map<std::pair<int, int>, std::vector<Cx>> fe;      // (b,a) anti,holo slots
  std::map<std::pair<int, int>, std::vector<Cx>> riem2;   // m x m generator action
  std::map<std::vector<int>, Cx> scalars;                 // Ric/Riem4/Hvar/GDotVar values

  PolyMat f02At(int a, int b, int& sign) const;  // antisymmetric lookup
};

// samplers
MatrixModel genericModel(int m, int r, uint64_t seed);
// every component drawn from one family with all pairwise products zero
MatrixModel nilpotentModel(int m, int r, uint64_t seed);

struct EvalPoint {
  std::vector<Cx> z;   // size m
  double kValue = 64;
  double tkValue = 30;
};

// literal evaluation of an operator expression (zero-order words only)
GOp evalExpr(const OperatorExpr& e, const MatrixModel& model, const EvalPoint& pt);

struct IdentityCheck {
  double maxResidual;
  uint64_t seed;
  int trials;
  bool pass;
};

using ModelFactory = MatrixModel (*)(int, int, uint64_t);

IdentityCheck checkIdentity(const OperatorExpr& lhs, const OperatorExpr& rhs, ModelFactory sampler,
                            int m, int r, int trials, double tol, uint64_t seed);

// finite-difference validation of the product rule used by leibnizDerive:
// directional derivative of eval(word) vs the symbolically differentiated word
IdentityCheck checkLeibnizNumeric(int trials, double tol, uint64_t seed);

// exterior primitives exposed for tests
GOp wedgeOp(int m, int r, int gen);
GOp cowedgeOp(int m, int r, int gen);

}  // namespace bergex
