#include "grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace bergex {

GOp GOp::zero(int dim) {
  GOp g;
  g.dim = dim;
  g.a.assign(size_t(dim) * size_t(dim), Cx(0));
  return g;
}

GOp GOp::id(int dim) {
  GOp g = zero(dim);
  for (int i = 0; i < dim; ++i) g.a[size_t(i) * dim + i] = 1;
  return g;
}

GOp GOp::operator*(const GOp& o) const {
  GOp g = zero(dim);
  for (int i = 0; i < dim; ++i)
    for (int l = 0; l < dim; ++l) {
      Cx x = a[size_t(i) * dim + l];
      if (x == Cx(0)) continue;
      for (int j = 0; j < dim; ++j) g.a[size_t(i) * dim + j] += x * o.a[size_t(l) * dim + j];
    }
  return g;
}

GOp& GOp::operator+=(const GOp& o) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
  return *this;
}

GOp& GOp::operator*=(Cx s) {
  for (auto& x : a) x *= s;
  return *this;
}

GOp GOp::adjointOp() const {
  GOp g = zero(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g.a[size_t(j) * dim + i] = std::conj(a[size_t(i) * dim + j]);
  return g;
}

double GOp::maxAbs() const {
  double mx = 0;
  for (auto& x : a) mx = std::max(mx, std::abs(x));
  return mx;
}

namespace {

int fiberDim(int m, int r) { return (1 << m) * r; }

int wedgeSign(int mask, int gen) {
  int below = mask & ((1 << gen) - 1);
  return (__builtin_popcount(unsigned(below)) % 2) ? -1 : 1;
}

}  // namespace

GOp wedgeOp(int m, int r, int gen) {
  GOp g = GOp::zero(fiberDim(m, r));
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (mask & (1 << gen)) continue;
    int to = mask | (1 << gen);
    int s = wedgeSign(mask, gen);
    for (int e = 0; e < r; ++e)
      g.a[size_t(to * r + e) * g.dim + size_t(mask * r + e)] = s;
  }
  return g;
}

GOp cowedgeOp(int m, int r, int gen) { return wedgeOp(m, r, gen).adjointOp(); }

std::vector<Cx> PolyMat::eval(int r, const std::vector<Cx>& z) const {
  std::vector<Cx> out(size_t(r) * size_t(r), Cx(0));
  auto acc = [&](const std::vector<Cx>& mat, Cx s) {
    if (mat.empty()) return;
    for (size_t i = 0; i < out.size(); ++i) out[i] += s * mat[i];
  };
  acc(c0, 1);
  for (size_t mu = 0; mu < cz.size(); ++mu) acc(cz[mu], z[mu]);
  for (size_t mu = 0; mu < czb.size(); ++mu) acc(czb[mu], std::conj(z[mu]));
  for (auto& [p, mat] : czz) acc(mat, z[size_t(p.first)] * z[size_t(p.second)]);
  for (auto& [p, mat] : czbzb) acc(mat, std::conj(z[size_t(p.first)] * z[size_t(p.second)]));
  for (auto& [p, mat] : czzb) acc(mat, z[size_t(p.first)] * std::conj(z[size_t(p.second)]));
  return out;
}

PolyMat PolyMat::dz(int mu, int r) const {
  PolyMat d;
  size_t rr = size_t(r) * size_t(r);
  d.c0 = cz.size() > size_t(mu) ? cz[size_t(mu)] : std::vector<Cx>(rr, Cx(0));
  if (d.c0.empty()) d.c0.assign(rr, Cx(0));
  d.cz.assign(cz.size(), std::vector<Cx>(rr, Cx(0)));
  d.czb.assign(czb.size(), std::vector<Cx>(rr, Cx(0)));
  for (auto& [p, mat] : czz) {
    if (p.first == mu)
      for (size_t i = 0; i < rr; ++i) d.cz[size_t(p.second)][i] += mat[i];
    if (p.second == mu)
      for (size_t i = 0; i < rr; ++i) d.cz[size_t(p.first)][i] += mat[i];
  }
  for (auto& [p, mat] : czzb)
    if (p.first == mu)
      for (size_t i = 0; i < rr; ++i) d.czb[size_t(p.second)][i] += mat[i];
  return d;
}

PolyMat PolyMat::dzbar(int mu, int r) const {
  PolyMat d;
  size_t rr = size_t(r) * size_t(r);
  d.c0 = czb.size() > size_t(mu) ? czb[size_t(mu)] : std::vector<Cx>(rr, Cx(0));
  if (d.c0.empty()) d.c0.assign(rr, Cx(0));
  d.cz.assign(cz.size(), std::vector<Cx>(rr, Cx(0)));
  d.czb.assign(czb.size(), std::vector<Cx>(rr, Cx(0)));
  for (auto& [p, mat] : czbzb) {
    if (p.first == mu)
      for (size_t i = 0; i < rr; ++i) d.czb[size_t(p.second)][i] += mat[i];
    if (p.second == mu)
      for (size_t i = 0; i < rr; ++i) d.czb[size_t(p.first)][i] += mat[i];
  }
  for (auto& [p, mat] : czzb)
    if (p.second == mu)
      for (size_t i = 0; i < rr; ++i) d.cz[size_t(p.first)][i] += mat[i];
  return d;
}

PolyMat MatrixModel::f02At(int a, int b, int& sign) const {
  sign = 1;
  if (a == b) {
    sign = 0;
    return PolyMat{};
  }
  if (a > b) {
    std::swap(a, b);
    sign = -1;
  }
  auto it = f02.find({a, b});
  if (it == f02.end()) throw structural_error("model: missing component");
  return it->second;
}

namespace {

std::vector<Cx> randMat(int r, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> N(0, 1);
  std::vector<Cx> m(size_t(r) * size_t(r));
  for (auto& x : m) x = scale * Cx(N(rng), N(rng));
  return m;
}

}  // namespace

MatrixModel genericModel(int m, int r, uint64_t seed) {
  MatrixModel mm;
  mm.m = m;
  mm.r = r;
  mm.seed = seed;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0, 1);
  size_t rr = size_t(r) * size_t(r);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      PolyMat pm;
      pm.c0 = randMat(r, rng);
      pm.cz.assign(size_t(m), {});
      pm.czb.assign(size_t(m), {});
      for (int mu = 0; mu < m; ++mu) {
        pm.cz[size_t(mu)] = randMat(r, rng, 0.7);
        pm.czb[size_t(mu)] = randMat(r, rng, 0.7);
      }
      for (int mu = 0; mu < m; ++mu)
        for (int nu = mu; nu < m; ++nu) {
          pm.czz[{mu, nu}] = randMat(r, rng, 0.4);
          pm.czbzb[{mu, nu}] = randMat(r, rng, 0.4);
        }
      for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu) pm.czzb[{mu, nu}] = randMat(r, rng, 0.4);
      mm.f02[{a, b}] = std::move(pm);
    }
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a) {
      mm.fe[{b, a}] = randMat(r, rng);
      std::vector<Cx> rho(size_t(m) * size_t(m));
      for (auto& x : rho) x = Cx(N(rng), N(rng));
      mm.riem2[{b, a}] = rho;
    }
  (void)rr;
  return mm;
}

MatrixModel nilpotentModel(int m, int r, uint64_t seed) {
  if (r < 2) throw unsupported_error("nilpotentModel needs rank >= 2");
  MatrixModel mm;
  mm.m = m;
  mm.r = r;
  mm.seed = seed;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0, 1);
  size_t rr = size_t(r) * size_t(r);
  // span of E_{0,j}, j >= 1: commuting, all pairwise products zero
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      PolyMat pm;
      pm.c0.assign(rr, Cx(0));
      pm.cz.assign(size_t(m), std::vector<Cx>(rr, Cx(0)));
      pm.czb.assign(size_t(m), std::vector<Cx>(rr, Cx(0)));
      for (int j = 1; j < r; ++j) {
        Cx c(N(rng), N(rng));
        pm.c0[size_t(0) * size_t(r) + size_t(j)] = c;
        for (int mu = 0; mu < m; ++mu) {
          pm.cz[size_t(mu)][size_t(0) * size_t(r) + size_t(j)] = 0.5 * Cx(N(rng), N(rng));
          pm.czb[size_t(mu)][size_t(0) * size_t(r) + size_t(j)] = 0.5 * Cx(N(rng), N(rng));
        }
      }
      mm.f02[{a, b}] = std::move(pm);
    }
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a) {
      mm.fe[{b, a}] = randMat(r, rng);
      std::vector<Cx> rho(size_t(m) * size_t(m));
      for (auto& x : rho) x = Cx(N(rng), N(rng));
      mm.riem2[{b, a}] = rho;
    }
  return mm;
}

namespace {

GOp matOnFiber(int m, int r, const std::vector<Cx>& mat) {
  GOp g = GOp::zero(fiberDim(m, r));
  for (int mask = 0; mask < (1 << m); ++mask)
    for (int e1 = 0; e1 < r; ++e1)
      for (int e2 = 0; e2 < r; ++e2)
        g.a[size_t(mask * r + e1) * g.dim + size_t(mask * r + e2)] = mat[size_t(e1) * r + e2];
  return g;
}

GOp derivationOnForms(int m, int r, const std::vector<Cx>& rho) {
  // extend the generator action dzbar^c -> sum_{c'} rho[c'][c] dzbar^{c'}
  GOp g = GOp::zero(fiberDim(m, r));
  for (int mask = 0; mask < (1 << m); ++mask) {
    for (int c = 0; c < m; ++c) {
      if (!(mask & (1 << c))) continue;
      for (int cp = 0; cp < m; ++cp) {
        Cx v = rho[size_t(cp) * m + size_t(c)];
        if (v == Cx(0)) continue;
        if (cp == c) {
          for (int e = 0; e < r; ++e)
            g.a[size_t(mask * r + e) * g.dim + size_t(mask * r + e)] += v;
          continue;
        }
        if (mask & (1 << cp)) continue;  // repeated generator
        int to = (mask & ~(1 << c)) | (1 << cp);
        // sign: remove c then insert cp
        int s = wedgeSign(mask & ~(1 << c), c) * wedgeSign(mask & ~(1 << c), cp);
        for (int e = 0; e < r; ++e)
          g.a[size_t(to * r + e) * g.dim + size_t(mask * r + e)] += double(s) * v;
      }
    }
  }
  return g;
}

struct AtomEvaluator {
  const MatrixModel& mm;
  const EvalPoint& pt;

  GOp operator()(const Atom& at, const std::map<int, int>& assign) const {
    const int m = mm.m, r = mm.r;
    auto ixVal = [&](const Ix& ix) -> int {
      if (ix.bound) return assign.at(ix.label);
      // free indices are concrete labels "1".."m"
      return std::stoi(nameOf(ix.label)) - 1;
    };
    switch (at.kind) {
      case AtomKind::F02: {
        // apply derivative decorations to the family, then wedge
        auto family = [&](int a, int b, int& sgn) {
          PolyMat pm = mm.f02At(a, b, sgn);
          for (auto& d : at.derivs) {
            int mu = ixVal(d);
            pm = (d.fl == Flavor::Holo) ? pm.dz(mu, r) : pm.dzbar(mu, r);
          }
          return pm;
        };
        if (at.slots.size() == 2) {
          int a = ixVal(at.slots[0]), b = ixVal(at.slots[1]);
          int sgn;
          PolyMat pm = family(a, b, sgn);
          if (sgn == 0) return GOp::zero(fiberDim(m, r));
          GOp g = matOnFiber(m, r, pm.eval(r, pt.z));
          g *= Cx(double(sgn));
          return g;
        }
        if (at.slots.size() == 1) {
          // e(i_{c} F) = sum_b wedge(b) F_{cb}
          int c = ixVal(at.slots[0]);
          GOp g = GOp::zero(fiberDim(m, r));
          for (int b = 0; b < m; ++b) {
            if (b == c) continue;
            int sgn;
            PolyMat pm = family(c, b, sgn);
            if (sgn == 0) continue;
            GOp piece = wedgeOp(m, r, b) * matOnFiber(m, r, pm.eval(r, pt.z));
            piece *= Cx(double(sgn));
            g += piece;
          }
          return at.star ? g.adjointOp() : g;
        }
        // full wedge: sum_{a<b} wedge(a) wedge(b) F_{ab}
        GOp g = GOp::zero(fiberDim(m, r));
        for (int a = 0; a < m; ++a)
          for (int b = a + 1; b < m; ++b) {
            int sgn;
            PolyMat pm = family(a, b, sgn);
            GOp piece = wedgeOp(m, r, a) * wedgeOp(m, r, b) * matOnFiber(m, r, pm.eval(r, pt.z));
            piece *= Cx(double(sgn));
            g += piece;
          }
        return at.star ? g.adjointOp() : g;
      }
      case AtomKind::FE: {
        int b = ixVal(at.slots[0]), a = ixVal(at.slots[1]);
        return matOnFiber(m, r, mm.fe.at({b, a}));
      }
      case AtomKind::Riem:
        if (at.slots.size() == 2) {
          int b = ixVal(at.slots[0]), a = ixVal(at.slots[1]);
          return derivationOnForms(m, r, mm.riem2.at({b, a}));
        }
        throw unsupported_error("evalExpr: scalar curvature atoms need assigned values");
      case AtomKind::WedgeZbar: return wedgeOp(m, r, ixVal(at.slots[0]));
      case AtomKind::CoWedgeZbar: return cowedgeOp(m, r, ixVal(at.slots[0]));
      case AtomKind::Fhat: {
        GOp g = GOp::zero(fiberDim(m, r));
        for (int j = 0; j < m; ++j)
          for (int l = 0; l < m; ++l) {
            GOp piece = wedgeOp(m, r, j) * cowedgeOp(m, r, l) * matOnFiber(m, r, mm.fe.at({j, l}));
            piece += wedgeOp(m, r, j) * cowedgeOp(m, r, l) *
                     derivationOnForms(m, r, mm.riem2.at({j, l}));
            piece *= Cx(-2.0);
            g += piece;
          }
        return g;
      }
      default: throw unsupported_error(std::string("evalExpr: unassigned atom kind ") + kindName(at.kind));
    }
  }
};

}  // namespace

GOp evalExpr(const OperatorExpr& e, const MatrixModel& model, const EvalPoint& pt) {
  const int dim = fiberDim(model.m, model.r);
  GOp total = GOp::zero(dim);
  AtomEvaluator ev{model, pt};
  for (auto& t : e.terms) {
    if (!t.dz.empty() || !t.dzbar.empty())
      throw unsupported_error("evalExpr: derivative operators are not evaluated pointwise");
    // collect bound classes to sum over
    std::vector<int> classes;
    auto scan = [&](const std::vector<Ix>& v) {
      for (auto& ix : v)
        if (ix.bound &&
            std::find(classes.begin(), classes.end(), ix.label) == classes.end())
          classes.push_back(ix.label);
    };
    scan(t.zMono);
    scan(t.zbarMono);
    for (auto& a : t.word) {
      scan(a.derivs);
      scan(a.slots);
    }
    std::map<int, int> assign;
    std::function<void(size_t)> rec = [&](size_t ci) {
      if (ci == classes.size()) {
        Cx scalar = t.coeff.evalAt(double(model.m));
        scalar *= std::pow(pt.kValue, t.kPow);
        scalar *= std::exp(4.0 * t.expd * pt.tkValue);
        if (t.tPow) scalar *= std::pow(pt.tkValue / pt.kValue, t.tPow);
        for (auto& ix : t.zMono)
          scalar *= pt.z[size_t(ix.bound ? assign.at(ix.label) : std::stoi(nameOf(ix.label)) - 1)];
        for (auto& ix : t.zbarMono)
          scalar *= std::conj(
              pt.z[size_t(ix.bound ? assign.at(ix.label) : std::stoi(nameOf(ix.label)) - 1)]);
        GOp w = GOp::id(dim);
        for (auto& a : t.word) w = w * ev(a, assign);
        w *= scalar;
        total += w;
        return;
      }
      for (int v = 0; v < model.m; ++v) {
        assign[classes[ci]] = v;
        rec(ci + 1);
      }
      assign.erase(classes[ci]);
    };
    rec(0);
  }
  return total;
}

IdentityCheck checkIdentity(const OperatorExpr& lhs, const OperatorExpr& rhs, ModelFactory sampler,
                            int m, int r, int trials, double tol, uint64_t seed) {
  IdentityCheck out{0.0, seed, trials, false};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0, 0.5);
  for (int t = 0; t < trials; ++t) {
    uint64_t s = rng();
    MatrixModel mm = sampler(m, r, s);
    EvalPoint pt;
    pt.z.resize(size_t(m));
    for (auto& z : pt.z) z = Cx(N(rng), N(rng));
    pt.kValue = 1;
    pt.tkValue = 0;
    GOp l = evalExpr(lhs, mm, pt);
    GOp rr = evalExpr(rhs, mm, pt);
    rr *= Cx(-1.0);
    l += rr;
    out.maxResidual = std::max(out.maxResidual, l.maxAbs());
  }
  out.pass = out.maxResidual <= tol;
  return out;
}

IdentityCheck checkLeibnizNumeric(int trials, double tol, uint64_t seed) {
  // directional derivative d/dz^mu of eval( e(F) e(F_{;bbar}) ) compared with
  // eval( e(F_{;mu}) e(F_{;bbar}) + e(F) e(F_{;bbar mu}) ), finite differences
  const int m = 4, r = 2;
  IdentityCheck out{0.0, seed, trials, false};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0, 0.4);
  const int mu = 0, bb = 1;
  auto word = [&](std::vector<Ix> d1, std::vector<Ix> d2) {
    Term t;
    t.coeff = Coeff(1);
    t.word.push_back(mkAtom(AtomKind::F02, std::move(d1)));
    t.word.push_back(mkAtom(AtomKind::F02, std::move(d2)));
    OperatorExpr e;
    e.terms.push_back(t);
    return e;
  };
  Ix dmu = freeIx(Flavor::Holo, std::to_string(mu + 1));
  Ix dbb = freeIx(Flavor::Anti, std::to_string(bb + 1));
  OperatorExpr base = word({}, {dbb});
  OperatorExpr leib = word({dmu}, {dbb});
  {
    OperatorExpr second = word({}, {dbb, dmu});
    leib.terms.push_back(second.terms[0]);
  }
  for (int t = 0; t < trials; ++t) {
    uint64_t s = rng();
    MatrixModel mm = genericModel(m, r, s);
    EvalPoint pt;
    pt.z.resize(size_t(m));
    for (auto& z : pt.z) z = Cx(N(rng), N(rng));
    pt.kValue = 1;
    pt.tkValue = 0;
    // Wirtinger derivative via a four-point real/imaginary stencil
    const double h = 1e-5;
    auto shifted = [&](Cx dz) {
      EvalPoint p2 = pt;
      p2.z[mu] += dz;
      return evalExpr(base, mm, p2);
    };
    GOp du = shifted(Cx(h, 0));
    {
      GOp tmp = shifted(Cx(-h, 0));
      tmp *= Cx(-1.0);
      du += tmp;
      du *= Cx(1.0 / (2 * h));
    }
    GOp dv = shifted(Cx(0, h));
    {
      GOp tmp = shifted(Cx(0, -h));
      tmp *= Cx(-1.0);
      dv += tmp;
      dv *= Cx(1.0 / (2 * h));
    }
    dv *= Cx(0, -1);  // d/dz = (d/du - i d/dv)/2
    du += dv;
    du *= Cx(0.5);
    GOp sym = evalExpr(leib, mm, pt);
    sym *= Cx(-1.0);
    du += sym;
    out.maxResidual = std::max(out.maxResidual, du.maxAbs());
  }
  out.pass = out.maxResidual <= tol;
  return out;
}

}  // namespace bergex
