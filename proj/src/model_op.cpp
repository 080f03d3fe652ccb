#include "model_op.hpp"

#include <algorithm>
#include <functional>

namespace bergex {

MuFactor muFactorFor(const Term& t) {
  MuFactor m;
  m.jDeg = int(t.zMono.size());
  m.kDeg = int(t.zbarMono.size());
  m.expShift = m.kDeg - m.jDeg;
  return m;
}

int decayExponent(const Term& t) { return 4 * t.expd + 2 * int(t.zbarMono.size()); }

DecayClass classifyDecay(const Term& t) {
  int c = decayExponent(t);
  if (c <= 0) return DecayClass::Boundary;
  return t.expd >= 0 ? DecayClass::Neutral : DecayClass::Decaying;
}

const char* decayName(DecayClass c) {
  switch (c) {
    case DecayClass::Neutral: return "neutral";
    case DecayClass::Boundary: return "boundary";
    case DecayClass::Decaying: return "decaying";
  }
  return "?";
}

namespace {

// all single z/zbar contraction pairs of a term (positions)
void forEachPairSet(const Term& t, int maxPairs,
                    const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
  const int nz = int(t.zMono.size()), nzb = int(t.zbarMono.size());
  std::vector<std::pair<int, int>> cur;
  std::vector<bool> usedZ(size_t(nz), false), usedZb(size_t(nzb), false);
  std::function<void(int)> rec = [&](int start) {
    emit(cur);
    if (int(cur.size()) == maxPairs) return;
    for (int i = start; i < nz; ++i) {
      if (usedZ[size_t(i)]) continue;
      for (int j = 0; j < nzb; ++j) {
        if (usedZb[size_t(j)]) continue;
        usedZ[size_t(i)] = usedZb[size_t(j)] = true;
        cur.emplace_back(i, j);
        rec(i + 1);
        cur.pop_back();
        usedZ[size_t(i)] = usedZb[size_t(j)] = false;
      }
    }
  };
  rec(0);
}

void removeAt(std::vector<Ix>& v, std::vector<int> idxs) {
  std::sort(idxs.rbegin(), idxs.rend());
  for (int i : idxs) v.erase(v.begin() + i);
}

// unify the index classes of a removed (z, zbar) pair inside `t`
void unifyPair(Term& t, const Ix& zi, const Ix& zbi) {
  if (!zi.bound && !zbi.bound) {
    if (zi.label != zbi.label) throw structural_error("contraction of distinct free indices");
    return;
  }
  if (zi.bound && zbi.bound && zi.label == zbi.label) {
    t.coeff = t.coeff * Coeff::mono(1, 1);  // closed index loop: factor m
    return;
  }
  const Ix& target = zi.bound ? (zbi.bound ? zi : zbi) : zi;
  const Ix& source = target == zi ? zbi : zi;
  auto rl = [&](std::vector<Ix>& v) {
    for (auto& ix : v)
      if (ix == source) {
        ix.label = target.label;
        ix.bound = target.bound;
      }
  };
  rl(t.zMono);
  rl(t.zbarMono);
  rl(t.dz);
  rl(t.dzbar);
  for (auto& a : t.word) {
    rl(a.derivs);
    rl(a.slots);
  }
}

}  // namespace

OperatorExpr applyL(const OperatorExpr& x) {
  OperatorExpr out;
  out.remainder = x.remainder;
  out.addRemainder({0, 0, "exp-small (1/tanh normalization)"});
  for (auto& t : x.terms) {
    const int J = int(t.zMono.size()), K = int(t.zbarMono.size());
    const int diag = 4 * t.expd + (J + K) + (K - J);
    if (diag != 0) {
      Term d = t;
      d.kPow += 1;
      d.coeff *= Rat(diag);
      out.terms.push_back(std::move(d));
    }
    if (t.tPow > 0) {
      Term d = t;
      d.tPow -= 1;
      d.coeff *= Rat(t.tPow);
      out.terms.push_back(std::move(d));
    }
    // Delta_E: contract one z against one zbar, factor -4 per pair
    for (int i = 0; i < J; ++i)
      for (int j = 0; j < K; ++j) {
        Term d = t;
        Ix zi = d.zMono[size_t(i)], zbi = d.zbarMono[size_t(j)];
        d.zMono.erase(d.zMono.begin() + i);
        d.zbarMono.erase(d.zbarMono.begin() + j);
        d.coeff *= Rat(-4);
        unifyPair(d, zi, zbi);
        out.terms.push_back(std::move(d));
      }
  }
  return canonicalize(out);
}

LinvResult linvAsymptotic(const OperatorExpr& x, int cutoff) {
  LinvResult res;
  res.value.remainder = x.remainder;
  res.value.addRemainder({0, 0, "exp-small (sinh ratio, s-integral tail)"});

  for (auto& t : x.terms) {
    const int c = decayExponent(t);
    const int tau = t.tPow;
    if (c <= 0) {
      if (c == 0 && t.expd == 0 && t.zbarMono.empty()) {
        // exact primitive: time integral of t^tau is t^{tau+1}/(tau+1)
        Term d = t;
        d.tPow = tau + 1;
        d.coeff *= Rat(1, tau + 1);
        res.value.terms.push_back(std::move(d));
        continue;
      }
      res.boundary.terms.push_back(t);
      continue;
    }
    // neutral (or decaying with closed form): integrate
    //   (1/k) * int_0^{tk} e^{-c u} u^j ((tk - u)/k)^tau du
    // per j-fold contraction set, u = tk - s.
    forEachPairSet(t, std::min(int(t.zMono.size()), int(t.zbarMono.size())),
                   [&](const std::vector<std::pair<int, int>>& pairs) {
                     const int j = int(pairs.size());
                     Term base = t;
                     std::vector<std::pair<Ix, Ix>> contr;
                     std::vector<int> zi, zbi;
                     for (auto& [a, b] : pairs) {
                       contr.emplace_back(t.zMono[size_t(a)], t.zbarMono[size_t(b)]);
                       zi.push_back(a);
                       zbi.push_back(b);
                     }
                     removeAt(base.zMono, zi);
                     removeAt(base.zbarMono, zbi);
                     for (auto& [a, b] : contr) unifyPair(base, a, b);
                     // binomial expansion of (tk - u)^tau
                     for (int i = 0; i <= tau; ++i) {
                       Term d = base;
                       Rat cf = binomial(tau, i) * ((i % 2) ? Rat(-1) : Rat(1));
                       cf *= factorial(i + j);
                       Rat cpow = 1;
                       for (int q = 0; q < i + j + 1; ++q) cpow *= c;
                       cf /= cpow;
                       // 4^j from the Gaussian shift, pi cancels against the
                       // normalized weight
                       for (int q = 0; q < j; ++q) cf *= 4;
                       d.coeff *= cf;
                       d.tPow = tau - i;
                       d.kPow += -1 - i - j;
                       res.value.terms.push_back(std::move(d));
                     }
                   });
  }
  res.value = canonicalize(res.value);
  res.value = truncate(res.value, cutoff, "linv cutoff");
  res.boundary = canonicalize(res.boundary);
  return res;
}

WickMoment wickMoment(const std::vector<int>& J, const std::vector<int>& K) {
  if (J.size() != K.size()) return {Rat(0), 0};
  const int n = int(J.size());
  // count perfect matchings with equal index values
  std::vector<bool> used(size_t(n), false);
  std::function<BigInt(int)> rec = [&](int i) -> BigInt {
    if (i == n) return 1;
    BigInt acc = 0;
    for (int j = 0; j < n; ++j) {
      if (used[size_t(j)] || J[size_t(i)] != K[size_t(j)]) continue;
      used[size_t(j)] = true;
      acc += rec(i + 1);
      used[size_t(j)] = false;
    }
    return acc;
  };
  BigInt cnt = rec(0);
  return {Rat(cnt), -n};
}

}  // namespace bergex
