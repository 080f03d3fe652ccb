#include "compose.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <thread>

namespace bergex {

namespace {

int maxBoundLabel(const Term& t) {
  int mx = -1;
  auto scan = [&](const std::vector<Ix>& v) {
    for (auto& ix : v)
      if (ix.bound) mx = std::max(mx, ix.label);
  };
  scan(t.zMono);
  scan(t.zbarMono);
  scan(t.dz);
  scan(t.dzbar);
  for (auto& a : t.word) {
    scan(a.derivs);
    scan(a.slots);
  }
  return mx;
}

void shiftBound(Term& t, int offset) {
  auto sh = [&](std::vector<Ix>& v) {
    for (auto& ix : v)
      if (ix.bound) ix.label += offset;
  };
  sh(t.zMono);
  sh(t.zbarMono);
  sh(t.dz);
  sh(t.dzbar);
  for (auto& a : t.word) {
    sh(a.derivs);
    sh(a.slots);
  }
}

// Replace every occurrence of index `from` by `to`; returns occurrence count
// of `to` afterwards.
int relabel(Term& t, const Ix& from, const Ix& to) {
  int n = 0;
  auto rl = [&](std::vector<Ix>& v) {
    for (auto& ix : v) {
      if (ix == from) ix = Ix{ix.fl, to.label, to.bound};
      if (ix.bound == to.bound && ix.label == to.label) ++n;
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
  return n;
}

// Contract one derivative occurrence against one coordinate occurrence of the
// same flavor: both have already been removed from their lists; unify their
// index classes in `t`. Multiplies coeff by m when the contraction closes a
// loop (no remaining occurrence).
void unifyContraction(Term& t, const Ix& derivIx, const Ix& monoIx) {
  if (!derivIx.bound && !monoIx.bound) {
    if (derivIx.label != monoIx.label)
      throw structural_error("contraction of distinct free indices");
    return;
  }
  if (derivIx.bound && monoIx.bound && derivIx.label == monoIx.label) {
    // the pair was each other's partner: a closed loop, sum over the index
    t.coeff = t.coeff * Coeff::mono(1, 1);
    return;
  }
  const Ix& target = derivIx.bound ? (monoIx.bound ? derivIx : monoIx) : derivIx;
  const Ix& source = (&target == &derivIx) ? monoIx : derivIx;
  relabel(t, source, target);
}

// all injective partial matchings deriv-list -> mono-list, as index pairs
void enumerateMatchings(size_t nd, size_t nm,
                        const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
  std::vector<std::pair<int, int>> cur;
  std::vector<bool> used(nm, false);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == nd) {
      emit(cur);
      return;
    }
    rec(i + 1);  // derivative i passes through
    for (size_t j = 0; j < nm; ++j) {
      if (used[j]) continue;
      used[j] = true;
      cur.emplace_back(int(i), int(j));
      rec(i + 1);
      cur.pop_back();
      used[j] = false;
    }
  };
  rec(0);
}

void eraseIndices(std::vector<Ix>& v, const std::vector<int>& idxs) {
  std::vector<Ix> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    if (std::find(idxs.begin(), idxs.end(), int(i)) == idxs.end()) out.push_back(v[i]);
  v = std::move(out);
}

}  // namespace

OperatorExpr composeTerms(const Term& ta, const Term& tbIn) {
  Term tb = tbIn;
  shiftBound(tb, maxBoundLabel(ta) + 1);

  OperatorExpr out;
  auto emitFor = [&](const std::vector<std::pair<int, int>>& mz,
                     const std::vector<std::pair<int, int>>& mzb) {
    Term r;
    r.coeff = ta.coeff * tb.coeff;
    r.kPow = ta.kPow + tb.kPow;
    r.expd = ta.expd + tb.expd;
    r.tPow = ta.tPow + tb.tPow;
    r.word = ta.word;
    r.word.insert(r.word.end(), tb.word.begin(), tb.word.end());

    std::vector<Ix> adz = ta.dz, adzbar = ta.dzbar;
    std::vector<Ix> bz = tb.zMono, bzb = tb.zbarMono;
    std::vector<std::pair<Ix, Ix>> contractions;
    std::vector<int> delDz, delBz, delDzbar, delBzb;
    for (auto& [i, j] : mz) {
      contractions.emplace_back(adz[size_t(i)], bz[size_t(j)]);
      delDz.push_back(i);
      delBz.push_back(j);
    }
    for (auto& [i, j] : mzb) {
      contractions.emplace_back(adzbar[size_t(i)], bzb[size_t(j)]);
      delDzbar.push_back(i);
      delBzb.push_back(j);
    }
    eraseIndices(adz, delDz);
    eraseIndices(bz, delBz);
    eraseIndices(adzbar, delDzbar);
    eraseIndices(bzb, delBzb);

    r.zMono = ta.zMono;
    r.zMono.insert(r.zMono.end(), bz.begin(), bz.end());
    r.zbarMono = ta.zbarMono;
    r.zbarMono.insert(r.zbarMono.end(), bzb.begin(), bzb.end());
    r.dz = adz;
    r.dz.insert(r.dz.end(), tb.dz.begin(), tb.dz.end());
    r.dzbar = adzbar;
    r.dzbar.insert(r.dzbar.end(), tb.dzbar.begin(), tb.dzbar.end());

    for (auto& [dix, mix] : contractions) unifyContraction(r, dix, mix);
    out.terms.push_back(std::move(r));
  };

  enumerateMatchings(ta.dz.size(), tb.zMono.size(),
                     [&](const std::vector<std::pair<int, int>>& mz) {
                       enumerateMatchings(ta.dzbar.size(), tb.zbarMono.size(),
                                          [&](const std::vector<std::pair<int, int>>& mzb) {
                                            emitFor(mz, mzb);
                                          });
                     });
  return out;
}

OperatorExpr compose(const OperatorExpr& a, const OperatorExpr& b, int cutoff) {
  int nthreads = 1;
  if (const char* env = std::getenv("BERGEX_THREADS")) nthreads = std::max(1, atoi(env));

  const size_t total = a.terms.size() * b.terms.size();
  auto worker = [&](size_t lo, size_t hi) {
    OperatorExpr local;
    for (size_t p = lo; p < hi; ++p) {
      const Term& ta = a.terms[p / std::max<size_t>(b.terms.size(), 1)];
      const Term& tb = b.terms[p % std::max<size_t>(b.terms.size(), 1)];
      OperatorExpr prod = composeTerms(ta, tb);
      for (auto& t : prod.terms) local.terms.push_back(std::move(t));
    }
    local = canonicalize(local);
    return truncate(local, cutoff, "compose cutoff");
  };

  OperatorExpr out;
  out.remainder = a.remainder;
  out.absorbRemainder(b);
  if (total == 0) return out;

  if (nthreads <= 1 || total < 64) {
    OperatorExpr r = worker(0, total);
    mergeInto(out, r);
    return out;
  }
  size_t chunk = (total + size_t(nthreads) - 1) / size_t(nthreads);
  std::vector<std::future<OperatorExpr>> futs;
  for (size_t lo = 0; lo < total; lo += chunk)
    futs.push_back(std::async(std::launch::async, worker, lo, std::min(lo + chunk, total)));
  for (auto& f : futs) {
    OperatorExpr r = f.get();
    mergeInto(out, r);
  }
  return out;
}

}  // namespace bergex
