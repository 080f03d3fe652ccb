#include "linconseq.hpp"

namespace bergex {

void RatSpan::add(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return;
  // normalize to pivot 1
  int pivot = r.begin()->first;
  Rat lead = r.begin()->second;
  for (auto& [c, x] : r) x /= lead;
  // back-substitute into existing rows
  for (auto& [pc, row] : rows_) {
    auto it = row.find(pivot);
    if (it == row.end()) continue;
    Rat f = it->second;
    for (auto& [c, x] : r) {
      Rat& t = row[c];
      t -= f * x;
      if (t == 0) row.erase(c);
    }
  }
  rows_[pivot] = std::move(r);
}

SparseVec RatSpan::reduce(SparseVec v) const {
  for (auto it = v.begin(); it != v.end();) {
    auto rit = rows_.find(it->first);
    if (rit == rows_.end()) {
      ++it;
      continue;
    }
    Rat f = it->second;
    for (auto& [c, x] : rit->second) {
      Rat& t = v[c];
      t -= f * x;
      if (t == 0) v.erase(c);
    }
    it = v.begin();  // restart; the leading entry was eliminated
  }
  return v;
}

namespace {

// signed basis id of X_{ab} X_{cd}; zero when a==b or c==d
bool monoId(int a, int b, int c, int d, int mDim, int& id, int& sign) {
  sign = 1;
  if (a == b || c == d) return false;
  if (a > b) {
    std::swap(a, b);
    sign = -sign;
  }
  if (c > d) {
    std::swap(c, d);
    sign = -sign;
  }
  int p1 = (a - 1) * mDim + (b - 1);
  int p2 = (c - 1) * mDim + (d - 1);
  id = p1 * mDim * mDim + p2;
  return true;
}

void addMono(SparseVec& v, int a, int b, int c, int d, int mDim, const Rat& coeff) {
  int id, sign;
  if (!monoId(a, b, c, d, mDim, id, sign)) return;
  Rat& t = v[id];
  t += sign * coeff;
  if (t == 0) v.erase(id);
}

}  // namespace

RatSpan threeTermCyclicSpan(int mDim) {
  RatSpan span;
  for (int a = 1; a <= mDim; ++a)
    for (int b = 1; b <= mDim; ++b)
      for (int c = 1; c <= mDim; ++c)
        for (int f = 1; f <= mDim; ++f) {
          SparseVec v;
          addMono(v, a, c, b, f, mDim, 1);
          addMono(v, a, b, f, c, mDim, 1);
          addMono(v, a, f, c, b, mDim, 1);
          if (!v.empty()) span.add(v);
        }
  return span;
}

SparseVec quadCommutator(int a, int b, int c, int d, int mDim) {
  SparseVec v;
  addMono(v, a, b, c, d, mDim, 1);
  addMono(v, c, d, a, b, mDim, -1);
  return v;
}

SparseVec quadProduct(int a, int b, int c, int d, int mDim) {
  SparseVec v;
  addMono(v, a, b, c, d, mDim, 1);
  return v;
}

QuadMembership quadMembership(const SparseVec& target, const RatSpan& span) {
  SparseVec r = span.reduce(target);
  if (r.empty()) return {true, ""};
  std::string cert;
  for (auto& [id, x] : r) cert += (cert.empty() ? "" : " + ") + x.str() + "*e" + std::to_string(id);
  return {false, cert};
}

}  // namespace bergex
