// Exact rational span membership for index-component families of quadratic
// curvature words.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "coeff.hpp"

namespace bergex {

// sparse rational vectors over an integer-keyed basis
using SparseVec = std::map<int, Rat>;

class RatSpan {
 public:
  void add(const SparseVec& v);
  // reduce v modulo the span; returns the residual
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  size_t rank() const { return rows_.size(); }

 private:
  std::map<int, SparseVec> rows_;  // pivot column -> row (pivot coeff 1)
};

// Degree-2 monomials in antisymmetric components X_{ab}, 1 <= a,b <= mDim.
// Basis id of X_{ab} X_{cd} with sign normalization a<b, c<d.
struct QuadMono {
  int a, b, c, d;  // component indices of the two letters
};

struct QuadMembership {
  bool member;
  std::string certificate;  // residual expansion for non-members, else empty
};

// Span of all instances (indices in 1..mDim) of the three-term symmetric-sum
// hypothesis on the antisymmetric family:
//   X_{ac} X_{bf} + X_{ab} X_{fc} + X_{af} X_{cb} = 0.
RatSpan threeTermCyclicSpan(int mDim);

// target families over concrete indices
SparseVec quadCommutator(int a, int b, int c, int d, int mDim);
SparseVec quadProduct(int a, int b, int c, int d, int mDim);

QuadMembership quadMembership(const SparseVec& target, const RatSpan& span);

}  // namespace bergex
