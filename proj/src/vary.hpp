// First variation of curvature-word identities under a change of the
// polarizing metric, and pointwise coefficient extraction.
#pragma once

#include "term.hpp"

namespace bergex {

// Formal first variation of an identity (a sum of curvature words = 0).
//  - a bound class with one holomorphic and one antiholomorphic occurrence is
//    a metric contraction; its variation inserts a GDotVar letter;
//  - an antiholomorphic covariant-derivative decoration on a (0,2) letter
//    varies into -Hvar(b, e, c) dzbar^e wedge (contracted letter);
//  - holomorphic-frame derivatives and plain curvature components are inert.
// Atoms with no declared variation (Ric, Riem, Fhat) raise unsupported_error.
OperatorExpr metricVary(const OperatorExpr& identity);

// Pointwise extraction with the variation chosen freely at a point.
// Requires complex dimension > 3 (mMin flag); raises regime_error otherwise.
OperatorExpr extractGdot(const OperatorExpr& varied, int mMin);
OperatorExpr extractHvar(const OperatorExpr& varied, int mMin);

// Built-in identities used by the derivation chains:
//   f-wedge-df : F wedge (0,1)-derivative of F (per antiholomorphic index)
//   nu0check   : the reduced charge-0 aggregate with explicit contractions
//   symeq-diag : diagonal of the antiholomorphic-derivative anticommutator
//   ifdbf      : contracted factor against the first derivative
OperatorExpr builtinIdentity(const std::string& name);

}  // namespace bergex
