#pragma once

#include "term.hpp"

namespace bergex {

// Operator composition a∘b (a acts after b), normal ordered: a's derivatives
// are commuted past b's coordinate monomials by the Leibniz rule, curvature
// words concatenate, exponential factors add. Result canonicalized and
// truncated at the weight cutoff (discards go to the remainder ledger).
OperatorExpr compose(const OperatorExpr& a, const OperatorExpr& b, int cutoff);

// Single term pair product (no truncation); exposed for tests.
OperatorExpr composeTerms(const Term& a, const Term& b);

}  // namespace bergex
