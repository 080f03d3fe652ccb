// Oriented rewriting of curvature words modulo filtration hypotheses:
// kill rules, Leibniz-derived consequences, derivative reordering through
// curvature commutators, and the normal-ordered wedge/cowedge expansion.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "term.hpp"

namespace bergex {

// Pattern metavariable: matches one index occurrence of the given flavor.
struct MetaIx {
  int var;
  Flavor fl;
};

struct AtomPat {
  AtomKind kind;
  bool star = false;
  std::vector<MetaIx> derivs;
  std::vector<MetaIx> slots;
};

// One word of a rule's right-hand side; metavariables refer to lhs bindings.
struct RhsWord {
  Rat coeff;
  std::vector<AtomPat> word;
};

struct RewriteRule {
  std::string name;
  std::string provenance;
  std::vector<AtomPat> lhs;
  std::vector<RhsWord> rhs;  // empty = rewrite to zero
  bool orderingRule = false; // fires only when it strictly lowers the word key
};

struct Preset {
  std::string name;
  std::vector<RewriteRule> rules;
};

// Named presets: sqv1:q, sqv2:q, is1v2, is1v3, chern-generic.
Preset presetByName(const std::string& name);
Preset presetSqv1(int q);
Preset presetSqv2(int q);
Preset presetIs1v2();
Preset presetIs1v3();
Preset presetChernGeneric();

// Structural rules sound for every curvature preset: derivative reordering
// (mixed holomorphic/antiholomorphic pair on an undecorated-core letter) and
// the wedge/cowedge expansion of the normal-ordered curvature endomorphism.
std::vector<RewriteRule> structuralRules();

// Exhaustive leftmost-innermost rewriting to a fixpoint.
OperatorExpr normalize(const OperatorExpr& e, const Preset& p);
// Kill rules only (rhs == 0); leaves derived rewrites unapplied.
OperatorExpr normalizeKillsOnly(const OperatorExpr& e, const Preset& p);

// Product-rule differentiation of an equality-to-zero rule by one index,
// returning oriented consequences. The index flavor controls which
// decorations are produced.
std::vector<RewriteRule> leibnizDerive(const RewriteRule& r, Flavor fl);

// Throws structural_error when some rule fails the termination order.
void checkOrientation(const Preset& p);

// strictly decreasing measure used by the orientation check
long wordMeasureRank(const std::vector<AtomPat>& w);

}  // namespace bergex
