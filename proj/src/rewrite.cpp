#include "rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace bergex {

namespace {

int derivSigRank(const std::vector<MetaIx>& derivs) {
  if (derivs.empty()) return 0;
  if (derivs.size() == 1) return 10;
  if (derivs.size() == 2) {
    bool h0 = derivs[0].fl == Flavor::Holo, h1 = derivs[1].fl == Flavor::Holo;
    if (h0 == h1) return 25;           // same-flavor double
    return h0 ? 13 : 11;               // mixed: holo-first heavier
  }
  return 10 * int(derivs.size());
}

int atomPatRank(const AtomPat& a) {
  int base = 0;
  switch (a.kind) {
    case AtomKind::F02:
    case AtomKind::F20: base = int(a.slots.size()); break;  // contraction slots
    case AtomKind::Fhat: base = 40; break;
    default: base = 1; break;
  }
  return base + derivSigRank(a.derivs);
}

int derivSigRankIx(const std::vector<Ix>& derivs) {
  std::vector<MetaIx> m;
  for (auto& d : derivs) m.push_back({0, d.fl});
  return derivSigRank(m);
}

int atomRank(const Atom& a) {
  int base = 0;
  switch (a.kind) {
    case AtomKind::F02:
    case AtomKind::F20: base = int(a.slots.size()); break;
    case AtomKind::Fhat: base = 40; break;
    default: base = 1; break;
  }
  return base + derivSigRankIx(a.derivs);
}

struct Measure {
  long sum = 0;
  long len = 0;
  std::vector<int> pos;
  bool operator<(const Measure& o) const {
    if (sum != o.sum) return sum < o.sum;
    if (len != o.len) return len < o.len;
    return std::lexicographical_compare(pos.begin(), pos.end(), o.pos.begin(), o.pos.end());
  }
};

Measure measureOf(const std::vector<AtomPat>& w) {
  Measure m;
  m.len = long(w.size());
  for (auto& a : w) {
    int r = atomPatRank(a);
    m.sum += r;
    m.pos.push_back(r);
  }
  return m;
}

}  // namespace

long wordMeasureRank(const std::vector<AtomPat>& w) { return measureOf(w).sum; }

void checkOrientation(const Preset& p) {
  for (auto& r : p.rules) {
    if (r.orderingRule) continue;  // checked at application time
    Measure lm = measureOf(r.lhs);
    for (auto& w : r.rhs) {
      Measure rm = measureOf(w.word);
      if (!(rm < lm))
        throw structural_error("non-orientable rule " + r.name +
                               " (no strict reduction in the word order)");
    }
  }
}

namespace {

// ---------- matching ----------

struct Binding {
  std::map<int, Ix> vars;
  bool bind(int var, const Ix& ix) {
    auto it = vars.find(var);
    if (it == vars.end()) {
      vars[var] = ix;
      return true;
    }
    return it->second == ix;
  }
};

bool matchAtom(const Atom& a, const AtomPat& p, Binding& b) {
  if (a.kind != p.kind || a.star != p.star) return false;
  if (a.derivs.size() != p.derivs.size() || a.slots.size() != p.slots.size()) return false;
  for (size_t i = 0; i < p.derivs.size(); ++i) {
    if (a.derivs[i].fl != p.derivs[i].fl) return false;
    if (!b.bind(p.derivs[i].var, a.derivs[i])) return false;
  }
  for (size_t i = 0; i < p.slots.size(); ++i) {
    if (a.slots[i].fl != p.slots[i].fl) return false;
    if (!b.bind(p.slots[i].var, a.slots[i])) return false;
  }
  return true;
}

Atom instantiate(const AtomPat& p, const Binding& b) {
  Atom a;
  a.kind = p.kind;
  a.star = p.star;
  for (auto& d : p.derivs) {
    Ix ix = b.vars.at(d.var);
    ix.fl = d.fl;
    a.derivs.push_back(ix);
  }
  for (auto& s : p.slots) {
    Ix ix = b.vars.at(s.var);
    ix.fl = s.fl;
    a.slots.push_back(ix);
  }
  return a;
}

struct MatchResult {
  size_t pos;
  Binding binding;
};

std::optional<MatchResult> findMatch(const Term& t, const RewriteRule& r) {
  if (t.word.size() < r.lhs.size()) return std::nullopt;
  for (size_t i = 0; i + r.lhs.size() <= t.word.size(); ++i) {
    Binding b;
    bool ok = true;
    for (size_t j = 0; j < r.lhs.size(); ++j)
      if (!matchAtom(t.word[i + j], r.lhs[j], b)) {
        ok = false;
        break;
      }
    if (ok) return MatchResult{i, b};
  }
  return std::nullopt;
}

std::vector<Term> applyRule(const Term& t, const RewriteRule& r, const MatchResult& m) {
  std::vector<Term> out;
  for (auto& w : r.rhs) {
    Term nt = t;
    nt.word.erase(nt.word.begin() + long(m.pos), nt.word.begin() + long(m.pos + r.lhs.size()));
    std::vector<Atom> repl;
    for (auto& ap : w.word) repl.push_back(instantiate(ap, m.binding));
    nt.word.insert(nt.word.begin() + long(m.pos), repl.begin(), repl.end());
    nt.coeff *= w.coeff;
    out.push_back(std::move(nt));
  }
  return out;
}

OperatorExpr normalizeImpl(const OperatorExpr& e, const Preset& p, bool killsOnly) {
  OperatorExpr out;
  out.remainder = e.remainder;
  std::deque<Term> work(e.terms.begin(), e.terms.end());
  long steps = 0;
  while (!work.empty()) {
    if (++steps > 2000000) throw structural_error("normalize: step bound exceeded");
    Term t = canonicalize(work.front());
    work.pop_front();
    if (t.coeff.isZero()) continue;
    bool fired = false;
    for (auto& r : p.rules) {
      if (killsOnly && (!r.rhs.empty() || r.orderingRule)) continue;
      auto m = findMatch(t, r);
      if (!m) continue;
      if (r.orderingRule) {
        // fire only when it strictly lowers the canonical encoding
        auto res = applyRule(t, r, *m);
        if (res.size() != 1) throw structural_error("ordering rule must have one rhs word");
        Term cand = canonicalize(res[0]);
        std::string oldEnc = encodeShape(t), newEnc = encodeShape(cand);
        if (newEnc == oldEnc) {
          // X -> -X: the relation forces 2X = 0
          bool negates = res[0].coeff == -t.coeff || cand.coeff == -t.coeff;
          if (negates) {
            fired = true;  // term dies
            break;
          }
          continue;
        }
        if (oldEnc < newEnc) continue;  // would increase; skip
        work.push_front(cand);
        fired = true;
        break;
      }
      auto res = applyRule(t, r, *m);
      for (auto& nt : res) work.push_front(std::move(nt));
      fired = true;
      break;
    }
    if (!fired) out.terms.push_back(std::move(t));
  }
  return canonicalize(out);
}

// ---------- rule construction helpers ----------

MetaIx mv(int v, Flavor f) { return MetaIx{v, f}; }

AtomPat pat(AtomKind k, std::vector<MetaIx> derivs = {}, std::vector<MetaIx> slots = {},
            bool star = false) {
  AtomPat p;
  p.kind = k;
  p.star = star;
  p.derivs = std::move(derivs);
  p.slots = std::move(slots);
  return p;
}

RewriteRule killRule(const std::string& name, const std::string& prov,
                     std::vector<AtomPat> lhs) {
  RewriteRule r;
  r.name = name;
  r.provenance = prov;
  r.lhs = std::move(lhs);
  return r;
}

RewriteRule orderRule(const std::string& name, const std::string& prov, std::vector<AtomPat> lhs,
                      Rat coeff, std::vector<AtomPat> rhs) {
  RewriteRule r;
  r.name = name;
  r.provenance = prov;
  r.lhs = std::move(lhs);
  r.rhs.push_back({coeff, std::move(rhs)});
  r.orderingRule = true;
  return r;
}

}  // namespace

OperatorExpr normalize(const OperatorExpr& e, const Preset& p) {
  return normalizeImpl(e, p, false);
}

OperatorExpr normalizeKillsOnly(const OperatorExpr& e, const Preset& p) {
  return normalizeImpl(e, p, true);
}

std::vector<RewriteRule> leibnizDerive(const RewriteRule& r, Flavor fl) {
  // relation as sum-to-zero: lhs - rhs = 0
  struct Rel {
    Rat coeff;
    std::vector<AtomPat> word;
  };
  std::vector<Rel> rel;
  rel.push_back({Rat(1), r.lhs});
  for (auto& w : r.rhs) rel.push_back({-w.coeff, w.word});

  // fresh metavariable id
  int fresh = 0;
  auto scanMax = [&](const std::vector<AtomPat>& w) {
    for (auto& a : w) {
      for (auto& d : a.derivs) fresh = std::max(fresh, d.var + 1);
      for (auto& s : a.slots) fresh = std::max(fresh, s.var + 1);
    }
  };
  scanMax(r.lhs);
  for (auto& w : r.rhs) scanMax(w.word);

  std::vector<Rel> derived;
  for (auto& piece : rel) {
    for (size_t i = 0; i < piece.word.size(); ++i) {
      const AtomKind k = piece.word[i].kind;
      if (k == AtomKind::WedgeZbar || k == AtomKind::CoWedgeZbar || k == AtomKind::Hvar ||
          k == AtomKind::GDotVar)
        continue;  // constant letters
      Rel d = piece;
      d.word[i].derivs.push_back(mv(fresh, fl));
      derived.push_back(std::move(d));
    }
  }
  if (derived.empty()) return {};

  // orient on the measure-maximal word
  size_t maxAt = 0;
  bool strict = true;
  for (size_t i = 1; i < derived.size(); ++i) {
    Measure mi = measureOf(derived[i].word), mm = measureOf(derived[maxAt].word);
    if (mm < mi) {
      maxAt = i;
      strict = true;
    } else if (!(mi < mm)) {
      strict = false;
    }
  }
  if (!strict)
    throw structural_error("leibnizDerive: derived relation has no strict leading word");

  RewriteRule out;
  out.name = r.name + (fl == Flavor::Holo ? ".dh" : ".dab");
  out.provenance = "derived from " + r.name;
  out.lhs = derived[maxAt].word;
  Rat lead = derived[maxAt].coeff;
  for (size_t i = 0; i < derived.size(); ++i) {
    if (i == maxAt) continue;
    out.rhs.push_back({-derived[i].coeff / lead, derived[i].word});
  }
  return {out};
}

std::vector<RewriteRule> structuralRules() {
  std::vector<RewriteRule> rules;
  // derivative reordering: F;(a bbar) -> F;(bbar a) + curvature commutator
  {
    RewriteRule r;
    r.name = "deriv-reorder";
    r.provenance = "curvature commutator on mixed second derivatives";
    r.lhs = {pat(AtomKind::F02, {mv(0, Flavor::Holo), mv(1, Flavor::Anti)})};
    r.rhs.push_back({Rat(1), {pat(AtomKind::F02, {mv(1, Flavor::Anti), mv(0, Flavor::Holo)})}});
    for (AtomKind k : {AtomKind::FE, AtomKind::Riem}) {
      r.rhs.push_back({Rat(1),
                       {pat(k, {}, {mv(1, Flavor::Anti), mv(0, Flavor::Holo)}),
                        pat(AtomKind::F02)}});
      r.rhs.push_back({Rat(-1),
                       {pat(AtomKind::F02),
                        pat(k, {}, {mv(1, Flavor::Anti), mv(0, Flavor::Holo)})}});
    }
    rules.push_back(std::move(r));
  }
  // normal-ordered expansion of the curvature endomorphism
  {
    RewriteRule r;
    r.name = "fhat-expand";
    r.provenance = "wedge/cowedge normal form of the curvature endomorphism";
    r.lhs = {pat(AtomKind::Fhat)};
    for (AtomKind k : {AtomKind::FE, AtomKind::Riem})
      r.rhs.push_back({Rat(-2),
                       {pat(AtomKind::WedgeZbar, {}, {mv(0, Flavor::Anti)}),
                        pat(AtomKind::CoWedgeZbar, {}, {mv(1, Flavor::Anti)}),
                        pat(k, {}, {mv(0, Flavor::Anti), mv(1, Flavor::Holo)})}});
    rules.push_back(std::move(r));
  }
  return rules;
}

Preset presetSqv1(int q) {
  Preset p;
  p.name = "sqv1:" + std::to_string(q);
  std::vector<AtomPat> power(size_t(q + 1), pat(AtomKind::F02));
  RewriteRule kq = killRule("f02-power", "wedge power vanishing at level q=" + std::to_string(q),
                            power);
  p.rules.push_back(kq);
  auto dh = leibnizDerive(kq, Flavor::Holo);
  for (auto& r : dh) p.rules.push_back(r);
  for (auto& r : structuralRules()) p.rules.push_back(r);
  checkOrientation(p);
  return p;
}

Preset presetSqv2(int q) {
  Preset p = presetSqv1(q);
  p.name = "sqv2:" + std::to_string(q);
  if (q == 1) {
    RewriteRule k2 = killRule("f02d-f02", "first-order pair vanishing (derivative first)",
                              {pat(AtomKind::F02, {mv(0, Flavor::Anti)}), pat(AtomKind::F02)});
    RewriteRule k3 = killRule("f02-f02d", "first-order pair vanishing (derivative second)",
                              {pat(AtomKind::F02), pat(AtomKind::F02, {mv(0, Flavor::Anti)})});
    std::vector<RewriteRule> derived;
    for (auto& base : {k2, k3})
      for (Flavor fl : {Flavor::Holo, Flavor::Anti})
        for (auto& r : leibnizDerive(base, fl)) derived.push_back(r);
    p.rules.insert(p.rules.begin(), k3);
    p.rules.insert(p.rules.begin(), k2);
    for (auto& r : derived) p.rules.push_back(r);
  }
  checkOrientation(p);
  return p;
}

Preset presetIs1v2() {
  Preset p = presetSqv2(1);
  p.name = "is1v2";
  p.rules.push_back(killRule("f02-if02", "wedge against contracted factor",
                             {pat(AtomKind::F02),
                              pat(AtomKind::F02, {}, {mv(0, Flavor::Anti)})}));
  p.rules.push_back(killRule("f02-w-if02", "wedge against contracted factor (wedge between)",
                             {pat(AtomKind::F02), pat(AtomKind::WedgeZbar, {}, {mv(1, Flavor::Anti)}),
                              pat(AtomKind::F02, {}, {mv(0, Flavor::Anti)})}));
  checkOrientation(p);
  return p;
}

Preset presetIs1v3() {
  Preset p = presetIs1v2();
  p.name = "is1v3";
  p.rules.push_back(killRule("f02-f11-f02", "middle mixed-curvature vanishing",
                             {pat(AtomKind::F02), pat(AtomKind::F11), pat(AtomKind::F02)}));
  p.rules.push_back(killRule("f02h-if02", "holomorphic derivative against contracted factor",
                             {pat(AtomKind::F02, {mv(0, Flavor::Holo)}),
                              pat(AtomKind::F02, {}, {mv(1, Flavor::Anti)})}));
  p.rules.push_back(killRule("if02-if02", "contracted pair vanishing",
                             {pat(AtomKind::F02, {}, {mv(0, Flavor::Anti)}),
                              pat(AtomKind::F02, {}, {mv(1, Flavor::Anti)})}));
  p.rules.push_back(orderRule("symeq-sort", "antiholomorphic first-derivative anticommutation",
                              {pat(AtomKind::F02, {mv(0, Flavor::Anti)}),
                               pat(AtomKind::F02, {mv(1, Flavor::Anti)})},
                              Rat(-1),
                              {pat(AtomKind::F02, {mv(1, Flavor::Anti)}),
                               pat(AtomKind::F02, {mv(0, Flavor::Anti)})}));
  p.rules.push_back(orderRule("ivar-sort", "contracted/derivative anticommutation",
                              {pat(AtomKind::F02, {}, {mv(0, Flavor::Anti)}),
                               pat(AtomKind::F02, {mv(1, Flavor::Anti)})},
                              Rat(-1),
                              {pat(AtomKind::F02, {mv(1, Flavor::Anti)}),
                               pat(AtomKind::F02, {}, {mv(0, Flavor::Anti)})}));
  p.rules.push_back(orderRule("component-commute", "commuting component values",
                              {pat(AtomKind::F02, {}, {mv(0, Flavor::Anti), mv(1, Flavor::Anti)}),
                               pat(AtomKind::F02, {}, {mv(2, Flavor::Anti), mv(3, Flavor::Anti)})},
                              Rat(1),
                              {pat(AtomKind::F02, {}, {mv(2, Flavor::Anti), mv(3, Flavor::Anti)}),
                               pat(AtomKind::F02, {}, {mv(0, Flavor::Anti), mv(1, Flavor::Anti)})}));
  checkOrientation(p);
  return p;
}

Preset presetChernGeneric() {
  Preset p;
  p.name = "chern-generic";
  return p;
}

Preset presetByName(const std::string& name) {
  auto colon = name.find(':');
  std::string head = name.substr(0, colon);
  int q = colon == std::string::npos ? 1 : std::stoi(name.substr(colon + 1));
  if (head == "sqv1") return presetSqv1(q);
  if (head == "sqv2") return presetSqv2(q);
  if (head == "is1v2") return presetIs1v2();
  if (head == "is1v3") return presetIs1v3();
  if (head == "chern-generic") return presetChernGeneric();
  throw unsupported_error("unknown preset " + name);
}

}  // namespace bergex
