#include "vary.hpp"

#include <algorithm>
#include <map>

namespace bergex {

namespace {

struct OccRef {
  enum Where { ZMono, ZbarMono, Dz, Dzbar, WordDeriv, WordSlot } where;
  size_t atomIdx;
  size_t pos;
};

std::vector<std::pair<Ix, std::vector<OccRef>>> boundClasses(const Term& t) {
  std::map<int, std::vector<OccRef>> occ;
  std::map<int, Ix> sample;
  auto scan = [&](const std::vector<Ix>& v, OccRef::Where w) {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i].bound) {
        occ[v[i].label].push_back({w, 0, i});
        sample.emplace(v[i].label, v[i]);
      }
  };
  scan(t.zMono, OccRef::ZMono);
  scan(t.zbarMono, OccRef::ZbarMono);
  scan(t.dz, OccRef::Dz);
  scan(t.dzbar, OccRef::Dzbar);
  for (size_t a = 0; a < t.word.size(); ++a) {
    for (size_t i = 0; i < t.word[a].derivs.size(); ++i)
      if (t.word[a].derivs[i].bound) {
        occ[t.word[a].derivs[i].label].push_back({OccRef::WordDeriv, a, i});
        sample.emplace(t.word[a].derivs[i].label, t.word[a].derivs[i]);
      }
    for (size_t i = 0; i < t.word[a].slots.size(); ++i)
      if (t.word[a].slots[i].bound) {
        occ[t.word[a].slots[i].label].push_back({OccRef::WordSlot, a, i});
        sample.emplace(t.word[a].slots[i].label, t.word[a].slots[i]);
      }
  }
  std::vector<std::pair<Ix, std::vector<OccRef>>> out;
  for (auto& [cls, v] : occ) out.emplace_back(sample.at(cls), v);
  return out;
}

Flavor occFlavor(const Term& t, const OccRef& o, int cls) {
  auto get = [&](const std::vector<Ix>& v) { return v[o.pos].fl; };
  (void)cls;
  switch (o.where) {
    case OccRef::ZMono: return get(t.zMono);
    case OccRef::ZbarMono: return get(t.zbarMono);
    case OccRef::Dz: return get(t.dz);
    case OccRef::Dzbar: return get(t.dzbar);
    case OccRef::WordDeriv: return t.word[o.atomIdx].derivs[o.pos].fl;
    case OccRef::WordSlot: return t.word[o.atomIdx].slots[o.pos].fl;
  }
  return Flavor::Holo;
}

int freshLabel(const Term& t) {
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
  return mx + 1;
}

void setOcc(Term& t, const OccRef& o, const Ix& ix) {
  switch (o.where) {
    case OccRef::ZMono: t.zMono[o.pos] = ix; break;
    case OccRef::ZbarMono: t.zbarMono[o.pos] = ix; break;
    case OccRef::Dz: t.dz[o.pos] = ix; break;
    case OccRef::Dzbar: t.dzbar[o.pos] = ix; break;
    case OccRef::WordDeriv: t.word[o.atomIdx].derivs[o.pos] = ix; break;
    case OccRef::WordSlot: t.word[o.atomIdx].slots[o.pos] = ix; break;
  }
}

}  // namespace

OperatorExpr metricVary(const OperatorExpr& identity) {
  OperatorExpr out;
  out.remainder = identity.remainder;
  for (auto& t : identity.terms) {
    for (auto& a : t.word) {
      if (a.kind == AtomKind::Ric || a.kind == AtomKind::Fhat ||
          (a.kind == AtomKind::Riem && !a.slots.empty()))
        throw unsupported_error(std::string("metricVary: atom ") + kindName(a.kind) +
                                " has no declared variation");
    }
    // (a) metric contractions: mixed-flavor bound pairs
    for (auto& [sample, occs] : boundClasses(t)) {
      if (occs.size() != 2) throw structural_error("metricVary: malformed binding");
      Flavor f0 = occFlavor(t, occs[0], sample.label);
      Flavor f1 = occFlavor(t, occs[1], sample.label);
      if (f0 == f1) continue;  // component sum, metric free
      Term v = t;
      int l1 = freshLabel(v), l2 = l1 + 1;
      const OccRef& holoOcc = f0 == Flavor::Holo ? occs[0] : occs[1];
      const OccRef& antiOcc = f0 == Flavor::Holo ? occs[1] : occs[0];
      setOcc(v, holoOcc, boundIx(Flavor::Holo, l1));
      setOcc(v, antiOcc, boundIx(Flavor::Anti, l2));
      v.word.insert(v.word.begin(),
                    mkAtom(AtomKind::GDotVar, {},
                           {boundIx(Flavor::Holo, l1), boundIx(Flavor::Anti, l2)}));
      out.terms.push_back(std::move(v));
    }
    // (b) antiholomorphic derivative decorations on (0,2) letters
    for (size_t ai = 0; ai < t.word.size(); ++ai) {
      const Atom& a = t.word[ai];
      if (a.kind != AtomKind::F02 || a.star) continue;
      for (size_t di = 0; di < a.derivs.size(); ++di) {
        if (a.derivs[di].fl != Flavor::Anti) continue;  // holomorphic-frame inert
        Term v = t;
        int le = freshLabel(v), lc = le + 1;
        Atom& at = v.word[ai];
        Ix origDeriv = at.derivs[di];
        at.derivs.erase(at.derivs.begin() + long(di));
        at.slots.push_back(boundIx(Flavor::Anti, lc));
        // -Hvar(orig, e, c) dzbar^e wedge (i_c letter)
        v.word.insert(v.word.begin() + long(ai),
                      mkAtom(AtomKind::WedgeZbar, {}, {boundIx(Flavor::Anti, le)}));
        v.word.insert(v.word.begin(),
                      mkAtom(AtomKind::Hvar, {},
                             {origDeriv, boundIx(Flavor::Anti, le), boundIx(Flavor::Holo, lc)}));
        v.coeff = -v.coeff;
        out.terms.push_back(std::move(v));
      }
    }
  }
  return canonicalize(out);
}

namespace {

int prefixParity(const Term& t, size_t pos) {
  int d = 0;
  for (size_t i = 0; i < pos; ++i) d += formDelta(t.word[i]);
  return (d % 2 + 2) % 2;
}

// free the partner occurrence of `cls`, skipping the occurrences inside the
// removed atoms
void freePartner(Term& t, int cls, Flavor fl, const std::string& name) {
  auto fix = [&](std::vector<Ix>& v) {
    for (auto& ix : v)
      if (ix.bound && ix.label == cls) ix = freeIx(ix.fl, name);
  };
  (void)fl;
  fix(t.zMono);
  fix(t.zbarMono);
  fix(t.dz);
  fix(t.dzbar);
  for (auto& a : t.word) {
    fix(a.derivs);
    fix(a.slots);
  }
}

}  // namespace

OperatorExpr extractGdot(const OperatorExpr& varied, int mMin) {
  if (mMin <= 3) throw regime_error("extraction requires complex dimension > 3");
  OperatorExpr out;
  out.remainder = varied.remainder;
  for (auto& t : varied.terms) {
    std::vector<size_t> gs;
    for (size_t i = 0; i < t.word.size(); ++i)
      if (t.word[i].kind == AtomKind::GDotVar) gs.push_back(i);
    if (gs.size() != 1) continue;  // only the linear part
    Term v = t;
    Atom g = v.word[gs[0]];
    v.word.erase(v.word.begin() + long(gs[0]));
    freePartner(v, g.slots[0].label, Flavor::Holo, "a");
    freePartner(v, g.slots[1].label, Flavor::Anti, "b");
    out.terms.push_back(std::move(v));
  }
  return canonicalize(out);
}

OperatorExpr builtinIdentity(const std::string& name) {
  OperatorExpr e;
  auto F = []() { return mkAtom(AtomKind::F02); };
  if (name == "f-wedge-df") {
    Term t;
    t.coeff = Coeff(1);
    t.word = {F(), mkAtom(AtomKind::F02, {freeIx(Flavor::Anti, "a")})};
    e.terms.push_back(t);
    return canonicalize(e);
  }
  if (name == "nu0check") {
    Term t1;
    t1.coeff = Coeff(8);
    t1.word = {mkAtom(AtomKind::F02, {boundIx(Flavor::Holo, 0)}),
               mkAtom(AtomKind::F02, {boundIx(Flavor::Anti, 0)})};
    Term t2;
    t2.coeff = Coeff(6);
    t2.word = {F(), mkAtom(AtomKind::FE, {}, {boundIx(Flavor::Anti, 0), boundIx(Flavor::Holo, 0)}),
               F()};
    Term t3;
    t3.coeff = Coeff(-9);
    t3.word = {F(), mkAtom(AtomKind::WedgeZbar, {}, {boundIx(Flavor::Anti, 0)}),
               mkAtom(AtomKind::FE, {}, {boundIx(Flavor::Anti, 0), boundIx(Flavor::Holo, 1)}),
               mkAtom(AtomKind::F02, {}, {boundIx(Flavor::Anti, 1)})};
    e.terms = {t1, t2, t3};
    return canonicalize(e);
  }
  if (name == "symeq-diag") {
    Term t;
    t.coeff = Coeff(1);
    t.word = {mkAtom(AtomKind::F02, {freeIx(Flavor::Anti, "a")}),
              mkAtom(AtomKind::F02, {freeIx(Flavor::Anti, "a")})};
    e.terms.push_back(t);
    return canonicalize(e);
  }
  if (name == "ifdbf") {
    Term t;
    t.coeff = Coeff(1);
    t.word = {mkAtom(AtomKind::F02, {}, {freeIx(Flavor::Anti, "c")}),
              mkAtom(AtomKind::F02, {freeIx(Flavor::Anti, "a")})};
    e.terms.push_back(t);
    return canonicalize(e);
  }
  throw unsupported_error("unknown identity " + name);
}

OperatorExpr extractHvar(const OperatorExpr& varied, int mMin) {
  if (mMin <= 3) throw regime_error("extraction requires complex dimension > 3");
  OperatorExpr out;
  out.remainder = varied.remainder;
  for (auto& t : varied.terms) {
    std::vector<size_t> hs;
    for (size_t i = 0; i < t.word.size(); ++i)
      if (t.word[i].kind == AtomKind::Hvar) hs.push_back(i);
    if (hs.size() != 1) continue;
    Term v = t;
    Atom hv = v.word[hs[0]];
    v.word.erase(v.word.begin() + long(hs[0]));
    // locate the paired wedge (slot class of Hvar slot 1)
    int wedgeCls = hv.slots[1].label;
    size_t wpos = v.word.size();
    for (size_t i = 0; i < v.word.size(); ++i)
      if (v.word[i].kind == AtomKind::WedgeZbar && v.word[i].slots[0].bound &&
          v.word[i].slots[0].label == wedgeCls) {
        wpos = i;
        break;
      }
    if (wpos == v.word.size())
      throw structural_error("extractHvar: missing wedge partner");
    if (prefixParity(v, wpos)) v.coeff = -v.coeff;  // move the 1-form out front
    v.word.erase(v.word.begin() + long(wpos));
    freePartner(v, hv.slots[0].label, Flavor::Anti, "a");
    freePartner(v, hv.slots[2].label, Flavor::Anti, "c");
    out.terms.push_back(std::move(v));
  }
  return canonicalize(out);
}

}  // namespace bergex
