#include "term.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_map>

namespace bergex {

namespace {
std::vector<std::string>& nameTable() {
  static std::vector<std::string> t;
  return t;
}
std::map<std::string, int>& nameIndex() {
  static std::map<std::string, int> t;
  return t;
}
}  // namespace

int internName(const std::string& name) {
  auto& idx = nameIndex();
  auto it = idx.find(name);
  if (it != idx.end()) return it->second;
  int id = int(nameTable().size());
  nameTable().push_back(name);
  idx[name] = id;
  return id;
}

const std::string& nameOf(int id) { return nameTable().at(size_t(id)); }

const char* kindName(AtomKind k) {
  switch (k) {
    case AtomKind::F02: return "F02";
    case AtomKind::F20: return "F20";
    case AtomKind::F11: return "F11";
    case AtomKind::FE: return "FE";
    case AtomKind::Ric: return "Ric";
    case AtomKind::Riem: return "Riem";
    case AtomKind::Fhat: return "Fhat";
    case AtomKind::WedgeZbar: return "WedgeZbar";
    case AtomKind::CoWedgeZbar: return "CoWedgeZbar";
    case AtomKind::Hvar: return "Hvar";
    case AtomKind::GDotVar: return "GDotVar";
  }
  return "?";
}

std::optional<AtomKind> kindFromName(const std::string& s) {
  static const std::map<std::string, AtomKind> m = {
      {"F02", AtomKind::F02},       {"F20", AtomKind::F20},
      {"F11", AtomKind::F11},       {"FE", AtomKind::FE},
      {"Ric", AtomKind::Ric},       {"Riem", AtomKind::Riem},
      {"Fhat", AtomKind::Fhat},     {"WedgeZbar", AtomKind::WedgeZbar},
      {"CoWedgeZbar", AtomKind::CoWedgeZbar}, {"Hvar", AtomKind::Hvar},
      {"GDotVar", AtomKind::GDotVar}};
  auto it = m.find(s);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

int formDelta(const Atom& a) {
  switch (a.kind) {
    case AtomKind::F02: {
      int d = 2 - int(a.slots.size());
      return a.star ? -d : d;
    }
    case AtomKind::WedgeZbar: return 1;
    case AtomKind::CoWedgeZbar: return -1;
    default: return 0;
  }
}

bool isCentral(const Atom& a) {
  switch (a.kind) {
    case AtomKind::Ric:
    case AtomKind::Hvar:
    case AtomKind::GDotVar: return true;
    case AtomKind::Riem: return a.slots.size() == 4;  // fully evaluated component
    default: return false;
  }
}

bool killsDegreeZero(const Atom& a) {
  if (a.kind == AtomKind::Riem && a.slots.size() == 2) return true;  // derivation on forms
  if (a.kind == AtomKind::Fhat) return true;  // normal-ordered wedge-cowedge pair
  return false;
}

Atom mkAtom(AtomKind k, std::vector<Ix> derivs, std::vector<Ix> slots, bool star) {
  Atom a;
  a.kind = k;
  a.star = star;
  a.derivs = std::move(derivs);
  a.slots = std::move(slots);
  return a;
}

Term identityTerm() {
  Term t;
  t.coeff = Coeff(1);
  return t;
}

namespace {

struct Occurrence {
  // label-independent descriptor of the occurrence site, used for refinement
  int where;  // 0 zMono, 1 zbarMono, 2 dz, 3 dzbar, 4 word deriv, 5 word slot
  int kind;   // atom kind for word sites, else -1
  int star;
  int pos;    // position within the deriv/slot list for word sites, else 0
  int fl;

  bool operator<(const Occurrence& o) const {
    return std::tie(where, kind, star, pos, fl) < std::tie(o.where, o.kind, o.star, o.pos, o.fl);
  }
  bool operator==(const Occurrence& o) const {
    return where == o.where && kind == o.kind && star == o.star && pos == o.pos && fl == o.fl;
  }
};

void forEachIx(Term& t, const std::function<void(Ix&, Occurrence)>& f) {
  for (auto& ix : t.zMono) f(ix, {0, -1, 0, 0, int(ix.fl)});
  for (auto& ix : t.zbarMono) f(ix, {1, -1, 0, 0, int(ix.fl)});
  for (auto& ix : t.dz) f(ix, {2, -1, 0, 0, int(ix.fl)});
  for (auto& ix : t.dzbar) f(ix, {3, -1, 0, 0, int(ix.fl)});
  for (auto& at : t.word) {
    int p = 0;
    for (auto& ix : at.derivs) f(ix, {4, int(at.kind), at.star, p++, int(ix.fl)});
    p = 0;
    for (auto& ix : at.slots) f(ix, {5, int(at.kind), at.star, p++, int(ix.fl)});
  }
}

std::string encodeIx(const Ix& ix) {
  std::string s;
  s += ix.bound ? 'b' : 'f';
  s += ix.fl == Flavor::Holo ? 'h' : 'a';
  s += std::to_string(ix.label);
  return s;
}

std::string encodeAtom(const Atom& a) {
  std::string s = kindName(a.kind);
  if (a.star) s += "*";
  s += "[";
  for (auto& d : a.derivs) s += encodeIx(d) + ",";
  s += ";";
  for (auto& sl : a.slots) s += encodeIx(sl) + ",";
  s += "]";
  return s;
}

// sort a list of Ix (bound before free, then label); stable
void sortIxList(std::vector<Ix>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Ix& a, const Ix& b) {
    if (a.bound != b.bound) return a.bound && !b.bound;
    return a.label < b.label;
  });
}

// Sort maximal runs of equal-kind wedge atoms; returns sign, or 0 if a run
// contains a repeated slot.
int sortWedgeRuns(std::vector<Atom>& w) {
  int sign = 1;
  size_t i = 0;
  while (i < w.size()) {
    if (w[i].kind != AtomKind::WedgeZbar && w[i].kind != AtomKind::CoWedgeZbar) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < w.size() && w[j].kind == w[i].kind && w[j].star == w[i].star) ++j;
    // bubble sort the run, counting swaps
    for (size_t a = i; a < j; ++a)
      for (size_t b = i; b + 1 < j - (a - i); ++b) {
        const Ix &x = w[b].slots[0], &y = w[b + 1].slots[0];
        auto key = [](const Ix& ix) { return std::make_tuple(!ix.bound, ix.label); };
        if (key(y) < key(x)) {
          std::swap(w[b], w[b + 1]);
          sign = -sign;
        }
      }
    for (size_t a = i; a + 1 < j; ++a)
      if (w[a].slots[0] == w[a + 1].slots[0]) return 0;
    i = j;
  }
  return sign;
}

// Atom-local canonical slot order with tracked sign; label-dependent parts.
int canonAtomSlots(Atom& a) {
  int sign = 1;
  auto ixKey = [](const Ix& ix) { return std::make_tuple(!ix.bound, int(ix.fl), ix.label); };
  switch (a.kind) {
    case AtomKind::FE:
      if (a.slots.size() == 2) {
        // antisymmetric 2-form: canonical (anti, holo)
        if (a.slots[0].fl == Flavor::Holo && a.slots[1].fl == Flavor::Anti) {
          std::swap(a.slots[0], a.slots[1]);
          sign = -sign;
        }
      }
      break;
    case AtomKind::Riem:
      if (a.slots.size() == 2) {
        if (a.slots[0].fl == Flavor::Holo && a.slots[1].fl == Flavor::Anti) {
          std::swap(a.slots[0], a.slots[1]);
          sign = -sign;
        }
      } else if (a.slots.size() == 4) {
        // antisymmetric within each argument pair; pair exchange symmetric
        auto fixPair = [&](int i) {
          if (ixKey(a.slots[i + 1]) < ixKey(a.slots[i])) {
            std::swap(a.slots[i], a.slots[i + 1]);
            sign = -sign;
          } else if (a.slots[i] == a.slots[i + 1]) {
            sign = 0;
          }
        };
        fixPair(0);
        fixPair(2);
        if (sign == 0) return 0;
        std::string p1 = encodeIx(a.slots[0]) + encodeIx(a.slots[1]);
        std::string p2 = encodeIx(a.slots[2]) + encodeIx(a.slots[3]);
        if (p2 < p1) {
          std::swap(a.slots[0], a.slots[2]);
          std::swap(a.slots[1], a.slots[3]);
        }
      }
      break;
    case AtomKind::F02:
    case AtomKind::F20:
      if (a.slots.size() == 2) {
        // fully contracted component, antisymmetric in the two slots
        if (ixKey(a.slots[1]) < ixKey(a.slots[0])) {
          std::swap(a.slots[0], a.slots[1]);
          sign = -sign;
        } else if (a.slots[0] == a.slots[1]) {
          sign = 0;
        }
      }
      break;
    case AtomKind::Hvar: {
      // symmetric in the two antiholomorphic slots
      if (a.slots.size() == 3 && ixKey(a.slots[1]) < ixKey(a.slots[0]))
        std::swap(a.slots[0], a.slots[1]);
      break;
    }
    case AtomKind::Ric:
      if (a.slots.size() == 2 && a.slots[0].fl == Flavor::Holo && a.slots[1].fl == Flavor::Anti)
        std::swap(a.slots[0], a.slots[1]);  // symmetric, no sign
      break;
    default: break;
  }
  return sign;
}

struct Candidate {
  Term t;
  int sign = 1;
  std::string enc;
};

Candidate buildCandidate(const Term& base, const std::map<int, int>& renaming) {
  Candidate c;
  c.t = base;
  forEachIx(c.t, [&](Ix& ix, Occurrence) {
    if (ix.bound) ix.label = renaming.at(ix.label);
  });
  sortIxList(c.t.zMono);
  sortIxList(c.t.zbarMono);
  sortIxList(c.t.dz);
  sortIxList(c.t.dzbar);
  for (auto& a : c.t.word) {
    int s = canonAtomSlots(a);
    if (s == 0) {
      c.sign = 0;
      return c;
    }
    c.sign *= s;
  }
  int ws = sortWedgeRuns(c.t.word);
  if (ws == 0) {
    c.sign = 0;
    return c;
  }
  c.sign *= ws;
  c.enc = encodeShape(c.t);
  return c;
}

}  // namespace

void checkBindings(const Term& t) {
  std::map<int, int> count;
  Term tmp = t;
  forEachIx(tmp, [&](Ix& ix, Occurrence) {
    if (ix.bound) count[ix.label]++;
  });
  for (auto& [cls, n] : count)
    if (n != 2)
      throw structural_error("bound index class " + std::to_string(cls) + " occurs " +
                             std::to_string(n) + " times (expected 2)");
}

std::string encodeShape(const Term& t) {
  std::string s;
  s += "k" + std::to_string(t.kPow);
  s += "e" + std::to_string(t.expd);
  s += "t" + std::to_string(t.tPow);
  s += "|z:";
  for (auto& ix : t.zMono) s += encodeIx(ix) + ",";
  s += "|zb:";
  for (auto& ix : t.zbarMono) s += encodeIx(ix) + ",";
  s += "|d:";
  for (auto& ix : t.dz) s += encodeIx(ix) + ",";
  s += "|db:";
  for (auto& ix : t.dzbar) s += encodeIx(ix) + ",";
  s += "|w:";
  for (auto& a : t.word) s += encodeAtom(a);
  return s;
}

Term canonicalize(const Term& t) {
  Term base = t;
  checkBindings(base);
  if (base.coeff.isZero()) {
    Term z;
    z.coeff = Coeff();
    return z;
  }

  // front the central letters (they commute with everything); stable among
  // themselves, sorted by encoding for determinism
  {
    std::vector<Atom> central, rest;
    for (auto& a : base.word) (isCentral(a) ? central : rest).push_back(a);
    std::stable_sort(central.begin(), central.end(), [](const Atom& x, const Atom& y) {
      return encodeAtom(x) < encodeAtom(y);
    });
    base.word.clear();
    base.word.insert(base.word.end(), central.begin(), central.end());
    base.word.insert(base.word.end(), rest.begin(), rest.end());
  }

  // collect bound classes with refinement signatures
  std::map<int, std::vector<Occurrence>> occ;
  forEachIx(base, [&](Ix& ix, Occurrence o) {
    if (ix.bound) occ[ix.label].push_back(o);
  });
  for (auto& [cls, v] : occ) std::sort(v.begin(), v.end());

  // group classes by signature
  std::map<std::vector<Occurrence>, std::vector<int>> groups;
  for (auto& [cls, v] : occ) groups[v].push_back(cls);

  // assign name ranges per group in signature order; permute within groups
  std::vector<std::vector<int>> perGroup;
  std::vector<int> groupBase;
  int next = 0;
  size_t candidates = 1;
  for (auto& [sig, classes] : groups) {
    perGroup.push_back(classes);
    groupBase.push_back(next);
    next += int(classes.size());
    size_t f = 1;
    for (size_t i = 2; i <= classes.size(); ++i) f *= i;
    candidates *= f;
    if (candidates > 5040) throw structural_error("canonicalization blowup (too many tied classes)");
  }

  Candidate best;
  bool haveBest = false;
  bool signClash = false;

  std::vector<std::vector<int>> perms(perGroup.size());
  // iterate over the product of group permutations
  std::vector<std::vector<int>> orders;
  for (auto& g : perGroup) {
    std::vector<int> o(g.size());
    for (size_t i = 0; i < g.size(); ++i) o[i] = int(i);
    orders.push_back(o);
  }
  bool done = false;
  while (!done) {
    std::map<int, int> ren;
    for (size_t gi = 0; gi < perGroup.size(); ++gi)
      for (size_t i = 0; i < perGroup[gi].size(); ++i)
        ren[perGroup[gi][orders[gi][i]]] = groupBase[gi] + int(i);
    Candidate c = buildCandidate(base, ren);
    if (c.sign != 0) {
      if (!haveBest || c.enc < best.enc) {
        best = c;
        haveBest = true;
        signClash = false;
      } else if (c.enc == best.enc && c.sign != best.sign) {
        signClash = true;
      }
    }
    // advance the product iterator
    size_t gi = 0;
    while (gi < orders.size() && !std::next_permutation(orders[gi].begin(), orders[gi].end()))
      ++gi;
    if (gi == orders.size()) done = true;
  }

  if (!haveBest || signClash) {
    Term z;
    z.coeff = Coeff();
    return z;
  }
  best.t.coeff = base.coeff;
  if (best.sign < 0) best.t.coeff = -best.t.coeff;
  return best.t;
}

OperatorExpr canonicalize(const OperatorExpr& e) {
  OperatorExpr out;
  out.remainder = e.remainder;
  std::unordered_map<std::string, size_t> seen;
  for (auto& t : e.terms) {
    Term c = canonicalize(t);
    if (c.coeff.isZero()) continue;
    std::string key = encodeShape(c);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen[key] = out.terms.size();
      out.terms.push_back(std::move(c));
    } else {
      out.terms[it->second].coeff += c.coeff;
    }
  }
  std::vector<Term> kept;
  for (auto& t : out.terms)
    if (!t.coeff.isZero()) kept.push_back(t);
  std::sort(kept.begin(), kept.end(),
            [](const Term& a, const Term& b) { return encodeShape(a) < encodeShape(b); });
  out.terms = std::move(kept);
  return out;
}

void mergeInto(OperatorExpr& a, const OperatorExpr& b) {
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  a.absorbRemainder(b);
  a = canonicalize(a);
}

OperatorExpr truncate(const OperatorExpr& e, int cutoff, const std::string& note) {
  OperatorExpr out;
  out.remainder = e.remainder;
  for (auto& t : e.terms) {
    if (t.weight() < cutoff)
      out.addRemainder({t.weight(), t.expd, note});
    else
      out.terms.push_back(t);
  }
  return out;
}

OperatorExpr projectDegrees(const OperatorExpr& e, int qin, int qout) {
  OperatorExpr out;
  out.remainder = e.remainder;
  for (auto& t : e.terms) {
    int deg = 2 * qin;
    bool ok = true;
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
      if (killsDegreeZero(*it) && deg == 0) {
        ok = false;
        break;
      }
      deg += formDelta(*it);
      if (deg < 0) {
        ok = false;
        break;
      }
    }
    if (ok && deg == 2 * qout) out.terms.push_back(t);
  }
  return out;
}

std::vector<std::pair<int, OperatorExpr>> chargeSplit(const OperatorExpr& e) {
  std::map<int, OperatorExpr> parts;
  for (auto& t : e.terms) parts[t.charge()].terms.push_back(t);
  std::vector<std::pair<int, OperatorExpr>> out;
  for (auto& [c, ex] : parts) {
    OperatorExpr v = ex;
    v.remainder = e.remainder;
    out.emplace_back(c, std::move(v));
  }
  return out;
}

OperatorExpr chargeComponent(const OperatorExpr& e, int charge) {
  OperatorExpr out;
  out.remainder = e.remainder;
  for (auto& t : e.terms)
    if (t.charge() == charge) out.terms.push_back(t);
  return out;
}

OperatorExpr scale(const OperatorExpr& e, const Coeff& c) {
  OperatorExpr out = e;
  for (auto& t : out.terms) t.coeff *= c;
  return canonicalize(out);
}

OperatorExpr zeroAtomKinds(const OperatorExpr& e, const std::set<AtomKind>& kinds) {
  OperatorExpr out;
  out.remainder = e.remainder;
  for (auto& t : e.terms) {
    bool hit = false;
    for (auto& a : t.word)
      if (kinds.count(a.kind)) {
        hit = true;
        break;
      }
    if (!hit) out.terms.push_back(t);
  }
  return out;
}

}  // namespace bergex
