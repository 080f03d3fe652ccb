// Core term algebra: graded monomial differential operators with abstract
// indices, noncommutative curvature words, and a remainder ledger.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "coeff.hpp"

namespace bergex {

struct structural_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct regime_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Flavor : uint8_t { Holo, Anti };

inline Flavor conjFlavor(Flavor f) { return f == Flavor::Holo ? Flavor::Anti : Flavor::Holo; }

// An abstract index occurrence. Bound occurrences share a class id (Einstein
// pair); free occurrences carry an interned name id. A bound class with one
// holomorphic and one antiholomorphic occurrence is a metric contraction;
// same-flavor pairs are plain component sums.
struct Ix {
  Flavor fl = Flavor::Holo;
  int label = 0;
  bool bound = true;

  bool operator==(const Ix& o) const { return fl == o.fl && label == o.label && bound == o.bound; }
};

// Free-index name interning (tiny table, engine-global).
int internName(const std::string& name);
const std::string& nameOf(int id);

inline Ix boundIx(Flavor f, int cls) { return Ix{f, cls, true}; }
inline Ix freeIx(Flavor f, const std::string& n) { return Ix{f, internName(n), false}; }

enum class AtomKind : uint8_t {
  F02,
  F20,
  F11,
  FE,
  Ric,
  Riem,
  Fhat,
  WedgeZbar,
  CoWedgeZbar,
  Hvar,
  GDotVar,
};

const char* kindName(AtomKind k);
std::optional<AtomKind> kindFromName(const std::string& s);

// One letter of a curvature word.
//  - derivs: ordered covariant-derivative decorations (application order).
//  - slots: argument slots. For F02/F20 a slot is a contraction of the form
//    part (i_Z), so it changes the form degree; for FE/Ric/Riem/Hvar/GDotVar
//    slots are tensor arguments.
//  - star: adjoint wedge operator (e* instead of e) for F02/F20.
struct Atom {
  AtomKind kind = AtomKind::F02;
  bool star = false;
  std::vector<Ix> derivs;
  std::vector<Ix> slots;

  bool operator==(const Atom& o) const {
    return kind == o.kind && star == o.star && derivs == o.derivs && slots == o.slots;
  }
};

// Signed change of antiholomorphic form degree, determined by (kind, star,
// slot count).
int formDelta(const Atom& a);
// Central (scalar) atoms commute with every other letter.
bool isCentral(const Atom& a);
// Operators that annihilate (0,0)-forms (pure contraction at degree zero).
bool killsDegreeZero(const Atom& a);

Atom mkAtom(AtomKind k, std::vector<Ix> derivs = {}, std::vector<Ix> slots = {}, bool star = false);

struct Term {
  Coeff coeff;
  int kPow = 0;
  int expd = 0;  // scalar factor e^{4*expd*tk}
  int tPow = 0;
  std::vector<Ix> zMono;     // holomorphic coordinate factors
  std::vector<Ix> zbarMono;  // antiholomorphic coordinate factors
  std::vector<Ix> dz;        // holomorphic derivatives
  std::vector<Ix> dzbar;     // antiholomorphic derivatives
  std::vector<Atom> word;

  int weight() const {
    return 2 * kPow - int(zMono.size()) - int(zbarMono.size()) + int(dz.size()) +
           int(dzbar.size()) - 2 * tPow;
  }
  int charge() const {
    return (int(zMono.size()) - int(dz.size())) - (int(zbarMono.size()) - int(dzbar.size()));
  }
  int wordFormDelta() const {
    int d = 0;
    for (auto& a : word) d += formDelta(a);
    return d;
  }
};

Term identityTerm();

struct RemainderClass {
  int weightBound = 0;
  int expdBound = 0;
  std::string note;

  bool operator<(const RemainderClass& o) const {
    if (weightBound != o.weightBound) return weightBound < o.weightBound;
    if (expdBound != o.expdBound) return expdBound < o.expdBound;
    return note < o.note;
  }
  bool operator==(const RemainderClass& o) const {
    return weightBound == o.weightBound && expdBound == o.expdBound && note == o.note;
  }
};

class OperatorExpr {
 public:
  std::vector<Term> terms;
  std::set<RemainderClass> remainder;

  static OperatorExpr identity() {
    OperatorExpr e;
    e.terms.push_back(identityTerm());
    return e;
  }
  static OperatorExpr zero() { return OperatorExpr{}; }

  bool isZero() const { return terms.empty(); }
  void addRemainder(RemainderClass rc) { remainder.insert(std::move(rc)); }
  void absorbRemainder(const OperatorExpr& o) {
    remainder.insert(o.remainder.begin(), o.remainder.end());
  }
};

// Canonical form: antisymmetric slot order fixed, adjacent wedge runs sorted
// with tracked sign, central letters fronted, bound classes renamed by a
// deterministic scheme. Returns the canonicalized term (coeff may flip sign
// or become zero). Throws structural_error on malformed bindings.
Term canonicalize(const Term& t);

// Stable printable encoding of an already-canonical term (coefficient
// excluded); used as merge key and for deterministic ordering.
std::string encodeShape(const Term& t);

// Canonicalize every term and merge structurally equal ones.
OperatorExpr canonicalize(const OperatorExpr& e);

// Merge-add terms of b into a (both canonical).
void mergeInto(OperatorExpr& a, const OperatorExpr& b);

// Drop terms of weight < cutoff into the remainder ledger.
OperatorExpr truncate(const OperatorExpr& e, int cutoff, const std::string& note);

// Keep the terms whose word maps (0,2*qin)-forms to (0,2*qout)-forms.
OperatorExpr projectDegrees(const OperatorExpr& e, int qin, int qout);

// Partition by charge.
std::vector<std::pair<int, OperatorExpr>> chargeSplit(const OperatorExpr& e);
OperatorExpr chargeComponent(const OperatorExpr& e, int charge);

// Multiply by a plain coefficient / scalar factors.
OperatorExpr scale(const OperatorExpr& e, const Coeff& c);

// Zero out all atoms of the given kinds (flat-model reduction helper).
OperatorExpr zeroAtomKinds(const OperatorExpr& e, const std::set<AtomKind>& kinds);

// Validation helper: every bound class must have exactly two occurrences.
void checkBindings(const Term& t);

}  // namespace bergex
