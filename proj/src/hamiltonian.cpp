#include "hamiltonian.hpp"

namespace bergex {

namespace {

constexpr Flavor H = Flavor::Holo;
constexpr Flavor A = Flavor::Anti;

Ix b(Flavor f, int cls) { return boundIx(f, cls); }

struct TB {  // term builder
  Term t;
  TB(Rat c, int kPow = 0, int expd = 0) {
    t.coeff = Coeff(c);
    t.kPow = kPow;
    t.expd = expd;
  }
  TB& z(int cls) { t.zMono.push_back(b(H, cls)); return *this; }
  TB& zb(int cls) { t.zbarMono.push_back(b(A, cls)); return *this; }
  TB& d(int cls) { t.dz.push_back(b(H, cls)); return *this; }
  TB& db(int cls) { t.dzbar.push_back(b(A, cls)); return *this; }
  TB& atom(AtomKind k, std::vector<Ix> slots, std::vector<Ix> derivs = {}, bool star = false) {
    t.word.push_back(mkAtom(k, std::move(derivs), std::move(slots), star));
    return *this;
  }
};

void push(std::vector<HDatum>& v, const std::string& tag, const TB& tb) {
  v.push_back({tag, tb.t});
}

}  // namespace

OperatorExpr HamiltonianData::assemble() const {
  OperatorExpr e;
  auto add = [&](const std::vector<HDatum>& v) {
    for (auto& d : v) e.terms.push_back(d.term);
  };
  add(charge0Terms);
  add(chargePlus2Terms);
  add(chargeMinus2Terms);
  if (includeDeltaH) add(deltaHTerms);
  add(creation);
  add(annihilation);
  e.addRemainder({weightCutoff - 1, 0, "H display tail (O(r^2 grad + ...) lines)"});
  if (taylorOrder < 2)
    e.addRemainder({-taylorOrder - 1, 1, "wedge family Taylor tail"});
  return canonicalize(e);
}

std::vector<const HDatum*> HamiltonianData::all() const {
  std::vector<const HDatum*> v;
  for (auto* list : {&charge0Terms, &chargePlus2Terms, &chargeMinus2Terms, &deltaHTerms,
                     &creation, &annihilation})
    for (auto& d : *list) v.push_back(&d);
  return v;
}

HamiltonianData buildH(int taylorOrder, int cutoff, bool includeDeltaH) {
  if (taylorOrder < 0 || cutoff > 0) throw unsupported_error("buildH: bad arguments");
  if (taylorOrder > 2)
    throw unsupported_error("buildH: wedge-family Taylor data transcribed to order 2 only");

  HamiltonianData hd;
  hd.taylorOrder = taylorOrder;
  hd.weightCutoff = cutoff;
  hd.includeDeltaH = includeDeltaH;

  auto& c0 = hd.charge0Terms;

  // ---- weight-0 second-order block ----
  // Indices are small per-term class ids; canonicalize renames them.
  push(c0, "hh.1",
       TB(Rat(-8, 3)).z(2).zb(1).db(0).d(3).atom(
           AtomKind::Riem, {b(H, 0), b(A, 1), b(H, 2), b(A, 3)}));
  push(c0, "hh.2",
       TB(Rat(-4, 3)).zb(1).zb(2).db(0).db(3).atom(
           AtomKind::Riem, {b(H, 0), b(A, 1), b(A, 2), b(H, 3)}));
  push(c0, "hh.3",
       TB(Rat(-4, 3)).z(1).z(2).d(0).d(3).atom(
           AtomKind::Riem, {b(A, 0), b(H, 1), b(H, 2), b(A, 3)}));
  push(c0, "hh.4", TB(Rat(4, 3)).zb(0).db(1).atom(AtomKind::Ric, {b(A, 0), b(H, 1)}));
  push(c0, "hh.5", TB(Rat(4, 3)).z(0).d(1).atom(AtomKind::Ric, {b(H, 0), b(A, 1)}));
  push(c0, "hh.6",
       TB(Rat(-2, 3), 1).z(0).z(2).zb(3).d(1).atom(
           AtomKind::Riem, {b(H, 0), b(A, 1), b(H, 2), b(A, 3)}));
  push(c0, "hh.7",
       TB(Rat(2, 3), 1).zb(0).zb(2).z(3).db(1).atom(
           AtomKind::Riem, {b(A, 0), b(H, 1), b(A, 2), b(H, 3)}));
  push(c0, "hh.8",
       TB(Rat(1, 3), 1).z(2).zb(3).zb(1).db(0).atom(
           AtomKind::Riem, {b(H, 0), b(A, 1), b(H, 2), b(A, 3)}));
  push(c0, "hh.9",
       TB(Rat(1, 3), 1).z(2).zb(3).z(1).d(0).atom(
           AtomKind::Riem, {b(A, 0), b(H, 1), b(H, 2), b(A, 3)}));
  // radial F^E / R first-order couplings
  push(c0, "hh.10a", TB(Rat(-2)).z(0).d(1).atom(AtomKind::FE, {b(H, 0), b(A, 1)}));
  push(c0, "hh.10c", TB(Rat(-2)).z(0).d(1).atom(AtomKind::Riem, {b(H, 0), b(A, 1)}));
  push(c0, "hh.11a", TB(Rat(-2)).zb(0).db(1).atom(AtomKind::FE, {b(A, 0), b(H, 1)}));
  push(c0, "hh.11c", TB(Rat(-2)).zb(0).db(1).atom(AtomKind::Riem, {b(A, 0), b(H, 1)}));
  // zero-order potential couplings
  push(c0, "hh.12a", TB(Rat(1), 1).z(0).zb(1).atom(AtomKind::FE, {b(H, 0), b(A, 1)}));
  push(c0, "hh.12b", TB(Rat(1), 1).z(0).zb(1).atom(AtomKind::Riem, {b(H, 0), b(A, 1)}));
  push(c0, "hh.13",
       TB(Rat(1, 6), 2).z(2).z(0).zb(3).zb(1).atom(
           AtomKind::Riem, {b(H, 0), b(A, 1), b(H, 2), b(A, 3)}));
  push(c0, "hh.14", TB(Rat(1)).atom(AtomKind::Fhat, {}));
  push(c0, "hh.15", TB(Rat(-1, 3), 1).zb(0).z(1).atom(AtomKind::Ric, {b(A, 0), b(H, 1)}));

  // the two weight-0 terms of nonzero charge
  push(hd.chargeMinus2Terms, "hh.10b",
       TB(Rat(-2)).zb(0).d(1).atom(AtomKind::F02, {b(A, 0), b(A, 1)}));
  push(hd.chargePlus2Terms, "hh.11b",
       TB(Rat(-2)).z(0).db(1).atom(AtomKind::F20, {b(H, 0), b(H, 1)}));

  // ---- weight -1 block (radial-derivative data) ----
  auto& dh = hd.deltaHTerms;
  auto radialSplit = [&](const std::string& tag, const TB& protoZ, const TB& protoZb) {
    push(dh, tag + ".z", protoZ);
    push(dh, tag + ".zb", protoZb);
  };
  // nabla_{r dr} R couplings of the hh.6/hh.7 shape
  radialSplit("dh.1",
              TB(Rat(-1, 3), 1).z(0).z(2).zb(3).z(4).d(1).atom(
                  AtomKind::Riem, {b(H, 0), b(A, 1), b(H, 2), b(A, 3)}, {b(H, 4)}),
              TB(Rat(-1, 3), 1).z(0).z(2).zb(3).zb(4).d(1).atom(
                  AtomKind::Riem, {b(H, 0), b(A, 1), b(H, 2), b(A, 3)}, {b(A, 4)}));
  radialSplit("dh.2",
              TB(Rat(1, 3), 1).zb(0).zb(2).z(3).z(4).db(1).atom(
                  AtomKind::Riem, {b(A, 0), b(H, 1), b(A, 2), b(H, 3)}, {b(H, 4)}),
              TB(Rat(1, 3), 1).zb(0).zb(2).z(3).zb(4).db(1).atom(
                  AtomKind::Riem, {b(A, 0), b(H, 1), b(A, 2), b(H, 3)}, {b(A, 4)}));
  radialSplit("dh.3",
              TB(Rat(1, 5), 1).z(2).zb(3).zb(1).z(4).db(0).atom(
                  AtomKind::Riem, {b(H, 0), b(A, 1), b(H, 2), b(A, 3)}, {b(H, 4)}),
              TB(Rat(1, 5), 1).z(2).zb(3).zb(1).zb(4).db(0).atom(
                  AtomKind::Riem, {b(H, 0), b(A, 1), b(H, 2), b(A, 3)}, {b(A, 4)}));
  radialSplit("dh.4",
              TB(Rat(1, 5), 1).z(2).zb(3).z(1).z(4).d(0).atom(
                  AtomKind::Riem, {b(A, 0), b(H, 1), b(H, 2), b(A, 3)}, {b(H, 4)}),
              TB(Rat(1, 5), 1).z(2).zb(3).z(1).zb(4).d(0).atom(
                  AtomKind::Riem, {b(A, 0), b(H, 1), b(H, 2), b(A, 3)}, {b(A, 4)}));
  // frame-contracted divergence couplings
  radialSplit("dh.5",
              TB(Rat(-1, 10), 1).z(2).zb(3).z(1).atom(
                  AtomKind::Riem, {b(A, 0), b(H, 1), b(H, 2), b(A, 3)}, {b(H, 0)}),
              TB(Rat(-1, 10), 1).z(2).zb(3).zb(1).atom(
                  AtomKind::Riem, {b(H, 0), b(A, 1), b(H, 2), b(A, 3)}, {b(A, 0)}));
  radialSplit("dh.6a",
              TB(Rat(2, 3)).z(1).atom(AtomKind::FE, {b(A, 0), b(H, 1)}, {b(H, 0)}),
              TB(Rat(2, 3)).zb(1).atom(AtomKind::FE, {b(H, 0), b(A, 1)}, {b(A, 0)}));
  radialSplit("dh.6b",
              TB(Rat(2, 3)).z(1).atom(AtomKind::Riem, {b(A, 0), b(H, 1)}, {b(H, 0)}),
              TB(Rat(2, 3)).zb(1).atom(AtomKind::Riem, {b(H, 0), b(A, 1)}, {b(A, 0)}));
  radialSplit("dh.7",
              TB(Rat(-1, 12), 1).zb(0).z(1).z(2).atom(
                  AtomKind::Ric, {b(A, 0), b(H, 1)}, {b(H, 2)}),
              TB(Rat(-1, 12), 1).zb(0).z(1).zb(2).atom(
                  AtomKind::Ric, {b(A, 0), b(H, 1)}, {b(A, 2)}));
  radialSplit("dh.8a",
              TB(Rat(2, 3), 1).z(0).zb(1).z(2).atom(AtomKind::FE, {b(H, 0), b(A, 1)}, {b(H, 2)}),
              TB(Rat(2, 3), 1).z(0).zb(1).zb(2).atom(AtomKind::FE, {b(H, 0), b(A, 1)}, {b(A, 2)}));
  radialSplit("dh.8b",
              TB(Rat(2, 3), 1).z(0).zb(1).z(2).atom(AtomKind::Riem, {b(H, 0), b(A, 1)}, {b(H, 2)}),
              TB(Rat(2, 3), 1).z(0).zb(1).zb(2).atom(
                  AtomKind::Riem, {b(H, 0), b(A, 1)}, {b(A, 2)}));
  radialSplit("dh.9",
              TB(Rat(1, 10), 2).z(2).z(0).zb(3).zb(1).z(4).atom(
                  AtomKind::Riem, {b(H, 0), b(A, 1), b(H, 2), b(A, 3)}, {b(H, 4)}),
              TB(Rat(1, 10), 2).z(2).z(0).zb(3).zb(1).zb(4).atom(
                  AtomKind::Riem, {b(H, 0), b(A, 1), b(H, 2), b(A, 3)}, {b(A, 4)}));

  // ---- degree-raising family: 2 e^{4kt} conjugated wedge, Taylor data ----
  auto& cr = hd.creation;
  push(cr, "cr.0", TB(Rat(2), 0, 1).atom(AtomKind::F02, {}));
  if (taylorOrder >= 1) {
    push(cr, "cr.z", TB(Rat(2), 0, 1).z(0).atom(AtomKind::F02, {}, {b(H, 0)}));
    push(cr, "cr.zb", TB(Rat(2), 0, 1).zb(0).atom(AtomKind::F02, {}, {b(A, 0)}));
  }
  if (taylorOrder >= 2) {
    push(cr, "cr.zz.a",
         TB(Rat(1, 2), 0, 1).z(0).z(1).atom(AtomKind::F02, {}, {b(H, 0), b(H, 1)}));
    push(cr, "cr.zz.b",
         TB(Rat(1, 2), 0, 1).z(0).z(1).atom(AtomKind::F02, {}, {b(H, 1), b(H, 0)}));
    push(cr, "cr.zzb.a",
         TB(Rat(1), 0, 1).z(0).zb(1).atom(AtomKind::F02, {}, {b(H, 0), b(A, 1)}));
    push(cr, "cr.zzb.b",
         TB(Rat(1), 0, 1).z(0).zb(1).atom(AtomKind::F02, {}, {b(A, 1), b(H, 0)}));
    push(cr, "cr.zbzb",
         TB(Rat(1), 0, 1).zb(0).zb(1).atom(AtomKind::F02, {}, {b(A, 0), b(A, 1)}));
  }

  // ---- degree-lowering family: 2 e^{-4kt}, adjoint letters ----
  auto& an = hd.annihilation;
  auto st = [](TB tb) {
    tb.t.word.back().star = true;
    return tb;
  };
  push(an, "an.0", st(TB(Rat(2), 0, -1).atom(AtomKind::F02, {})));
  if (taylorOrder >= 1) {
    push(an, "an.z", st(TB(Rat(2), 0, -1).z(0).atom(AtomKind::F02, {}, {b(H, 0)})));
    push(an, "an.zb", st(TB(Rat(2), 0, -1).zb(0).atom(AtomKind::F02, {}, {b(A, 0)})));
  }
  if (taylorOrder >= 2) {
    push(an, "an.zz.a",
         st(TB(Rat(1, 2), 0, -1).z(0).z(1).atom(AtomKind::F02, {}, {b(H, 0), b(H, 1)})));
    push(an, "an.zz.b",
         st(TB(Rat(1, 2), 0, -1).z(0).z(1).atom(AtomKind::F02, {}, {b(H, 1), b(H, 0)})));
    push(an, "an.zzb.a",
         st(TB(Rat(1), 0, -1).z(0).zb(1).atom(AtomKind::F02, {}, {b(H, 0), b(A, 1)})));
    push(an, "an.zzb.b",
         st(TB(Rat(1), 0, -1).z(0).zb(1).atom(AtomKind::F02, {}, {b(A, 1), b(H, 0)})));
    push(an, "an.zbzb",
         st(TB(Rat(1), 0, -1).zb(0).zb(1).atom(AtomKind::F02, {}, {b(A, 0), b(A, 1)})));
  }

  return hd;
}

std::vector<std::pair<int, OperatorExpr>> chargeSplitH(const HamiltonianData& h) {
  return chargeSplit(h.assemble());
}

}  // namespace bergex
