#include "expansion.hpp"

#include <algorithm>
#include <map>

#include "compose.hpp"
#include "serialize.hpp"

namespace bergex {

OperatorExpr ExpansionReport::block(int l, int qout, int qin) const {
  const OperatorExpr& ul = u.at(size_t(l));
  // a parked boundary-class term that acts nontrivially on the requested
  // domain means this block is not computable in the tk >> 1 regime
  for (auto& p : parked) {
    OperatorExpr act = projectDegrees(p, qin, qout);
    if (!act.isZero())
      throw regime_error("boundary-class term required for block (" + std::to_string(qout) +
                         "," + std::to_string(qin) + "): " + encodeShape(act.terms.front()));
  }
  return projectDegrees(ul, qin, qout);
}

OperatorExpr ExpansionReport::block(int l, int qout, int qin, int charge) const {
  return chargeComponent(block(l, qout, qin), charge);
}

ExpansionReport computeU(int level, const HamiltonianData& h, int cutoff) {
  ExpansionReport rep;
  rep.level = level;
  rep.cutoff = cutoff;
  OperatorExpr hop = truncate(h.assemble(), cutoff, "H truncation");
  rep.u.push_back(OperatorExpr::identity());
  for (int l = 0; l < level; ++l) {
    OperatorExpr prod = compose(hop, rep.u.back(), cutoff + 2);
    LinvResult inv = linvAsymptotic(prod, cutoff);
    OperatorExpr next = scale(inv.value, Coeff(Rat(-1)));
    next.absorbRemainder(inv.value);
    rep.parked.push_back(inv.boundary);
    // membership check: u_{l+1} lies in filtration level -2(l+1)
    for (auto& t : next.terms)
      if (t.weight() > -2 * (l + 1))
        throw structural_error("filtration violation at level " + std::to_string(l + 1) + ": " +
                               encodeShape(t));
    rep.u.push_back(std::move(next));
  }
  return rep;
}

OperatorExpr chainU(const std::vector<OperatorExpr>& pieces, int cutoff) {
  OperatorExpr cur = OperatorExpr::identity();
  for (auto& p : pieces) {
    OperatorExpr prod = compose(p, cur, cutoff + 2);
    LinvResult inv = linvAsymptotic(prod, cutoff);
    if (!inv.boundary.isZero())
      throw regime_error("boundary-class term in chain: " +
                         encodeShape(inv.boundary.terms.front()));
    cur = scale(inv.value, Coeff(Rat(-1)));
  }
  return cur;
}

namespace {

std::string wordLatex(const Term& t) {
  Term w;
  w.coeff = Coeff(1);
  w.word = t.word;
  return toLatex(w);
}

}  // namespace

std::vector<PairEntry> pairBlocks(const OperatorExpr& a, const OperatorExpr& b) {
  // <a, b> under the diagonal Gaussian:
  //   int e^{-k|z|^2/2} conj(mono_a) mono_b dx = [matched] J! (2/k)^{|J|} (2pi/k)^m,
  // folded against the (k/(2pi))^{2m} U^2 e^{2kt(m-4q)} prefactor, so the
  // k-exponent of a pair is m + p1 + p2 - j.
  std::map<std::pair<int, std::string>, PairEntry> acc;
  for (auto& t1 : a.terms) {
    for (auto& t2 : b.terms) {
      if (t1.charge() != t2.charge()) continue;  // exact orthogonality
      size_t nz = t1.zbarMono.size() + t2.zMono.size();
      size_t nzb = t1.zMono.size() + t2.zbarMono.size();
      if (nz != nzb) continue;
      if (t1.tPow != t2.tPow) continue;
      const int j = int(nz);
      long matchings = 1;
      for (int i = j; i > 1; --i) matchings *= i;
      Rat cf = t1.coeff.rational() * t2.coeff.rational();
      if (cf == 0) continue;
      cf *= matchings;
      for (int i = 0; i < j; ++i) cf *= 2;  // (2/k)^j
      int kexp = t1.kPow + t2.kPow - j;
      std::string fn = "\\langle " + wordLatex(t1) + ", " + wordLatex(t2) + " \\rangle";
      auto key = std::make_pair(kexp, fn);
      auto it = acc.find(key);
      if (it == acc.end())
        acc[key] = PairEntry{cf, kexp, fn};
      else
        it->second.coeff += cf;
    }
  }
  std::vector<PairEntry> out;
  for (auto& [k, v] : acc)
    if (v.coeff != 0) out.push_back(v);
  return out;
}

bool crossPairingVanishes(const OperatorExpr& a, const OperatorExpr& b) {
  for (auto& t1 : a.terms)
    for (auto& t2 : b.terms)
      if (t1.charge() == t2.charge() &&
          t1.zbarMono.size() + t2.zMono.size() == t1.zMono.size() + t2.zbarMono.size())
        return false;
  return true;
}

NormCoefficient hsLeading(int qout, int qin, const Preset& preset, const HamiltonianData& h) {
  if (qin != 0)
    throw unsupported_error(
        "hsLeading: blocks with nonzero input degree need boundary-class data "
        "outside the tk >> 1 regime");
  const int lstar = qout;
  const int cutoff = -2 * lstar - 2;
  ExpansionReport rep = computeU(lstar, h, cutoff);
  OperatorExpr blk = rep.block(lstar, qout, qin);
  // only the e^{4 qout kt} scale survives the e^{2kt(m-4 qout)} weighting
  OperatorExpr filtered;
  filtered.remainder = blk.remainder;
  for (auto& t : blk.terms)
    if (t.expd == qout) filtered.terms.push_back(t);
  OperatorExpr norm = normalize(filtered, preset);
  if (norm.isZero()) {
    NormCoefficient nc;
    nc.rational = 0;
    nc.kExpConst = cutoff;
    nc.note = "block vanishes under preset " + preset.name + " down to weight " +
              std::to_string(cutoff);
    return nc;
  }
  int wstar = -1000000;
  for (auto& t : norm.terms) wstar = std::max(wstar, t.weight());
  OperatorExpr lead;
  for (auto& t : norm.terms)
    if (t.weight() == wstar) lead.terms.push_back(t);

  NormCoefficient nc;
  nc.kExpConst = wstar;
  for (auto& t : lead.terms) nc.parts.emplace_back(t.coeff.rational(), wordLatex(t));
  auto entries = pairBlocks(lead, lead);
  if (entries.size() == 1 && lead.terms.size() == 1) {
    nc.rational = entries[0].coeff;
    nc.functional = "\\|" + wordLatex(lead.terms[0]) + "\\|^2";
  } else {
    Rat tot = 0;
    std::string fn = "\\|";
    for (size_t i = 0; i < lead.terms.size(); ++i)
      fn += (i ? " + " : "") + lead.terms[i].coeff.rational().str() + "\\," +
            wordLatex(lead.terms[i]);
    fn += "\\|^2";
    nc.functional = fn;
    for (auto& e : entries) tot += e.coeff;
    nc.rational = tot;  // diagonal aggregate; parts carry the array
  }
  return nc;
}

NormCoefficient traceLeading() {
  NormCoefficient nc;
  nc.rational = 1;
  nc.kExpConst = 0;
  nc.functional = "\\mathrm{Vol}(M)\\,\\mathrm{rk}(E)";
  nc.note = "coefficient carries the implicit (2\\pi)^{-m}";
  return nc;
}

OrderEstimate orderEstimate(int qout, int qin, const Preset& preset, const HamiltonianData&) {
  // weight bookkeeping: the first non-suppressed level of the (2qout, 2qin)
  // block is qout + qin; its leading word is qout raising letters followed by
  // qin lowering letters. Relation-induced vanishing of that word costs one
  // more weight.
  OrderEstimate oe;
  const int lstar = qout + qin;
  if (lstar == 0) {
    oe.kExpConst = 0;
    oe.expDecaying = false;
    return oe;
  }
  Term lead;
  lead.coeff = Coeff(1);
  lead.kPow = -lstar;
  lead.expd = qout - qin;
  for (int i = 0; i < qout; ++i) lead.word.push_back(mkAtom(AtomKind::F02));
  for (int i = 0; i < qin; ++i) lead.word.push_back(mkAtom(AtomKind::F02, {}, {}, true));
  OperatorExpr e;
  e.terms.push_back(lead);
  OperatorExpr n = normalize(e, preset);
  oe.kExpConst = n.isZero() ? (-2 * lstar - 1) : (-2 * lstar);
  oe.expDecaying = false;
  return oe;
}

}  // namespace bergex
