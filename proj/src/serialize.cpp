#include "serialize.hpp"

#include <sstream>

namespace bergex {

namespace {

// index string form: "h3"/"a3" bound, "h:name"/"a:name" free
std::string ixStr(const Ix& ix) {
  std::string s(1, ix.fl == Flavor::Holo ? 'h' : 'a');
  if (ix.bound) return s + std::to_string(ix.label);
  return s + ":" + nameOf(ix.label);
}

Ix ixParse(const std::string& s) {
  if (s.empty()) throw structural_error("empty index");
  Flavor fl = s[0] == 'h' ? Flavor::Holo : Flavor::Anti;
  if (s.size() > 1 && s[1] == ':') return freeIx(fl, s.substr(2));
  return boundIx(fl, std::stoi(s.substr(1)));
}

Json ixListJson(const std::vector<Ix>& v) {
  Json j = Json::array();
  for (auto& ix : v) j.push_back(ixStr(ix));
  return j;
}

std::vector<Ix> ixListParse(const Json& j) {
  std::vector<Ix> v;
  for (auto& e : j) v.push_back(ixParse(e.get<std::string>()));
  return v;
}

std::string coeffStr(const Coeff& c) { return c.str(); }

Coeff coeffParse(const std::string& s) {
  // "p/q" or polynomial "p/q + p'/q'*m^d"
  Coeff out;
  std::stringstream ss(s);
  auto flush = [&](const std::string& piece) {
    if (piece.empty()) return;
    size_t star = piece.find('*');
    Rat r(piece.substr(0, star));
    int deg = 0;
    if (star != std::string::npos) {
      std::string mm = piece.substr(star + 1);
      deg = (mm == "m") ? 1 : std::stoi(mm.substr(2));  // "m" or "m^d"
    }
    out += Coeff::mono(deg, r);
  };
  std::string token;
  while (std::getline(ss, token, '+')) {
    size_t b = token.find_first_not_of(' ');
    size_t e = token.find_last_not_of(' ');
    if (b == std::string::npos) continue;
    flush(token.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

Json toJson(const Ix& ix) { return ixStr(ix); }

Json toJson(const Atom& a) {
  Json j;
  j["kind"] = kindName(a.kind);
  if (a.star) j["star"] = true;
  j["derivs"] = ixListJson(a.derivs);
  j["slots"] = ixListJson(a.slots);
  j["formDelta"] = formDelta(a);
  return j;
}

Json toJson(const Term& t) {
  Json j;
  j["coeff"] = coeffStr(t.coeff);
  j["kPow"] = t.kPow;
  j["expd"] = t.expd;
  j["tPow"] = t.tPow;
  j["zMono"] = ixListJson(t.zMono);
  j["zbarMono"] = ixListJson(t.zbarMono);
  j["dz"] = ixListJson(t.dz);
  j["dzbar"] = ixListJson(t.dzbar);
  Json w = Json::array();
  for (auto& a : t.word) w.push_back(toJson(a));
  j["word"] = w;
  return j;
}

Json toJson(const OperatorExpr& e) {
  Json j;
  Json ts = Json::array();
  for (auto& t : e.terms) ts.push_back(toJson(t));
  j["terms"] = ts;
  Json rs = Json::array();
  for (auto& r : e.remainder) {
    Json rj;
    rj["weightBound"] = r.weightBound;
    rj["expdBound"] = r.expdBound;
    rj["note"] = r.note;
    rs.push_back(rj);
  }
  j["remainder"] = rs;
  return j;
}

Ix ixFromJson(const Json& j) { return ixParse(j.get<std::string>()); }

Atom atomFromJson(const Json& j) {
  Atom a;
  auto k = kindFromName(j.at("kind").get<std::string>());
  if (!k) throw structural_error("unknown atom kind " + j.at("kind").get<std::string>());
  a.kind = *k;
  a.star = j.value("star", false);
  a.derivs = ixListParse(j.at("derivs"));
  a.slots = ixListParse(j.at("slots"));
  if (j.contains("formDelta") && j.at("formDelta").get<int>() != formDelta(a))
    throw structural_error("formDelta mismatch for atom " + std::string(kindName(a.kind)));
  return a;
}

Term termFromJson(const Json& j) {
  Term t;
  t.coeff = coeffParse(j.at("coeff").get<std::string>());
  t.kPow = j.at("kPow").get<int>();
  t.expd = j.at("expd").get<int>();
  t.tPow = j.value("tPow", 0);
  t.zMono = ixListParse(j.at("zMono"));
  t.zbarMono = ixListParse(j.at("zbarMono"));
  t.dz = ixListParse(j.at("dz"));
  t.dzbar = ixListParse(j.at("dzbar"));
  for (auto& w : j.at("word")) t.word.push_back(atomFromJson(w));
  return t;
}

OperatorExpr exprFromJson(const Json& j) {
  OperatorExpr e;
  for (auto& tj : j.at("terms")) e.terms.push_back(termFromJson(tj));
  if (j.contains("remainder"))
    for (auto& rj : j.at("remainder"))
      e.addRemainder({rj.at("weightBound").get<int>(), rj.at("expdBound").get<int>(),
                      rj.at("note").get<std::string>()});
  return e;
}

namespace {

std::string ixLatex(const Ix& ix) {
  static const char* names = "abcefgjluvpq";
  std::string n = ix.bound ? std::string(1, names[ix.label % 12]) : nameOf(ix.label);
  if (ix.fl == Flavor::Anti) return "\\bar " + n;
  return n;
}

std::string atomLatex(const Atom& a) {
  auto sub = [&]() {
    std::string s;
    if (!a.derivs.empty()) {
      s += ";";
      for (auto& d : a.derivs) s += ixLatex(d) + " ";
    }
    return s;
  };
  auto slotArgs = [&]() {
    std::string s;
    for (size_t i = 0; i < a.slots.size(); ++i)
      s += (i ? "," : "") + ixLatex(a.slots[i]);
    return s;
  };
  switch (a.kind) {
    case AtomKind::F02: {
      std::string core = "F^{0,2}_{A" + sub();
      if (!a.slots.empty()) core += " " + slotArgs();
      core += "}";
      if (a.slots.size() == 2) return core;  // plain component
      return (a.star ? "e^*(" : "e(") + core + ")";
    }
    case AtomKind::F20: {
      std::string core = "F^{2,0}_{A" + sub() + (a.slots.empty() ? "" : " " + slotArgs()) + "}";
      if (a.slots.size() == 2) return core;
      return (a.star ? "e^*(" : "e(") + core + ")";
    }
    case AtomKind::F11: return "F^{1,1}_{A}";
    case AtomKind::FE: return "F^{E}_{" + sub() + slotArgs() + "}";
    case AtomKind::Ric: return "\\mathrm{Ric}_{" + sub() + slotArgs() + "}";
    case AtomKind::Riem: return "R_{" + sub() + slotArgs() + "}";
    case AtomKind::Fhat: return "\\mathcal{\\hat F}";
    case AtomKind::WedgeZbar: return "e(d" + ixLatex(a.slots[0]) + ")";
    case AtomKind::CoWedgeZbar: return "e^*(d" + ixLatex(a.slots[0]) + ")";
    case AtomKind::Hvar: return "H_{," + slotArgs() + "}";
    case AtomKind::GDotVar: return "\\dot g^{" + slotArgs() + "}";
  }
  return "?";
}

}  // namespace

std::string toLatex(const Term& t) {
  std::string s;
  if (t.coeff.isRational()) {
    Rat r = t.coeff.rational();
    std::string num = numerator(r).str(), den = denominator(r).str();
    bool neg = false;
    if (!num.empty() && num[0] == '-') {
      neg = true;
      num = num.substr(1);
    }
    if (neg) s += "-";
    std::string kpart;
    if (t.kPow > 0) kpart = t.kPow == 1 ? "k" : "k^{" + std::to_string(t.kPow) + "}";
    std::string kden;
    if (t.kPow < 0) kden = t.kPow == -1 ? "k" : "k^{" + std::to_string(-t.kPow) + "}";
    std::string epart;
    if (t.expd != 0) epart = "e^{" + std::to_string(4 * t.expd) + "kt}";
    std::string numS = num;
    if (!epart.empty()) numS = (numS == "1" ? epart : numS + " " + epart);
    if (!kpart.empty()) numS += " " + kpart;
    std::string denS = den;
    if (!kden.empty()) denS = (denS == "1" ? kden : denS + " " + kden);
    if (denS == "1")
      s += numS == "1" ? "" : numS + "\\,";
    else
      s += "\\frac{" + numS + "}{" + denS + "}";
  } else {
    s += "(" + t.coeff.str() + ")";
    if (t.expd != 0) s += "e^{" + std::to_string(4 * t.expd) + "kt}";
    if (t.kPow) s += "k^{" + std::to_string(t.kPow) + "}";
  }
  if (t.tPow) s += "t^{" + std::to_string(t.tPow) + "}";
  for (auto& ix : t.zMono) s += "z^{" + ixLatex(ix) + "}";
  for (auto& ix : t.zbarMono) s += "\\bar z^{" + ixLatex(ix) + "}";
  for (auto& a : t.word) s += atomLatex(a);
  for (auto& ix : t.dz) s += "\\partial_{z^{" + ixLatex(ix) + "}}";
  for (auto& ix : t.dzbar) s += "\\partial_{\\bar z^{" + ixLatex(ix) + "}}";
  if (s.empty() || s == "-") s += "1";
  return s;
}

std::string toLatex(const OperatorExpr& e) {
  if (e.terms.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < e.terms.size(); ++i) {
    std::string ts = toLatex(e.terms[i]);
    if (i && !ts.empty() && ts[0] != '-') s += " + ";
    else if (i) s += " ";
    s += ts;
  }
  return s;
}

std::string toText(const OperatorExpr& e) {
  std::string s;
  for (auto& t : e.terms) {
    s += t.coeff.str();
    if (t.kPow) s += " k^" + std::to_string(t.kPow);
    if (t.expd) s += " E" + std::to_string(t.expd);
    if (t.tPow) s += " t^" + std::to_string(t.tPow);
    s += " " + encodeShape(t) + "\n";
  }
  if (e.terms.empty()) s = "0\n";
  return s;
}

}  // namespace bergex
