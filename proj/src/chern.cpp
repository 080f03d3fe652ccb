#include "chern.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace bergex {

namespace {

// ------- cyclic survey over the three curvature letters -------

char letterOf(AtomKind k) {
  switch (k) {
    case AtomKind::F20: return 'P';
    case AtomKind::F11: return 'M';
    case AtomKind::F02: return 'Z';
    default: return '?';
  }
}

std::string canonicalRotation(const std::string& w) {
  std::string best = w;
  for (size_t i = 1; i < w.size(); ++i) {
    std::string r = w.substr(i) + w.substr(0, i);
    if (r < best) best = r;
  }
  return best;
}

// kill patterns of the preset restricted to plain curvature letters
std::vector<std::string> plainKillPatterns(const Preset& p) {
  std::vector<std::string> pats;
  for (auto& r : p.rules) {
    if (!r.rhs.empty() || r.orderingRule) continue;
    std::string s;
    bool plain = true;
    for (auto& ap : r.lhs) {
      if (ap.star || !ap.derivs.empty() || !ap.slots.empty() ||
          (ap.kind != AtomKind::F02 && ap.kind != AtomKind::F11 && ap.kind != AtomKind::F20)) {
        plain = false;
        break;
      }
      s += letterOf(ap.kind);
    }
    if (plain && !s.empty()) pats.push_back(s);
  }
  return pats;
}

bool killedCyclically(const std::string& w, const std::vector<std::string>& pats) {
  std::string ww = w + w;
  for (auto& p : pats) {
    if (p.size() > w.size()) continue;
    for (size_t i = 0; i < w.size(); ++i)
      if (ww.compare(i, p.size(), p) == 0) return true;
  }
  return false;
}

}  // namespace

ChernSurvey chernWordSurvey(int p, const Preset& preset) {
  if (p < 1 || p > 8) throw unsupported_error("chernWordSurvey: p in [1,8]");
  ChernSurvey out;
  out.p = p;
  out.preset = preset.name;
  auto pats = plainKillPatterns(preset);

  std::set<std::string> classes;
  std::string w(size_t(p), 'P');
  const char letters[3] = {'P', 'M', 'Z'};
  std::function<void(int)> rec = [&](int i) {
    if (i == p) {
      classes.insert(canonicalRotation(w));
      return;
    }
    for (char c : letters) {
      w[size_t(i)] = c;
      rec(i + 1);
    }
  };
  rec(0);

  out.minHolo = 2 * p;
  for (auto& cls : classes) {
    if (killedCyclically(cls, pats)) continue;
    SurvivorClass sc;
    sc.rep = cls;
    sc.n20 = int(std::count(cls.begin(), cls.end(), 'P'));
    sc.n11 = int(std::count(cls.begin(), cls.end(), 'M'));
    sc.n02 = int(std::count(cls.begin(), cls.end(), 'Z'));
    sc.holoDeg = 2 * sc.n20 + sc.n11;
    sc.antiDeg = 2 * sc.n02 + sc.n11;
    out.maxF02 = std::max(out.maxF02, sc.n02);
    out.minHolo = std::min(out.minHolo, sc.holoDeg);
    out.survivors.push_back(std::move(sc));
  }
  return out;
}

// ------- formal trace calculus for the degree-six chain -------

namespace {

enum TL : uint8_t { L11, L02, L20, LD02 };

int degOf(TL l) { return l == LD02 ? 3 : 2; }
int holoOf(TL l) {
  switch (l) {
    case L11: return 1;
    case L02: return 0;
    case L20: return 2;
    case LD02: return 1;
  }
  return 0;
}
char chOf(TL l) {
  switch (l) {
    case L11: return 'M';
    case L02: return 'Z';
    case L20: return 'P';
    case LD02: return 'D';
  }
  return '?';
}

using TWord = std::vector<TL>;

std::string showWord(const TWord& w) {
  std::string s = "tr[";
  for (auto l : w) s += chOf(l);
  return s + "]";
}

// cyclic canonical form with graded signs; sign 0 means the class vanishes
std::pair<TWord, int> cyclicCanon(const TWord& w) {
  auto key = [](const TWord& v) {
    std::string s;
    for (auto l : v) s += chOf(l);
    return s;
  };
  int total = 0;
  for (auto l : w) total += degOf(l);
  TWord cur = w, best = w;
  int sign = 1, bestSign = 1;
  std::string bestKey = key(w);
  std::map<std::string, int> seen{{bestKey, 1}};
  for (size_t i = 1; i < w.size(); ++i) {
    TL first = cur.front();
    int rest = total - degOf(first);
    cur.erase(cur.begin());
    cur.push_back(first);
    if ((degOf(first) % 2) && (rest % 2)) sign = -sign;
    std::string k = key(cur);
    auto it = seen.find(k);
    if (it != seen.end() && it->second != sign) return {best, 0};  // self-negating class
    seen[k] = sign;
    if (k < bestKey) {
      bestKey = k;
      best = cur;
      bestSign = sign;
    }
  }
  return {best, bestSign};
}

struct TraceExpr {
  std::map<std::string, std::pair<Rat, TWord>> terms;
  void add(const TWord& w, const Rat& c);
  bool zero() const { return terms.empty(); }
  std::string str() const {
    std::string s;
    for (auto& [k, v] : terms) s += (s.empty() ? "" : " + ") + v.first.str() + "*" + showWord(v.second);
    return s.empty() ? "0" : s;
  }
};

bool hasCyclicPattern(const TWord& w, const std::vector<TWord>& pats) {
  for (auto& p : pats) {
    if (p.size() > w.size()) continue;
    for (size_t i = 0; i < w.size(); ++i) {
      bool ok = true;
      for (size_t j = 0; j < p.size(); ++j)
        if (w[(i + j) % w.size()] != p[j]) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
  }
  return false;
}

// find a cyclic DD adjacency; returns rotation offset so the pair is linear
int findDDRotation(const TWord& w) {
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i] == LD02 && w[(i + 1) % w.size()] == LD02) return int(i);
  return -1;
}

const std::vector<TWord> kKills = {
    {L02, L02}, {L02, L11, L02}, {L02, LD02}, {LD02, L02}};

void TraceExpr::add(const TWord& w, const Rat& c) {
  if (c == 0) return;
  // normalize: kills, DD rewrite, cyclic canonical form
  if (hasCyclicPattern(w, kKills)) return;
  int dd = findDDRotation(w);
  if (dd >= 0) {
    // rotate so the DD pair sits at the front (with graded sign), then
    // D D -> -Z P Z + Z Z P
    TWord cur = w;
    int sign = 1;
    int total = 0;
    for (auto l : w) total += degOf(l);
    for (int r = 0; r < dd; ++r) {
      TL first = cur.front();
      int rest = total - degOf(first);
      cur.erase(cur.begin());
      cur.push_back(first);
      if ((degOf(first) % 2) && (rest % 2)) sign = -sign;
    }
    TWord tail(cur.begin() + 2, cur.end());
    TWord w1 = {L02, L20, L02};
    w1.insert(w1.end(), tail.begin(), tail.end());
    TWord w2 = {L02, L02, L20};
    w2.insert(w2.end(), tail.begin(), tail.end());
    add(w1, -c * sign);
    add(w2, c * sign);
    return;
  }
  auto [cw, sign] = cyclicCanon(w);
  if (sign == 0) return;
  std::string k;
  for (auto l : cw) k += chOf(l);
  auto it = terms.find(k);
  if (it == terms.end())
    terms[k] = {c * sign, cw};
  else {
    it->second.first += c * sign;
    if (it->second.first == 0) terms.erase(k);
  }
}

TraceExpr operator-(const TraceExpr& a, const TraceExpr& b) {
  TraceExpr out = a;
  for (auto& [k, v] : b.terms) out.add(v.second, -v.first);
  return out;
}

// formal covariant (0,1)-derivative of a trace word, expanded by the graded
// Leibniz rule with the Bianchi and curvature substitutions
TraceExpr dbarTrace(const TWord& w, const Rat& c) {
  TraceExpr out;
  int prefixDeg = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    Rat sign = (prefixDeg % 2) ? Rat(-1) : Rat(1);
    switch (w[i]) {
      case L02: break;  // closed
      case L11: {
        TWord nw = w;
        nw[i] = LD02;
        out.add(nw, -c * sign);  // Bianchi substitution
        break;
      }
      case LD02: {
        TWord n1(w.begin(), w.begin() + long(i));
        n1.push_back(L11);
        n1.push_back(L02);
        n1.insert(n1.end(), w.begin() + long(i) + 1, w.end());
        out.add(n1, c * sign);
        TWord n2(w.begin(), w.begin() + long(i));
        n2.push_back(L02);
        n2.push_back(L11);
        n2.insert(n2.end(), w.begin() + long(i) + 1, w.end());
        out.add(n2, -c * sign);
        break;
      }
      case L20: throw unsupported_error("trace chain: derivative of the (2,0) letter not needed");
    }
    prefixDeg += degOf(w[i]);
  }
  return out;
}

ChainStep mk(const std::string& name, const TraceExpr& residual) {
  return {name, residual.zero(), residual.zero() ? "" : residual.str()};
}

}  // namespace

std::vector<ChainStep> verifyTraceChain(const std::string& chainId) {
  if (chainId == "empty") return {};
  if (chainId != "p6") throw unsupported_error("unknown trace chain " + chainId);

  std::vector<ChainStep> steps;
  const TWord W0 = {L11, L11, L02, L11, L11, L02};
  TraceExpr A1;
  A1.add(W0, 1);

  // curvature substitution: the trailing pair (1,1)x(0,2) equals the second
  // covariant derivative of the closed letter
  TraceExpr A2;
  A2.add({L11, L11, L02, L11, L11, L02}, 1);
  A2.add({L11, L11, L02, L11, L02, L11}, -1);
  steps.push_back(mk("curvature-substitution", A1 - A2));

  // inner Leibniz on the subword [Z M D]
  TraceExpr X;  // (F11)^2 . dbar(F02 F11 DF02)
  {
    const TWord sub = {L02, L11, LD02};
    int prefixDeg = 0;
    for (size_t i = 0; i < sub.size(); ++i) {
      Rat sign = (prefixDeg % 2) ? Rat(-1) : Rat(1);
      auto emit = [&](const std::vector<TL>& repl, const Rat& c) {
        TWord nw = {L11, L11};
        nw.insert(nw.end(), sub.begin(), sub.begin() + long(i));
        nw.insert(nw.end(), repl.begin(), repl.end());
        nw.insert(nw.end(), sub.begin() + long(i) + 1, sub.end());
        X.add(nw, c);
      };
      switch (sub[i]) {
        case L02: break;
        case L11: emit({LD02}, -sign); break;
        case LD02:
          emit({L11, L02}, sign);
          emit({L02, L11}, -sign);
          break;
        default: break;
      }
      prefixDeg += degOf(sub[i]);
    }
  }
  TraceExpr Y;  // (F11)^2 F02 (dbar F11) DF02 = -(F11)^2 F02 DF02 DF02
  Y.add({L11, L11, L02, LD02, LD02}, -1);
  steps.push_back(mk("inner-leibniz", A2 - (X - Y)));

  // outer Leibniz: dbar of the full five-letter word
  const TWord Wstar = {L11, L11, L02, L11, LD02};
  TraceExpr full = dbarTrace(Wstar, 1);
  TraceExpr T;  // contributions of the two leading (1,1) letters
  T.add({LD02, L11, L02, L11, LD02}, -1);
  T.add({L11, LD02, L02, L11, LD02}, -1);
  steps.push_back(mk("outer-leibniz", full - X - T));

  // the corrections vanish under the vanishing rules and trace cyclicity
  TraceExpr corrections = T;
  corrections.add({L11, L11, L02, LD02, LD02}, -1);
  steps.push_back(mk("corrections-vanish", corrections));

  // total: the original trace equals an exact term
  steps.push_back(mk("exactness", A1 - full));

  // the holomorphic-degree window of the exact potential: d tr = dbar tr
  // modulo forms of holomorphic degree >= 5
  int holo = 0;
  for (auto l : Wstar) holo += holoOf(l);
  ChainStep hw;
  hw.name = "hodge-window";
  hw.pass = (holo + 1) >= 5;
  hw.residual = hw.pass ? "" : "holomorphic degree " + std::to_string(holo + 1);
  steps.push_back(hw);
  return steps;
}

}  // namespace bergex
