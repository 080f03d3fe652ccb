#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

namespace bergex {

namespace {

double simpsonStep(const std::function<double(double)>& f, double a, double b, double fa,
                   double fb, double fm, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
    return left + right + (left + right - whole) / 15;
  return simpsonStep(f, a, m, fa, fm, flm, left, tol / 2, depth - 1) +
         simpsonStep(f, m, b, fm, fb, frm, right, tol / 2, depth - 1);
}

}  // namespace

double adaptiveQuad(const std::function<double(double)>& f, double a, double b, double tol,
                    int maxDepth) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpsonStep(f, a, b, fa, fb, fm, whole, tol, maxDepth);
}

namespace {

// normalized sinh ratio [sinh(s)/sinh(tau)]^n e^{shift (s - tau)}, stable for
// large arguments
double sinhRatioPow(double s, double tau, int n, double shift) {
  double lg = n * ((s - tau) + std::log1p(-std::exp(-2 * s)) - std::log1p(-std::exp(-2 * tau)));
  return std::exp(lg + shift * (s - tau));
}

std::vector<int> sortedCopy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string monoKey(const std::vector<int>& J, const std::vector<int>& K) {
  std::string s = "z:";
  for (int j : sortedCopy(J)) s += std::to_string(j) + ",";
  s += "|zb:";
  for (int k : sortedCopy(K)) s += std::to_string(k) + ",";
  return s;
}

}  // namespace

QuadComparison quadLinv(const QuadratureTask& task, double kValue) {
  // classify first
  Term probe;
  probe.coeff = Coeff(1);
  probe.expd = task.p;
  for (int j : task.J) probe.zMono.push_back(freeIx(Flavor::Holo, std::to_string(j)));
  for (int k : task.K) probe.zbarMono.push_back(freeIx(Flavor::Anti, std::to_string(k)));
  if (classifyDecay(probe) != DecayClass::Neutral)
    throw regime_error("quadLinv: boundary/decaying class refused");

  OperatorExpr in;
  in.terms.push_back(probe);
  LinvResult sym = linvAsymptotic(in, -1000);

  // numeric coefficients per output monomial
  const int nJ = int(task.J.size()), nK = int(task.K.size());
  const int n = nJ + nK;
  const double tau = task.tk;
  std::map<std::string, double> numeric;
  for (int sj = 0; sj < (1 << nJ); ++sj)
    for (int sk = 0; sk < (1 << nK); ++sk) {
      std::vector<int> yJ, yK, zJ, zK;
      for (int i = 0; i < nJ; ++i)
        ((sj >> i) & 1 ? yJ : zJ).push_back(task.J[size_t(i)]);
      for (int i = 0; i < nK; ++i)
        ((sk >> i) & 1 ? yK : zK).push_back(task.K[size_t(i)]);
      if (yJ.size() != yK.size()) continue;
      WickMoment w = wickMoment(yJ, yK);
      if (w.zero()) continue;
      int j = int(yJ.size());
      double wv = w.value.convert_to<double>() * std::pow(M_PI, w.piPow);
      double integral = adaptiveQuad(
          [&](double s) {
            return sinhRatioPow(s, tau, n, double(nK - nJ) + 4.0 * task.p) *
                   std::pow(4 * M_PI * (tau - s) / kValue, j);
          },
          0, tau, 1e-12);
      numeric[monoKey(zJ, zK)] += (1.0 / kValue) * wv * integral;
    }

  // compare against the symbolic terms
  QuadComparison out{0, true, ""};
  std::ostringstream det;
  for (auto& t : sym.value.terms) {
    std::vector<int> J2, K2;
    for (auto& ix : t.zMono) J2.push_back(std::stoi(nameOf(ix.label)));
    for (auto& ix : t.zbarMono) K2.push_back(std::stoi(nameOf(ix.label)));
    double symVal = t.coeff.rational().convert_to<double>() * std::pow(kValue, t.kPow);
    double numVal = numeric[monoKey(J2, K2)];
    double rel = std::abs(numVal - symVal) / std::max(std::abs(symVal), 1e-300);
    out.maxRelErr = std::max(out.maxRelErr, rel);
    det << monoKey(J2, K2) << " sym=" << symVal << " num=" << numVal << " rel=" << rel << "; ";
  }
  out.pass = out.maxRelErr <= task.tol;
  out.detail = det.str();
  return out;
}

QuadComparison wickTableVsQuadrature(int maxDeg, double tol) {
  // single-coordinate moments E[y^a ybar^b] by 2-D quadrature, assembled into
  // multi-coordinate products by independence
  auto numericMoment1 = [&](int a, int b) {
    const double L = 5.5;
    auto inner = [&](double u) {
      return adaptiveQuad(
          [&](double v) {
            Cx y(u, v);
            Cx val = std::pow(y, a) * std::pow(std::conj(y), b) *
                     std::exp(-M_PI * (u * u + v * v));
            return val.real();
          },
          -L, L, 1e-12);
    };
    return adaptiveQuad(inner, -L, L, 1e-12);
  };

  QuadComparison out{0, true, ""};
  std::ostringstream det;
  for (int a = 0; a <= maxDeg; ++a)
    for (int b = 0; a + b <= maxDeg; ++b)
      for (int c = 0; a + b + c <= maxDeg; ++c)
        for (int d = 0; a + b + c + d <= maxDeg; ++d) {
          std::vector<int> J, K;
          for (int i = 0; i < a; ++i) J.push_back(1);
          for (int i = 0; i < c; ++i) J.push_back(2);
          for (int i = 0; i < b; ++i) K.push_back(1);
          for (int i = 0; i < d; ++i) K.push_back(2);
          WickMoment w = wickMoment(J, K);
          double predicted = w.zero() ? 0.0
                                      : w.value.convert_to<double>() * std::pow(M_PI, w.piPow);
          double numeric = numericMoment1(a, b) * numericMoment1(c, d);
          double err = std::abs(predicted - numeric);
          if (err > out.maxRelErr) {
            out.maxRelErr = err;
            det.str("");
            det << "worst at (" << a << "," << b << "," << c << "," << d << ")";
          }
        }
  out.pass = out.maxRelErr <= tol;
  out.detail = det.str();
  return out;
}

namespace {

// exact exponential-polynomial in (e^{4 d s}, s^q) with rational coefficients
using ExpPoly = std::map<std::pair<int, int>, Rat>;

void epAdd(ExpPoly& e, int d, int q, const Rat& c) {
  if (c == 0) return;
  auto key = std::make_pair(d, q);
  Rat& t = e[key];
  t += c;
  if (t == 0) e.erase(key);
}

// exact antiderivative from 0 to s of e^{4 d u} u^q
ExpPoly epIntegrate(const ExpPoly& e) {
  ExpPoly out;
  for (auto& [dq, c] : e) {
    auto [d, q] = dq;
    if (d == 0) {
      epAdd(out, 0, q + 1, c / Rat(q + 1));
      continue;
    }
    // int_0^s e^{4d u} u^q du =
    //   sum_i (-1)^i (q!/(q-i)!) / (4d)^{i+1} e^{4ds} s^{q-i}  -  boundary at 0
    Rat denom = Rat(4 * d), fall = 1, dpow = denom;
    for (int i = 0; i <= q; ++i) {
      if (i) {
        fall *= Rat(q - i + 1);
        dpow *= denom;
      }
      Rat coef = c * fall * ((i % 2) ? Rat(-1) : Rat(1)) / dpow;
      epAdd(out, d, q - i, coef);
      if (i == q) epAdd(out, 0, 0, -coef);
    }
  }
  return out;
}

}  // namespace

IterateCheck exactExponentialIterate(int a, int p, double tk) {
  // f_0 = e^{4 p s}; each step multiplies by -2 e^{4 s} and integrates in s
  ExpPoly f;
  epAdd(f, p, 0, 1);
  for (int i = 0; i < a; ++i) {
    ExpPoly g;
    for (auto& [dq, c] : f) epAdd(g, dq.first + 1, dq.second, c * Rat(-2));
    f = epIntegrate(g);
  }
  Rat expect = doubleFactorial(2 * p) / doubleFactorial(2 * p + 2 * a);
  if (a % 2) expect = -expect;
  auto it = f.find({a + p, 0});
  Rat top = it == f.end() ? Rat(0) : it->second;
  IterateCheck out;
  out.exactMatch = (top == expect);
  // dropped scales at tk, in log space
  double logTop = std::log(std::abs(top.convert_to<double>())) + 4.0 * (a + p) * tk;
  double sum = 0;
  for (auto& [dq, c] : f) {
    if (dq == std::make_pair(a + p, 0)) continue;
    double lg = std::log(std::abs(c.convert_to<double>())) + 4.0 * dq.first * tk +
                dq.second * std::log(std::max(tk, 1.0));
    sum += std::exp(lg - logTop);
  }
  out.subleadingRatio = sum;
  return out;
}

QuadComparison quadChain(const std::vector<ChainPiece>& pieces,
                         const std::vector<std::pair<std::vector<int>, double>>& expected,
                         double tk, double kValue, double tol) {
  struct Entry {
    std::vector<int> J, K;
    int d = 0;
    std::function<double(double)> fhat;  // coefficient / e^{4 d s}
  };
  std::vector<Entry> state;
  state.push_back({{}, {}, 0, [](double) { return 1.0; }});

  for (auto& piece : pieces) {
    // multiply
    std::vector<Entry> mult;
    for (auto& en : state) {
      Entry ne = en;
      ne.J.insert(ne.J.end(), piece.J.begin(), piece.J.end());
      ne.K.insert(ne.K.end(), piece.K.begin(), piece.K.end());
      ne.d += piece.expd;
      double c = piece.coeff;
      auto prev = std::make_shared<std::function<double(double)>>(en.fhat);
      ne.fhat = [c, prev](double s) { return c * (*prev)(s); };
      mult.push_back(std::move(ne));
    }
    // invert: -Linv with all contraction subsets
    std::vector<Entry> next;
    for (auto& en : mult) {
      const int nJ = int(en.J.size()), nK = int(en.K.size());
      const int n = nJ + nK;
      const int d = en.d;
      // enumerate disjoint pair subsets with equal indices
      std::vector<std::pair<int, int>> cur;
      std::vector<bool> uj(size_t(nJ), false), uk(size_t(nK), false);
      std::function<void(int)> rec = [&](int start) {
        {
          std::vector<int> J2, K2;
          for (int i = 0; i < nJ; ++i)
            if (!uj[size_t(i)]) J2.push_back(en.J[size_t(i)]);
          for (int i = 0; i < nK; ++i)
            if (!uk[size_t(i)]) K2.push_back(en.K[size_t(i)]);
          int j = int(cur.size());
          auto prev = std::make_shared<std::function<double(double)>>(en.fhat);
          int shift = nK - nJ;
          auto fh = [prev, n, d, j, shift, kValue](double tau) {
            return -(1.0 / kValue) *
                   adaptiveQuad(
                       [&](double s) {
                         return sinhRatioPow(s, tau, n, double(shift) + 4.0 * d) *
                                std::pow(4 * (tau - s) / kValue, j) * (*prev)(s);
                       },
                       0, tau, 1e-11, 34);
          };
          Entry ne;
          ne.J = J2;
          ne.K = K2;
          ne.d = d;
          ne.fhat = fh;
          next.push_back(std::move(ne));
        }
        for (int i = start; i < nJ; ++i) {
          if (uj[size_t(i)]) continue;
          for (int l = 0; l < nK; ++l) {
            if (uk[size_t(l)] || en.J[size_t(i)] != en.K[size_t(l)]) continue;
            uj[size_t(i)] = uk[size_t(l)] = true;
            cur.emplace_back(i, l);
            rec(i + 1);
            cur.pop_back();
            uj[size_t(i)] = uk[size_t(l)] = false;
          }
        }
      };
      rec(0);
    }
    state = std::move(next);
  }

  std::map<std::string, double> numeric;
  for (auto& en : state) numeric[monoKey(en.J, en.K)] += en.fhat(tk);

  QuadComparison out{0, true, ""};
  std::ostringstream det;
  for (auto& [mono, val] : expected) {
    // split positive entries as z indices, negative entries as zbar indices
    std::vector<int> J, K;
    for (int ix : mono) (ix > 0 ? J : K).push_back(std::abs(ix));
    double num = numeric[monoKey(J, K)];
    double rel = std::abs(num - val) / std::max(std::abs(val), 1e-300);
    out.maxRelErr = std::max(out.maxRelErr, rel);
    det << monoKey(J, K) << " exp=" << val << " num=" << num << " rel=" << rel << "; ";
  }
  out.pass = out.maxRelErr <= tol;
  out.detail = det.str();
  return out;
}

}  // namespace bergex
