// Exact coefficients: univariate polynomials in the formal dimension symbol m
// with arbitrary-precision rational coefficients.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>

namespace bergex {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat(long p, long q = 1) { return Rat(p, q); }

// Polynomial in m, sparse by degree. Degree 0 is the plain rational case.
class Coeff {
 public:
  Coeff() = default;
  Coeff(const Rat& r) {
    if (r != 0) c_[0] = r;
  }
  Coeff(long p, long q = 1) : Coeff(Rat(p, q)) {}

  static Coeff mono(int deg, const Rat& r) {
    Coeff out;
    if (r != 0) out.c_[deg] = r;
    return out;
  }

  bool isZero() const { return c_.empty(); }
  bool isRational() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }

  Rat rational() const {
    auto it = c_.find(0);
    return it == c_.end() ? Rat(0) : it->second;
  }

  const std::map<int, Rat>& entries() const { return c_; }

  Coeff& operator+=(const Coeff& o) {
    for (auto& [d, r] : o.c_) {
      Rat& mine = c_[d];
      mine += r;
      if (mine == 0) c_.erase(d);
    }
    return *this;
  }
  Coeff& operator-=(const Coeff& o) {
    for (auto& [d, r] : o.c_) {
      Rat& mine = c_[d];
      mine -= r;
      if (mine == 0) c_.erase(d);
    }
    return *this;
  }
  Coeff operator-() const {
    Coeff out;
    for (auto& [d, r] : c_) out.c_[d] = -r;
    return out;
  }
  Coeff operator*(const Coeff& o) const {
    Coeff out;
    for (auto& [d1, r1] : c_)
      for (auto& [d2, r2] : o.c_) {
        Rat& t = out.c_[d1 + d2];
        t += r1 * r2;
        if (t == 0) out.c_.erase(d1 + d2);
      }
    return out;
  }
  Coeff operator+(const Coeff& o) const {
    Coeff t = *this;
    t += o;
    return t;
  }
  Coeff operator-(const Coeff& o) const {
    Coeff t = *this;
    t -= o;
    return t;
  }
  Coeff& operator*=(const Coeff& o) { return *this = *this * o; }
  Coeff& operator*=(const Rat& r) { return *this = *this * Coeff(r); }
  Coeff& operator/=(const Rat& r) { return *this = *this * Coeff(Rat(denominator(r), numerator(r))); }

  bool operator==(const Coeff& o) const { return c_ == o.c_; }
  bool operator!=(const Coeff& o) const { return !(*this == o); }

  // "p/q" for rationals, "p/q + p'/q'*m^d + ..." otherwise
  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto& [d, r] : c_) {
      if (!s.empty()) s += " + ";
      s += r.str();
      if (d == 1) s += "*m";
      else if (d > 1) s += "*m^" + std::to_string(d);
    }
    return s;
  }

  double evalAt(double m) const {
    double acc = 0, mp = 1;
    int last = 0;
    for (auto& [d, r] : c_) {
      for (; last < d; ++last) mp *= m;
      acc += r.convert_to<double>() * mp;
    }
    return acc;
  }

 private:
  std::map<int, Rat> c_;
};

inline Rat doubleFactorial(int n) {
  // (-1)!! = 1 by convention
  Rat r = 1;
  for (int j = n; j >= 2; j -= 2) r *= j;
  return r;
}

inline Rat factorial(int n) {
  Rat r = 1;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

inline Rat binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

}  // namespace bergex
