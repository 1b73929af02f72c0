#pragma once

// Dense univariate polynomials with arbitrary-precision integer coefficients.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "kolmo/rational.hpp"

namespace kolmo {

class IntPoly {
 public:
  IntPoly() = default;
  /// Coefficients from the constant term upward.
  IntPoly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }
  explicit IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static IntPoly constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }
  static IntPoly x() { return IntPoly{0, 1}; }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Integer coefficient(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Integer(0);
  }
  const std::vector<Integer>& coefficients() const { return coeffs_; }

  Integer operator()(const Integer& at) const {
    Integer v = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) v = v * at + coeffs_[i];
    return v;
  }

  /// p(q(x))
  IntPoly compose(const IntPoly& q) const {
    IntPoly r;
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * q + constant(coeffs_[i]);
    return r;
  }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& a) {
    std::vector<Integer> c(a.coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coeffs_[i];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
    std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPoly(std::move(c));
  }
  friend IntPoly operator*(long s, const IntPoly& a) { return constant(Integer(s)) * a; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string str(const std::string& var = "k") const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      if (coeffs_[i] == 0) continue;
      const bool neg = coeffs_[i] < 0;
      Integer mag = abs(coeffs_[i]);
      if (first) {
        if (neg) os << '-';
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      if (i == 0 || mag != 1) os << mag.get_str();
      if (i >= 1) os << var;
      if (i >= 2) os << '^' << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Integer> coeffs_;
};

}  // namespace kolmo
