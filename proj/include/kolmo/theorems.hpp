#pragma once

// Exact re-derivation of the closed-form test functions for Kolmogorov flows.
//
//   m > n >= 1 :  f = cos x (1 + a cos 2mx + b cos 2ny)
//   m = n      :  f = cos x (1 + a cos 2ny + b cos 4ny + c cos 2nx) + d sin x sin 2nx
//   m = n = 1  :  f = sin x + sin(x+2y)/10 - sin 3x/20 + sin 5x/100
//
// With MI = (pi^2 n^2 / 4) H, the reduced index H is quadratic in the free
// coefficients. Forms are rebuilt by sampling the exact index and
// interpolating, then compared with the closed-form expressions.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kolmo/intpoly.hpp"
#include "kolmo/rational.hpp"
#include "kolmo/trigpoly.hpp"

namespace kolmo {

/// constant + sum linear[i] x_i + sum_{i<=j} quadratic[i][j] x_i x_j
struct QuadraticFormInParams {
  std::vector<std::string> variables;
  Rational constant;
  std::vector<Rational> linear;
  /// Upper triangle; quadratic[i][i] multiplies x_i^2.
  std::vector<std::vector<Rational>> quadratic;

  explicit QuadraticFormInParams(std::vector<std::string> names = {});

  std::size_t size() const { return variables.size(); }
  /// Coefficient of x_i x_j (x_i^2 when i == j), either index order.
  Rational quad(std::size_t i, std::size_t j) const;
  Rational& quad(std::size_t i, std::size_t j);
  Rational evaluate(std::span<const Rational> x) const;
  std::vector<Rational> gradient(std::span<const Rational> x) const;
  /// Leading principal minors of the Hessian.
  std::vector<Rational> hessian_minors() const;
  bool hessian_positive_definite() const;
  /// Unique critical point; throws std::domain_error if the Hessian is singular.
  std::vector<Rational> critical_point() const;

  friend bool operator==(const QuadraticFormInParams&, const QuadraticFormInParams&) = default;
};

std::string to_string(const QuadraticFormInParams& form);

/// Recovers a quadratic from 1 + 2k + k(k-1)/2 samples: 0, +-e_i, e_i + e_j.
QuadraticFormInParams interpolate_quadratic(
    std::vector<std::string> names,
    const std::function<Rational(std::span<const Rational>)>& sample);

struct CriticalPoint {
  std::vector<std::string> variables;
  std::vector<Rational> values;
  Rational hvalue;
};

/// H = MI / pi^2 * 4 / n^2 for the field f.
Rational reduced_index(const TrigPoly& f, const KolmogorovFlow& flow);

TrigPoly offdiag_field(int m, int n, const Rational& a, const Rational& b);
TrigPoly diag_field(int n, const Rational& a, const Rational& b, const Rational& c,
                    const Rational& d);
TrigPoly drivas_field();

/// Interpolated H(a, b) for m > n >= 1 (std::invalid_argument otherwise).
QuadraticFormInParams offdiag_form(int m, int n);
/// Closed-form expression of H(a, b, m, n).
QuadraticFormInParams offdiag_closed_form(int m, int n);
/// a0 minimizes H(a, 0), b0 minimizes H(0, b); hvalue is evaluated exactly
/// through the Misiolek index of the resulting field.
CriticalPoint offdiag_candidate(int m, int n);
/// J(m, n) = 4n^2 (16m^4 + 40m^2 + 1) - 64m^6 - 48m^4 + 28m^2 + 1
Integer offdiag_j(const Integer& m, const Integer& n);
/// J(m, n) / ((16m^4 + 24m^2 + 1)(4n^2 + 1))
Rational offdiag_closed_hvalue(int m, int n);

/// Interpolated H(a, b, c, d) for the diagonal flow (n, n), n >= 1.
QuadraticFormInParams diag_form(int n);
QuadraticFormInParams diag_closed_form(int n);
/// Exact critical point of the interpolated form, by rational elimination.
CriticalPoint diag_candidate(int n);
/// Closed forms of a0, b0, c0, d0 and of H at the minimum.
CriticalPoint diag_closed_candidate(int n);
/// Numerator and denominator of the minimal H as polynomials in u = n^2.
IntPoly diag_min_numerator();
IntPoly diag_min_denominator();

/// MI / pi^2 of {psi, f} for the m = n = 1 field; equals -3/200.
Rational drivas_check();

struct Check {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct Report {
  std::vector<Check> checks;

  void expect_equal(std::string name, const Rational& expected, const Rational& computed);
  void expect_equal(std::string name, const IntPoly& expected, const IntPoly& computed);
  void expect_true(std::string name, bool ok, std::string detail);
  void append(const Report& other);
  bool passed() const;
  const Check* first_failure() const;
};

Report verify_offdiag(int m, int n);
Report verify_diag(int n);
Report verify_drivas();

struct SignCertificates {
  /// J(k+1, k)
  IntPoly j_shift;
  /// Numerator / denominator of H at the diagonal minimum with n^2 = 4 + k.
  IntPoly diag_numerator_k;
  IntPoly diag_denominator_k;
  Report report;
};

/// Expands the two k-polynomials and checks their coefficient signs, then
/// spot-evaluates J(m, m-1) and the diagonal minimum for 2 <= m, n <= max_check.
SignCertificates sign_certificates(int max_check);

}  // namespace kolmo
