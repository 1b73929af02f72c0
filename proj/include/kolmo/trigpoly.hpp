#pragma once

// Exact trigonometric polynomials on the flat torus [0, 2pi)^2.
//
// A TrigPoly is a finite sum  sum_c c * cos(jx + ky)  or  c * sin(jx + ky)
// with rational coefficients. Every index pair is folded to a canonical
// representative on insertion:
//
//   j > 0, or j == 0 and k > 0, or the constant (0, 0, cos).
//
// Integrals are reported as rational multiples of pi^2; every closed-form
// value this library deals with has that shape.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "kolmo/rational.hpp"

namespace kolmo {

enum class Parity : std::uint8_t { kCos = 0, kSin = 1 };

std::string to_string(Parity p);
Parity parse_parity(const std::string& text);

struct Mode {
  Parity parity = Parity::kCos;
  int j = 0;
  int k = 0;

  /// Squared wavenumber j^2 + k^2, the eigenvalue of -Laplacian.
  std::int64_t norm2() const {
    return std::int64_t{j} * j + std::int64_t{k} * k;
  }
  bool is_constant() const { return j == 0 && k == 0; }
  bool is_canonical() const {
    return j > 0 || (j == 0 && k > 0) || (j == 0 && k == 0 && parity == Parity::kCos);
  }

  // Lexicographic in (j, k, parity); this is the window ordering.
  friend std::strong_ordering operator<=>(const Mode& a, const Mode& b) {
    if (auto c = a.j <=> b.j; c != 0) return c;
    if (auto c = a.k <=> b.k; c != 0) return c;
    return a.parity <=> b.parity;
  }
  friend bool operator==(const Mode& a, const Mode& b) = default;
};

std::string to_string(const Mode& mode);

/// Canonical representative of parity(jx + ky) together with the factor it
/// picks up: +1, -1 (sine under (j,k) -> (-j,-k)) or 0 (sin of the zero index).
std::pair<Mode, int> canonical_mode(Parity parity, int j, int k);

class TrigPoly {
 public:
  using Terms = std::map<Mode, Rational>;

  TrigPoly() = default;

  static TrigPoly constant(const Rational& c);
  static TrigPoly cos(int j, int k, const Rational& c = 1);
  static TrigPoly sin(int j, int k, const Rational& c = 1);

  /// Adds c * parity(jx + ky), folding the index first.
  TrigPoly& add_term(Parity parity, int j, int k, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Mode& mode) const;
  Rational constant_term() const;
  /// max(|j|, |k|) over the stored modes (0 for the zero polynomial).
  int bandwidth() const;

  TrigPoly operator-() const;
  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator-=(const TrigPoly& other);
  TrigPoly& operator*=(const Rational& c);

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(TrigPoly a, const Rational& c) { return a *= c; }
  friend TrigPoly operator*(const Rational& c, TrigPoly a) { return a *= c; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) = default;

 private:
  Terms terms_;
};

std::string to_string(const TrigPoly& p);

TrigPoly tp_mul(const TrigPoly& p, const TrigPoly& q);
TrigPoly tp_dx(const TrigPoly& p);
TrigPoly tp_dy(const TrigPoly& p);
TrigPoly tp_laplacian(const TrigPoly& p);

/// Poisson bracket {p, q} = p_x q_y - p_y q_x.
TrigPoly tp_bracket(const TrigPoly& p, const TrigPoly& q);

/// Q with  integral over the torus of p*q  =  Q * pi^2.
Rational tp_inner(const TrigPoly& p, const TrigPoly& q);

/// Q with  integral of |grad f|^2  =  Q * pi^2.
Rational grad_energy(const TrigPoly& f);

double tp_eval(const TrigPoly& p, double x, double y);

/// Steady Kolmogorov flow with stream function -cos(mx) cos(ny).
class KolmogorovFlow {
 public:
  /// Throws std::invalid_argument unless m >= 1 and n >= 1.
  KolmogorovFlow(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  std::int64_t lambda2() const { return std::int64_t{m_} * m_ + std::int64_t{n_} * n_; }
  const TrigPoly& stream() const { return stream_; }

  /// {psi, f}
  TrigPoly bracket(const TrigPoly& f) const { return tp_bracket(stream_, f); }

 private:
  int m_;
  int n_;
  TrigPoly stream_;
};

/// Misiolek index of a mean-zero phi:
///   MI(phi) = integral |grad phi|^2 - lambda^2 phi^2  =  Q * pi^2.
/// Q < 0 certifies a conjugate point. Throws std::invalid_argument if phi
/// has a constant term.
Rational mi_exact(const TrigPoly& phi, const KolmogorovFlow& flow);

/// Horizon beyond which the variation sin(pi t / T) f has negative index form:
///   T* = pi * sqrt(grad_energy(f) / -mi_exact({psi, f})).
/// Empty when the index is nonnegative. Throws std::invalid_argument when
/// {psi, f} vanishes (f is constant on streamlines).
std::optional<double> conjugate_time_bound(const TrigPoly& f,
                                           const KolmogorovFlow& flow);

/// Exact T*^2 / pi^2 when the index is negative.
std::optional<Rational> conjugate_time_bound_squared(const TrigPoly& f,
                                                     const KolmogorovFlow& flow);

}  // namespace kolmo
