#pragma once

// Reference computations used only by the tests. None of them goes through
// the library's product-to-sum kernel or matrix assembly.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "kolmo/matrix.hpp"
#include "kolmo/spectral.hpp"
#include "kolmo/trigpoly.hpp"

namespace kolmo::oracle {

inline constexpr double kPi = std::numbers::pi;

// Pointwise value of one stored term and of its x/y derivatives.
struct PointDerivs {
  double value = 0, dx = 0, dy = 0;
};

inline PointDerivs point(const TrigPoly& p, double x, double y) {
  PointDerivs out;
  for (const auto& [mode, c] : p.terms()) {
    const double a = c.get_d();
    const double t = mode.j * x + mode.k * y;
    if (mode.parity == Parity::kCos) {
      out.value += a * std::cos(t);
      out.dx -= a * mode.j * std::sin(t);
      out.dy -= a * mode.k * std::sin(t);
    } else {
      out.value += a * std::sin(t);
      out.dx += a * mode.j * std::cos(t);
      out.dy += a * mode.k * std::cos(t);
    }
  }
  return out;
}

inline double bracket_at(const TrigPoly& p, const TrigPoly& q, double x, double y) {
  const PointDerivs a = point(p, x, y), b = point(q, x, y);
  return a.dx * b.dy - a.dy * b.dx;
}

// Trapezoid rule on a G x G grid; exact for trig polynomials of degree < G.
// Returns the integral divided by pi^2.
template <class Fn>
double quadrature_over_pi2(int grid, Fn&& fn) {
  double sum = 0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) sum += fn(2 * kPi * i / grid, 2 * kPi * j / grid);
  }
  return sum * 4.0 / (grid * grid);
}

inline int quadrature_grid(int bandwidth) { return 2 * bandwidth + 3; }

inline double mi_quadrature(const TrigPoly& phi, const KolmogorovFlow& flow) {
  const int g = quadrature_grid(std::max(phi.bandwidth(), 1));
  const double l2 = static_cast<double>(flow.lambda2());
  return quadrature_over_pi2(g, [&](double x, double y) {
    const PointDerivs d = point(phi, x, y);
    return d.dx * d.dx + d.dy * d.dy - l2 * d.value * d.value;
  });
}

inline double grad_energy_quadrature(const TrigPoly& f) {
  const int g = quadrature_grid(std::max(f.bandwidth(), 1));
  return quadrature_over_pi2(g, [&](double x, double y) {
    const PointDerivs d = point(f, x, y);
    return d.dx * d.dx + d.dy * d.dy;
  });
}

// Random trig polynomial with integer-over-small-denominator coefficients.
inline TrigPoly random_poly(std::mt19937& rng, int bandwidth, int terms, bool with_cos = true,
                            bool with_sin = true, bool with_constant = true) {
  std::uniform_int_distribution<int> idx(-bandwidth, bandwidth);
  std::uniform_int_distribution<long> num(-10, 10);
  std::uniform_int_distribution<long> den(1, 4);
  std::uniform_int_distribution<int> coin(0, 1);
  TrigPoly p;
  for (int t = 0; t < terms; ++t) {
    int j = idx(rng), k = idx(rng);
    if (!with_constant && j == 0 && k == 0) continue;
    Parity par = Parity::kCos;
    if (with_cos && with_sin) {
      par = coin(rng) ? Parity::kCos : Parity::kSin;
    } else if (with_sin) {
      par = Parity::kSin;
    }
    p.add_term(par, j, k, make_rational(num(rng), den(rng)));
  }
  return p;
}

inline TrigPoly window_poly(const SpectralWindow& w, const std::vector<double>& v) {
  TrigPoly p;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Mode& m = w.modes()[i];
    p.add_term(m.parity, m.j, m.k, rationalize(v[i], 1'000'000'000));
  }
  return p;
}

// B built entry by entry from exact brackets and exact inner products:
// B_ij = (grad<L e_i, L e_j> - lambda^2 <L e_i, L e_j>) / 2.
inline DenseMatrix quadform_from_brackets(const KolmogorovFlow& flow, const SpectralWindow& w) {
  const std::size_t n = w.size();
  std::vector<TrigPoly> phi, phx, phy;
  for (const Mode& m : w.modes()) {
    TrigPoly e;
    e.add_term(m.parity, m.j, m.k, 1);
    phi.push_back(flow.bracket(e));
    phx.push_back(tp_dx(phi.back()));
    phy.push_back(tp_dy(phi.back()));
  }
  const Rational l2(static_cast<long>(flow.lambda2()));
  DenseMatrix B(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Rational v = (tp_inner(phx[i], phx[j]) + tp_inner(phy[i], phy[j]) -
                          l2 * tp_inner(phi[i], phi[j])) / 2;
      B(i, j) = B(j, i) = v.get_d();
    }
  }
  return B;
}

// Cyclic Jacobi rotations; returns ascending eigenvalues and fills vectors
// column-wise when requested.
inline std::vector<double> jacobi_eigen(DenseMatrix a, DenseMatrix* vectors = nullptr) {
  const std::size_t n = a.rows();
  DenseMatrix v = DenseMatrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off < 1e-30 * std::max(1.0, a.max_abs() * a.max_abs())) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) < a(y, y); });
  std::vector<double> values(n);
  DenseMatrix sorted(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) sorted(r, c) = v(r, order[c]);
  }
  if (vectors) *vectors = sorted;
  return values;
}

inline DenseMatrix random_symmetric(std::mt19937& rng, std::size_t n) {
  std::normal_distribution<double> g;
  DenseMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) s(i, j) = s(j, i) = g(rng);
  }
  return s;
}

// Q from the QR factorization of a Gaussian matrix (modified Gram-Schmidt).
inline DenseMatrix random_orthogonal(std::mt19937& rng, std::size_t n) {
  std::normal_distribution<double> g;
  DenseMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q(i, j) = g(rng);
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      double d = 0;
      for (std::size_t r = 0; r < n; ++r) d += q(r, c) * q(r, p);
      for (std::size_t r = 0; r < n; ++r) q(r, c) -= d * q(r, p);
    }
    double nrm = 0;
    for (std::size_t r = 0; r < n; ++r) nrm += q(r, c) * q(r, c);
    nrm = std::sqrt(nrm);
    for (std::size_t r = 0; r < n; ++r) q(r, c) /= nrm;
  }
  return q;
}

}  // namespace kolmo::oracle
