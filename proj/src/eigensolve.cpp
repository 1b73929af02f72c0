#include "kolmo/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>

namespace kolmo {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Reflector {
  std::vector<double> v;  // v[0] == 1
  double beta = 0.0;
};

// Symmetric tridiagonal T = Q^T S Q with Q = H_0 H_1 ... H_{n-3};
// H_k acts on indices k+1 .. n-1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] = T(i+1, i)
  std::vector<Reflector> reflectors;
};

void check_symmetric(const DenseMatrix& S) {
  if (S.rows() == 0 || S.rows() != S.cols()) {
    throw std::invalid_argument("sym_eig: matrix must be square and non-empty");
  }
  const double scale = S.max_abs();
  const std::size_t n = S.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(S(i, j) - S(j, i));
      if (d > 1e-12 * scale) {
        std::ostringstream os;
        os << "sym_eig: matrix not symmetric at (" << i << ", " << j << "), |diff| = " << d;
        throw std::invalid_argument(os.str());
      }
    }
  }
}

Tridiagonal tridiagonalize(const DenseMatrix& S) {
  const std::size_t n = S.rows();
  DenseMatrix A = S;
  // Symmetrize exactly so the rank-2 updates stay symmetric.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (A(i, j) + A(j, i));
      A(i, j) = m;
      A(j, i) = m;
    }
  }

  Tridiagonal t;
  t.diag.assign(n, 0.0);
  t.off.assign(n > 0 ? n - 1 : 0, 0.0);

  std::vector<double> p(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    Reflector h;
    h.v.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) h.v[i] = A(k + 1 + i, k);

    double sigma = 0.0;
    for (std::size_t i = 1; i < m; ++i) sigma += h.v[i] * h.v[i];
    const double x0 = h.v[0];
    double alpha = x0;
    if (sigma == 0.0) {
      h.beta = 0.0;
      h.v.assign(m, 0.0);
      h.v[0] = 1.0;
    } else {
      const double mu = std::sqrt(x0 * x0 + sigma);
      const double v0 = x0 <= 0.0 ? x0 - mu : -sigma / (x0 + mu);
      h.beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
      for (std::size_t i = 1; i < m; ++i) h.v[i] /= v0;
      h.v[0] = 1.0;
      alpha = mu;

      // A22 <- H A22 H via p = beta A22 v, w = p - (beta p.v / 2) v.
      for (std::size_t i = 0; i < m; ++i) {
        auto row = A.row(k + 1 + i);
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += row[k + 1 + j] * h.v[j];
        p[i] = h.beta * s;
      }
      double pv = 0.0;
      for (std::size_t i = 0; i < m; ++i) pv += p[i] * h.v[i];
      for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - 0.5 * h.beta * pv * h.v[i];
      for (std::size_t i = 0; i < m; ++i) {
        auto row = A.row(k + 1 + i);
        for (std::size_t j = 0; j < m; ++j) {
          row[k + 1 + j] -= h.v[i] * w[j] + w[i] * h.v[j];
        }
      }
    }
    t.diag[k] = A(k, k);
    t.off[k] = alpha;
    t.reflectors.push_back(std::move(h));
  }
  if (n >= 2) {
    t.diag[n - 2] = A(n - 2, n - 2);
    t.off[n - 2] = A(n - 1, n - 2);
  }
  t.diag[n - 1] = A(n - 1, n - 1);
  return t;
}

double tridiagonal_norm(const Tridiagonal& t) {
  double norm = 0.0;
  const std::size_t n = t.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::abs(t.diag[i]);
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    norm = std::max(norm, r);
  }
  return norm;
}

// Number of eigenvalues of T strictly below sigma.
std::size_t sturm_count(const Tridiagonal& t, double sigma, double pivmin) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - sigma - (i == 0 ? 0.0 : e2 / q);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// index-th smallest eigenvalue (0-based) by bisection on Gershgorin bounds.
double bisect_eigenvalue(const Tridiagonal& t, std::size_t index) {
  const std::size_t n = t.diag.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double norm = std::max(tridiagonal_norm(t), std::numeric_limits<double>::min());
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, norm * norm);
  lo -= 2.0 * kEps * norm + pivmin;
  hi += 2.0 * kEps * norm + pivmin;

  for (int iter = 0; iter < 256; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivmin) break;
    if (sturm_count(t, mid, pivmin) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// LU factorization of T - lambda I with partial pivoting; rows of U carry up
// to two superdiagonals.
struct TridiagonalLU {
  std::vector<double> u0, u1, u2, mult;
  std::vector<bool> swapped;

  TridiagonalLU(const Tridiagonal& t, double lambda, double tiny) {
    const std::size_t n = t.diag.size();
    u0.assign(n, 0.0);
    u1.assign(n, 0.0);
    u2.assign(n, 0.0);
    mult.assign(n, 0.0);
    swapped.assign(n, false);
    double p0 = t.diag[0] - lambda;
    double p1 = n > 1 ? t.off[0] : 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double below = t.off[i];
      const double a_next = t.diag[i + 1] - lambda;
      const double e_next = i + 2 < n ? t.off[i + 1] : 0.0;
      if (std::abs(below) > std::abs(p0)) {
        swapped[i] = true;
        u0[i] = below;
        u1[i] = a_next;
        u2[i] = e_next;
        const double l = p0 / below;
        mult[i] = l;
        const double np0 = p1 - l * a_next;
        const double np1 = -l * e_next;
        p0 = np0;
        p1 = np1;
      } else {
        if (p0 == 0.0) p0 = tiny;
        u0[i] = p0;
        u1[i] = p1;
        u2[i] = 0.0;
        const double l = below / p0;
        mult[i] = l;
        p0 = a_next - l * p1;
        p1 = e_next;
      }
    }
    if (std::abs(p0) < tiny) p0 = p0 < 0.0 ? -tiny : tiny;
    u0[n - 1] = p0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(u0[i]) < tiny) u0[i] = u0[i] < 0.0 ? -tiny : tiny;
    }
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = u0.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) {
        const double bi = b[i];
        b[i] = b[i + 1];
        b[i + 1] = bi - mult[i] * b[i + 1];
      } else {
        b[i + 1] -= mult[i] * b[i];
      }
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = b[ii];
      if (ii + 1 < n) s -= u1[ii] * b[ii + 1];
      if (ii + 2 < n) s -= u2[ii] * b[ii + 2];
      b[ii] = s / u0[ii];
    }
  }
};

void scale_to_unit(std::vector<double>& v) {
  const double nv = norm2(v);
  if (nv == 0.0 || !std::isfinite(nv)) return;
  for (double& x : v) x /= nv;
}

std::vector<double> tridiagonal_eigenvector(const Tridiagonal& t, double lambda) {
  const std::size_t n = t.diag.size();
  const double norm = std::max(tridiagonal_norm(t), std::numeric_limits<double>::min());
  const double tiny = kEps * norm;
  TridiagonalLU lu(t, lambda, tiny);

  // Fixed start vector; raw mt19937 output is specified by the standard.
  std::mt19937 gen(20240229u);
  std::vector<double> z(n);
  for (double& x : z) x = static_cast<double>(gen()) / 4294967296.0 - 0.5;
  scale_to_unit(z);
  for (int iter = 0; iter < 5; ++iter) {
    lu.solve(z);
    for (double x : z) {
      if (!std::isfinite(x)) throw ConvergenceError("inverse iteration overflowed");
    }
    scale_to_unit(z);
  }
  return z;
}

void back_transform(const Tridiagonal& t, std::vector<double>& z) {
  const std::size_t n = z.size();
  for (std::size_t kk = t.reflectors.size(); kk-- > 0;) {
    const Reflector& h = t.reflectors[kk];
    if (h.beta == 0.0) continue;
    const std::size_t off = kk + 1;
    double s = 0.0;
    for (std::size_t i = 0; i < n - off; ++i) s += h.v[i] * z[off + i];
    s *= h.beta;
    for (std::size_t i = 0; i < n - off; ++i) z[off + i] -= s * h.v[i];
  }
}

}  // namespace

void normalize_sign(std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return;
  for (double x : v) {
    if (std::abs(x) > 1e-8 * m) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

EigenPair sym_eig_min(const DenseMatrix& S, double tol) {
  check_symmetric(S);
  const std::size_t n = S.rows();
  EigenPair result;
  if (n == 1) {
    result.value = S(0, 0);
    result.vector = {1.0};
    result.residual = 0.0;
    return result;
  }

  const Tridiagonal t = tridiagonalize(S);
  const double lambda = bisect_eigenvalue(t, 0);
  std::vector<double> v = tridiagonal_eigenvector(t, lambda);
  back_transform(t, v);
  scale_to_unit(v);
  normalize_sign(v);

  const std::vector<double> sv = S.apply(v);
  const double rq = dot(v, sv);
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = sv[i] - rq * v[i];
    r2 += d * d;
  }
  result.value = rq;
  result.vector = std::move(v);
  result.residual = std::sqrt(r2);

  const double bound = tol * S.max_abs() * static_cast<double>(n);
  if (!(result.residual <= bound) || !std::isfinite(result.value)) {
    std::ostringstream os;
    os << "sym_eig_min: residual " << result.residual << " exceeds bound " << bound
       << " (dim " << n << ", bisection value " << lambda << ", Rayleigh value "
       << result.value << ")";
    throw ConvergenceError(os.str());
  }
  return result;
}

std::vector<double> sym_eigenvalues(const DenseMatrix& S) {
  check_symmetric(S);
  const std::size_t n = S.rows();
  if (n == 1) return {S(0, 0)};
  const Tridiagonal t = tridiagonalize(S);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = bisect_eigenvalue(t, i);
  return values;
}

}  // namespace kolmo
