#include "kolmo/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace kolmo {

std::string to_string(Parity p) { return p == Parity::kCos ? "cos" : "sin"; }

Parity parse_parity(const std::string& text) {
  if (text == "cos") return Parity::kCos;
  if (text == "sin") return Parity::kSin;
  throw std::invalid_argument("unknown parity '" + text + "' (expected cos|sin)");
}

std::string to_string(const Mode& mode) {
  std::ostringstream os;
  os << '(' << to_string(mode.parity) << ',' << mode.j << ',' << mode.k << ')';
  return os.str();
}

std::pair<Mode, int> canonical_mode(Parity parity, int j, int k) {
  if (j == 0 && k == 0) {
    return {Mode{Parity::kCos, 0, 0}, parity == Parity::kCos ? 1 : 0};
  }
  if (j > 0 || (j == 0 && k > 0)) return {Mode{parity, j, k}, 1};
  return {Mode{parity, -j, -k}, parity == Parity::kCos ? 1 : -1};
}

TrigPoly TrigPoly::constant(const Rational& c) {
  TrigPoly p;
  return p.add_term(Parity::kCos, 0, 0, c);
}

TrigPoly TrigPoly::cos(int j, int k, const Rational& c) {
  TrigPoly p;
  return p.add_term(Parity::kCos, j, k, c);
}

TrigPoly TrigPoly::sin(int j, int k, const Rational& c) {
  TrigPoly p;
  return p.add_term(Parity::kSin, j, k, c);
}

TrigPoly& TrigPoly::add_term(Parity parity, int j, int k, const Rational& c) {
  auto [mode, s] = canonical_mode(parity, j, k);
  if (s == 0 || c == 0) return *this;
  auto [it, inserted] = terms_.try_emplace(mode, 0);
  if (s > 0) {
    it->second += c;
  } else {
    it->second -= c;
  }
  if (it->second == 0) terms_.erase(it);
  return *this;
}

Rational TrigPoly::coefficient(const Mode& mode) const {
  auto it = terms_.find(mode);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational TrigPoly::constant_term() const {
  return coefficient(Mode{Parity::kCos, 0, 0});
}

int TrigPoly::bandwidth() const {
  int b = 0;
  for (const auto& [mode, c] : terms_) {
    b = std::max({b, std::abs(mode.j), std::abs(mode.k)});
  }
  return b;
}

TrigPoly TrigPoly::operator-() const {
  TrigPoly r = *this;
  for (auto& [mode, c] : r.terms_) c = -c;
  return r;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  for (const auto& [mode, c] : other.terms_) add_term(mode.parity, mode.j, mode.k, c);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& other) {
  for (const auto& [mode, c] : other.terms_) add_term(mode.parity, mode.j, mode.k, -c);
  return *this;
}

TrigPoly& TrigPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [mode, v] : terms_) v *= c;
  }
  return *this;
}

// Product to sum, with A = a.(x,y) and B = b.(x,y):
//   cos A cos B = [cos(A-B) + cos(A+B)] / 2
//   sin A sin B = [cos(A-B) - cos(A+B)] / 2
//   sin A cos B = [sin(A+B) + sin(A-B)] / 2
//   cos A sin B = [sin(A+B) - sin(A-B)] / 2
TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const Rational half = ca * cb / 2;
      const int sj = ma.j + mb.j, sk = ma.k + mb.k;
      const int dj = ma.j - mb.j, dk = ma.k - mb.k;
      const bool sa = ma.parity == Parity::kSin;
      const bool sb = mb.parity == Parity::kSin;
      if (!sa && !sb) {
        r.add_term(Parity::kCos, dj, dk, half);
        r.add_term(Parity::kCos, sj, sk, half);
      } else if (sa && sb) {
        r.add_term(Parity::kCos, dj, dk, half);
        r.add_term(Parity::kCos, sj, sk, -half);
      } else if (sa) {
        r.add_term(Parity::kSin, sj, sk, half);
        r.add_term(Parity::kSin, dj, dk, half);
      } else {
        r.add_term(Parity::kSin, sj, sk, half);
        r.add_term(Parity::kSin, dj, dk, -half);
      }
    }
  }
  return r;
}

std::string to_string(const TrigPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mode, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << '(' << to_string(c) << ')';
    if (!mode.is_constant()) {
      os << ' ' << to_string(mode.parity) << '(' << mode.j << "x" << (mode.k < 0 ? "" : "+")
         << mode.k << "y)";
    }
  }
  return os.str();
}

TrigPoly tp_mul(const TrigPoly& p, const TrigPoly& q) { return p * q; }

namespace {

// d/dz cos(theta) = -w sin(theta), d/dz sin(theta) = w cos(theta), where w is
// the wavenumber along z.
TrigPoly derivative(const TrigPoly& p, bool along_x) {
  TrigPoly r;
  for (const auto& [mode, c] : p.terms()) {
    const int w = along_x ? mode.j : mode.k;
    if (w == 0) continue;
    if (mode.parity == Parity::kCos) {
      r.add_term(Parity::kSin, mode.j, mode.k, -c * w);
    } else {
      r.add_term(Parity::kCos, mode.j, mode.k, c * w);
    }
  }
  return r;
}

}  // namespace

TrigPoly tp_dx(const TrigPoly& p) { return derivative(p, true); }
TrigPoly tp_dy(const TrigPoly& p) { return derivative(p, false); }

TrigPoly tp_laplacian(const TrigPoly& p) {
  TrigPoly r;
  for (const auto& [mode, c] : p.terms()) {
    r.add_term(mode.parity, mode.j, mode.k, -c * Rational(Integer(mode.norm2())));
  }
  return r;
}

TrigPoly tp_bracket(const TrigPoly& p, const TrigPoly& q) {
  return tp_dx(p) * tp_dy(q) - tp_dy(p) * tp_dx(q);
}

Rational tp_inner(const TrigPoly& p, const TrigPoly& q) {
  const auto& small = p.size() <= q.size() ? p : q;
  const auto& large = p.size() <= q.size() ? q : p;
  Rational total = 0;
  for (const auto& [mode, c] : small.terms()) {
    auto it = large.terms().find(mode);
    if (it == large.terms().end()) continue;
    total += (mode.is_constant() ? 4 : 2) * c * it->second;
  }
  return total;
}

Rational grad_energy(const TrigPoly& f) {
  Rational total = 0;
  for (const auto& [mode, c] : f.terms()) {
    total += 2 * c * c * Rational(Integer(mode.norm2()));
  }
  return total;
}

double tp_eval(const TrigPoly& p, double x, double y) {
  double v = 0.0;
  for (const auto& [mode, c] : p.terms()) {
    const double theta = mode.j * x + mode.k * y;
    v += to_double(c) * (mode.parity == Parity::kCos ? std::cos(theta) : std::sin(theta));
  }
  return v;
}

KolmogorovFlow::KolmogorovFlow(int m, int n) : m_(m), n_(n) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument(
        "Kolmogorov flow needs m >= 1 and n >= 1 (got m=" + std::to_string(m) +
        ", n=" + std::to_string(n) + "); shear flows have no conjugate points");
  }
  // -cos(mx) cos(ny) = -[cos(mx+ny) + cos(mx-ny)] / 2
  stream_.add_term(Parity::kCos, m, n, make_rational(-1, 2));
  stream_.add_term(Parity::kCos, m, -n, make_rational(-1, 2));
}

Rational mi_exact(const TrigPoly& phi, const KolmogorovFlow& flow) {
  if (phi.constant_term() != 0) {
    throw std::invalid_argument("mi_exact: phi must have zero mean (constant term " +
                                to_string(phi.constant_term()) + ")");
  }
  const Rational lambda2(Integer(flow.lambda2()));
  Rational total = 0;
  for (const auto& [mode, c] : phi.terms()) {
    total += 2 * c * c * (Rational(Integer(mode.norm2())) - lambda2);
  }
  return total;
}

std::optional<Rational> conjugate_time_bound_squared(const TrigPoly& f,
                                                     const KolmogorovFlow& flow) {
  const TrigPoly phi = flow.bracket(f);
  if (phi.is_zero()) {
    throw std::invalid_argument(
        "conjugate_time_bound: {psi, f} = 0, f is in the kernel of the bracket");
  }
  const Rational q = mi_exact(phi, flow);
  if (q >= 0) return std::nullopt;
  return grad_energy(f) / -q;
}

std::optional<double> conjugate_time_bound(const TrigPoly& f,
                                           const KolmogorovFlow& flow) {
  auto t2 = conjugate_time_bound_squared(f, flow);
  if (!t2) return std::nullopt;
  return M_PI * std::sqrt(to_double(*t2));
}

}  // namespace kolmo
