#include "kolmo/theorems.hpp"

#include <sstream>
#include <stdexcept>

namespace kolmo {

// ---------------------------------------------------------------------------
// Quadratic forms

QuadraticFormInParams::QuadraticFormInParams(std::vector<std::string> names)
    : variables(std::move(names)),
      constant(0),
      linear(variables.size(), Rational(0)),
      quadratic(variables.size(), std::vector<Rational>(variables.size(), Rational(0))) {}

Rational QuadraticFormInParams::quad(std::size_t i, std::size_t j) const {
  return i <= j ? quadratic.at(i).at(j) : quadratic.at(j).at(i);
}

Rational& QuadraticFormInParams::quad(std::size_t i, std::size_t j) {
  return i <= j ? quadratic.at(i).at(j) : quadratic.at(j).at(i);
}

Rational QuadraticFormInParams::evaluate(std::span<const Rational> x) const {
  if (x.size() != size()) throw std::invalid_argument("evaluate: wrong number of values");
  Rational v = constant;
  for (std::size_t i = 0; i < size(); ++i) {
    v += linear[i] * x[i];
    for (std::size_t j = i; j < size(); ++j) v += quadratic[i][j] * x[i] * x[j];
  }
  return v;
}

std::vector<Rational> QuadraticFormInParams::gradient(std::span<const Rational> x) const {
  if (x.size() != size()) throw std::invalid_argument("gradient: wrong number of values");
  std::vector<Rational> g(size());
  for (std::size_t i = 0; i < size(); ++i) {
    g[i] = linear[i] + 2 * quadratic[i][i] * x[i];
    for (std::size_t j = 0; j < size(); ++j) {
      if (j != i) g[i] += quad(i, j) * x[j];
    }
  }
  return g;
}

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix hessian(const QuadraticFormInParams& form) {
  const std::size_t n = form.size();
  RationalMatrix h(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h[i][j] = i == j ? Rational(2 * form.quad(i, i)) : form.quad(i, j);
  }
  return h;
}

Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

// Solves a x = b exactly; throws std::domain_error when a is singular.
std::vector<Rational> solve(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular linear system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

std::vector<Rational> QuadraticFormInParams::hessian_minors() const {
  const RationalMatrix h = hessian(*this);
  std::vector<Rational> minors;
  for (std::size_t k = 1; k <= size(); ++k) {
    RationalMatrix sub(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = h[i][j];
    }
    minors.push_back(determinant(std::move(sub)));
  }
  return minors;
}

bool QuadraticFormInParams::hessian_positive_definite() const {
  for (const Rational& m : hessian_minors()) {
    if (m <= 0) return false;
  }
  return true;
}

std::vector<Rational> QuadraticFormInParams::critical_point() const {
  std::vector<Rational> rhs(size());
  for (std::size_t i = 0; i < size(); ++i) rhs[i] = -linear[i];
  return solve(hessian(*this), std::move(rhs));
}

std::string to_string(const QuadraticFormInParams& form) {
  std::ostringstream os;
  os << to_string(form.constant);
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (form.linear[i] != 0) os << " + (" << to_string(form.linear[i]) << ")" << form.variables[i];
  }
  for (std::size_t i = 0; i < form.size(); ++i) {
    for (std::size_t j = i; j < form.size(); ++j) {
      if (form.quadratic[i][j] == 0) continue;
      os << " + (" << to_string(form.quadratic[i][j]) << ")" << form.variables[i];
      if (i == j) {
        os << "^2";
      } else {
        os << form.variables[j];
      }
    }
  }
  return os.str();
}

QuadraticFormInParams interpolate_quadratic(
    std::vector<std::string> names,
    const std::function<Rational(std::span<const Rational>)>& sample) {
  QuadraticFormInParams form(std::move(names));
  const std::size_t n = form.size();
  std::vector<Rational> x(n, Rational(0));
  form.constant = sample(x);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 1;
    const Rational plus = sample(x);
    x[i] = -1;
    const Rational minus = sample(x);
    x[i] = 0;
    form.linear[i] = (plus - minus) / 2;
    form.quadratic[i][i] = (plus + minus) / 2 - form.constant;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      x[i] = 1;
      x[j] = 1;
      const Rational both = sample(x);
      x[i] = 0;
      x[j] = 0;
      form.quadratic[i][j] = both - form.constant - form.linear[i] - form.linear[j] -
                             form.quadratic[i][i] - form.quadratic[j][j];
    }
  }
  return form;
}

// ---------------------------------------------------------------------------
// Test fields

Rational reduced_index(const TrigPoly& f, const KolmogorovFlow& flow) {
  const Rational n2(Integer(flow.n()) * flow.n());
  return mi_exact(flow.bracket(f), flow) * 4 / n2;
}

TrigPoly offdiag_field(int m, int n, const Rational& a, const Rational& b) {
  TrigPoly inner = TrigPoly::constant(1) + TrigPoly::cos(2 * m, 0, a) + TrigPoly::cos(0, 2 * n, b);
  return TrigPoly::cos(1, 0) * inner;
}

TrigPoly diag_field(int n, const Rational& a, const Rational& b, const Rational& c,
                    const Rational& d) {
  TrigPoly inner = TrigPoly::constant(1) + TrigPoly::cos(0, 2 * n, a) +
                   TrigPoly::cos(0, 4 * n, b) + TrigPoly::cos(2 * n, 0, c);
  return TrigPoly::cos(1, 0) * inner + TrigPoly::sin(1, 0, d) * TrigPoly::sin(2 * n, 0);
}

TrigPoly drivas_field() {
  return TrigPoly::sin(1, 0) + TrigPoly::sin(1, 2, make_rational(1, 10)) +
         TrigPoly::sin(3, 0, make_rational(-1, 20)) + TrigPoly::sin(5, 0, make_rational(1, 100));
}

// ---------------------------------------------------------------------------
// m > n

namespace {

Rational lift(const Integer& z) { return Rational(z); }

void require_offdiag(int m, int n) {
  if (n < 1 || m <= n) {
    throw std::invalid_argument("off-diagonal case needs m > n >= 1 (got m=" +
                                std::to_string(m) + ", n=" + std::to_string(n) + ")");
  }
}

}  // namespace

QuadraticFormInParams offdiag_form(int m, int n) {
  require_offdiag(m, n);
  const KolmogorovFlow flow(m, n);
  return interpolate_quadratic({"a", "b"}, [&](std::span<const Rational> x) {
    return reduced_index(offdiag_field(m, n, x[0], x[1]), flow);
  });
}

QuadraticFormInParams offdiag_closed_form(int m, int n) {
  require_offdiag(m, n);
  const Integer M(m), N(n);
  const Integer m2 = M * M, n2 = N * N, m4 = m2 * m2;
  QuadraticFormInParams h({"a", "b"});
  h.constant = 2;
  h.linear[0] = lift(8 * m2 + 2);
  h.linear[1] = lift(-8 * m2 - 2);
  h.quad(0, 0) = lift(16 * m4 + 24 * m2 + 1);
  h.quad(1, 1) = lift(16 * m2 * n2 + 4 * m2 + 4 * n2 + 1);
  h.quad(0, 1) = lift(-12 * m2 - 1);
  return h;
}

Integer offdiag_j(const Integer& m, const Integer& n) {
  const Integer m2 = m * m, n2 = n * n, m4 = m2 * m2, m6 = m4 * m2;
  return 4 * n2 * (16 * m4 + 40 * m2 + 1) - 64 * m6 - 48 * m4 + 28 * m2 + 1;
}

Rational offdiag_closed_hvalue(int m, int n) {
  require_offdiag(m, n);
  const Integer M(m), N(n);
  const Integer m2 = M * M, n2 = N * N;
  Rational h(offdiag_j(M, N), Integer((16 * m2 * m2 + 24 * m2 + 1) * (4 * n2 + 1)));
  h.canonicalize();
  return h;
}

CriticalPoint offdiag_candidate(int m, int n) {
  require_offdiag(m, n);
  const Integer M(m), N(n);
  const Integer m2 = M * M, n2 = N * N;
  Rational a0(Integer(-(4 * m2 + 1)), Integer(16 * m2 * m2 + 24 * m2 + 1));
  Rational b0(Integer(1), Integer(4 * n2 + 1));
  a0.canonicalize();
  b0.canonicalize();
  const Rational h = reduced_index(offdiag_field(m, n, a0, b0), KolmogorovFlow(m, n));
  return CriticalPoint{{"a", "b"}, {a0, b0}, h};
}

// ---------------------------------------------------------------------------
// m = n

QuadraticFormInParams diag_form(int n) {
  if (n < 1) throw std::invalid_argument("diagonal case needs n >= 1");
  const KolmogorovFlow flow(n, n);
  return interpolate_quadratic({"a", "b", "c", "d"}, [&](std::span<const Rational> x) {
    return reduced_index(diag_field(n, x[0], x[1], x[2], x[3]), flow);
  });
}

QuadraticFormInParams diag_closed_form(int n) {
  if (n < 1) throw std::invalid_argument("diagonal case needs n >= 1");
  const Integer N(n);
  const Integer n2 = N * N, n3 = n2 * N, n4 = n2 * n2;
  enum { a, b, c, d };
  QuadraticFormInParams h({"a", "b", "c", "d"});
  h.constant = 2;
  h.linear[a] = lift(-8 * n2 - 2);
  h.linear[c] = lift(8 * n2 + 2);
  h.linear[d] = lift(-8 * N);
  h.quad(a, a) = lift(16 * n4 + 8 * n2 + 1);
  h.quad(b, b) = lift(256 * n4 + 32 * n2 + 1);
  h.quad(c, c) = lift(16 * n4 + 24 * n2 + 1);
  h.quad(d, d) = lift(16 * n4 + 24 * n2 + 1);
  h.quad(a, b) = lift(64 * n4 - 4 * n2 - 1);
  h.quad(a, c) = lift(-12 * n2 - 1);
  h.quad(a, d) = lift(8 * n3 + 6 * N);
  h.quad(c, d) = lift(-64 * n3 - 16 * N);
  return h;
}

CriticalPoint diag_candidate(int n) {
  const QuadraticFormInParams form = diag_form(n);
  std::vector<Rational> x = form.critical_point();
  Rational h = form.evaluate(x);
  return CriticalPoint{form.variables, std::move(x), std::move(h)};
}

IntPoly diag_min_numerator() { return IntPoly{1, 68, 1008, 3584, -4096}; }
IntPoly diag_min_denominator() { return IntPoly{2, 116, 1840, 9728, 12288}; }

CriticalPoint diag_closed_candidate(int n) {
  if (n < 1) throw std::invalid_argument("diagonal case needs n >= 1");
  const Integer N(n);
  const Integer u = N * N;
  const IntPoly common{1, 58, 920, 4864, 6144};
  const Integer base = common(u);

  auto ratio = [](const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
  };
  const Rational a0 = ratio((8 * u + 1) * IntPoly{1, 32, 256}(u), base);
  const Rational b0 = ratio(-IntPoly{-1, -12, 32, 512}(u), 2 * base);
  const Rational c0 = ratio(-IntPoly{1, 88, 1952, 17088, 59392, 49152}(u),
                            2 * IntPoly{1, 50, 472, -1568, -18048, 28672, 98304}(u));
  const Rational d0 = ratio(-N * IntPoly{3, 196, 3328, 19456, 32768}(u),
                            IntPoly{1, -8, 16}(u) * base);
  const Rational h = ratio(diag_min_numerator()(u), diag_min_denominator()(u));
  return CriticalPoint{{"a", "b", "c", "d"}, {a0, b0, c0, d0}, h};
}

// ---------------------------------------------------------------------------
// m = n = 1

Rational drivas_check() {
  const KolmogorovFlow flow(1, 1);
  return mi_exact(flow.bracket(drivas_field()), flow);
}

// ---------------------------------------------------------------------------
// Reports

void Report::expect_equal(std::string name, const Rational& expected, const Rational& computed) {
  checks.push_back({std::move(name), to_string(expected), to_string(computed), expected == computed});
}

void Report::expect_equal(std::string name, const IntPoly& expected, const IntPoly& computed) {
  checks.push_back({std::move(name), expected.str(), computed.str(), expected == computed});
}

void Report::expect_true(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), "true", detail, ok});
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool Report::passed() const { return first_failure() == nullptr; }

const Check* Report::first_failure() const {
  for (const Check& c : checks) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

namespace {

std::string monomial(const QuadraticFormInParams& f, std::size_t i, std::size_t j) {
  return i == j ? f.variables[i] + "^2" : f.variables[i] + f.variables[j];
}

void compare_forms(Report& report, const std::string& prefix, const QuadraticFormInParams& expected,
                   const QuadraticFormInParams& computed) {
  report.expect_equal(prefix + " coefficient 1", expected.constant, computed.constant);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    report.expect_equal(prefix + " coefficient " + expected.variables[i], expected.linear[i],
                        computed.linear[i]);
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    for (std::size_t j = i; j < expected.size(); ++j) {
      report.expect_equal(prefix + " coefficient " + monomial(expected, i, j),
                          expected.quad(i, j), computed.quad(i, j));
    }
  }
}

std::string join(const std::vector<Rational>& values) {
  std::string s;
  for (const Rational& v : values) s += (s.empty() ? "" : ", ") + to_string(v);
  return s;
}

}  // namespace

Report verify_offdiag(int m, int n) {
  require_offdiag(m, n);
  const std::string tag = "offdiag(" + std::to_string(m) + "," + std::to_string(n) + ")";
  Report report;
  const QuadraticFormInParams form = offdiag_form(m, n);
  compare_forms(report, tag + " H", offdiag_closed_form(m, n), form);
  const auto minors = form.hessian_minors();
  report.expect_true(tag + " Hessian positive definite", form.hessian_positive_definite(),
                     "minors " + join(minors));

  const CriticalPoint cand = offdiag_candidate(m, n);
  // a0 and b0 as the one-dimensional minimizers of the interpolated form.
  const Rational a_min = -form.linear[0] / (2 * form.quad(0, 0));
  const Rational b_min = -form.linear[1] / (2 * form.quad(1, 1));
  report.expect_equal(tag + " a0", a_min, cand.values[0]);
  report.expect_equal(tag + " b0", b_min, cand.values[1]);
  report.expect_equal(tag + " H(a0,b0) from the form", form.evaluate(cand.values), cand.hvalue);
  report.expect_equal(tag + " H(a0,b0) = J/((16m^4+24m^2+1)(4n^2+1))", offdiag_closed_hvalue(m, n),
                      cand.hvalue);
  report.expect_true(tag + " H(a0,b0) < 0", cand.hvalue < 0, to_string(cand.hvalue));
  return report;
}

Report verify_diag(int n) {
  const std::string tag = "diag(" + std::to_string(n) + ")";
  Report report;
  const QuadraticFormInParams form = diag_form(n);
  report.expect_true(tag + " Hessian positive definite", form.hessian_positive_definite(),
                     "minors " + join(form.hessian_minors()));
  const CriticalPoint cand = diag_candidate(n);
  bool zero_gradient = true;
  for (const Rational& g : form.gradient(cand.values)) zero_gradient = zero_gradient && g == 0;
  report.expect_true(tag + " gradient vanishes at the critical point", zero_gradient,
                     join(form.gradient(cand.values)));
  const Rational direct = reduced_index(
      diag_field(n, cand.values[0], cand.values[1], cand.values[2], cand.values[3]),
      KolmogorovFlow(n, n));
  report.expect_equal(tag + " H at minimum via the index of the field", cand.hvalue, direct);

  if (n == 1) {
    // cos 2nx and cos 2ny collide with the base modes, so the closed forms do not apply.
    report.expect_true(tag + " H (recorded, closed form not applicable)", true, to_string(form));
    report.expect_true(tag + " critical point (recorded)", true, join(cand.values));
    report.expect_true(tag + " H at minimum (recorded, sign not asserted)", true,
                       to_string(cand.hvalue));
    return report;
  }

  compare_forms(report, tag + " H", diag_closed_form(n), form);
  const CriticalPoint closed = diag_closed_candidate(n);
  for (std::size_t i = 0; i < cand.values.size(); ++i) {
    report.expect_equal(tag + " " + cand.variables[i] + "0", closed.values[i], cand.values[i]);
  }
  report.expect_equal(tag + " H at minimum (closed form)", closed.hvalue, cand.hvalue);
  report.expect_true(tag + " H at minimum < 0", cand.hvalue < 0, to_string(cand.hvalue));
  return report;
}

Report verify_drivas() {
  Report report;
  const KolmogorovFlow flow(1, 1);
  const TrigPoly f = drivas_field();
  report.expect_equal("sine field MI/pi^2", make_rational(-3, 200), drivas_check());
  report.expect_equal("sine field grad energy/pi^2", make_rational(43, 20), grad_energy(f));
  const auto t2 = conjugate_time_bound_squared(f, flow);
  report.expect_true("sine field T* exists", t2.has_value(), t2 ? to_string(*t2) : "none");
  if (t2) report.expect_equal("sine field T*^2/pi^2", make_rational(430, 3), *t2);
  return report;
}

SignCertificates sign_certificates(int max_check) {
  if (max_check < 1) throw std::invalid_argument("sign_certificates: max_check must be >= 1");
  SignCertificates out;
  Report& report = out.report;

  // J(m, n) with m = k + 1, n = k.
  const IntPoly k = IntPoly::x();
  const IntPoly m = k + IntPoly{1};
  const IntPoly n = k;
  const IntPoly m2 = m * m, m4 = m2 * m2, m6 = m4 * m2;
  out.j_shift = 4 * (n * n) * (16 * m4 + 40 * m2 + IntPoly{1}) - 64 * m6 - 48 * m4 + 28 * m2 +
                IntPoly{1};
  report.expect_equal("J(k+1,k)", IntPoly{-83, -520, -992, -896, -464, -128}, out.j_shift);
  bool all_negative = out.j_shift.degree() >= 0;
  for (const Integer& c : out.j_shift.coefficients()) all_negative = all_negative && c < 0;
  report.expect_true("J(k+1,k) coefficients all negative", all_negative, out.j_shift.str());
  for (long kk = 1; kk <= 20; ++kk) {
    if (out.j_shift(Integer(kk)) != offdiag_j(Integer(kk + 1), Integer(kk))) {
      report.expect_true("J(k+1,k) expansion agrees with J at k=" + std::to_string(kk), false,
                         out.j_shift(Integer(kk)).get_str());
    }
  }

  const IntPoly shift{4, 1};  // u = n^2 = 4 + k
  out.diag_numerator_k = diag_min_numerator().compose(shift);
  out.diag_denominator_k = diag_min_denominator().compose(shift);
  report.expect_equal("diag minimum numerator in k",
                      IntPoly{-802799, -868412, -349200, -61952, -4096}, out.diag_numerator_k);
  report.expect_equal("diag minimum denominator in k",
                      IntPoly{3798226, 3627508, 1298224, 206336, 12288}, out.diag_denominator_k);
  bool num_negative = true, den_positive = true;
  for (const Integer& c : out.diag_numerator_k.coefficients()) num_negative = num_negative && c < 0;
  for (const Integer& c : out.diag_denominator_k.coefficients()) den_positive = den_positive && c > 0;
  report.expect_true("diag numerator coefficients all negative", num_negative,
                     out.diag_numerator_k.str());
  report.expect_true("diag denominator coefficients all positive", den_positive,
                     out.diag_denominator_k.str());

  // J(m, m-1) = -128m^5 + 176m^4 - 320m^3 + 192m^2 - 8m + 5
  const IntPoly j_worst{5, -8, 192, -320, 176, -128};
  for (int mm = 2; mm <= max_check; ++mm) {
    const Integer j = offdiag_j(Integer(mm), Integer(mm - 1));
    const std::string at = "m=" + std::to_string(mm);
    report.expect_equal("J(m,m-1) closed form at " + at, Rational(j_worst(Integer(mm))), Rational(j));
    report.expect_true("J(m,m-1) < 0 at " + at, j < 0, j.get_str());
  }
  bool increasing = true;
  for (int mm = 3; mm <= max_check; ++mm) {
    for (int nn = 1; nn + 1 < mm; ++nn) {
      increasing = increasing && offdiag_j(Integer(mm), Integer(nn)) < offdiag_j(Integer(mm), Integer(nn + 1));
    }
  }
  report.expect_true("J(m,n) increasing in n for n < m <= " + std::to_string(max_check), increasing,
                     increasing ? "yes" : "no");
  for (int nn = 2; nn <= max_check; ++nn) {
    const Rational h = diag_closed_candidate(nn).hvalue;
    report.expect_true("diag minimum < 0 at n=" + std::to_string(nn), h < 0, to_string(h));
  }
  return out;
}

}  // namespace kolmo
