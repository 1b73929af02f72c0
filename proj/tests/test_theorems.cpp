#include <gtest/gtest.h>

#include <random>

#include "kolmo/intpoly.hpp"
#include "kolmo/theorems.hpp"
#include "oracles.hpp"

using namespace kolmo;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

TEST(IntPoly, Arithmetic) {
  const IntPoly x = IntPoly::x();
  const IntPoly p = x * x - IntPoly{1};
  EXPECT_EQ(p, (IntPoly{-1, 0, 1}));
  EXPECT_EQ(p(Integer(3)), 8);
  EXPECT_EQ(p.compose(x + IntPoly{1}), (IntPoly{0, 2, 1}));
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_EQ(3 * x, (IntPoly{0, 3}));
}

TEST(Interpolation, RecoversAKnownQuadratic) {
  QuadraticFormInParams want({"a", "b", "c"});
  want.constant = q(2);
  want.linear = {q(1, 2), q(-3), q(0)};
  want.quad(0, 0) = q(5);
  want.quad(0, 1) = q(-7, 3);
  want.quad(1, 2) = q(1, 9);
  want.quad(2, 2) = q(4);
  const auto got = interpolate_quadratic({"a", "b", "c"}, [&](std::span<const Rational> x) {
    return want.evaluate(x);
  });
  EXPECT_EQ(got, want);
  EXPECT_EQ(got.quad(1, 0), q(-7, 3));
}

TEST(Quadratic, CriticalPointAndSingular) {
  QuadraticFormInParams f({"a"});
  f.constant = 1;
  f.linear = {q(-4)};
  f.quad(0, 0) = q(2);
  EXPECT_EQ(f.critical_point(), (std::vector<Rational>{q(1)}));
  f.quad(0, 0) = 0;
  EXPECT_THROW(f.critical_point(), std::domain_error);
}

TEST(OffDiagonal, GoldenCandidate32) {
  const CriticalPoint c = offdiag_candidate(3, 2);
  EXPECT_EQ(c.values[0], q(-37, 1513));
  EXPECT_EQ(c.values[1], q(1, 17));
  EXPECT_EQ(c.hvalue, offdiag_closed_hvalue(3, 2));
  EXPECT_LT(c.hvalue, 0);
  EXPECT_EQ(offdiag_form(3, 2).quad(0, 0), 1513);
  EXPECT_EQ(offdiag_j(Integer(2), Integer(1)), -3083);
}

TEST(OffDiagonal, FormsMatchClosedFormUpToSix) {
  for (int m = 2; m <= 6; ++m) {
    for (int n = 1; n < m; ++n) {
      const QuadraticFormInParams f = offdiag_form(m, n);
      EXPECT_EQ(f, offdiag_closed_form(m, n)) << m << "," << n;
      EXPECT_TRUE(f.hessian_positive_definite());
      const CriticalPoint c = offdiag_candidate(m, n);
      EXPECT_EQ(c.hvalue, offdiag_closed_hvalue(m, n));
      EXPECT_LT(c.hvalue, 0) << m << "," << n;
      EXPECT_TRUE(verify_offdiag(m, n).passed());
    }
  }
  EXPECT_THROW(offdiag_form(2, 2), std::invalid_argument);
  EXPECT_THROW(offdiag_form(2, 3), std::invalid_argument);
  EXPECT_THROW(offdiag_form(1, 0), std::invalid_argument);
}

TEST(OffDiagonal, JIsIncreasingInN) {
  for (int m = 2; m <= 10; ++m) {
    for (int n = 1; n + 1 < m; ++n) {
      EXPECT_LT(offdiag_j(Integer(m), Integer(n)), offdiag_j(Integer(m), Integer(n + 1)));
    }
  }
}

TEST(Diagonal, GoldenCandidate2) {
  const CriticalPoint c = diag_candidate(2);
  EXPECT_EQ(c.values[0], q(139425, 1899113));
  EXPECT_EQ(c.values[1], q(-33231, 3798226));
  EXPECT_EQ(c.values[2], q(-66661217, 854600850));
  EXPECT_EQ(c.values[3], q(-19375654, 427300425));
  EXPECT_EQ(c.hvalue, q(-802799, 3798226));
}

TEST(Diagonal, FormsMatchClosedFormFromTwo) {
  for (int n = 2; n <= 6; ++n) {
    const QuadraticFormInParams f = diag_form(n);
    EXPECT_EQ(f, diag_closed_form(n)) << n;
    const Rational n4 = q(n * n * n * n);
    EXPECT_EQ(f.quad(3, 3), 16 * n4 + 24 * q(n * n) + 1);
    EXPECT_EQ(f.linear[3], q(-8 * n));
    EXPECT_EQ(f.constant, 2);
    const CriticalPoint c = diag_candidate(n);
    const CriticalPoint closed = diag_closed_candidate(n);
    EXPECT_EQ(c.values, closed.values);
    EXPECT_EQ(c.hvalue, closed.hvalue);
    EXPECT_LT(c.hvalue, 0);
    for (const Rational& g : f.gradient(c.values)) EXPECT_EQ(g, 0);
    EXPECT_TRUE(verify_diag(n).passed());
  }
}

TEST(Diagonal, NEqualsOneIsRecordedNotAsserted) {
  // cos x cos 2x and sin x sin 2x feed back into cos x.
  EXPECT_NE(diag_form(1), diag_closed_form(1));
  const CriticalPoint c = diag_candidate(1);
  for (const Rational& g : diag_form(1).gradient(c.values)) EXPECT_EQ(g, 0);
  EXPECT_TRUE(verify_diag(1).passed());
  // The closed-form minimum at n = 1 is positive.
  EXPECT_GT(diag_min_numerator()(Integer(1)), 0);
}

TEST(SineField, ExactValues) {
  EXPECT_EQ(drivas_check(), q(-3, 200));
  const KolmogorovFlow flow(1, 1);
  const TrigPoly f = drivas_field();
  EXPECT_EQ(grad_energy(f), q(43, 20));
  EXPECT_NEAR(grad_energy(f).get_d(), oracle::grad_energy_quadrature(f), 1e-12);
  EXPECT_NEAR(mi_exact(flow.bracket(f), flow).get_d(), oracle::mi_quadrature(flow.bracket(f), flow), 1e-12);
  EXPECT_EQ(*conjugate_time_bound_squared(f, flow), q(430, 3));
  EXPECT_NEAR(*conjugate_time_bound(f, flow), M_PI * std::sqrt(430.0 / 3), 1e-12);
  EXPECT_EQ(mi_exact(flow.bracket(2 * f), flow), q(-3, 50));
  const TrigPoly truncated = f - TrigPoly::sin(5, 0, q(1, 100));
  EXPECT_NE(mi_exact(flow.bracket(truncated), flow), q(-3, 200));
  EXPECT_TRUE(verify_drivas().passed());
}

TEST(SignCertificates, Coefficients) {
  const SignCertificates s = sign_certificates(10);
  EXPECT_EQ(s.j_shift, (IntPoly{-83, -520, -992, -896, -464, -128}));
  EXPECT_EQ(s.diag_numerator_k, (IntPoly{-802799, -868412, -349200, -61952, -4096}));
  EXPECT_EQ(s.diag_denominator_k, (IntPoly{3798226, 3627508, 1298224, 206336, 12288}));
  EXPECT_TRUE(s.report.passed());
  EXPECT_LT(offdiag_j(Integer(5), Integer(4)), 0);
  EXPECT_THROW(sign_certificates(0), std::invalid_argument);
}

TEST(Report, FirstFailure) {
  Report r;
  r.expect_equal("one", q(1), q(1));
  r.expect_equal("two", q(2), q(3));
  r.expect_true("three", false, "x");
  ASSERT_NE(r.first_failure(), nullptr);
  EXPECT_EQ(r.first_failure()->name, "two");
  EXPECT_FALSE(r.passed());
}

}  // namespace
