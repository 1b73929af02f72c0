#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "kolmo/eigensolve.hpp"
#include "kolmo/spectral.hpp"
#include "kolmo/theorems.hpp"
#include "oracles.hpp"

using namespace kolmo;
namespace or_ = kolmo::oracle;

namespace {

WindowPtr window(int order, Subspace s) { return std::make_shared<const SpectralWindow>(order, s); }

std::vector<double> coefficients_on(const TrigPoly& p, const SpectralWindow& w) {
  std::vector<double> out(w.size(), 0.0);
  for (const auto& [mode, c] : p.terms()) {
    const auto i = w.find(mode);
    if (!i) ADD_FAILURE() << "mode " << to_string(mode) << " outside the window";
    else out[*i] = c.get_d();
  }
  return out;
}

double quad_value(const DenseMatrix& B, const std::vector<double>& v) { return dot(v, B.apply(v)); }

TEST(Window, SizesAndOrdering) {
  for (int N = 1; N <= 8; ++N) {
    EXPECT_EQ(SpectralWindow(N, Subspace::kCos).size(), static_cast<std::size_t>(N * (2 * N + 2)));
    EXPECT_EQ(SpectralWindow(N, Subspace::kSin).size(), static_cast<std::size_t>(N * (2 * N + 2)));
    EXPECT_EQ(SpectralWindow(N, Subspace::kFull).size(), static_cast<std::size_t>(2 * N * (2 * N + 2)));
  }
  const SpectralWindow w(3, Subspace::kFull);
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_TRUE(w.modes()[i].is_canonical());
    EXPECT_FALSE(w.modes()[i].is_constant());
    if (i > 0) EXPECT_LT(w.modes()[i - 1], w.modes()[i]);
  }
  EXPECT_EQ(w.modes().front(), (Mode{Parity::kCos, 0, 1}));
  EXPECT_THROW(SpectralWindow(0, Subspace::kCos), std::invalid_argument);
}

TEST(Window, Without) {
  const SpectralWindow w(2, Subspace::kCos);
  const SpectralWindow v = w.without({Mode{Parity::kCos, 0, 1}});
  EXPECT_EQ(v.size(), w.size() - 1);
  EXPECT_FALSE(v.find(Mode{Parity::kCos, 0, 1}).has_value());
  EXPECT_THROW(w.without({Mode{Parity::kSin, 0, 1}}), std::invalid_argument);
  EXPECT_THROW(w.without(w.modes()), std::invalid_argument);
}

TEST(FoldIndex, Examples) {
  auto [m1, s1] = fold_index(Parity::kCos, -2, 3, 4);
  EXPECT_EQ(m1, (Mode{Parity::kCos, 2, -3}));
  EXPECT_EQ(s1, 1);
  auto [m2, s2] = fold_index(Parity::kCos, 0, -4, 4);
  EXPECT_EQ(m2, (Mode{Parity::kCos, 0, 4}));
  EXPECT_EQ(s2, 1);
  EXPECT_EQ(fold_index(Parity::kCos, 5, 0, 4).second, 0);
  EXPECT_EQ(fold_index(Parity::kCos, 0, 0, 4).second, 0);
  EXPECT_EQ(fold_index(Parity::kSin, -2, 3, 4).second, -1);
  EXPECT_EQ(fold_index(Parity::kSin, 0, -1, 4).second, -1);
}

TEST(AssembleL, CosXColumnForFlow21) {
  const KolmogorovFlow flow(2, 1);
  const SpectralWindow in(3, Subspace::kCos), out(5, Subspace::kCos);
  const DenseMatrix M = assemble_L_cos(flow, in, out);
  const std::size_t col = *in.find(Mode{Parity::kCos, 1, 0});
  std::vector<double> e(in.size(), 0.0);
  e[col] = 1.0;
  const std::vector<double> got = M.apply(e);
  const std::vector<double> want = coefficients_on(flow.bracket(TrigPoly::cos(1, 0)), out);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-15);
  EXPECT_DOUBLE_EQ(got[*out.find(Mode{Parity::kCos, 3, -1})], 0.25);
  EXPECT_DOUBLE_EQ(got[*out.find(Mode{Parity::kCos, 1, -1})], -0.25);
}

TEST(AssembleL, StreamIsInTheKernel) {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const KolmogorovFlow flow(m, n);
      const SpectralWindow in(4, Subspace::kCos), out(4 + std::max(m, n), Subspace::kCos);
      const std::vector<double> v = coefficients_on(flow.stream(), in);
      for (double x : assemble_L_cos(flow, in, out).apply(v)) EXPECT_NEAR(x, 0.0, 1e-15);
    }
  }
}

TEST(AssembleL, RejectsBadWindows) {
  const KolmogorovFlow flow(3, 2);
  EXPECT_THROW(assemble_L_cos(flow, SpectralWindow(4, Subspace::kCos), SpectralWindow(6, Subspace::kCos)),
               std::invalid_argument);
  EXPECT_THROW(assemble_L(flow, SpectralWindow(4, Subspace::kCos), SpectralWindow(7, Subspace::kSin)),
               std::invalid_argument);
  EXPECT_THROW(assemble_L_sin(flow, SpectralWindow(4, Subspace::kCos), SpectralWindow(7, Subspace::kCos)),
               std::invalid_argument);
}

TEST(AssembleL, MatchesExactBracketOnRandomVectors) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> w(1, 3), order(1, 6);
  std::uniform_real_distribution<double> u(-1, 1);
  for (Subspace s : {Subspace::kCos, Subspace::kSin, Subspace::kFull}) {
    for (int trial = 0; trial < 50; ++trial) {
      const KolmogorovFlow flow(w(rng), w(rng));
      const int N = order(rng);
      const SpectralWindow in(N, s), out(N + std::max(flow.m(), flow.n()), s);
      std::vector<double> v(in.size());
      for (double& x : v) x = u(rng);
      const std::vector<double> got = assemble_L(flow, in, out).apply(v);
      const TrigPoly exact = flow.bracket(or_::window_poly(in, v));
      const std::vector<double> want = coefficients_on(exact, out);
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
    }
  }
}

TEST(AssembleL, SineSubspaceExamples) {
  const KolmogorovFlow flow(1, 1);
  const SpectralWindow in(5, Subspace::kSin), out(6, Subspace::kSin);
  const DenseMatrix M = assemble_L_sin(flow, in, out);
  const std::vector<double> got = M.apply(coefficients_on(TrigPoly::sin(1, 0), in));
  const std::vector<double> want = coefficients_on(flow.bracket(TrigPoly::sin(1, 0)), out);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-15);

  const std::vector<double> mv = M.apply(coefficients_on(drivas_field(), in));
  // MI / pi^2 = 2 * sum (|gamma|^2 - lambda^2) c^2
  double q = 0;
  for (std::size_t i = 0; i < mv.size(); ++i) {
    q += 2 * (static_cast<double>(out.modes()[i].norm2()) - 2.0) * mv[i] * mv[i];
  }
  EXPECT_NEAR(q, -3.0 / 200, 1e-15);

  for (double x : M.apply(std::vector<double>(in.size(), 0.0))) EXPECT_EQ(x, 0.0);
}

TEST(QuadForm, MatchesBracketOracle) {
  for (auto [m, n, N, s] : {std::tuple{3, 2, 4, Subspace::kCos}, std::tuple{1, 1, 5, Subspace::kSin},
                            std::tuple{2, 2, 3, Subspace::kFull}, std::tuple{4, 1, 3, Subspace::kCos}}) {
    const KolmogorovFlow flow(m, n);
    const QuadForm qf = assemble_quadform(flow, window(N, s));
    const DenseMatrix B = or_::quadform_from_brackets(flow, *qf.window);
    const double scale = B.max_abs();
    for (std::size_t i = 0; i < B.rows(); ++i) {
      for (std::size_t j = 0; j < B.cols(); ++j) EXPECT_NEAR(qf.B(i, j), B(i, j), 1e-13 * scale);
    }
  }
}

TEST(QuadForm, SymmetryAndCosXEntry) {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      const KolmogorovFlow flow(m, n);
      const QuadForm qf = assemble_quadform(flow, window(default_order(flow), Subspace::kCos));
      double asym = 0;
      for (std::size_t i = 0; i < qf.B.rows(); ++i) {
        for (std::size_t j = 0; j < i; ++j) asym = std::max(asym, std::abs(qf.B(i, j) - qf.B(j, i)));
      }
      EXPECT_LE(asym, 1e-13 * qf.B.max_abs());
      const std::size_t c = *qf.window->find(Mode{Parity::kCos, 1, 0});
      if (m >= 2) EXPECT_DOUBLE_EQ(qf.B(c, c), n * n / 4.0);
      else EXPECT_DOUBLE_EQ(qf.B(c, c), 3.0 * n * n / 8);
    }
  }
}

TEST(QuadForm, ExactOnTheSpan) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> w(1, 3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const KolmogorovFlow flow(w(rng), w(rng));
    const WindowPtr win = window(3, trial % 2 ? Subspace::kCos : Subspace::kSin);
    const QuadForm qf = assemble_quadform(flow, win);
    std::vector<double> v(win->size());
    for (double& x : v) x = u(rng);
    const TrigPoly f = or_::window_poly(*win, v);
    const double exact = mi_exact(flow.bracket(f), flow).get_d();
    EXPECT_NEAR(2 * quad_value(qf.B, v), exact, 1e-10 * std::max(1.0, std::abs(exact)));
  }
}

TEST(QuadForm, ClosedFormFields) {
  {
    const KolmogorovFlow flow(3, 2);
    const CriticalPoint c = offdiag_candidate(3, 2);
    const TrigPoly f = offdiag_field(3, 2, c.values[0], c.values[1]);
    const QuadForm qf = assemble_quadform(flow, window(default_order(flow), Subspace::kCos));
    const double exact = mi_exact(flow.bracket(f), flow).get_d();
    EXPECT_NEAR(2 * quad_value(qf.B, coefficients_on(f, *qf.window)), exact, 1e-10 * std::abs(exact));
  }
  {
    const KolmogorovFlow flow(2, 2);
    const CriticalPoint c = diag_candidate(2);
    const TrigPoly f = diag_field(2, c.values[0], c.values[1], c.values[2], c.values[3]);
    const QuadForm qf = assemble_quadform(flow, window(default_order(flow), Subspace::kCos));
    const double exact = mi_exact(flow.bracket(f), flow).get_d();
    EXPECT_NEAR(2 * quad_value(qf.B, coefficients_on(f, *qf.window)), exact, 1e-10 * std::abs(exact));
  }
}

TEST(Reduce, WeightsAndSignInvariance) {
  const KolmogorovFlow flow(3, 2);
  const QuadForm qf = assemble_quadform(flow, window(8, Subspace::kCos));
  const ReducedForm r0 = reduce_symmetric(qf, 0);
  EXPECT_EQ(r0.S, qf.B);
  const ReducedForm r2 = reduce_symmetric(qf, 2);
  const std::size_t c = *qf.window->find(Mode{Parity::kCos, 1, 0});
  EXPECT_DOUBLE_EQ(r2.S(c, c), qf.B(c, c));
  const std::size_t d = *qf.window->find(Mode{Parity::kCos, 1, 1});
  EXPECT_NEAR(r2.S(d, d), qf.B(d, d) / 4, 1e-15);
  EXPECT_THROW(reduce_symmetric(qf, -1), std::invalid_argument);
  for (int p = 0; p <= 3; ++p) {
    EXPECT_LT(sym_eig_min(reduce_symmetric(qf, p).S).value, 0.0) << "p=" << p;
  }
}

TEST(Reduce, SignInvarianceOnRandomFlows) {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const KolmogorovFlow flow(m, n);
      const QuadForm qf = assemble_quadform(flow, window(5, Subspace::kCos));
      const bool negative = sym_eig_min(reduce_symmetric(qf, 0).S).value < -1e-12;
      for (int p = 1; p <= 3; ++p) {
        const double v = sym_eig_min(reduce_symmetric(qf, p).S).value;
        EXPECT_EQ(v < -1e-12, negative) << m << "," << n << " p=" << p << " " << v;
      }
    }
  }
}

TEST(Constrain, RemovesRowsAndColumns) {
  const KolmogorovFlow flow(2, 2);
  const ReducedForm r = reduce_symmetric(assemble_quadform(flow, window(4, Subspace::kCos)), 3);
  const ReducedForm same = constrain(r, {});
  EXPECT_EQ(same.S, r.S);
  const ReducedForm c = constrain(r, {Mode{Parity::kCos, 0, 1}});
  EXPECT_EQ(c.S.rows(), r.S.rows() - 1);
  EXPECT_FALSE(c.window->find(Mode{Parity::kCos, 0, 1}).has_value());
  const std::size_t a = *r.window->find(Mode{Parity::kCos, 1, 0});
  const std::size_t b = *c.window->find(Mode{Parity::kCos, 1, 0});
  EXPECT_EQ(c.S(b, b), r.S(a, a));
  EXPECT_THROW(constrain(r, {Mode{Parity::kCos, 9, 9}}), std::invalid_argument);
  EXPECT_THROW(constrain(r, r.window->modes()), std::invalid_argument);
}

TEST(Certify, ClosedFormAndSimpleFields) {
  const KolmogorovFlow flow(3, 2);
  const WindowPtr w = window(default_order(flow), Subspace::kCos);
  const CriticalPoint c = offdiag_candidate(3, 2);
  const TrigPoly f = offdiag_field(3, 2, c.values[0], c.values[1]);
  const CertifiedResult r = certify_candidate(project(f, w), flow);
  EXPECT_EQ(r.field, f);
  EXPECT_EQ(r.q, make_rational(4, 4) * offdiag_closed_hvalue(3, 2));  // n^2 / 4 = 1
  EXPECT_TRUE(r.conjugate_point());

  for (int m = 2; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      const KolmogorovFlow fl(m, n);
      const CertifiedResult cx = certify_candidate(project(TrigPoly::cos(1, 0), w), fl);
      EXPECT_EQ(cx.q, make_rational(n * n, 2));
      EXPECT_FALSE(cx.conjugate_point());
    }
  }
  EXPECT_THROW(certify_candidate(CoeffVector(w, std::vector<double>(w->size(), 0.0)), flow),
               std::invalid_argument);
  EXPECT_THROW(certify_candidate(project(flow.stream(), w), flow), std::domain_error);
}

TEST(Certify, NegativeEigenvalueIsAWitness) {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= m; ++n) {
      for (Subspace s : {Subspace::kCos, Subspace::kSin}) {
        const KolmogorovFlow flow(m, n);
        const ReducedForm r = reduce_symmetric(assemble_quadform(flow, window(6, s)), 3);
        const EigenPair e = sym_eig_min(r.S);
        if (e.value >= -1e-10) continue;
        const CoeffVector v = r.to_coefficients(e.vector);
        const CertifiedResult cert = certify_candidate(v, flow);
        EXPECT_LT(cert.q, 0) << m << "," << n << " " << to_string(s);
        EXPECT_NEAR(mi_float(v, flow), 2 * dot(v.values, assemble_quadform(flow, r.window).B.apply(v.values)),
                    1e-12);
      }
    }
  }
}

TEST(Eigen, MinimumAgreesWithJacobiOracle) {
  for (auto [m, n, N, s] : {std::tuple{3, 2, 8, Subspace::kCos}, std::tuple{3, 2, 10, Subspace::kCos},
                            std::tuple{1, 1, 6, Subspace::kSin}, std::tuple{2, 2, 6, Subspace::kCos}}) {
    const KolmogorovFlow flow(m, n);
    const WindowPtr w = window(N, s);
    const DenseMatrix B = or_::quadform_from_brackets(flow, *w);
    DenseMatrix S = B;
    for (std::size_t i = 0; i < S.rows(); ++i) {
      for (std::size_t j = 0; j < S.cols(); ++j) {
        S(i, j) /= std::pow(static_cast<double>(w->modes()[i].norm2() * w->modes()[j].norm2()), 1.5);
      }
    }
    const double oracle = or_::jacobi_eigen(S).front();
    const EigenPair got = sym_eig_min(reduce_symmetric(assemble_quadform(flow, w), 3).S);
    EXPECT_NEAR(got.value, oracle, 1e-12) << m << "," << n << " N=" << N;
  }
}

TEST(Dominance, VShapeMinimizer) {
  for (int p : {2, 3}) {
    {
      const KolmogorovFlow flow(3, 2);
      const ReducedForm r = reduce_symmetric(assemble_quadform(flow, window(8, Subspace::kCos)), p);
      const EigenPair e = sym_eig_min(r.S);
      EXPECT_EQ(r.to_coefficients(e.vector).dominant_mode(), (Mode{Parity::kCos, 1, 0})) << "p=" << p;
    }
    {
      const KolmogorovFlow flow(2, 2);
      const ReducedForm r = constrain(
          reduce_symmetric(assemble_quadform(flow, window(8, Subspace::kCos)), p), {Mode{Parity::kCos, 0, 1}});
      const EigenPair e = sym_eig_min(r.S);
      EXPECT_EQ(r.to_coefficients(e.vector).dominant_mode(), (Mode{Parity::kCos, 1, 0})) << "p=" << p;
    }
  }
}

TEST(Project, RejectsOutOfWindowTerms) {
  const WindowPtr w = window(2, Subspace::kCos);
  EXPECT_THROW(project(TrigPoly::cos(3, 0), w), std::invalid_argument);
  EXPECT_THROW(project(TrigPoly::sin(1, 0), w), std::invalid_argument);
  EXPECT_THROW(CoeffVector(w, {1.0}), std::invalid_argument);
  const CoeffVector v = project(TrigPoly::cos(1, 1, 3), w);
  EXPECT_NEAR(v.eval(0.3, 0.4), 3 * std::cos(0.7), 1e-15);
}

}  // namespace
