#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace grothnorm;
using testutil::sym;

namespace {

// Plain 2^n loop, no Gray code, as a reference for the enumeration oracle.
std::pair<double, double> brute_sign_extremes(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  double hi = -1e300, lo = 1e300;
  Eigen::VectorXd x(n);
  for (std::uint64_t code = 0; code < (1ULL << n); ++code) {
    for (int i = 0; i < n; ++i) x(i) = (code >> i) & 1 ? -1.0 : 1.0;
    const double v = x.dot(a * x);
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  return {hi, lo};
}

double brute_cut_norm(const Eigen::MatrixXd& b) {
  const int m = static_cast<int>(b.rows()), n = static_cast<int>(b.cols());
  double best = 0.0;
  for (std::uint64_t r = 1; r < (1ULL << m); ++r)
    for (std::uint64_t c = 1; c < (1ULL << n); ++c) {
      double s = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
          if (((r >> i) & 1) && ((c >> j) & 1)) s += b(i, j);
      best = std::max(best, std::abs(s));
    }
  return best;
}

}  // namespace

TEST(ThetaExact, Examples) {
  const ThetaResult t = theta_real_exact(sym({{0, 1}, {1, 0}}));
  EXPECT_DOUBLE_EQ(t.value, 2.0);
  EXPECT_EQ(t.argmax(0), t.argmax(1));
  EXPECT_DOUBLE_EQ(theta_real_exact(SymMatrix::diagonal(Eigen::Vector2d(1, -1))).value, 0.0);
  const ThetaResult l = theta_real_exact(sym({{1, -1}, {-1, 1}}));
  EXPECT_DOUBLE_EQ(l.value, 4.0);
  EXPECT_EQ(l.argmax(0), -l.argmax(1));
}

TEST(ThetaExact, ArgmaxAttainsValue) {
  RngStream g(31, 2);
  for (int t = 0; t < 20; ++t) {
    const SymMatrix a = testutil::random_real_sym(9, g);
    const ThetaResult r = theta_real_exact(a);
    EXPECT_NEAR(std::abs(r.argmax.dot(a.real_entries() * r.argmax)), r.value, 1e-10);
  }
}

TEST(ThetaExact, GrayCodeMatchesPlainEnumeration) {
  RngStream g(32, 1);
  for (int n : {1, 2, 5, 10, 17}) {
    const SymMatrix a = testutil::random_real_sym(n, g);
    const auto [hi, lo] = brute_sign_extremes(a.real_entries());
    const SignExtremes e = sign_extremes(a);
    EXPECT_NEAR(e.max_value, hi, 1e-9 * std::max(1.0, std::abs(hi))) << n;
    EXPECT_NEAR(e.min_value, lo, 1e-9 * std::max(1.0, std::abs(lo))) << n;
  }
}

TEST(ThetaExact, SizeLimit) {
  EXPECT_THROW(theta_real_exact(SymMatrix::zero(25, Field::Real)), DomainError);
  EXPECT_THROW(theta_real_exact(SymMatrix::zero(3, Field::Complex)), DomainError);
  EXPECT_THROW(box_quad_max(SymMatrix::zero(13, Field::Real)), DomainError);
}

TEST(ThetaExact, SignConjugationInvariance) {
  RngStream g(33, 1);
  for (int t = 0; t < 20; ++t) {
    const SymMatrix a = testutil::random_real_sym(7, g);
    Eigen::VectorXcd d(7);
    for (int i = 0; i < 7; ++i) d(i) = g.uniform() < 0.5 ? -1.0 : 1.0;
    EXPECT_NEAR(theta_real_exact(a.conjugated_by_diagonal(d)).value, theta_real_exact(a).value, 1e-10);
  }
}

TEST(BoxMax, Examples) {
  const BoxMaxResult r = box_quad_max(sym({{-1, 2}, {2, -1}}));
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  EXPECT_NEAR(std::abs(r.argmax(0)), 1.0, 1e-12);
  EXPECT_NEAR(r.argmax(0), r.argmax(1), 1e-12);

  const BoxMaxResult z = box_quad_max(SymMatrix::diagonal(Eigen::Vector2d(-1, -1)));
  EXPECT_NEAR(z.value, 0.0, 1e-15);
  EXPECT_NEAR(z.argmax.norm(), 0.0, 1e-15);

  RngStream g(34, 1);
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd a = testutil::random_real_sym(6, g).real_entries();
    a.diagonal() = a.diagonal().cwiseAbs();
    const SymMatrix s = SymMatrix::real(a);
    EXPECT_NEAR(box_quad_max(s).value, sign_extremes(s).max_value, 1e-9);
  }
}

TEST(BoxMax, FacesAreStationaryAndDegenerateInputsWork) {
  RngStream g(35, 1);
  for (int t = 0; t < 20; ++t) {
    const BoxMaxResult r = box_quad_max(testutil::random_real_sym(5, g));
    EXPECT_LE(r.stationarity_residual, 1e-9);
    for (int i = 0; i < 5; ++i) {
      if (r.face_pattern[i] == Face::Lo) EXPECT_EQ(r.argmax(i), -1.0);
      if (r.face_pattern[i] == Face::Hi) EXPECT_EQ(r.argmax(i), 1.0);
      EXPECT_LE(std::abs(r.argmax(i)), 1.0);
    }
  }
  EXPECT_EQ(box_quad_max(SymMatrix::zero(4, Field::Real)).value, 0.0);
  // Rank one, singular on most faces.
  const SymMatrix r1 = sym({{1, -1, 1}, {-1, 1, -1}, {1, -1, 1}});
  EXPECT_NEAR(box_quad_max(r1).value, 9.0, 1e-12);
  EXPECT_NEAR(box_quad_max(-r1).value, 0.0, 1e-12);
}

TEST(BoxMax, DominatesDenseGrid) {
  RngStream g(36, 1);
  for (int t = 0; t < 30; ++t) {
    const SymMatrix a = testutil::random_real_sym(3, g, -1, 1);
    const Eigen::MatrixXd m = a.real_entries();
    double grid = -1e300;
    for (int i = 0; i < 41; ++i)
      for (int j = 0; j < 41; ++j)
        for (int k = 0; k < 41; ++k) {
          const Eigen::Vector3d x(-1 + 0.05 * i, -1 + 0.05 * j, -1 + 0.05 * k);
          grid = std::max(grid, x.dot(m * x));
        }
    const double v = box_quad_max(a).value;
    EXPECT_GE(v, grid - 1e-12);
    EXPECT_LE(v - grid, 1e-3);
  }
}

TEST(ThetaBig, Examples) {
  EXPECT_NEAR(Theta_real_exact(SymMatrix::diagonal(Eigen::Vector2d(1, -1))), 1.0, 1e-12);
  EXPECT_NEAR(Theta_real_exact(sym({{-1, 2}, {2, -1}})), 6.0, 1e-12);
  RngStream g(37, 1);
  for (int t = 0; t < 20; ++t) {
    const SymMatrix z = testutil::random_zero_diag(6, g);
    EXPECT_NEAR(Theta_real_exact(z), theta_real_exact(z).value, 1e-9);
    const SymMatrix a = testutil::random_real_sym(6, g);
    EXPECT_LE(theta_real_exact(a).value, Theta_real_exact(a) + 1e-9);
  }
}

TEST(ThetaBig, MaximumOverDiagonalScalings) {
  // Theta(A) = max over D = diag([0,1]^n) of theta(DAD), sampled on a grid.
  RngStream g(38, 1);
  const double h = 0.05;
  for (int t = 0; t < 5; ++t) {
    const SymMatrix a = testutil::random_real_sym(3, g);
    double grid = 0.0;
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j)
        for (int k = 0; k <= 20; ++k) {
          const Eigen::VectorXcd d = Eigen::Vector3cd(i * h, j * h, k * h);
          grid = std::max(grid, theta_real_exact(a.conjugated_by_diagonal(d)).value);
        }
    const double big = Theta_real_exact(a);
    // The nearest grid point is within h/2 per coordinate of the maximizer.
    const double lip = (h + h * h) * a.real_entries().cwiseAbs().sum();
    EXPECT_GE(big, grid - 1e-9);
    EXPECT_LE(big - grid, lip);
  }
}

TEST(ThetaComplex, Examples) {
  RngStream g(39, 1);
  const SymMatrix nn = testutil::random_real_sym(5, g, 0, 3);
  EXPECT_NEAR(theta_complex_lower(nn.as_complex()).value, nn.real_entries().sum(), 1e-9);
  const SymMatrix k = embed_rect(RectMatrix::real(testutil::mat({{1, -1}, {1, 1}})));
  EXPECT_NEAR(theta_complex_lower(k.as_complex()).value, 4.0 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(theta_complex_lower(SymMatrix::diagonal(Eigen::Vector2d(1, -1), Field::Complex)).value, 0.0, 1e-12);
}

TEST(ThetaComplex, ArgmaxIsUnimodularAndAttains) {
  RngStream g(40, 1);
  for (int t = 0; t < 10; ++t) {
    const SymMatrix a = testutil::random_hermitian(6, g);
    const ComplexThetaResult r = theta_complex_lower(a, 8, 8, 1234 + t);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(std::abs(r.argmax(i)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs((r.argmax.adjoint() * a.entries() * r.argmax)(0)), r.value, 1e-9);
  }
  for (int t = 0; t < 10; ++t) {
    // Sign vectors are feasible, so the complex value dominates the real one.
    const SymMatrix a = testutil::random_real_sym(6, g);
    EXPECT_GE(theta_complex_lower(a.as_complex()).value, theta_real_exact(a).value - 1e-9);
  }
}

TEST(CutNorm, Examples) {
  EXPECT_DOUBLE_EQ(cut_norm_exact(RectMatrix::real(testutil::mat({{1, -1}, {1, 1}}))).value, 2.0);
  EXPECT_DOUBLE_EQ(cut_norm_exact(RectMatrix::real(testutil::mat({{1}}))).value, 1.0);
  RngStream g(41, 1);
  const Eigen::MatrixXd nn = testutil::random_rect(3, 4, g, 0, 2);
  EXPECT_NEAR(cut_norm_exact(RectMatrix::real(nn)).value, nn.sum(), 1e-12);
}

TEST(CutNorm, MatchesBruteForceAndTheBracket) {
  RngStream g(42, 1);
  for (int t = 0; t < 30; ++t) {
    const int m = 1 + t % 5, n = 1 + (t / 5) % 5;
    const Eigen::MatrixXd b = testutil::random_rect(m, n, g);
    const CutNormResult r = cut_norm_exact(RectMatrix::real(b));
    EXPECT_NEAR(r.value, brute_cut_norm(b), 1e-10);
    double s = 0.0;
    for (int i : r.rows)
      for (int j : r.cols) s += b(i, j);
    EXPECT_NEAR(std::abs(s), r.value, 1e-10);
    const double th = theta_real_exact(laplacian_of(embed_rect(RectMatrix::real(b)))).value;
    EXPECT_GE(r.value, th / 8.0 - 1e-10);
    EXPECT_LE(r.value, 3.0 * th / 8.0 + 1e-10);
  }
}

TEST(Stretch, Examples) {
  EXPECT_DOUBLE_EQ(stretch_exact(SymMatrix::diagonal(Eigen::Vector2d(1, -1))), 0.0);
  EXPECT_DOUBLE_EQ(stretch_exact(sym({{0, 1}, {1, 0}})), 4.0);
  RngStream g(43, 1);
  for (int t = 0; t < 20; ++t) {
    const SymMatrix a = testutil::random_real_sym(7, g);
    EXPECT_GE(stretch_exact(a), theta_real_exact(a).value - 1e-10);
    EXPECT_NEAR(stretch_exact(a.shifted(2.5)), stretch_exact(a), 1e-9);
  }
}

TEST(MaxCut, EnumerationMatchesQuarterTheta) {
  RngStream g(44, 1);
  for (int n = 2; n <= 16; n += 2) {
    const SymMatrix w = testutil::random_weights(n, g);
    const MaxCutResult mc = max_cut_enumerate(w);
    EXPECT_NEAR(mc.value, theta_real_exact(laplacian_of(w)).value / 4.0, 1e-9) << n;
    double cut = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (mc.side[i] != mc.side[j]) cut += w(i, j).real();
    EXPECT_NEAR(cut, mc.value, 1e-9);
  }
}
