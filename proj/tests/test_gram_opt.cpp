#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace grothnorm;
using testutil::sym;

namespace {

OptConfig quick(int restarts = 8) {
  OptConfig c;
  c.restarts = restarts;
  return c;
}

const RectMatrix& krivine() {
  static const RectMatrix k = RectMatrix::real(testutil::mat({{1, -1}, {1, 1}}));
  return k;
}

}  // namespace

TEST(GammaD, Examples) {
  const OptConfig cfg = quick();
  EXPECT_NEAR(gamma_d(sym({{0, 1}, {1, 0}}), 1, cfg).value, 2.0, 1e-9);
  EXPECT_NEAR(gamma_d(sym({{0, 1}, {1, 0}}), 2, cfg).value, 2.0, 1e-9);
  EXPECT_NEAR(gamma_d(SymMatrix::diagonal(Eigen::Vector2d(1, -1)), 1, cfg).value, 0.0, 1e-9);
  EXPECT_NEAR(Gamma_d(SymMatrix::diagonal(Eigen::Vector2d(1, -1)), 1, cfg).value, 1.0, 1e-9);
  EXPECT_NEAR(gamma_full(sym({{1, -1}, {-1, 1}}), cfg).value, 4.0, 1e-9);
}

TEST(GammaD, KrivineRankOneAndTwo) {
  const OptConfig cfg = quick();
  EXPECT_NEAR(G_d_rect(krivine(), 1, cfg).value, 2.0, 1e-9);
  EXPECT_NEAR(G_d_rect(krivine(), 2, cfg).value, 2.0 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(G_full(krivine(), cfg).value, 2.0 * std::sqrt(2.0), 1e-9);
  // Complex rank one sees the real rank-two value.
  const RectMatrix kc = RectMatrix::complex(krivine().entries());
  EXPECT_NEAR(G_d_rect(kc, 1, cfg).value, 2.0 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(0.5 * complex_norm_via_real(embed_rect(krivine()), 1, Constraint::UnitBall, cfg).value,
              2.0 * std::sqrt(2.0), 1e-9);
}

TEST(RSigned, ExamplesAndSpread) {
  const OptConfig cfg = quick();
  const SymMatrix swap = sym({{0, 1}, {1, 0}});
  EXPECT_NEAR(r_signed(swap, SdpVariant::Eq, cfg).value, 2.0, 1e-9);
  EXPECT_NEAR(r_signed(-swap, SdpVariant::Le, cfg).value, 2.0, 1e-9);
  EXPECT_NEAR(spread(swap, cfg), 4.0, 1e-9);
  // Correlation matrices have unit diagonal, so only the trace survives.
  const SymMatrix d = SymMatrix::diagonal(Eigen::Vector3d(2, -1, -3));
  EXPECT_NEAR(r_signed(d, SdpVariant::Eq, cfg).value, -2.0, 1e-9);
  EXPECT_NEAR(r_signed(d, SdpVariant::Le, cfg).value, 2.0, 1e-9);
  EXPECT_NEAR(spread(d, cfg), 0.0, 1e-9);
}

TEST(GammaD, AgreesWithEnumerationAtRankOne) {
  RngStream g(51, 1);
  const OptConfig cfg = quick(16);
  for (int t = 0; t < 10; ++t) {
    const SymMatrix a = testutil::random_real_sym(6, g);
    const double th = theta_real_exact(a).value;
    const NormEstimate e = gamma_d(a, 1, cfg);
    EXPECT_LE(e.value, th + 1e-9);
    EXPECT_NEAR(e.value, th, 1e-6 * th);
    EXPECT_GE(gamma_full(a, cfg).value, th - 1e-9);
  }
}

TEST(GammaD, MonotoneInRank) {
  RngStream g(52, 1);
  const OptConfig cfg = quick();
  for (int t = 0; t < 6; ++t) {
    const SymMatrix a = t % 2 ? testutil::random_hermitian(5, g) : testutil::random_real_sym(5, g);
    double prev_g = 0.0, prev_G = 0.0;
    for (int d = 1; d <= 5; ++d) {
      const double gv = gamma_d(a, d, cfg).value, Gv = Gamma_d(a, d, cfg).value;
      EXPECT_GE(gv, prev_g - 1e-7 * std::max(1.0, prev_g)) << d;
      EXPECT_GE(Gv, prev_G - 1e-7 * std::max(1.0, prev_G)) << d;
      EXPECT_LE(gv, Gv + 1e-7 * std::max(1.0, Gv));
      prev_g = gv;
      prev_G = Gv;
    }
  }
}

TEST(GammaD, StabilizesAtConvexRank) {
  EXPECT_EQ(convex_rank(4, Field::Real), 3);
  EXPECT_EQ(convex_rank(3, Field::Complex), 2);
  RngStream g(53, 1);
  const OptConfig cfg = quick();
  for (int t = 0; t < 5; ++t) {
    const SymMatrix r = testutil::random_real_sym(4, g);
    const double g3 = gamma_d(r, 3, cfg).value;
    EXPECT_NEAR(g3, gamma_d(r, 4, cfg).value, 1e-6 * std::max(1.0, g3));
    const SymMatrix c = testutil::random_hermitian(3, g);
    const double c2 = gamma_d(c, 2, cfg).value;
    EXPECT_NEAR(c2, gamma_d(c, 3, cfg).value, 1e-6 * std::max(1.0, c2));
  }
}

TEST(GammaD, SandwichAndPsdCollapse) {
  RngStream g(54, 1);
  const OptConfig cfg = quick();
  for (int t = 0; t < 6; ++t) {
    const SymMatrix a = t % 2 ? testutil::random_hermitian(5, g) : testutil::random_real_sym(5, g);
    const double Gm = Gamma_full(a, cfg).value;
    const double Gr = G_full(as_rect(a), cfg).value;
    EXPECT_LE(Gm, Gr + 1e-6 * Gr);
    EXPECT_LE(Gr, 2.0 * Gm + 1e-6 * Gr);

    const SymMatrix p = testutil::random_psd(5, g, t % 2 ? Field::Complex : Field::Real);
    const double pg = gamma_full(p, cfg).value;
    EXPECT_NEAR(Gamma_full(p, cfg).value, pg, 1e-6 * pg);
    EXPECT_NEAR(G_full(as_rect(p), cfg).value, pg, 1e-6 * pg);
  }
}

TEST(GammaD, DominatedByNonnegativeMajorant) {
  RngStream g(55, 1);
  const OptConfig cfg = quick();
  for (int t = 0; t < 6; ++t) {
    const SymMatrix a = testutil::random_real_sym(5, g);
    Eigen::MatrixXd b = a.real_entries().cwiseAbs();
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) b(i, j) = b(j, i) = b(i, j) + testutil::uniform(g, 0, 1);
    const SymMatrix bs = SymMatrix::real(b);
    EXPECT_LE(Gamma_full(a, cfg).value, Gamma_full(bs, cfg).value + 1e-7);
    EXPECT_LE(gamma_full(a, cfg).value, gamma_full(bs, cfg).value + 1e-7);
    EXPECT_NEAR(Gamma_full(bs, cfg).value, b.sum(), 1e-7 * b.sum());
  }
}

TEST(GammaD, CertificateReproducesValue) {
  RngStream g(56, 1);
  const OptConfig cfg = quick();
  for (int t = 0; t < 6; ++t) {
    const SymMatrix a = t % 2 ? testutil::random_hermitian(6, g) : testutil::random_real_sym(6, g);
    for (int d : {1, 3}) {
      for (const NormEstimate& e : {gamma_d(a, d, cfg), Gamma_d(a, d, cfg)}) {
        EXPECT_EQ(e.certificate.n(), 6);
        EXPECT_LE(e.certificate.d(), d);
        EXPECT_LE(e.certificate.constraint_violation(), 1e-9);
        EXPECT_NEAR(e.sign * e.certificate.objective(a), e.value, 1e-9 * std::max(1.0, e.value));
      }
    }
  }
}

TEST(GammaD, UnitaryDiagonalConjugationInvariance) {
  RngStream g(57, 1);
  const OptConfig cfg = quick();
  for (int t = 0; t < 4; ++t) {
    const SymMatrix a = testutil::random_hermitian(5, g);
    Eigen::VectorXcd d(5);
    for (int i = 0; i < 5; ++i) d(i) = std::polar(1.0, testutil::uniform(g, 0, 6.283185307179586));
    const double v = gamma_full(a, cfg).value;
    EXPECT_NEAR(gamma_full(a.conjugated_by_diagonal(d), cfg).value, v, 1e-6 * v);
    const double w = Gamma_full(a, cfg).value;
    EXPECT_NEAR(Gamma_full(a.conjugated_by_diagonal(d), cfg).value, w, 1e-6 * w);
  }
}

TEST(GammaD, ComplexNormOfRealMatrixViaRealification) {
  RngStream g(58, 1);
  const OptConfig cfg = quick();
  for (int t = 0; t < 4; ++t) {
    const SymMatrix a = testutil::random_real_sym(5, g);
    for (int d : {1, 2}) {
      const double direct = gamma_d(a.as_complex(), d, cfg).value;
      EXPECT_NEAR(complex_norm_via_real(a, d, Constraint::UnitSphere, cfg).value, direct, 1e-6 * direct);
      const double ball = Gamma_d(a.as_complex(), d, cfg).value;
      EXPECT_NEAR(complex_norm_via_real(a, d, Constraint::UnitBall, cfg).value, ball, 1e-6 * ball);
    }
  }
  EXPECT_THROW(complex_norm_via_real(testutil::random_hermitian(3, g), 1, Constraint::UnitBall), DomainError);
}

TEST(GammaD, CertificateKinds) {
  const OptConfig cfg = quick();
  RngStream g(59, 1);
  const SymMatrix a = testutil::random_real_sym(4, g);
  EXPECT_EQ(gamma_d(a, 3, cfg).kind, CertificateKind::ExactConvexRegime);
  EXPECT_EQ(gamma_full(sym({{1, 2}, {2, 1}}), cfg).kind, CertificateKind::ExactConvexRegime);
  EXPECT_THROW(gamma_d(a, 0, cfg), DomainError);
}
