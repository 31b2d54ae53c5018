#include "test_util.hpp"

#include "grothnorm/report_json.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sys/wait.h>

using namespace grothnorm;
using testutil::sym;

namespace {

OptConfig quick(int restarts = 4) {
  OptConfig c;
  c.restarts = restarts;
  return c;
}

void expect_all_pass(const VerifyReport& r) {
  for (const InequalityCheck& c : r.checks)
    EXPECT_TRUE(c.pass) << c.name << ": " << c.lhs << " vs " << c.constant << " * " << c.rhs;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GROTHNORM_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(VerifySgi, DiagonalExample) {
  const VerifyReport r = verify_sgi(SymMatrix::diagonal(Eigen::Vector2d(1, -1)), quick(), "diag");
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.norm("theta").value, 0.0, 1e-12);
  EXPECT_NEAR(r.norm("gamma").value, 0.0, 1e-9);
  EXPECT_NEAR(r.norm("Theta").value, 1.0, 1e-12);
  EXPECT_NEAR(r.norm("Gamma").value, 1.0, 1e-9);
  EXPECT_NEAR(r.norm("G").value, 2.0, 1e-9);
  EXPECT_TRUE(r.cone_labels.empty());
  ASSERT_NE(r.check("gamma<=K*theta"), nullptr);
  EXPECT_NEAR(r.check("gamma<=K*theta")->constant, std::sinh(kPi / 2.0), 1e-12);
}

TEST(VerifySgi, EdgeLaplacianExample) {
  const VerifyReport r = verify_sgi(sym({{1, -1}, {-1, 1}}), quick());
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.norm("theta").value, 4.0, 1e-12);
  EXPECT_NEAR(r.norm("gamma").value, 4.0, 1e-9);
  const InequalityCheck* gw = r.check("laplacian:gamma<=theta/alpha_gw");
  ASSERT_NE(gw, nullptr);
  EXPECT_TRUE(gw->exact);
  EXPECT_NEAR(gw->lhs / gw->rhs, 1.0, 1e-9);
  EXPECT_NE(r.check("psd:gamma<=nesterov*theta"), nullptr);
  EXPECT_NE(r.check("dd:gamma<=sdd*theta"), nullptr);
}

TEST(VerifySgi, RandomZeroDiagonalChains) {
  RngStream g(71, 1);
  for (int t = 0; t < 100; ++t) {
    const VerifyReport r = verify_sgi(testutil::random_zero_diag(8, g), quick());
    expect_all_pass(r);
    ASSERT_NE(r.check("zerodiag:Gamma<=gamma"), nullptr);
    EXPECT_NEAR(r.norm("Gamma").value, r.norm("gamma").value, 1e-6 * r.norm("gamma").value);
  }
}

TEST(VerifySgi, ConeSpecificChecksPass) {
  RngStream g(72, 1);
  for (int t = 0; t < 10; ++t) {
    expect_all_pass(verify_sgi(testutil::random_psd(6, g), quick()));
    expect_all_pass(verify_sgi(laplacian_of(testutil::random_weights(7, g)), quick()));
    expect_all_pass(verify_sgi(testutil::random_sdd(6, g), quick()));
    const VerifyReport nn = verify_sgi(testutil::random_real_sym(5, g, 0, 3), quick());
    expect_all_pass(nn);
    EXPECT_NE(nn.check("nonneg:sum<=theta"), nullptr);
  }
  for (int t = 0; t < 4; ++t) {
    const VerifyReport c = verify_sgi(testutil::random_hermitian(4, g), quick());
    expect_all_pass(c);
    EXPECT_FALSE(c.warnings.empty());
    EXPECT_EQ(c.norm("theta").certificate, to_string(CertificateKind::HeuristicLowerBound));
  }
}

// Exact-vs-exact checks are theorem instances. Small sizes keep every gamma
// and Gamma in the convex regime so both sides are certified.
TEST(VerifySgi, TenThousandExactTrials) {
  RngStream g(73, 1);
  OptConfig cfg = quick(2);
  cfg.cross_check = false;
  int exact_checks = 0;
  for (int t = 0; t < 10000; ++t) {
    const int n = 2 + t % 2;
    SymMatrix a = SymMatrix::zero(n, Field::Real);
    switch (t % 5) {
      case 0: a = testutil::random_real_sym(n, g); break;
      case 1: a = testutil::random_psd(n, g); break;
      case 2: a = laplacian_of(testutil::random_weights(n, g, 0.8)); break;
      case 3: a = testutil::random_sdd(n, g); break;
      default: a = testutil::random_zero_diag(n, g); break;
    }
    const VerifyReport r = verify_sgi(a, cfg);
    for (const InequalityCheck& c : r.checks) {
      if (!c.exact) continue;
      ++exact_checks;
      ASSERT_TRUE(c.pass) << "trial " << t << " " << c.name << ": " << c.lhs << " vs " << c.constant << " * " << c.rhs;
    }
  }
  EXPECT_GT(exact_checks, 50000);
}

TEST(VerifySgi, JsonRoundTrip) {
  RngStream g(74, 1);
  for (const SymMatrix& a : {testutil::random_real_sym(5, g), testutil::random_hermitian(3, g),
                             laplacian_of(testutil::random_weights(5, g))}) {
    const VerifyReport r = verify_sgi(a, quick(), "roundtrip");
    const VerifyReport back = json::parse(json(r).dump()).get<VerifyReport>();
    EXPECT_EQ(back, r);
  }
}

TEST(MaxCut, Examples) {
  const OptConfig cfg = quick();
  EXPECT_DOUBLE_EQ(*maxcut(sym({{0, 1}, {1, 0}}), cfg).exact, 1.0);
  EXPECT_DOUBLE_EQ(*maxcut(sym({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}), cfg).exact, 2.0);
  Eigen::MatrixXd c5 = Eigen::MatrixXd::Zero(5, 5);
  for (int i = 0; i < 5; ++i) c5(i, (i + 1) % 5) = c5((i + 1) % 5, i) = 1.0;
  const MaxCutReport r = maxcut(SymMatrix::real(c5), cfg);
  EXPECT_DOUBLE_EQ(*r.exact, 4.0);
  EXPECT_DOUBLE_EQ(cut_value(c5, r.exact_side), 4.0);
  EXPECT_LE(r.rounded, *r.exact + 1e-12);
  EXPECT_GE(r.relaxation, *r.exact - 1e-9);
  EXPECT_DOUBLE_EQ(cut_value(c5, r.rounded_side), r.rounded);
  EXPECT_THROW(maxcut(sym({{0, -1}, {-1, 0}}), cfg), DomainError);
}

TEST(MaxCut, RoundingBeatsGoemansWilliamsonOnAverage) {
  RngStream g(75, 1);
  for (int t = 0; t < 5; ++t) {
    const MaxCutReport r = maxcut(testutil::random_weights(9, g), quick(), 400);
    // Mean of 400 draws; the slack covers sampling noise.
    EXPECT_GE(r.rounded_mean, 0.95 * alpha_gw(Field::Real) * r.relaxation);
    EXPECT_GE(r.rounded, r.rounded_mean);
    EXPECT_LE(r.rounded, *r.exact + 1e-9);
  }
}

TEST(CutNormBracket, Examples) {
  const OptConfig cfg = quick();
  const CutNormReport k = cutnorm_bracket(RectMatrix::real(testutil::mat({{1, -1}, {1, 1}})), cfg);
  EXPECT_DOUBLE_EQ(*k.exact, 2.0);
  EXPECT_TRUE(k.contains_exact());

  const CutNormReport one = cutnorm_bracket(RectMatrix::real(testutil::mat({{1}})), cfg);
  EXPECT_DOUBLE_EQ(*one.exact, 1.0);
  EXPECT_DOUBLE_EQ(*one.theta_laplacian, 4.0);
  EXPECT_NEAR(one.upper, 1.5, 1e-9);
  EXPECT_NEAR(one.lower, 4.0 / (8.0 * std::sinh(kPi / 2.0)), 1e-9);
  EXPECT_TRUE(one.contains_exact());

  RngStream g(76, 1);
  const Eigen::MatrixXd nn = testutil::random_rect(3, 4, g, 0, 2);
  const CutNormReport n = cutnorm_bracket(RectMatrix::real(nn), cfg);
  EXPECT_NEAR(*n.exact, nn.sum(), 1e-12);
  EXPECT_GE(n.upper, *n.exact);
  for (int t = 0; t < 20; ++t)
    EXPECT_TRUE(cutnorm_bracket(RectMatrix::real(testutil::random_rect(5, 5, g)), cfg).contains_exact());
}

TEST(StretchSpread, ExamplesAndShiftInvariance) {
  const OptConfig cfg = quick();
  const StretchReport d = stretch_spread(SymMatrix::diagonal(Eigen::Vector2d(1, -1)), cfg);
  EXPECT_NEAR(d.str, 0.0, 1e-12);
  EXPECT_NEAR(d.spr, 0.0, 1e-9);
  const StretchReport s = stretch_spread(sym({{0, 1}, {1, 0}}), cfg);
  EXPECT_NEAR(s.str, 4.0, 1e-12);
  EXPECT_NEAR(s.spr, 4.0, 1e-9);
  EXPECT_NEAR(s.ratio, 1.0, 1e-9);

  RngStream g(77, 1);
  for (int t = 0; t < 10; ++t) {
    const SymMatrix a = testutil::random_real_sym(6, g);
    const StretchReport r = stretch_spread(a, cfg);
    EXPECT_TRUE(r.str_le_spr);
    EXPECT_TRUE(r.spr_le_bound);
    const StretchReport sh = stretch_spread(a.shifted(testutil::uniform(g, -3, 3)), cfg);
    EXPECT_NEAR(sh.str, r.str, 1e-8 * std::max(1.0, r.str));
    EXPECT_NEAR(sh.spr, r.spr, 1e-6 * std::max(1.0, r.spr));
  }
}

TEST(Cli, ExitCodes) {
  const std::string s = std::string(GROTHNORM_SAMPLES) + "/";
  EXPECT_EQ(run_cli("verify " + s + "psd8.mat"), 0);
  EXPECT_EQ(run_cli("constants --json"), 0);
  EXPECT_EQ(run_cli("verify " + s + "does_not_exist.mat"), 2);
  EXPECT_EQ(run_cli("compute --norm nope " + s + "swap.mat"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("maxcut " + s + "cycle5.mat"), 0);
  EXPECT_EQ(run_cli("cutnorm " + s + "krivine.mat"), 0);
}
