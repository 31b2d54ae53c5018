#pragma once

// Inequality verification for one matrix, plus the max-cut, cut-norm and
// stretch/spread applications. Failures are recorded in the reports; nothing
// here throws on a failed inequality.

#include "grothnorm/gram_opt.hpp"
#include "grothnorm/matrix.hpp"
#include "grothnorm/oracle.hpp"
#include "grothnorm/rounding.hpp"
#include "grothnorm/special_functions.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace grothnorm {

struct NormEntry {
  std::string name;  // theta, Theta, gamma, Gamma, G
  double value = 0.0;
  std::string certificate;  // a CertificateKind string
  bool operator==(const NormEntry&) const = default;
};

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 1.0;
  std::string constant_name;  // key into the constants table, or "one"
  double tol = 0.0;
  bool exact = false;  // both sides certified, so a failure is a genuine counterexample
  bool pass = false;
  bool operator==(const InequalityCheck&) const = default;
};

struct VerifyReport {
  std::string matrix_id;
  Field field = Field::Real;
  std::vector<std::string> cone_labels;
  std::vector<NormEntry> norms;
  std::vector<InequalityCheck> checks;
  std::vector<std::string> warnings;
  double runtime_ms = 0.0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.pass; });
  }
  const NormEntry& norm(std::string_view name) const {
    for (const NormEntry& e : norms)
      if (e.name == name) return e;
    throw DomainError("VerifyReport: no norm named " + std::string(name));
  }
  const InequalityCheck* check(std::string_view name) const {
    for (const InequalityCheck& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool operator==(const VerifyReport&) const = default;
};

inline double report_tolerance(double rhs) { return 1e-6 * std::max(1.0, std::abs(rhs)); }

/// lhs <= constant * rhs + 1e-6 max(1, constant * rhs).
inline InequalityCheck make_check(std::string name, const NormEntry& lhs, const NormEntry& rhs, double constant,
                                  std::string constant_name) {
  InequalityCheck c;
  c.name = std::move(name);
  c.lhs = lhs.value;
  c.rhs = rhs.value;
  c.constant = constant;
  c.constant_name = std::move(constant_name);
  c.tol = report_tolerance(constant * rhs.value);
  c.exact = lhs.certificate != to_string(CertificateKind::HeuristicLowerBound) &&
            rhs.certificate != to_string(CertificateKind::HeuristicLowerBound);
  c.pass = c.lhs <= c.constant * c.rhs + c.tol;
  return c;
}

namespace detail {

inline NormEntry entry(std::string name, const NormEstimate& e) {
  return {std::move(name), e.value, std::string(to_string(e.kind))};
}

}  // namespace detail

/// Computes theta, Theta, gamma, Gamma and G of A and checks the symmetric
/// Grothendieck chain plus the conic inequalities that apply to A's cones.
inline VerifyReport verify_sgi(const SymMatrix& a, const OptConfig& cfg = {}, std::string matrix_id = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const ConstantsTable& k = constants();
  VerifyReport rep;
  rep.matrix_id = std::move(matrix_id);
  rep.field = a.field();
  const ConeSet cones = classify_cones(a);
  for (ConeLabel c : cones) rep.cone_labels.emplace_back(to_string(c));
  const int n = a.size();
  const std::string exact_enum(to_string(CertificateKind::ExactEnumeration));
  const std::string heuristic(to_string(CertificateKind::HeuristicLowerBound));

  NormEntry theta{"theta", 0.0, heuristic};
  NormEntry Theta{"Theta", 0.0, heuristic};
  if (a.field() == Field::Real && n <= kMaxSignEnumeration) {
    theta = {"theta", theta_real_exact(a).value, exact_enum};
  } else {
    OptConfig c1 = cfg;
    const NormEstimate e = gamma_d(a, 1, c1);
    double v = e.value;
    if (a.field() == Field::Complex) v = std::max(v, theta_complex_lower(a, 8, cfg.restarts, cfg.seed).value);
    theta = {"theta", v, heuristic};
    rep.warnings.push_back("theta is a heuristic lower bound");
  }
  if (a.field() == Field::Real && n <= kMaxBoxEnumeration) {
    Theta = {"Theta", Theta_real_exact(a), exact_enum};
  } else {
    Theta = {"Theta", std::max(Gamma_d(a, 1, cfg).value, theta.value), heuristic};
    rep.warnings.push_back("Theta is a heuristic lower bound");
  }

  const NormEstimate ge = gamma_full(a, cfg);
  const NormEstimate Ge = Gamma_full(a, cfg);
  const NormEstimate Gg = G_full(as_rect(a), cfg);
  const NormEntry gamma = detail::entry("gamma", ge);
  const NormEntry Gamma = detail::entry("Gamma", Ge);
  const NormEntry G = detail::entry("G", Gg);
  for (const NormEstimate* e : {&ge, &Ge, &Gg})
    if (!e->warning.empty()) rep.warnings.push_back(e->warning);
  rep.norms = {theta, Theta, gamma, Gamma, G};

  const NormEntry one{"one", 1.0, exact_enum};
  const Field f = a.field();
  auto& out = rep.checks;
  out.push_back(make_check("theta<=gamma", theta, gamma, 1.0, "one"));
  out.push_back(make_check("Theta<=Gamma", Theta, Gamma, 1.0, "one"));
  out.push_back(make_check("gamma<=Gamma", gamma, Gamma, 1.0, "one"));
  out.push_back(make_check("Gamma<=G", Gamma, G, 1.0, "one"));
  const std::string kname = f == Field::Real ? "K_gamma_bound_R" : "K_gamma_bound_C";
  out.push_back(make_check("gamma<=K*theta", gamma, theta, k.K_gamma_bound(f), kname));
  out.push_back(make_check("Gamma<=K*Theta", Gamma, Theta, k.K_gamma_bound(f), kname));

  if (cones.contains(ConeLabel::PSD)) {
    out.push_back(make_check("psd:gamma<=nesterov*theta", gamma, theta, k.nesterov(f),
                             f == Field::Real ? "nesterov_R" : "nesterov_C"));
    out.push_back(make_check("psd:Gamma<=gamma", Gamma, gamma, 1.0, "one"));
    out.push_back(make_check("psd:G<=gamma", G, gamma, 1.0, "one"));
  }
  if (cones.contains(ConeLabel::WeightedLaplacian))
    out.push_back(make_check("laplacian:gamma<=theta/alpha_gw", gamma, theta, 1.0 / k.alpha_gw(f),
                             f == Field::Real ? "alpha_gw_R" : "alpha_gw_C"));
  if (cones.contains(ConeLabel::DiagonallyDominant))
    out.push_back(make_check("dd:gamma<=sdd*theta", gamma, theta, k.sdd_constant(f), "sdd_constant"));
  if (cones.contains(ConeLabel::Nonnegative)) {
    const NormEntry sum{"entry_sum", a.entries().real().sum(), exact_enum};
    out.push_back(make_check("nonneg:sum<=theta", sum, theta, 1.0, "one"));
    out.push_back(make_check("nonneg:G<=sum", G, sum, 1.0, "one"));
  }
  if (cones.contains(ConeLabel::ZeroDiagonal)) out.push_back(make_check("zerodiag:Gamma<=gamma", Gamma, gamma, 1.0, "one"));

  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

struct MaxCutReport {
  int n = 0;
  std::optional<double> exact;   // by enumeration, n <= 24
  std::vector<int> exact_side;   // +-1 per vertex
  double relaxation = 0.0;       // gamma(L_A) / 4
  std::string relaxation_certificate;
  double rounded = 0.0;          // best cut among the rounding draws
  std::vector<int> rounded_side;
  double rounded_mean = 0.0;     // average cut over the draws
  int draws = 0;
};

inline double cut_value(const Eigen::MatrixXd& w, const std::vector<int>& side) {
  double s = 0.0;
  for (int i = 0; i < static_cast<int>(side.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(side.size()); ++j)
      if (side[i] != side[j]) s += w(i, j);
  return s;
}

/// Max cut of the graph weighted by A (real, nonnegative, zero diagonal).
inline MaxCutReport maxcut(const SymMatrix& a, const OptConfig& cfg = {}, int draws = 64) {
  if (a.field() != Field::Real) throw DomainError("maxcut: real weights required");
  const ConeSet cones = classify_cones(a);
  if (!cones.contains(ConeLabel::Nonnegative) || !cones.contains(ConeLabel::ZeroDiagonal))
    throw DomainError("maxcut: weights must be nonnegative with zero diagonal");
  const Eigen::MatrixXd w = a.real_entries();
  const SymMatrix lap = laplacian_of(a);
  MaxCutReport rep;
  rep.n = a.size();
  rep.draws = draws;
  if (rep.n <= kMaxSignEnumeration) {
    const ThetaResult t = theta_real_exact(lap);
    rep.exact = t.value / 4.0;
    for (Eigen::Index i = 0; i < t.argmax.size(); ++i) rep.exact_side.push_back(t.argmax(i) < 0 ? -1 : 1);
  }
  const NormEstimate g = gamma_full(lap, cfg);
  rep.relaxation = g.value / 4.0;
  rep.relaxation_certificate = std::string(to_string(g.kind));
  RngStream rng(cfg.seed, 0x6D6178637574ULL);
  double total = 0.0;
  rep.rounded = -1.0;
  for (int r = 0; r < draws && rep.n > 0; ++r) {
    const Eigen::VectorXcd delta = gaussian_sign_round(g.certificate, rng);
    std::vector<int> side(rep.n);
    for (int i = 0; i < rep.n; ++i) side[i] = delta(i).real() < 0.0 ? -1 : 1;
    const double v = cut_value(w, side);
    total += v;
    if (v > rep.rounded) {
      rep.rounded = v;
      rep.rounded_side = side;
    }
  }
  rep.rounded = std::max(rep.rounded, 0.0);
  rep.rounded_mean = draws > 0 ? total / draws : 0.0;
  return rep;
}

struct CutNormReport {
  double lower = 0.0;  // Gamma(L_A) / (8 K)
  double upper = 0.0;  // 3 Gamma(L_A) / 8
  double Gamma_laplacian = 0.0;
  std::string Gamma_certificate;
  std::optional<double> theta_laplacian;  // exact, m + n <= 24
  std::optional<double> theta_lower;      // theta / 8
  std::optional<double> theta_upper;      // 3 theta / 8
  std::optional<double> exact;            // exact cut norm, m + n <= 24
  bool contains_exact() const {
    if (!exact) return true;
    const double tol = 1e-9 * std::max(1.0, *exact);
    bool ok = lower - tol <= *exact && *exact <= upper + tol;
    if (theta_lower) ok = ok && *theta_lower - tol <= *exact && *exact <= *theta_upper + tol;
    return ok;
  }
};

/// Brackets the cut norm of real B through the Laplacian of its symmetric
/// embedding A = [[0, B], [B^T, 0]].
inline CutNormReport cutnorm_bracket(const RectMatrix& b, const OptConfig& cfg = {}) {
  if (b.field() != Field::Real) throw DomainError("cutnorm_bracket: real matrix required");
  const SymMatrix lap = laplacian_of(embed_rect(b));
  CutNormReport rep;
  const NormEstimate g = Gamma_full(lap, cfg);
  rep.Gamma_laplacian = g.value;
  rep.Gamma_certificate = std::string(to_string(g.kind));
  rep.lower = g.value / (8.0 * constants().K_gamma_bound_R);
  rep.upper = 3.0 * g.value / 8.0;
  if (b.rows() + b.cols() <= kMaxSignEnumeration) {
    const double t = theta_real_exact(lap).value;
    rep.theta_laplacian = t;
    rep.theta_lower = t / 8.0;
    rep.theta_upper = 3.0 * t / 8.0;
    rep.exact = cut_norm_exact(b).value;
  }
  return rep;
}

struct StretchReport {
  double str = 0.0;
  double spr = 0.0;
  double ratio = 1.0;  // spr / str, 1 when both vanish
  bool str_le_spr = true;
  bool spr_le_bound = true;
};

/// str(A) = max - min of x^T A x over signs; spr(A) = the same over
/// correlation matrices.
inline StretchReport stretch_spread(const SymMatrix& a, const OptConfig& cfg = {}) {
  if (a.field() != Field::Real) throw DomainError("stretch_spread: real matrix required");
  if (a.size() > kMaxSignEnumeration) throw DomainError("stretch_spread: n <= 24 required for the exact stretch");
  StretchReport rep;
  rep.str = stretch_exact(a);
  rep.spr = spread(a, cfg);
  const double scale = std::max(1.0, a.frobenius_norm());
  if (rep.str > 1e-12 * scale) rep.ratio = rep.spr / rep.str;
  else if (rep.spr > 1e-9 * scale) rep.ratio = std::numeric_limits<double>::infinity();
  rep.str_le_spr = rep.str <= rep.spr + report_tolerance(rep.spr);
  const double bound = constants().K_gamma_bound_R * rep.str;
  rep.spr_le_bound = rep.spr <= bound + report_tolerance(bound);
  return rep;
}

}  // namespace grothnorm
