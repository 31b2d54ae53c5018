#pragma once

// Rank-d Grothendieck norms by low-rank Gram-factor ascent.
//
//   gamma_d(A) = max |sum a_ij <x_i, x_j>|   over unit vectors x_i in K^d
//   Gamma_d(A) = same over the unit ball
//   G_d(B)     = (1/2) Gamma_d([[0, B], [B*, 0]])
//
// with <u, v> = u^* v. Each norm is computed by two independent ascent
// methods (Riemannian/projected gradient and exact block-coordinate updates)
// from seeded multi-starts over both signs of A; the larger value is reported
// and a disagreement is surfaced as a warning.

#include "grothnorm/matrix.hpp"
#include "grothnorm/parallel.hpp"
#include "grothnorm/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

namespace grothnorm {

enum class Constraint { UnitSphere, UnitBall };

enum class CertificateKind { ExactClosedForm, ExactEnumeration, ExactConvexRegime, HeuristicLowerBound };

inline std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::ExactClosedForm: return "exact-closed-form";
    case CertificateKind::ExactEnumeration: return "exact-enumeration";
    case CertificateKind::ExactConvexRegime: return "globally-convergent-convex";
    case CertificateKind::HeuristicLowerBound: return "heuristic-lower-bound";
  }
  return "?";
}

inline CertificateKind certificate_kind_from_string(std::string_view s) {
  for (auto k : {CertificateKind::ExactClosedForm, CertificateKind::ExactEnumeration,
                 CertificateKind::ExactConvexRegime, CertificateKind::HeuristicLowerBound})
    if (to_string(k) == s) return k;
  throw DomainError("unknown certificate kind '" + std::string(s) + "'");
}

/// n vectors in K^d stored as the columns of a d x n matrix.
struct GramFactor {
  Field field = Field::Real;
  Constraint constraint = Constraint::UnitSphere;
  Eigen::MatrixXcd vectors;

  int n() const { return static_cast<int>(vectors.cols()); }
  int d() const { return static_cast<int>(vectors.rows()); }

  /// G_ij = <x_i, x_j>.
  Eigen::MatrixXcd gram() const { return vectors.adjoint() * vectors; }

  /// sum a_ij <x_i, x_j>.
  double objective(const SymMatrix& a) const {
    if (a.size() != n()) throw DomainError("GramFactor: size mismatch");
    return (a.entries().array() * gram().array()).sum().real();
  }

  /// Largest violation of the norm constraint on the columns.
  double constraint_violation() const {
    double v = 0.0;
    for (int i = 0; i < n(); ++i) {
      const double r = vectors.col(i).norm();
      v = std::max(v, constraint == Constraint::UnitSphere ? std::abs(r - 1.0) : std::max(0.0, r - 1.0));
    }
    return v;
  }
};

enum class StepRule { Fixed, Backtracking };

struct OptConfig {
  int restarts = 16;
  int max_iters = 2000;
  StepRule step_rule = StepRule::Backtracking;
  double tol_grad = 1e-9;  // relative to ||A||_F
  std::uint64_t seed = 0x6A09E667F3BCC908ULL;
  bool cross_check = true;  // run the block-coordinate method with 2x restarts
};

struct NormEstimate {
  double value = 0.0;
  GramFactor certificate;
  CertificateKind kind = CertificateKind::HeuristicLowerBound;
  int sign = 1;
  int d_requested = 1;
  int d_effective = 1;
  int iterations = 0;
  int restarts_used = 0;
  double gradient_value = 0.0;  // best value of the gradient method
  double coordinate_value = 0.0;  // best value of the block-coordinate method
  std::string warning;
};

/// Smallest d at which the rank-d norm equals the full norm by the
/// extreme-point rank bound: d(d+1)/2 > n over R, d^2 > n over C.
inline int convex_rank(int n, Field field) {
  int d = 1;
  if (field == Field::Real)
    while (d * (d + 1) / 2 <= n) ++d;
  else
    while (d * d <= n) ++d;
  return std::min(std::max(n, 1), d);
}

inline bool in_convex_regime(int n, int d, Field field) { return d >= n || d >= convex_rank(n, field); }

namespace detail {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
Mat<S> transposed_entries(const SymMatrix& a) {
  if constexpr (std::is_same_v<S, double>)
    return a.real_entries();
  else
    return a.entries().transpose();
}

/// f(X) = sum_ij a_ij x_i^* x_j = Re tr(X^* X A^T); `at` holds A^T.
template <class S>
double objective(const Mat<S>& at, const Mat<S>& x) {
  return std::real((x.conjugate().array() * (x * at).array()).sum());
}

template <class S>
void project_columns(Mat<S>& x, Constraint c) {
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    const double r = x.col(i).norm();
    if (c == Constraint::UnitSphere) {
      if (r > 0.0) {
        x.col(i) /= r;
      } else {
        x.col(i).setZero();
        x(0, i) = S(1.0);
      }
    } else if (r > 1.0) {
      x.col(i) /= r;
    }
  }
}

/// Ascent direction: the Riemannian gradient on the sphere; on the ball the
/// gradient with its outward normal part removed at boundary columns.
template <class S>
Mat<S> ascent_direction(const Mat<S>& grad, const Mat<S>& x, Constraint c) {
  Mat<S> dir = grad;
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    const double radial = std::real(x.col(i).dot(grad.col(i)));
    const double r2 = x.col(i).squaredNorm();
    if (c == Constraint::UnitSphere || (r2 >= 1.0 - 1e-12 && radial > 0.0)) dir.col(i) -= (radial / r2) * x.col(i);
  }
  return dir;
}

struct RunStats {
  double value = 0.0;
  int iterations = 0;
};

/// Projected / Riemannian gradient ascent on s * f. The trial step is the
/// Barzilai-Borwein step (or the fixed step) followed by Armijo backtracking.
template <class S>
RunStats gradient_ascent(const Mat<S>& at, double s, Mat<S>& x, Constraint c, const OptConfig& cfg, double tol) {
  double f = s * objective<S>(at, x);
  const double base_step = 1.0 / std::max(1e-300, 2.0 * at.norm());
  double step = base_step;
  Mat<S> prev_x;
  Mat<S> prev_dir;
  RunStats st;
  for (int it = 0; it < cfg.max_iters; ++it) {
    st.iterations = it + 1;
    const Mat<S> grad = (2.0 * s) * (x * at);
    const Mat<S> dir = ascent_direction<S>(grad, x, c);
    const double g2 = dir.squaredNorm();
    if (std::sqrt(g2) <= tol) break;
    double t = step;
    if (cfg.step_rule == StepRule::Backtracking && it > 0) {
      const Mat<S> sx = x - prev_x;
      const Mat<S> sy = prev_dir - dir;
      const double sty = std::real(sx.cwiseProduct(sy.conjugate()).sum());
      const double bb = (it % 2 == 0) ? sx.squaredNorm() / std::abs(sty) : std::abs(sty) / sy.squaredNorm();
      t = std::isfinite(bb) && bb > 0.0 ? std::min(bb, 1e6 * base_step) : base_step;
    }
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      Mat<S> cand = x + t * dir;
      project_columns<S>(cand, c);
      const double fc = s * objective<S>(at, cand);
      if (fc >= f + 1e-4 * t * g2 || (cfg.step_rule == StepRule::Fixed && fc > f)) {
        prev_x = std::move(x);
        prev_dir = dir;
        x = std::move(cand);
        f = fc;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  st.value = f;
  return st;
}

/// Exact block-coordinate ascent: each x_i is replaced by the maximizer of
/// s * f with the other columns fixed.
template <class S>
RunStats coordinate_ascent(const Mat<S>& at, double s, Mat<S>& x, Constraint c, const OptConfig& cfg) {
  const Eigen::Index n = x.cols();
  double f = s * objective<S>(at, x);
  RunStats st;
  Mat<S> y = x * at;  // column i = sum_j a_ij x_j
  for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
    st.iterations = sweep + 1;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double cii = s * std::real(at(i, i));
      const Vec<S> h = s * (y.col(i) - at(i, i) * x.col(i));
      const double hn = h.norm();
      Vec<S> xi;
      if (c == Constraint::UnitBall && cii < 0.0 && hn <= -cii) {
        xi = h / (-cii);
      } else if (hn > 0.0) {
        xi = h / hn;
      } else {
        xi = x.col(i);
        const double r = xi.norm();
        if (c == Constraint::UnitSphere || cii > 0.0) {
          if (r > 0.0) {
            xi /= r;
          } else {
            xi.setZero();
            xi(0) = S(1.0);
          }
        } else if (cii < 0.0) {
          xi.setZero();
        }
      }
      const Vec<S> delta = xi - x.col(i);
      if (delta.squaredNorm() == 0.0) continue;
      y.noalias() += delta * at.row(i);
      x.col(i) = xi;
    }
    const double fn = s * objective<S>(at, x);
    const bool done = fn <= f + 1e-14 * std::max(1.0, std::abs(f));
    f = std::max(f, fn);
    if (done) break;
  }
  st.value = s * objective<S>(at, x);
  return st;
}

template <class S>
Mat<S> initial_point(const Mat<S>& at, double s, int d, int restart, RngStream& rng) {
  const Eigen::Index n = at.rows();
  Mat<S> x(d, n);
  if (restart == 0) {
    // Leading eigenvector of s*A, replicated on the first axis with noise.
    const Mat<S> a = at.transpose();
    Eigen::SelfAdjointEigenSolver<Mat<S>> es(s * a);
    const Vec<S> v = es.eigenvectors().col(n - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      Vec<S> col = 0.1 * rng.gaussian_vector<S>(d);
      const double r = std::abs(v(i));
      col(0) += r > 0.0 ? v(i) / r : S(1.0);
      x.col(i) = col;
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) x.col(i) = rng.gaussian_vector<S>(d);
  }
  project_columns<S>(x, Constraint::UnitSphere);
  return x;
}

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd x;
  int sign = 1;
  int iterations = 0;
};

template <class S>
NormEstimate optimize(const SymMatrix& a, int d, Constraint c, const std::vector<int>& signs, bool absolute,
                      const OptConfig& cfg, Field label_field) {
  if (d < 1) throw DomainError("rank d must be >= 1");
  if (cfg.restarts < 1 || !(cfg.tol_grad > 0.0)) throw DomainError("OptConfig: restarts >= 1 and tol_grad > 0 required");
  const int n = a.size();
  NormEstimate est;
  est.d_requested = d;
  est.d_effective = std::max(1, std::min(d, n));
  est.certificate.field = label_field;
  est.certificate.constraint = c;
  if (n == 0) {
    est.kind = CertificateKind::ExactConvexRegime;
    return est;
  }
  const int de = est.d_effective;
  const Mat<S> at = transposed_entries<S>(a);
  const double tol = cfg.tol_grad * std::max(a.frobenius_norm(), 1e-300);

  const int grad_runs = cfg.restarts;
  const int coord_runs = cfg.cross_check ? 2 * cfg.restarts : 0;
  const int per_sign = grad_runs + coord_runs;
  const int total = per_sign * static_cast<int>(signs.size());
  std::vector<Candidate> slots(total);
  std::vector<int> method(total);

  parallel_for(static_cast<std::size_t>(total), [&](std::size_t slot) {
    const int si = static_cast<int>(slot) / per_sign;
    const int r = static_cast<int>(slot) % per_sign;
    const double s = signs[si];
    const bool coordinate = r >= grad_runs;
    const int restart = coordinate ? r - grad_runs : r;
    RngStream rng(cfg.seed, (static_cast<std::uint64_t>(si) << 40) | (static_cast<std::uint64_t>(coordinate) << 32) |
                                static_cast<std::uint64_t>(restart));
    Mat<S> x = initial_point<S>(at, s, de, restart, rng);
    const RunStats st = coordinate ? coordinate_ascent<S>(at, s, x, c, cfg) : gradient_ascent<S>(at, s, x, c, cfg, tol);
    Candidate& out = slots[slot];
    out.value = st.value;
    out.x = x.template cast<Complex>();
    out.sign = static_cast<int>(s);
    out.iterations = st.iterations;
    method[slot] = coordinate ? 1 : 0;
  });

  double best_grad = -std::numeric_limits<double>::infinity();
  double best_coord = -std::numeric_limits<double>::infinity();
  const Candidate* best = nullptr;
  for (int i = 0; i < total; ++i) {
    est.iterations += slots[i].iterations;
    double& m = method[i] == 0 ? best_grad : best_coord;
    m = std::max(m, slots[i].value);
    if (!best || slots[i].value > best->value) best = &slots[i];
  }
  est.restarts_used = total;
  est.gradient_value = best_grad;
  est.coordinate_value = coord_runs > 0 ? best_coord : best_grad;
  est.sign = best->sign;
  est.certificate.vectors = best->x;
  const double f = est.certificate.objective(a);
  est.value = absolute ? std::abs(f) : f;
  if (coord_runs > 0 && std::abs(best_grad - best_coord) > 1e-5 * std::max(1.0, std::abs(est.value)))
    est.warning = "gradient and coordinate ascent disagree by " + std::to_string(std::abs(best_grad - best_coord));
  est.kind = in_convex_regime(n, de, label_field) ? CertificateKind::ExactConvexRegime
                                                  : CertificateKind::HeuristicLowerBound;
  return est;
}

template <class F>
NormEstimate dispatch(const SymMatrix& a, F&& run) {
  if (a.field() == Field::Real) return run(double{});
  return run(Complex{});
}

}  // namespace detail

/// ||A||_{gamma,d}: unit-sphere vectors in K^d, K the field of A.
inline NormEstimate gamma_d(const SymMatrix& a, int d, const OptConfig& cfg = {}) {
  return detail::dispatch(a, [&](auto tag) {
    return detail::optimize<decltype(tag)>(a, d, Constraint::UnitSphere, {1, -1}, true, cfg, a.field());
  });
}

/// ||A||_{Gamma,d}: unit-ball vectors in K^d.
inline NormEstimate Gamma_d(const SymMatrix& a, int d, const OptConfig& cfg = {}) {
  return detail::dispatch(a, [&](auto tag) {
    return detail::optimize<decltype(tag)>(a, d, Constraint::UnitBall, {1, -1}, true, cfg, a.field());
  });
}

/// ||B||_{G,d} = (1/2) ||[[0, B], [B*, 0]]||_{Gamma,d}.
inline NormEstimate G_d_rect(const RectMatrix& b, int d, const OptConfig& cfg = {}) {
  NormEstimate e = Gamma_d(embed_rect(b), d, cfg);
  e.value *= 0.5;
  e.gradient_value *= 0.5;
  e.coordinate_value *= 0.5;
  return e;
}

/// The full norms (d large enough that the rank constraint is inactive).
inline NormEstimate gamma_full(const SymMatrix& a, const OptConfig& cfg = {}) {
  return gamma_d(a, convex_rank(a.size(), a.field()), cfg);
}
inline NormEstimate Gamma_full(const SymMatrix& a, const OptConfig& cfg = {}) {
  return Gamma_d(a, convex_rank(a.size(), a.field()), cfg);
}
inline NormEstimate G_full(const RectMatrix& b, const OptConfig& cfg = {}) {
  return G_d_rect(b, convex_rank(b.rows() + b.cols(), b.field()), cfg);
}

enum class SdpVariant { Eq, Le };

/// r_=(A) = max tr(AG) over correlation matrices, r_<=(A) over
/// subcorrelation matrices. No absolute value.
inline NormEstimate r_signed(const SymMatrix& a, SdpVariant variant, const OptConfig& cfg = {}) {
  const int d = convex_rank(a.size(), a.field());
  const Constraint c = variant == SdpVariant::Eq ? Constraint::UnitSphere : Constraint::UnitBall;
  return detail::dispatch(a, [&](auto tag) {
    return detail::optimize<decltype(tag)>(a, d, c, {1}, false, cfg, a.field());
  });
}

/// spr(A) = r_=(A) + r_=(-A).
inline double spread(const SymMatrix& a, const OptConfig& cfg = {}) {
  return r_signed(a, SdpVariant::Eq, cfg).value + r_signed(-a, SdpVariant::Eq, cfg).value;
}

/// Complex rank-d norm of a real matrix through the real rank-2d problem.
inline NormEstimate complex_norm_via_real(const SymMatrix& a, int d, Constraint which, const OptConfig& cfg = {}) {
  if (a.field() != Field::Real) throw DomainError("complex_norm_via_real: real matrix required");
  if (d < 1) throw DomainError("rank d must be >= 1");
  NormEstimate e = detail::optimize<double>(a, 2 * d, which, {1, -1}, true, cfg, Field::Real);
  e.d_requested = d;
  if (in_convex_regime(a.size(), std::min(d, a.size()), Field::Complex))
    e.kind = CertificateKind::ExactConvexRegime;
  return e;
}

}  // namespace grothnorm
