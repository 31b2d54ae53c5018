#pragma once

// Gaussian sign rounding, uniform sphere sampling, Monte-Carlo checks of the
// Gaussian sign identities and the finite-size sharpness experiment for the
// PSD ratio gamma/theta.

#include "grothnorm/gram_opt.hpp"
#include "grothnorm/matrix.hpp"
#include "grothnorm/oracle.hpp"
#include "grothnorm/parallel.hpp"
#include "grothnorm/rng.hpp"
#include "grothnorm/special_functions.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace grothnorm {

/// Uniform point on the unit sphere of K^dim (normalized Gaussian).
inline Eigen::VectorXcd sample_sphere(int dim, Field field, RngStream& rng) {
  if (dim < 1) throw DomainError("sample_sphere: dim must be >= 1");
  Eigen::VectorXcd v(dim);
  double r = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v(i) = field == Field::Real ? Complex(rng.normal(), 0.0) : rng.complex_normal();
    r = v.norm();
  } while (r == 0.0);
  return v / r;
}

/// delta_i = sign<z, x_i> for one Gaussian z in K^d, with sign(0) = 1. Then
/// E[conj(delta_i) delta_j] = phi(<x_i, x_j>).
inline Eigen::VectorXcd gaussian_sign_round(const GramFactor& xs, RngStream& rng) {
  if (xs.constraint != Constraint::UnitSphere || xs.constraint_violation() > 1e-9)
    throw DomainError("gaussian_sign_round: unit-sphere vectors required");
  Eigen::VectorXcd z(xs.d());
  for (int i = 0; i < xs.d(); ++i) z(i) = xs.field == Field::Real ? Complex(rng.normal(), 0.0) : rng.complex_normal();
  const Eigen::VectorXcd p = xs.vectors.adjoint() * z;  // p_i = <x_i, z>
  Eigen::VectorXcd delta(xs.n());
  for (int i = 0; i < xs.n(); ++i) {
    const Complex w = std::conj(p(i));  // <z, x_i>
    delta(i) = xs.field == Field::Real ? Complex(sign_of(w.real()), 0.0) : sign_of(w);
  }
  return delta;
}

struct McEstimate {
  Complex mean{0.0, 0.0};
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  std::size_t samples = 0;

  /// |mean - expected| within k standard errors in each component.
  bool agrees(Complex expected, double k, double floor = 1e-12) const {
    return std::abs(mean.real() - expected.real()) <= k * stderr_re + floor &&
           std::abs(mean.imag() - expected.imag()) <= k * stderr_im + floor;
  }
};

/// Mean and standard error of fn(rng) over N draws. Draws are split into 64
/// blocks with their own substreams and combined in block order, so results
/// do not depend on thread scheduling.
template <class Fn>
McEstimate mc_mean(std::size_t N, const RngStream& base, Fn&& fn) {
  constexpr std::size_t kBlocks = 64;
  struct Acc {
    double sr = 0, si = 0, qr = 0, qi = 0;
  };
  std::vector<Acc> acc(kBlocks);
  parallel_for(kBlocks, [&](std::size_t b) {
    RngStream rng = base.substream(b);
    const std::size_t lo = N * b / kBlocks;
    const std::size_t hi = N * (b + 1) / kBlocks;
    Acc a;
    for (std::size_t k = lo; k < hi; ++k) {
      const Complex v = fn(rng);
      a.sr += v.real();
      a.si += v.imag();
      a.qr += v.real() * v.real();
      a.qi += v.imag() * v.imag();
    }
    acc[b] = a;
  });
  Acc t;
  for (const Acc& a : acc) {
    t.sr += a.sr;
    t.si += a.si;
    t.qr += a.qr;
    t.qi += a.qi;
  }
  McEstimate e;
  e.samples = N;
  if (N == 0) return e;
  const double n = static_cast<double>(N);
  e.mean = {t.sr / n, t.si / n};
  if (N > 1) {
    const double vr = std::max(0.0, (t.qr - n * e.mean.real() * e.mean.real()) / (n - 1));
    const double vi = std::max(0.0, (t.qi - n * e.mean.imag() * e.mean.imag()) / (n - 1));
    e.stderr_re = std::sqrt(vr / n);
    e.stderr_im = std::sqrt(vi / n);
  }
  return e;
}

inline Eigen::VectorXcd gaussian_vector(int dim, Field field, RngStream& rng) {
  Eigen::VectorXcd z(dim);
  for (int i = 0; i < dim; ++i) z(i) = field == Field::Real ? Complex(rng.normal(), 0.0) : rng.complex_normal();
  return z;
}

struct IdentityCheck {
  std::string name;
  McEstimate estimate;
  Complex expected;
};

struct McIdentityReport {
  Field field = Field::Real;
  Complex inner{0.0, 0.0};  // <u, v>
  IdentityCheck second_moment;  // E <u,z><z,v> = <u,v>
  IdentityCheck mixed_sign;     // E <u,z> sign<z,v> = c <u,v>
  IdentityCheck sign_sign;      // E sign<u,z> sign<z,v> = phi(<u,v>)

  bool all_within(double k) const {
    return second_moment.estimate.agrees(second_moment.expected, k) &&
           mixed_sign.estimate.agrees(mixed_sign.expected, k) && sign_sign.estimate.agrees(sign_sign.expected, k);
  }
};

/// Monte-Carlo estimates of the three Gaussian identities for unit u, v.
inline McIdentityReport mc_identities(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v, Field field, std::size_t N,
                                      const RngStream& rng) {
  if (u.size() != v.size() || std::abs(u.norm() - 1.0) > 1e-9 || std::abs(v.norm() - 1.0) > 1e-9)
    throw DomainError("mc_identities: unit vectors of equal length required");
  const int n = static_cast<int>(u.size());
  auto sgn = [field](Complex w) { return field == Field::Real ? Complex(sign_of(w.real()), 0.0) : sign_of(w); };
  McIdentityReport r;
  r.field = field;
  r.inner = u.dot(v);
  const double c = field == Field::Real ? std::sqrt(2.0 / kPi) : std::sqrt(kPi) / 2.0;
  const Complex phi = field == Field::Real ? Complex(phi_real(std::clamp(r.inner.real(), -1.0, 1.0), 1), 0.0)
                                           : phi_complex(r.inner, 1);
  r.second_moment = {"second_moment", mc_mean(N, rng.substream(1), [&](RngStream& g) {
                       const Eigen::VectorXcd z = gaussian_vector(n, field, g);
                       return u.dot(z) * z.dot(v);
                     }),
                     r.inner};
  r.mixed_sign = {"mixed_sign", mc_mean(N, rng.substream(2), [&](RngStream& g) {
                    const Eigen::VectorXcd z = gaussian_vector(n, field, g);
                    return u.dot(z) * sgn(z.dot(v));
                  }),
                  c * r.inner};
  r.sign_sign = {"sign_sign", mc_mean(N, rng.substream(3), [&](RngStream& g) {
                   const Eigen::VectorXcd z = gaussian_vector(n, field, g);
                   return sgn(u.dot(z)) * sgn(z.dot(v));
                 }),
                 phi};
  return r;
}

/// Monte-Carlo value of phi_d(<u,v>) = E <sign(Zu), sign(Zv)> with Z a d x n
/// Gaussian matrix (vector sign: z/|z|, e_1 at 0).
inline McEstimate mc_phi(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v, int d, Field field, std::size_t N,
                         const RngStream& rng) {
  if (u.size() != v.size() || u.size() < 2) throw DomainError("mc_phi: vectors of equal length >= 2 required");
  const int n = static_cast<int>(u.size());
  auto vsign = [d](Eigen::VectorXcd w) {
    const double r = w.norm();
    if (r == 0.0) {
      w.setZero();
      w(0) = 1.0;
      return w;
    }
    return Eigen::VectorXcd(w / r);
  };
  return mc_mean(N, rng, [&](RngStream& g) {
    Eigen::MatrixXcd z(d, n);
    for (int j = 0; j < n; ++j) z.col(j) = gaussian_vector(d, field, g);
    return vsign(z * u).dot(vsign(z * v));
  });
}

/// Monte-Carlo E|<U,V>|^alpha for U, V uniform on the sphere of K^{n+1}.
inline McEstimate mc_moment(int n, double alpha, Field field, std::size_t N, const RngStream& rng) {
  return mc_mean(N, rng, [&](RngStream& g) {
    const Eigen::VectorXcd a = sample_sphere(n + 1, field, g);
    const Eigen::VectorXcd b = sample_sphere(n + 1, field, g);
    return Complex(std::pow(std::abs(a.dot(b)), alpha), 0.0);
  });
}

/// Average of delta^* A delta over N rounding draws.
inline McEstimate rounding_average(const SymMatrix& a, const GramFactor& xs, std::size_t N, const RngStream& rng) {
  return mc_mean(N, rng, [&](RngStream& g) {
    const Eigen::VectorXcd delta = gaussian_sign_round(xs, g);
    return Complex((delta.adjoint() * a.entries() * delta)(0).real(), 0.0);
  });
}

/// sum_ij a_ij phi(<x_i, x_j>): the expectation of rounding_average.
inline double rounding_expectation(const SymMatrix& a, const GramFactor& xs) {
  const Eigen::MatrixXcd g = xs.gram();
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      const Complex gij = g(i, j);
      const Complex p = xs.field == Field::Real ? Complex(phi_real(std::clamp(gij.real(), -1.0, 1.0), 1), 0.0)
                                                : phi_complex(std::abs(gij) > 1.0 ? gij / std::abs(gij) : gij, 1);
      s += (a(i, j) * p).real();
    }
  return s;
}

struct SharpnessReport {
  int n = 0;
  int m = 0;
  Field field = Field::Real;
  double gamma_lower = 0.0;    // tr(AG) with the sampled points themselves
  double gamma_refined = 0.0;  // best <A, Y Y^*> from alternating ascent, >= gamma_lower
  double theta_estimate = 0.0;
  double ratio_estimate = 0.0;  // gamma_lower / theta_estimate
  double ratio_refined = 0.0;   // gamma_refined / theta_estimate
  double bound = 0.0;
  double mc_std = 0.0;
  bool theta_exact = false;
  int restarts = 0;
  bool monotone = true;
  std::string caveat;
};

/// Finite-n PSD ratio bound approached by A = G/m^2 for m uniform points.
inline double sharpness_bound(int n, Field field) {
  if (field == Field::Real) {
    const double r = boost::math::tgamma_ratio((n + 1) / 2.0, n / 2.0) / std::sqrt(n / 2.0);
    return kPi / 2.0 * r * r;
  }
  const double r = boost::math::tgamma_ratio(n + 0.5, static_cast<double>(n)) / std::sqrt(static_cast<double>(n));
  return 4.0 / kPi * r * r;
}

/// Sample m unit vectors in K^n, set A = G/m^2 with G their Gram matrix, and
/// compare certified lower bounds on gamma(A) with a lower bound on
/// theta(A) = max_t |(1/m) sum t_i x_i|^2 from alternating maximization.
inline SharpnessReport sharpness_experiment(int n, int m, Field field, const RngStream& rng, int restarts = 32) {
  if (n < 2 || m < n) throw DomainError("sharpness_experiment: need m >= n >= 2");
  SharpnessReport rep;
  rep.n = n;
  rep.m = m;
  rep.field = field;
  rep.bound = sharpness_bound(n, field);

  RngStream sampler = rng.substream(0);
  Eigen::MatrixXcd x(n, m);
  for (int i = 0; i < m; ++i) x.col(i) = sample_sphere(n, field, sampler);

  const Eigen::MatrixXcd xxs = x * x.adjoint();
  const double m2 = static_cast<double>(m) * m;
  rep.gamma_lower = xxs.squaredNorm() / m2;

  // Standard error of the mean of |<x_i, x_j>|^2 over pairs i < j.
  {
    const Eigen::MatrixXcd g = x.adjoint() * x;
    double s = 0.0;
    double q = 0.0;
    const double pairs = m * (m - 1) / 2.0;
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < j; ++i) {
        const double w = std::norm(g(i, j));
        s += w;
        q += w * w;
      }
    const double mean = s / pairs;
    rep.mc_std = std::sqrt(std::max(0.0, q / pairs - mean * mean) / pairs);
  }

  // gamma(A) = max |(1/m) sum y_i x_i^*|_F^2 over unit y_i. Since A has rank n
  // the y_i may be taken in K^n. Start at y_i = x_i and alternate
  // y_i <- sign(M x_i), M = (1/m) sum y_i x_i^*, which never decreases.
  {
    Eigen::MatrixXcd y = x;
    double prev = rep.gamma_lower;
    for (int it = 0; it < 5000; ++it) {
      const Eigen::MatrixXcd mm = y * x.adjoint() / static_cast<double>(m);
      Eigen::MatrixXcd ny = mm * x;
      for (int i = 0; i < m; ++i) {
        const double r = ny.col(i).norm();
        if (r > 0.0) ny.col(i) /= r;
        else ny.col(i) = y.col(i);
      }
      const double val = (ny * x.adjoint()).squaredNorm() / m2;
      if (val < prev - 1e-12 * std::max(1.0, prev)) rep.monotone = false;
      if (val <= prev * (1.0 + 1e-14)) break;
      prev = val;
      y = ny;
    }
    rep.gamma_refined = std::max(prev, rep.gamma_lower);
  }

  if (field == Field::Real && m <= 20) {
    const SymMatrix a = SymMatrix::real((x.adjoint() * x).real() / m2);
    rep.theta_estimate = theta_real_exact(a).value;
    rep.theta_exact = true;
    rep.restarts = 0;
  } else {
    std::vector<double> best(restarts, 0.0);
    std::vector<char> monotone(restarts, 1);
    parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
      RngStream g = rng.substream(100 + r);
      Eigen::VectorXcd v;
      if (r == 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(xxs);
        v = es.eigenvectors().col(n - 1);
      } else {
        v = sample_sphere(n, field, g);
      }
      double prev = -1.0;
      for (int it = 0; it < 1000; ++it) {
        // t_i = sign(<x_i, v>) maximizes Re <v, X t>; then v = X t / |X t|.
        const Eigen::VectorXcd p = x.adjoint() * v;
        Eigen::VectorXcd t(m);
        for (int i = 0; i < m; ++i) t(i) = field == Field::Real ? Complex(sign_of(p(i).real()), 0.0) : sign_of(p(i));
        const Eigen::VectorXcd w = x * t;
        const double val = w.squaredNorm() / m2;
        if (val < prev - 1e-12 * std::max(1.0, prev)) monotone[r] = 0;
        const bool done = val <= prev * (1.0 + 1e-15);
        prev = std::max(prev, val);
        if (done || w.norm() == 0.0) break;
        v = w / w.norm();
      }
      best[r] = prev;
    });
    for (int r = 0; r < restarts; ++r) {
      rep.theta_estimate = std::max(rep.theta_estimate, best[r]);
      rep.monotone = rep.monotone && monotone[r];
    }
    rep.restarts = restarts;
  }
  rep.ratio_estimate = rep.gamma_lower / rep.theta_estimate;
  rep.ratio_refined = rep.gamma_refined / rep.theta_estimate;
  rep.caveat = rep.theta_exact
                   ? "theta exact by enumeration; gamma is a certified lower bound, so the ratio is a lower estimate"
                   : "theta and gamma are both lower bounds; the ratio is an estimate of gamma/theta, not a bound";
  return rep;
}

}  // namespace grothnorm
