#pragma once

// The kernels phi_d over R and C (expected product of Gaussian signs as a
// function of the inner product), their Taylor data and inverses, and the
// named constants used by the inequality checks.

#include "grothnorm/matrix.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace grothnorm {

inline constexpr double kPi = std::numbers::pi;

/// sign(z) = z/|z| with sign(0) = 1.
inline double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }
inline Complex sign_of(Complex z) {
  const double r = std::abs(z);
  return r == 0.0 ? Complex(1.0, 0.0) : z / r;
}

/// b_{1,d}: the linear Taylor coefficient of phi_d.
inline double b1_coefficient(int d, Field field) {
  if (d < 1) throw DomainError("b1_coefficient: d must be >= 1");
  if (field == Field::Complex) return b1_coefficient(2 * d, Field::Real);
  const double r = boost::math::tgamma_ratio((d + 1) / 2.0, d / 2.0);
  return 2.0 / d * r * r;
}

struct PhiSeries {
  int d = 1;
  Field field = Field::Real;
  std::vector<double> coeffs;  // b_1, b_3, b_5, ...
  double truncation_error_bound = 0.0;

  /// Partial sum at x; |phi(x) - value| <= |x|^(2K+1) * truncation_error_bound.
  double evaluate(double x) const {
    const double x2 = x * x;
    double p = x;
    double s = 0.0;
    for (double c : coeffs) {
      s += c * p;
      p *= x2;
    }
    return s;
  }
};

/// Taylor coefficients b_{2k+1,d}, k < K, of phi_d over the given field.
inline PhiSeries phi_series(int d, Field field, int K = 64) {
  if (d < 1 || K < 1) throw DomainError("phi_series: d and K must be >= 1");
  const int dr = field == Field::Complex ? 2 * d : d;
  PhiSeries s{d, field, {}, 0.0};
  s.coeffs.reserve(K);
  double b = b1_coefficient(dr, Field::Real);
  double sum = 0.0;
  for (int k = 0; k < K; ++k) {
    s.coeffs.push_back(b);
    sum += b;
    b *= (k + 0.5) * (k + 0.5) / ((k + dr / 2.0 + 1.0) * (k + 1.0));
  }
  s.truncation_error_bound = std::max(0.0, 1.0 - sum);
  return s;
}

struct SeriesValue {
  double value = 0.0;
  double remainder_bound = 0.0;
};

/// The Gamma-ratio series of phi_d^R
///   2 (1-x^2)^{d/2} / sqrt(pi) * sum_k 2^{2k} G((d+2k+1)/2)^2 G((2k+3)/2)
///                                 / ((2k+1)! G(d/2) G((d+2k+2)/2)) x^{2k+1}
/// truncated after K terms. Terms are generated by their ratio
/// x^2 (d+2k+1)^2 / ((2k+2)(d+2k+2)), which decreases in k, so the tail is
/// bounded by a geometric series once the ratio drops below one.
inline SeriesValue phi_real_truncated(double x, int d, int K = 64) {
  if (std::abs(x) > 1.0) throw DomainError("phi_real: |x| > 1");
  if (d < 1 || K < 1) throw DomainError("phi_real: d and K must be >= 1");
  const double x2 = x * x;
  double term = b1_coefficient(d, Field::Real) * x * std::pow(1.0 - x2, d / 2.0);
  double sum = 0.0;
  for (int k = 0; k < K; ++k) {
    sum += term;
    term *= x2 * (d + 2.0 * k + 1.0) * (d + 2.0 * k + 1.0) / ((2.0 * k + 2.0) * (d + 2.0 * k + 2.0));
  }
  const double r = x2 * (d + 2.0 * K + 1.0) * (d + 2.0 * K + 1.0) / ((2.0 * K + 2.0) * (d + 2.0 * K + 2.0));
  const double bound = r < 1.0 ? std::abs(term) / (1.0 - r) : std::numeric_limits<double>::infinity();
  return {sum, bound};
}

namespace detail {

/// phi_d^R(x) = c_d x int_0^{pi/2} cos^d t / sqrt(1 - x^2 sin^2 t) dt with
/// c_d = 2 G((d+1)/2) / (sqrt(pi) G(d/2)).
inline double phi_real_quadrature(double x, int d) {
  const double eps = 1.0 - x * x;
  auto f = [&](double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    return std::pow(c, d) / std::sqrt(c * c + eps * s * s);
  };
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi / 2.0, 15, 1e-14);
  const double cd = 2.0 * boost::math::tgamma_ratio((d + 1) / 2.0, d / 2.0) / std::sqrt(kPi);
  return cd * x * integral;
}

}  // namespace detail

/// phi_d^R(x). d = 1 is (2/pi) arcsin x. For d >= 2 the series is used for
/// |x| <= 0.6 and the Euler integral otherwise.
inline double phi_real(double x, int d = 1) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("phi_real: |x| > 1");
  if (d < 1) throw DomainError("phi_real: d must be >= 1");
  if (d == 1) return 2.0 / kPi * std::asin(x);
  if (std::abs(x) == 1.0) return x;
  if (std::abs(x) <= 0.6) return phi_real_truncated(x, d, 64).value;
  return detail::phi_real_quadrature(x, d);
}

/// phi_d^C(z) = sign(z) phi_{2d}^R(|z|).
inline Complex phi_complex(Complex z, int d = 1) {
  const double r = std::abs(z);
  if (r > 1.0 + 1e-15) throw DomainError("phi_complex: |z| > 1");
  if (r == 0.0) return 0.0;
  return sign_of(z) * phi_real(std::min(r, 1.0), 2 * d);
}

/// Haagerup's integral form of phi_C (d = 1):
/// z int_0^{pi/2} cos^2 t / sqrt(1 - |z|^2 sin^2 t) dt.
inline Complex phi_complex_haagerup(Complex z) {
  const double r2 = std::norm(z);
  if (r2 > 1.0 + 1e-15) throw DomainError("phi_complex: |z| > 1");
  auto f = [&](double t) {
    const double c = std::cos(t);
    return c * c / std::sqrt(1.0 - r2 * std::sin(t) * std::sin(t));
  };
  return z * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi / 2.0, 15, 1e-14);
}

/// Inverse of phi_1: sin(pi y / 2) over R; over C the radial part is
/// inverted by bisection.
inline double phi_inverse(double y) {
  if (std::abs(y) > 1.0) throw DomainError("phi_inverse: |y| > 1");
  return std::sin(kPi * y / 2.0);
}

inline Complex phi_inverse(Complex y) {
  const double r = std::abs(y);
  if (r > 1.0) throw DomainError("phi_inverse: |y| > 1");
  if (r == 0.0 || r == 1.0) return y;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (phi_real(mid, 2) < r)
      lo = mid;
    else
      hi = mid;
  }
  return sign_of(y) * (0.5 * (lo + hi));
}

struct InverseCoeffs {
  std::vector<double> c;  // c_1, c_3, ..., c_{2K-1}
  double sum = 0.0;       // sum c_{2k+1}
  double abs_sum = 0.0;   // sum |c_{2k+1}|
  double residual = 0.0;  // 1 - sum, the unaccounted tail
};

/// Coefficients of phi_C^{-1}(z) = sum_k c_{2k+1} z |z|^{2k} for k < K by
/// reversion of the radial Taylor series.
///
/// With t = |z|^2 write phi_C(r) = r B(t) and phi_C^{-1}(s) = s C(t). The
/// coefficient of s^{2n+1} in phi_C(phi_C^{-1}(s)) is
///   sum_k b_{2k+1} [t^{n-k}] C^{2k+1},
/// and the powers C^{2k+1} are extended one coefficient at a time with the
/// J.C.P. Miller recurrence. The terms cancel heavily (C(0)^{2k+1} grows like
/// (4/pi)^{2k}), so the recursion runs in 50-digit arithmetic.
inline InverseCoeffs phi_complex_inverse_coeffs(int K) {
  if (K < 1 || K > 60) throw DomainError("phi_complex_inverse_coeffs: K must be in [1, 60]");
  using T = boost::multiprecision::cpp_bin_float_50;
  std::vector<T> b(K);
  b[0] = boost::math::constants::pi<T>() / 4;
  for (int k = 0; k + 1 < K; ++k) b[k + 1] = b[k] * T(2 * k + 1) * T(2 * k + 1) / (T(4) * T(k + 2) * T(k + 1));

  std::vector<T> c(K);
  std::vector<std::vector<T>> h(K, std::vector<T>(K));  // h[k][m] = [t^m] C^{2k+1}
  c[0] = 1 / b[0];
  for (int k = 0; k < K; ++k) h[k][0] = boost::multiprecision::pow(c[0], 2 * k + 1);
  for (int n = 1; n < K; ++n) {
    T acc = 0;
    for (int k = 1; k <= n; ++k) {
      const int m = n - k;
      if (m > 0) {
        const T alpha = 2 * k + 1;
        T s = 0;
        for (int i = 1; i <= m; ++i) s += ((alpha + 1) * i - m) * c[i] * h[k][m - i];
        h[k][m] = s / (m * c[0]);
      }
      acc += b[k] * h[k][m];
    }
    c[n] = -acc / b[0];
    h[0][n] = c[n];
  }
  InverseCoeffs out;
  T sum = 0;
  for (int k = 0; k < K; ++k) {
    out.c.push_back(static_cast<double>(c[k]));
    sum += c[k];
    out.abs_sum += std::abs(out.c.back());
  }
  out.sum = static_cast<double>(sum);
  out.residual = static_cast<double>(1 - sum);
  return out;
}

/// Entrywise phi_d applied to a matrix with entries in the unit disk and equal
/// diagonal.
inline SymMatrix apply_phi_entrywise(const SymMatrix& g, int d = 1) {
  const int n = g.size();
  const Eigen::MatrixXcd& e = g.entries();
  if (n > 0) {
    const Eigen::VectorXd diag = e.diagonal().real();
    if (diag.maxCoeff() - diag.minCoeff() > kTolZero) throw DomainError("apply_phi_entrywise: unequal diagonal");
  }
  Eigen::MatrixXcd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex z = e(i, j);
      const double r = std::abs(z);
      if (r > 1.0 + 1e-12) throw DomainError("apply_phi_entrywise: entry outside the unit disk");
      if (r > 1.0) z /= r;
      out(i, j) = g.field() == Field::Real ? Complex(phi_real(z.real(), d), 0.0) : phi_complex(z, d);
    }
  return g.field() == Field::Real ? SymMatrix::real(out.real()) : SymMatrix::complex(out);
}

/// Smallest eigenvalue of Phi_d(G) - b_{1,d} G; nonnegative for correlation G.
inline double phi_dominance_gap(const SymMatrix& g, int d = 1) {
  const SymMatrix phi = apply_phi_entrywise(g, d);
  return smallest_eigenvalue(phi - g * b1_coefficient(d, g.field()));
}

struct AlphaResult {
  double value = 0.0;
  double argmin = 0.0;
};

/// min over x in [0,1] of (1 + phi_d(x)) / (1 + x): dense grid followed by
/// golden-section search on the bracketing grid cell.
inline AlphaResult alpha_d_detail(int d, Field field) {
  if (d < 1) throw DomainError("alpha_d: d must be >= 1");
  const int dr = field == Field::Complex ? 2 * d : d;
  auto f = [dr](double x) { return (1.0 + phi_real(x, dr)) / (1.0 + x); };
  constexpr int kGrid = 10000;
  int best = 0;
  double best_val = f(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double v = f(static_cast<double>(i) / kGrid);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = std::max(0, best - 1) / static_cast<double>(kGrid);
  double b = std::min(kGrid, best + 1) / static_cast<double>(kGrid);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double vm = f(xm);
  if (vm < best_val) return {vm, xm};
  return {best_val, best / static_cast<double>(kGrid)};
}

inline double alpha_d(int d, Field field) { return alpha_d_detail(d, field).value; }
inline double alpha_gw(Field field) { return alpha_d(1, field); }

/// Lower bound on the conic constant for rank-d vectors against rank-p
/// optimum; p = nullopt means p = infinity. Equals 1/b_{1,d} at p = infinity.
inline double conic_lower_bound(int d, std::optional<int> p, Field field) {
  if (d < 1) throw DomainError("conic_lower_bound: d must be >= 1");
  if (p && *p < d) throw DomainError("conic_lower_bound: d > p");
  using boost::math::tgamma_ratio;
  if (field == Field::Real) {
    if (!p) {
      const double r = tgamma_ratio(d / 2.0, (d + 1) / 2.0);
      return d * r * r / 2.0;
    }
    const double r = tgamma_ratio((*p + 1) / 2.0, *p / 2.0) * tgamma_ratio(d / 2.0, (d + 1) / 2.0);
    return static_cast<double>(d) / *p * r * r;
  }
  if (!p) {
    const double r = tgamma_ratio(static_cast<double>(d), d + 0.5);
    return d * r * r;
  }
  const double r = tgamma_ratio(*p + 0.5, static_cast<double>(*p)) * tgamma_ratio(static_cast<double>(d), d + 0.5);
  return static_cast<double>(d) / *p * r * r;
}

/// E|T_n|^alpha for T_n = <U,V>, U,V independent uniform on the unit sphere
/// of K^{n+1}.
inline double moments_closed_form(int n, double alpha, Field field) {
  if (n < 1 || !(alpha > 0.0)) throw DomainError("moments_closed_form: need n >= 1, alpha > 0");
  using boost::math::tgamma_ratio;
  if (field == Field::Real)
    return tgamma_ratio((n + 1) / 2.0, (n + alpha + 1) / 2.0) * std::tgamma((alpha + 1) / 2.0) / std::sqrt(kPi);
  return std::tgamma(alpha / 2.0 + 1.0) * tgamma_ratio(n + 1.0, n + alpha / 2.0 + 1.0);
}

/// Density of T_n: on [-1,1] over R, on the unit disk (w.r.t. area) over C.
inline double density_f(Complex t, int n, Field field) {
  if (n < 1) throw DomainError("density_f: n must be >= 1");
  const double r2 = std::norm(t);
  if (r2 > 1.0) throw DomainError("density_f: |t| > 1");
  if (field == Field::Real) {
    if (t.imag() != 0.0) throw DomainError("density_f: real field needs real t");
    return boost::math::tgamma_ratio((n + 1) / 2.0, n / 2.0) / std::sqrt(kPi) * std::pow(1.0 - r2, (n - 2) / 2.0);
  }
  return n / kPi * std::pow(1.0 - r2, n - 1);
}

/// Bounds on the symmetric and classical Grothendieck constants, the conic
/// constants and the Goemans-Williamson ratios. Values that are not known
/// exactly are stored as bounds.
struct ConstantsTable {
  double K_gamma_bound_R = std::sinh(kPi / 2.0);
  double K_gamma_bound_R_improved = std::numbers::sqrt2 * (8.0 / kPi - 1.0);
  double K_gamma_bound_C = 8.0 / kPi - 1.0;
  double nesterov_R = kPi / 2.0;
  double nesterov_C = 4.0 / kPi;
  double alpha_gw_R = 0.0;
  double alpha_gw_C = 0.0;
  double K_G_R_lower = 1.67696;
  double K_G_R_upper = kPi / (2.0 * std::log(1.0 + std::numbers::sqrt2));
  double K_G_C_lower = 1.33807;
  double K_G_C_upper = 1.40491;
  double a0_R = 2.0 / kPi;
  double a0_C = kPi / 4.0;
  double krivine_G12 = std::numbers::sqrt2;
  std::vector<double> alpha_d_R;         // d = 1..4
  std::vector<double> alpha_d_C;         // d = 1..4
  std::vector<double> conic_limit_R;     // d = 1..4, p = infinity
  std::vector<double> conic_limit_C;     // d = 1..4, p = infinity

  double K_gamma_bound(Field f) const { return f == Field::Real ? K_gamma_bound_R : K_gamma_bound_C; }
  double nesterov(Field f) const { return f == Field::Real ? nesterov_R : nesterov_C; }
  double alpha_gw(Field f) const { return f == Field::Real ? alpha_gw_R : alpha_gw_C; }
  double a0(Field f) const { return f == Field::Real ? a0_R : a0_C; }
  double sdd_constant(Field f) const { return 1.0 + (1.0 - a0(f)) / alpha_gw(f); }
};

inline const ConstantsTable& constants() {
  static const ConstantsTable table = [] {
    ConstantsTable t;
    t.alpha_gw_R = alpha_gw(Field::Real);
    t.alpha_gw_C = alpha_gw(Field::Complex);
    for (int d = 1; d <= 4; ++d) {
      t.alpha_d_R.push_back(d == 1 ? t.alpha_gw_R : alpha_d(d, Field::Real));
      t.alpha_d_C.push_back(d == 1 ? t.alpha_gw_C : alpha_d(d, Field::Complex));
      t.conic_limit_R.push_back(conic_lower_bound(d, std::nullopt, Field::Real));
      t.conic_limit_C.push_back(conic_lower_bound(d, std::nullopt, Field::Complex));
    }
    return t;
  }();
  return table;
}

}  // namespace grothnorm
