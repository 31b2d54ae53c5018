#pragma once

// Exact small-instance values of the combinatorial quantities: the theta
// seminorm (sign vectors), box quadratic maxima and the Theta norm, cut norm,
// stretch and max-cut. Also a phase-ascent lower bound for complex theta.

#include "grothnorm/matrix.hpp"
#include "grothnorm/parallel.hpp"
#include "grothnorm/rng.hpp"
#include "grothnorm/special_functions.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace grothnorm {

inline constexpr int kMaxSignEnumeration = 24;
inline constexpr int kMaxBoxEnumeration = 12;

struct SignExtremes {
  double max_value = 0.0;  // q_=(A)
  double min_value = 0.0;  // -q_=(-A)
  Eigen::VectorXd argmax;
  Eigen::VectorXd argmin;
};

namespace detail {

inline Eigen::MatrixXd require_real(const SymMatrix& a, const char* who) {
  if (a.field() != Field::Real) throw DomainError(std::string(who) + ": real matrix required");
  return a.real_entries();
}

inline double quad_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& x) { return x.dot(a * x); }

}  // namespace detail

/// max and min of x^T A x over x in {-1,1}^n. Gray-code enumeration with x_0
/// fixed to 1 (the form is even); each flip updates the form and A x in O(n).
inline SignExtremes sign_extremes(const SymMatrix& a_in) {
  const Eigen::MatrixXd a = detail::require_real(a_in, "sign enumeration");
  const int n = static_cast<int>(a.rows());
  if (n > kMaxSignEnumeration) throw DomainError("sign enumeration: n > 24");
  SignExtremes out;
  if (n == 0) return out;

  const int free_bits = n - 1;
  const std::uint64_t total = std::uint64_t{1} << free_bits;
  const std::size_t chunks = free_bits >= 16 ? 64 : 1;

  struct Partial {
    double max_v = -std::numeric_limits<double>::infinity();
    double min_v = std::numeric_limits<double>::infinity();
    std::uint64_t arg_max = 0;
    std::uint64_t arg_min = 0;
  };
  std::vector<Partial> parts(chunks);

  auto sign_vector = [n](std::uint64_t code) {
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    for (int k = 1; k < n; ++k)
      if ((code >> (k - 1)) & 1U) x(k) = -1.0;
    return x;
  };

  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = total * c / chunks;
    const std::uint64_t end = total * (c + 1) / chunks;
    if (begin == end) return;
    std::uint64_t code = begin ^ (begin >> 1);
    Eigen::VectorXd x = sign_vector(code);
    Eigen::VectorXd y = a * x;
    double f = x.dot(y);
    Partial p;
    for (std::uint64_t i = begin;;) {
      if (f > p.max_v) {
        p.max_v = f;
        p.arg_max = code;
      }
      if (f < p.min_v) {
        p.min_v = f;
        p.arg_min = code;
      }
      if (++i == end) break;
      const int bit = std::countr_zero(i);
      const int k = bit + 1;
      const double xk = x(k);
      f -= 4.0 * xk * (y(k) - a(k, k) * xk);
      y -= 2.0 * xk * a.col(k);
      x(k) = -xk;
      code ^= std::uint64_t{1} << bit;
    }
    parts[c] = p;
  });

  Partial best;
  for (const Partial& p : parts) {
    if (p.max_v > best.max_v) {
      best.max_v = p.max_v;
      best.arg_max = p.arg_max;
    }
    if (p.min_v < best.min_v) {
      best.min_v = p.min_v;
      best.arg_min = p.arg_min;
    }
  }
  out.argmax = sign_vector(best.arg_max);
  out.argmin = sign_vector(best.arg_min);
  out.max_value = detail::quad_form(a, out.argmax);
  out.min_value = detail::quad_form(a, out.argmin);
  return out;
}

struct ThetaResult {
  double value = 0.0;
  Eigen::VectorXd argmax;
};

/// ||A||_theta over R: max |x^T A x| over sign vectors.
inline ThetaResult theta_real_exact(const SymMatrix& a) {
  const SignExtremes e = sign_extremes(a);
  if (e.max_value >= -e.min_value) return {e.max_value, e.argmax};
  return {-e.min_value, e.argmin};
}

/// q_=(A) + q_=(-A).
inline double stretch_exact(const SymMatrix& a) {
  const SignExtremes e = sign_extremes(a);
  return e.max_value - e.min_value;
}

enum class Face { Lo, Hi, Free };

struct BoxMaxResult {
  double value = 0.0;
  Eigen::VectorXd argmax;
  std::vector<Face> face_pattern;
  int faces_examined = 0;
  int singular_faces = 0;  // near-singular free blocks (rcond < 1e-12)
  double stationarity_residual = 0.0;
};

/// q_<=(A) = max of x^T A x over [-1,1]^n by enumeration of all 3^n faces.
/// On each face the free coordinates solve A_FF x_F = -A_FX s_X; a maximizer
/// lies in the relative interior of some face where this holds.
inline BoxMaxResult box_quad_max(const SymMatrix& a_in) {
  const Eigen::MatrixXd a = detail::require_real(a_in, "box_quad_max");
  const int n = static_cast<int>(a.rows());
  if (n > kMaxBoxEnumeration) throw DomainError("box_quad_max: n > 12");
  BoxMaxResult best;
  best.value = -std::numeric_limits<double>::infinity();
  if (n == 0) {
    best.value = 0.0;
    return best;
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());

  std::vector<int> digits(n, 0);
  std::vector<int> free_idx;
  std::vector<int> fixed_idx;
  Eigen::VectorXd x(n);

  auto consider = [&](const Eigen::VectorXd& cand, double residual) {
    const double v = detail::quad_form(a, cand);
    if (v > best.value) {
      best.value = v;
      best.argmax = cand;
      best.face_pattern.assign(n, Face::Free);
      for (int i = 0; i < n; ++i) best.face_pattern[i] = digits[i] == 0 ? Face::Lo : digits[i] == 1 ? Face::Hi : Face::Free;
      best.stationarity_residual = residual;
    }
  };

  // Grid over a single free coordinate of a degenerate face.
  auto grid_line = [&](int idx) {
    Eigen::VectorXd cand = x;
    for (int g = 0; g <= 10; ++g) {
      cand(idx) = -1.0 + 0.2 * g;
      consider(cand, std::numeric_limits<double>::quiet_NaN());
    }
  };

  for (;;) {
    ++best.faces_examined;
    free_idx.clear();
    fixed_idx.clear();
    for (int i = 0; i < n; ++i) {
      if (digits[i] == 2) {
        free_idx.push_back(i);
      } else {
        fixed_idx.push_back(i);
        x(i) = digits[i] == 0 ? -1.0 : 1.0;
      }
    }
    const int k = static_cast<int>(free_idx.size());
    if (k == 0) {
      consider(x, 0.0);
    } else {
      Eigen::MatrixXd aff(k, k);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) aff(r, c) = a(free_idx[r], free_idx[c]);
        for (int j : fixed_idx) rhs(r) -= a(free_idx[r], j) * x(j);
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(aff);
      const double rcond = aff.cwiseAbs().maxCoeff() == 0.0 ? 0.0 : lu.rcond();
      Eigen::VectorXd xf;
      bool stationary = true;
      if (rcond < 1e-12) {
        // Along null directions of A_FF the form is constant, so a consistent
        // system is represented by its minimum-norm solution and an
        // inconsistent one has no interior maximizer on this face.
        ++best.singular_faces;
        if (k == 1) grid_line(free_idx[0]);
        xf = aff.completeOrthogonalDecomposition().solve(rhs);
        stationary = (aff * xf - rhs).cwiseAbs().maxCoeff() <= 1e-9 * scale;
      } else {
        xf = lu.solve(rhs);
      }
      if (stationary && xf.cwiseAbs().maxCoeff() <= 1.0 + 1e-12) {
        for (int r = 0; r < k; ++r) x(free_idx[r]) = std::clamp(xf(r), -1.0, 1.0);
        Eigen::VectorXd xfc(k);
        for (int r = 0; r < k; ++r) xfc(r) = x(free_idx[r]);
        consider(x, (aff * xfc - rhs).cwiseAbs().maxCoeff() / scale);
      }
    }
    int t = 0;
    while (t < n && ++digits[t] == 3) digits[t++] = 0;
    if (t == n) break;
  }
  return best;
}

/// ||A||_Theta over R = max(q_<=(A), q_<=(-A)).
inline double Theta_real_exact(const SymMatrix& a) {
  return std::max(box_quad_max(a).value, box_quad_max(-a).value);
}

struct ComplexThetaResult {
  double value = 0.0;
  Eigen::VectorXcd argmax;
  int restarts = 0;
};

/// Lower bound on ||A||_theta over C by multi-start coordinate ascent on the
/// phases: the update delta_i <- sign(s * sum_{j != i} a_ij delta_j) is the
/// exact coordinate maximizer of s * delta^* A delta.
inline ComplexThetaResult theta_complex_lower(const SymMatrix& a, int angles_K = 8, int restarts = 16,
                                              std::uint64_t seed = 0x7E7A) {
  const int n = a.size();
  ComplexThetaResult out;
  if (n == 0) return out;
  const Eigen::MatrixXcd& m = a.entries();
  const int starts_per_sign = std::max(1, restarts) + 2;
  std::vector<std::pair<double, Eigen::VectorXcd>> results(2 * starts_per_sign);

  parallel_for(results.size(), [&](std::size_t slot) {
    const double s = slot < static_cast<std::size_t>(starts_per_sign) ? 1.0 : -1.0;
    const int r = static_cast<int>(slot % starts_per_sign);
    RngStream rng(seed, slot);
    Eigen::VectorXcd delta(n);
    if (r == 0) {
      delta.setOnes();
    } else if (r == 1) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s * m);
      const Eigen::VectorXcd v = es.eigenvectors().col(n - 1);
      for (int i = 0; i < n; ++i) delta(i) = sign_of(v(i));
    } else {
      const int K = std::max(1, angles_K);
      for (int i = 0; i < n; ++i) {
        const auto q = static_cast<int>(rng() % static_cast<std::uint64_t>(K));
        delta(i) = std::polar(1.0, 2.0 * kPi * q / K);
      }
    }
    double f = s * (delta.adjoint() * m * delta)(0).real();
    for (int sweep = 0; sweep < 10000; ++sweep) {
      for (int i = 0; i < n; ++i) {
        const Complex gi = (m.row(i) * delta)(0) - m(i, i) * delta(i);
        if (std::abs(gi) > 0.0) delta(i) = sign_of(s * gi);
      }
      const double f_new = s * (delta.adjoint() * m * delta)(0).real();
      const bool done = f_new <= f + 1e-15 * std::max(1.0, std::abs(f));
      f = std::max(f, f_new);
      if (done) break;
    }
    results[slot] = {std::abs((delta.adjoint() * m * delta)(0).real()), delta};
  });
  for (auto& [v, d] : results)
    if (v >= out.value) {
      out.value = v;
      out.argmax = d;
    }
  out.restarts = static_cast<int>(results.size());
  return out;
}

struct CutNormResult {
  double value = 0.0;
  std::vector<int> rows;
  std::vector<int> cols;
};

/// Cut norm of a real m x n matrix: enumerate row subsets (Gray code over the
/// partial column sums) and take the best column subset for each sign.
inline CutNormResult cut_norm_exact(const RectMatrix& b_in) {
  if (b_in.field() != Field::Real) throw DomainError("cut_norm_exact: real matrix required");
  if (b_in.rows() + b_in.cols() > kMaxSignEnumeration) throw DomainError("cut_norm_exact: m + n > 24");
  const bool transposed = b_in.rows() > b_in.cols();
  const Eigen::MatrixXd b = transposed ? Eigen::MatrixXd(b_in.real_entries().transpose()) : b_in.real_entries();
  const int m = static_cast<int>(b.rows());
  const int n = static_cast<int>(b.cols());
  CutNormResult out;
  Eigen::VectorXd colsum = Eigen::VectorXd::Zero(n);
  std::uint64_t code = 0;
  std::uint64_t best_code = 0;
  int best_sign = 1;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int bit = std::countr_zero(i);
    code ^= std::uint64_t{1} << bit;
    if ((code >> bit) & 1U)
      colsum += b.row(bit).transpose();
    else
      colsum -= b.row(bit).transpose();
    const double pos = colsum.cwiseMax(0.0).sum();
    const double neg = -colsum.cwiseMin(0.0).sum();
    if (pos > out.value) {
      out.value = pos;
      best_code = code;
      best_sign = 1;
    }
    if (neg > out.value) {
      out.value = neg;
      best_code = code;
      best_sign = -1;
    }
  }
  if (out.value > 0.0) {
    std::vector<int> rs;
    std::vector<int> cs;
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < m; ++r)
      if ((best_code >> r) & 1U) {
        rs.push_back(r);
        s += b.row(r).transpose();
      }
    double total_sum = 0.0;
    for (int c = 0; c < n; ++c)
      if (best_sign * s(c) > 0.0) {
        cs.push_back(c);
        total_sum += s(c);
      }
    out.value = std::abs(total_sum);
    out.rows = transposed ? cs : rs;
    out.cols = transposed ? rs : cs;
  }
  return out;
}

struct MaxCutResult {
  double value = 0.0;
  std::vector<int> side;  // +1 / -1 per vertex
};

/// Max cut of a nonnegative zero-diagonal weight matrix by direct subset
/// enumeration (vertex 0 fixed on side +1).
inline MaxCutResult max_cut_enumerate(const SymMatrix& a_in) {
  const Eigen::MatrixXd w = detail::require_real(a_in, "max_cut_enumerate");
  const int n = static_cast<int>(w.rows());
  if (n > kMaxSignEnumeration) throw DomainError("max_cut_enumerate: n > 24");
  MaxCutResult out;
  out.side.assign(n, 1);
  if (n <= 1) return out;
  std::vector<int> side(n, 1);
  // same(j) / other(j): weight from j to vertices on its own / the other side.
  Eigen::VectorXd same = w.rowwise().sum() - w.diagonal();
  Eigen::VectorXd other = Eigen::VectorXd::Zero(n);
  double cut = 0.0;
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < total; ++i) {
    const int k = std::countr_zero(i) + 1;
    cut += same(k) - other(k);
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const double sgn = side[j] == side[k] ? 1.0 : -1.0;
      same(j) -= sgn * w(j, k);
      other(j) += sgn * w(j, k);
    }
    std::swap(same(k), other(k));
    side[k] = -side[k];
    if (cut > out.value) {
      out.value = cut;
      out.side = side;
    }
  }
  double exact = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (out.side[i] != out.side[j]) exact += w(i, j);
  out.value = exact;
  return out;
}

}  // namespace grothnorm
