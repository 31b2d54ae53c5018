#pragma once

// Exact norm values for matrix classes with known closed forms. All of these
// are independent of the rank d.

#include "grothnorm/matrix.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <string>

namespace grothnorm {

struct ClosedFormResult {
  double gamma = 0.0;
  double Gamma = 0.0;
  std::optional<double> G;
  std::string applicable_d = "all d >= 1";
};

/// Diagonal A = diag(a): gamma = |sum a|, Gamma = max(positive part, negative
/// part), G = sum |a|.
inline ClosedFormResult diag_norms(std::span<const double> a) {
  double sum = 0.0;
  double pos = 0.0;
  double neg = 0.0;
  double abs_sum = 0.0;
  for (double v : a) {
    sum += v;
    pos += std::max(v, 0.0);
    neg -= std::min(v, 0.0);
    abs_sum += std::abs(v);
  }
  return {std::abs(sum), std::max(pos, neg), abs_sum};
}

/// gamma-seminorm of a tridiagonal matrix: |tr A| + 2 sum |a_{i,i+1}|.
inline double tridiag_gamma(const SymMatrix& a) {
  const int n = a.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i - j) > 1 && a(i, j) != Complex(0.0)) throw DomainError("tridiag_gamma: matrix is not tridiagonal");
  double off = 0.0;
  for (int i = 0; i + 1 < n; ++i) off += std::abs(a(i, i + 1));
  return std::abs(a.trace()) + 2.0 * off;
}

/// Entrywise nonnegative real A: every norm equals the entry sum.
inline ClosedFormResult nonneg_norms(const SymMatrix& a) {
  if (!a.is_real_valued()) throw DomainError("nonneg_norms: real entries required");
  const Eigen::MatrixXd r = a.real_entries();
  if (r.size() > 0 && r.minCoeff() < 0.0) throw DomainError("nonneg_norms: negative entry");
  const double s = r.sum();
  return {s, s, s};
}

/// A = [[A1, -B], [-B^T, A2]] with nonnegative blocks: every norm equals
/// sum |a_ij|, attained at x = (1_m, -1_n).
inline double bipartite_block_norms(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2, const Eigen::MatrixXd& b) {
  if (a1.rows() != a1.cols() || a2.rows() != a2.cols() || b.rows() != a1.rows() || b.cols() != a2.rows())
    throw DomainError("bipartite_block_norms: block shapes do not match");
  if ((a1.size() && a1.minCoeff() < 0.0) || (a2.size() && a2.minCoeff() < 0.0) || (b.size() && b.minCoeff() < 0.0))
    throw DomainError("bipartite_block_norms: blocks must be nonnegative");
  if (!a1.isApprox(a1.transpose(), 0.0) || !a2.isApprox(a2.transpose(), 0.0))
    throw DomainError("bipartite_block_norms: diagonal blocks must be symmetric");
  return a1.sum() + a2.sum() + 2.0 * b.sum();
}

/// Assembles [[A1, -B], [-B^T, A2]].
inline SymMatrix bipartite_block_matrix(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2, const Eigen::MatrixXd& b) {
  const auto m = a1.rows();
  const auto n = a2.rows();
  Eigen::MatrixXd a(m + n, m + n);
  a << a1, -b, -b.transpose(), a2;
  return SymMatrix::real(a);
}

}  // namespace grothnorm
