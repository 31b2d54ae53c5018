#pragma once

// Dense symmetric/Hermitian and rectangular matrices over R or C, cone
// membership predicates and the structural constructions used by the norm
// routines (Laplacians, diagonally dominant split, block embeddings).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace grothnorm {

using Complex = std::complex<double>;

enum class Field { Real, Complex };

inline std::string_view to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Field field_from_string(std::string_view s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw DomainError("unknown field '" + std::string(s) + "'");
}

/// Tolerance used by the cone predicates for "zero" entries and row sums.
inline constexpr double kTolZero = 1e-10;
/// PSD test accepts smallest eigenvalue >= -kTolPsdRel * ||A||_F.
inline constexpr double kTolPsdRel = 1e-8;

/// n x n real symmetric or complex Hermitian matrix.
///
/// Entries are stored as a full complex square. The constructor rejects
/// input that is not Hermitian to within `tol` (relative to the largest
/// entry) and then stores the exact Hermitian part, so a(j,i) == conj(a(i,j))
/// holds bit-for-bit and the diagonal is real.
class SymMatrix {
 public:
  SymMatrix() = default;

  static SymMatrix real(const Eigen::MatrixXd& a, double tol = 1e-12) {
    return SymMatrix(Field::Real, a.cast<Complex>(), tol);
  }

  static SymMatrix complex(const Eigen::MatrixXcd& a, double tol = 1e-12) {
    return SymMatrix(Field::Complex, a, tol);
  }

  static SymMatrix zero(int n, Field field) { return SymMatrix(field, Eigen::MatrixXcd::Zero(n, n), 0.0); }

  static SymMatrix diagonal(const Eigen::VectorXd& d, Field field = Field::Real) {
    return SymMatrix(field, d.cast<Complex>().asDiagonal().toDenseMatrix(), 0.0);
  }

  Field field() const { return field_; }
  int size() const { return static_cast<int>(a_.rows()); }
  const Eigen::MatrixXcd& entries() const { return a_; }
  Complex operator()(int i, int j) const { return a_(i, j); }

  /// Real parts of the entries. For a Real-field matrix this is the matrix.
  Eigen::MatrixXd real_entries() const { return a_.real(); }

  /// True when every entry has zero imaginary part.
  bool is_real_valued() const { return a_.imag().cwiseAbs().maxCoeff() == 0.0 || a_.size() == 0; }

  double trace() const { return a_.diagonal().real().sum(); }
  double frobenius_norm() const { return a_.norm(); }
  double max_abs() const { return a_.size() == 0 ? 0.0 : a_.cwiseAbs().maxCoeff(); }

  SymMatrix operator-() const { return SymMatrix(field_, -a_, 0.0); }
  SymMatrix operator*(double s) const { return SymMatrix(field_, s * a_, 0.0); }
  friend SymMatrix operator*(double s, const SymMatrix& m) { return m * s; }

  SymMatrix operator+(const SymMatrix& o) const {
    check_same(o);
    return SymMatrix(field_, a_ + o.a_, 0.0);
  }
  SymMatrix operator-(const SymMatrix& o) const {
    check_same(o);
    return SymMatrix(field_, a_ - o.a_, 0.0);
  }

  /// A + alpha*I.
  SymMatrix shifted(double alpha) const {
    Eigen::MatrixXcd b = a_;
    b.diagonal().array() += alpha;
    return SymMatrix(field_, std::move(b), 0.0);
  }

  /// Same entries relabelled over the complex field.
  SymMatrix as_complex() const { return SymMatrix(Field::Complex, a_, 0.0); }

  /// D* A D for a diagonal D given by its entries.
  SymMatrix conjugated_by_diagonal(const Eigen::VectorXcd& d) const {
    Eigen::MatrixXcd b = d.conjugate().asDiagonal() * a_ * d.asDiagonal();
    return SymMatrix(field_, std::move(b), 1e-12);
  }

  bool operator==(const SymMatrix& o) const { return field_ == o.field_ && a_ == o.a_; }

 private:
  SymMatrix(Field field, Eigen::MatrixXcd a, double tol) : field_(field), a_(std::move(a)) {
    if (a_.rows() != a_.cols()) throw DomainError("symmetric matrix must be square");
    if (field_ == Field::Real && a_.size() > 0 && a_.imag().cwiseAbs().maxCoeff() != 0.0)
      throw DomainError("real-field matrix has complex entries");
    if (!a_.allFinite()) throw DomainError("matrix has non-finite entries");
    const double scale = std::max(1.0, a_.size() == 0 ? 0.0 : a_.cwiseAbs().maxCoeff());
    const double asym = a_.size() == 0 ? 0.0 : (a_ - a_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol * scale) throw DomainError("matrix is not Hermitian");
    Eigen::MatrixXcd h = 0.5 * (a_ + a_.adjoint());
    for (int i = 0; i < h.rows(); ++i) {
      h(i, i) = Complex(h(i, i).real(), 0.0);
      for (int j = i + 1; j < h.cols(); ++j) h(j, i) = std::conj(h(i, j));
    }
    a_ = std::move(h);
  }

  void check_same(const SymMatrix& o) const {
    if (field_ != o.field_ || size() != o.size()) throw DomainError("matrix field or size mismatch");
  }

  Field field_ = Field::Real;
  Eigen::MatrixXcd a_;
};

/// m x n matrix over the tagged field.
class RectMatrix {
 public:
  RectMatrix() = default;
  static RectMatrix real(const Eigen::MatrixXd& b) { return RectMatrix(Field::Real, b.cast<Complex>()); }
  static RectMatrix complex(const Eigen::MatrixXcd& b) { return RectMatrix(Field::Complex, b); }

  Field field() const { return field_; }
  int rows() const { return static_cast<int>(b_.rows()); }
  int cols() const { return static_cast<int>(b_.cols()); }
  const Eigen::MatrixXcd& entries() const { return b_; }
  Complex operator()(int i, int j) const { return b_(i, j); }
  Eigen::MatrixXd real_entries() const { return b_.real(); }

  bool operator==(const RectMatrix& o) const { return field_ == o.field_ && b_ == o.b_; }

 private:
  RectMatrix(Field field, Eigen::MatrixXcd b) : field_(field), b_(std::move(b)) {
    if (field_ == Field::Real && b_.size() > 0 && b_.imag().cwiseAbs().maxCoeff() != 0.0)
      throw DomainError("real-field matrix has complex entries");
    if (!b_.allFinite()) throw DomainError("matrix has non-finite entries");
  }

  Field field_ = Field::Real;
  Eigen::MatrixXcd b_;
};

enum class ConeLabel { ZeroDiagonal, EqualDiagonal, PSD, Nonnegative, WeightedLaplacian, DiagonallyDominant };

using ConeSet = std::set<ConeLabel>;

inline std::string_view to_string(ConeLabel c) {
  switch (c) {
    case ConeLabel::ZeroDiagonal: return "zero_diagonal";
    case ConeLabel::EqualDiagonal: return "equal_diagonal";
    case ConeLabel::PSD: return "psd";
    case ConeLabel::Nonnegative: return "nonnegative";
    case ConeLabel::WeightedLaplacian: return "weighted_laplacian";
    case ConeLabel::DiagonallyDominant: return "diagonally_dominant";
  }
  return "?";
}

inline ConeLabel cone_from_string(std::string_view s) {
  for (auto c : {ConeLabel::ZeroDiagonal, ConeLabel::EqualDiagonal, ConeLabel::PSD, ConeLabel::Nonnegative,
                 ConeLabel::WeightedLaplacian, ConeLabel::DiagonallyDominant})
    if (to_string(c) == s) return c;
  throw DomainError("unknown cone label '" + std::string(s) + "'");
}

/// Eigenvalues in increasing order.
inline Eigen::VectorXd eigenvalues(const SymMatrix& a) {
  if (a.size() == 0) return {};
  if (a.field() == Field::Real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.real_entries(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.entries(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double smallest_eigenvalue(const SymMatrix& a) { return a.size() == 0 ? 0.0 : eigenvalues(a)(0); }

inline bool is_psd(const SymMatrix& a) { return smallest_eigenvalue(a) >= -kTolPsdRel * a.frobenius_norm(); }

/// Off-diagonal part kept, diagonal replaced by tr(A)/n.
inline SymMatrix xi_projection(const SymMatrix& a) {
  const int n = a.size();
  if (n == 0) return a;
  Eigen::MatrixXcd b = a.entries();
  const double t = a.trace() / n;
  b.diagonal().setConstant(Complex(t, 0.0));
  return a.field() == Field::Real ? SymMatrix::real(b.real()) : SymMatrix::complex(b);
}

/// Diagonal part of A.
inline SymMatrix delta_projection(const SymMatrix& a) {
  return SymMatrix::diagonal(a.entries().diagonal().real(), a.field());
}

inline ConeSet classify_cones(const SymMatrix& a) {
  ConeSet out;
  const int n = a.size();
  const Eigen::MatrixXcd& m = a.entries();
  const Eigen::VectorXd diag = m.diagonal().real();

  if (n == 0 || diag.cwiseAbs().maxCoeff() <= kTolZero) out.insert(ConeLabel::ZeroDiagonal);
  if (n == 0 || diag.maxCoeff() - diag.minCoeff() <= kTolZero) out.insert(ConeLabel::EqualDiagonal);
  if (is_psd(a)) out.insert(ConeLabel::PSD);

  const bool real_valued = a.field() == Field::Real || m.imag().cwiseAbs().maxCoeff() <= kTolZero;
  if (real_valued) {
    const Eigen::MatrixXd r = m.real();
    if (n == 0 || r.minCoeff() >= -kTolZero) out.insert(ConeLabel::Nonnegative);
  }

  if (a.field() == Field::Real) {
    const Eigen::MatrixXd r = m.real();
    bool lap = true;
    bool dd = true;
    for (int i = 0; i < n; ++i) {
      if (std::abs(r.row(i).sum()) > kTolZero) lap = false;
      double off = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        if (r(i, j) > kTolZero) lap = false;
        off += std::abs(r(i, j));
      }
      if (r(i, i) < off - kTolZero) dd = false;
    }
    if (lap) out.insert(ConeLabel::WeightedLaplacian);
    if (dd) out.insert(ConeLabel::DiagonallyDominant);
  }
  return out;
}

/// L_A = diag(A 1) - A for real A with zero diagonal.
inline SymMatrix laplacian_of(const SymMatrix& a) {
  if (a.field() != Field::Real) throw DomainError("laplacian_of: real matrix required");
  const Eigen::MatrixXd r = a.real_entries();
  if (r.size() > 0 && r.diagonal().cwiseAbs().maxCoeff() > kTolZero)
    throw DomainError("laplacian_of: input must have zero diagonal");
  Eigen::MatrixXd l = -r;
  l.diagonal() = r.rowwise().sum();
  return SymMatrix::real(l);
}

struct SddSplit {
  SymMatrix nonnegative;  // H: entrywise nonnegative, diagonally dominant
  SymMatrix laplacian;    // L: weighted Laplacian
};

/// Unique split A = H + L of a diagonally dominant A with complementary
/// off-diagonal supports: L collects the negative off-diagonal entries.
inline SddSplit sdd_decompose(const SymMatrix& a) {
  if (a.field() != Field::Real) throw DomainError("sdd_decompose: real matrix required");
  if (!classify_cones(a).contains(ConeLabel::DiagonallyDominant))
    throw DomainError("sdd_decompose: matrix is not diagonally dominant");
  const int n = a.size();
  const Eigen::MatrixXd r = a.real_entries();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && r(i, j) < 0.0) b(i, j) = -r(i, j);
  SymMatrix l = laplacian_of(SymMatrix::real(b));
  // H's off-diagonal entries are copied, not computed as a - l, so the
  // supports stay exactly disjoint.
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd lr = l.real_entries();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = (i == j) ? r(i, i) - lr(i, i) : (r(i, j) > 0.0 ? r(i, j) : 0.0);
  return {SymMatrix::real(h), std::move(l)};
}

/// [[0, B], [B*, 0]].
inline SymMatrix embed_rect(const RectMatrix& b) {
  const int m = b.rows();
  const int n = b.cols();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m + n, m + n);
  a.topRightCorner(m, n) = b.entries();
  a.bottomLeftCorner(n, m) = b.entries().adjoint();
  return b.field() == Field::Real ? SymMatrix::real(a.real()) : SymMatrix::complex(a);
}

/// View a symmetric matrix as a rectangular one (for the G-norm of A).
inline RectMatrix as_rect(const SymMatrix& a) {
  return a.field() == Field::Real ? RectMatrix::real(a.real_entries()) : RectMatrix::complex(a.entries());
}

/// Real 2n x 2n representation: each a = x + iy becomes [[x, y], [-y, x]].
/// With d_hat = (Re d_1, -Im d_1, ..., Re d_n, -Im d_n) one has
/// d* A d == d_hat^T A_hat d_hat.
inline SymMatrix hermitian_to_real(const SymMatrix& a) {
  if (a.field() != Field::Complex) throw DomainError("hermitian_to_real: complex-field matrix required");
  const int n = a.size();
  Eigen::MatrixXd r(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex z = a(i, j);
      r(2 * i, 2 * j) = z.real();
      r(2 * i, 2 * j + 1) = z.imag();
      r(2 * i + 1, 2 * j) = -z.imag();
      r(2 * i + 1, 2 * j + 1) = z.real();
    }
  return SymMatrix::real(r);
}

/// The real vector paired with a complex vector by hermitian_to_real.
inline Eigen::VectorXd realify(const Eigen::VectorXcd& d) {
  Eigen::VectorXd out(2 * d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    out(2 * i) = d(i).real();
    out(2 * i + 1) = -d(i).imag();
  }
  return out;
}

}  // namespace grothnorm
