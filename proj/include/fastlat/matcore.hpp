#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace fastlat {

using cplx = std::complex<double>;
using RVector = std::vector<double>;

/// Default relative tolerance for structural predicates, measured against the
/// Frobenius norm of the inputs. Passing tol = 0 selects the exact path:
/// residues are compared bit-for-bit against zero, which is meaningful for
/// matrices with small integer or Gaussian-integer entries (their sums and
/// products are exactly representable in double precision).
inline constexpr double kDefaultTol = 1e-9;

/// Dense complex matrix, row-major, double precision entries.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const cplx& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  CMatrix adjoint() const;    // conjugate transpose
  CMatrix transpose() const;
  cplx trace() const;
  double frobenius_sq() const;
  double frobenius_norm() const;
  bool all_finite() const;
  bool is_zero() const;       // exact entrywise comparison against 0

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix operator-() const;

  friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
  friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
  friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
  friend CMatrix operator*(cplx scalar, CMatrix m);
  friend bool operator==(const CMatrix& lhs, const CMatrix& rhs);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

/// Column-major stacking of a square matrix into a complex vector
/// (column 1, then column 2, ...). The column order is fixed so that
/// serialized vectorizations are reproducible.
std::vector<cplx> vec_c(const CMatrix& a);

/// Interleaved real/imaginary split: (Re v1, Im v1, Re v2, Im v2, ...).
RVector vec_r(const std::vector<cplx>& v);

/// vec_r applied to the column-major stacking of a square matrix.
RVector vec_r_mat(const CMatrix& a);

/// Hermitian inner product of the stacked matrices: Tr(A B*).
cplx herm_inner(const CMatrix& a, const CMatrix& b);

/// Checks vec_r(A) . vec_r(B) == Re Tr(A B*) within tol (absolute).
bool real_dot_identity_check(const CMatrix& a, const CMatrix& b, double tol);

bool is_hermitian(const CMatrix& a, double tol = kDefaultTol);
bool is_skew_hermitian(const CMatrix& a, double tol = kDefaultTol);

CMatrix kronecker(const CMatrix& a, const CMatrix& b);

/// True when the smallest singular value (|det| for n <= 4) exceeds
/// tol * ||A||_F.
bool is_invertible(const CMatrix& a, double tol = kDefaultTol);

cplx determinant(CMatrix a);
CMatrix inverse(const CMatrix& a);               // throws on singular input
double smallest_singular_value(const CMatrix& a);

double dot(const RVector& x, const RVector& y);
double norm(const RVector& x);

/// Dense real matrix, row-major.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(int rows, int cols);

  static RMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  RMatrix transpose() const;
  RVector column(int j) const;
  void set_column(int j, const RVector& v);
  double column_dot(int i, int j) const;
  RVector transpose_times(const RVector& v) const;  // M^t v
  double frobenius_sq() const;
  double frobenius_norm() const;
  bool all_finite() const;

  friend RMatrix operator*(const RMatrix& lhs, const RMatrix& rhs);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Rank via Gaussian elimination with partial pivoting; pivots below
/// rel_tol * ||M||_F are treated as zero.
int rank_real(RMatrix m, double rel_tol = kDefaultTol);

}  // namespace fastlat
