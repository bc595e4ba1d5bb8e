#include "fastlat/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fastlat {

CMatrix::CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("CMatrix: negative dimension");
  data_.assign(static_cast<std::size_t>(rows) * cols, cplx(0.0, 0.0));
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_)
      throw std::invalid_argument("CMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

cplx CMatrix::trace() const {
  if (!square()) throw std::invalid_argument("trace: matrix not square");
  cplx t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_sq() const {
  double s = 0.0;
  for (const cplx& z : data_) s += std::norm(z);
  return s;
}

double CMatrix::frobenius_norm() const { return std::sqrt(frobenius_sq()); }

bool CMatrix::all_finite() const {
  for (const cplx& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool CMatrix::is_zero() const {
  for (const cplx& z : data_)
    if (z.real() != 0.0 || z.imag() != 0.0) return false;
  return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix addition: size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix subtraction: size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

CMatrix CMatrix::operator-() const {
  CMatrix m = *this;
  for (cplx& z : m.data_) z = -z;
  return m;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_)
    throw std::invalid_argument("matrix product: size mismatch");
  CMatrix out(lhs.rows_, rhs.cols_);
  for (int r = 0; r < lhs.rows_; ++r) {
    for (int k = 0; k < lhs.cols_; ++k) {
      const cplx v = lhs(r, k);
      if (v == cplx(0.0, 0.0)) continue;
      for (int c = 0; c < rhs.cols_; ++c) out(r, c) += v * rhs(k, c);
    }
  }
  return out;
}

CMatrix operator*(cplx scalar, CMatrix m) {
  for (cplx& z : m.data_) z = scalar * z;
  return m;
}

bool operator==(const CMatrix& lhs, const CMatrix& rhs) {
  return lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.data_ == rhs.data_;
}

std::vector<cplx> vec_c(const CMatrix& a) {
  if (!a.square()) throw std::invalid_argument("vec_c: matrix not square");
  std::vector<cplx> v;
  v.reserve(static_cast<std::size_t>(a.rows()) * a.cols());
  for (int c = 0; c < a.cols(); ++c)
    for (int r = 0; r < a.rows(); ++r) v.push_back(a(r, c));
  return v;
}

RVector vec_r(const std::vector<cplx>& v) {
  RVector out;
  out.reserve(2 * v.size());
  for (const cplx& z : v) {
    out.push_back(z.real());
    out.push_back(z.imag());
  }
  return out;
}

RVector vec_r_mat(const CMatrix& a) { return vec_r(vec_c(a)); }

cplx herm_inner(const CMatrix& a, const CMatrix& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows())
    throw std::invalid_argument("herm_inner: size mismatch");
  cplx acc = 0.0;
  // Tr(A B*) = sum_{r,c} A(r,c) conj(B(r,c))
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) acc += a(r, c) * std::conj(b(r, c));
  return acc;
}

bool real_dot_identity_check(const CMatrix& a, const CMatrix& b, double tol) {
  const double lhs = dot(vec_r_mat(a), vec_r_mat(b));
  const double rhs = herm_inner(a, b).real();
  return std::abs(lhs - rhs) <= tol;
}

namespace {

double residual_scale(const CMatrix& a) { return std::max(1.0, a.frobenius_norm()); }

}  // namespace

bool is_hermitian(const CMatrix& a, double tol) {
  if (!a.square()) throw std::invalid_argument("is_hermitian: matrix not square");
  CMatrix res = a.adjoint() - a;
  if (tol == 0.0) return res.is_zero();
  return res.frobenius_norm() <= tol * residual_scale(a);
}

bool is_skew_hermitian(const CMatrix& a, double tol) {
  if (!a.square()) throw std::invalid_argument("is_skew_hermitian: matrix not square");
  CMatrix res = a.adjoint() + a;
  if (tol == 0.0) return res.is_zero();
  return res.frobenius_norm() <= tol * residual_scale(a);
}

CMatrix kronecker(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ar = 0; ar < a.rows(); ++ar)
    for (int ac = 0; ac < a.cols(); ++ac) {
      const cplx v = a(ar, ac);
      if (v == cplx(0.0, 0.0)) continue;
      for (int br = 0; br < b.rows(); ++br)
        for (int bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
    }
  return out;
}

cplx determinant(CMatrix a) {
  if (!a.square()) throw std::invalid_argument("determinant: matrix not square");
  const int n = a.rows();
  cplx det = 1.0;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(a(k, k));
    for (int r = k + 1; r < n; ++r) {
      const double mag = std::abs(a(r, k));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != k) {
      for (int c = k; c < n; ++c) std::swap(a(k, c), a(pivot, c));
      det = -det;
    }
    det *= a(k, k);
    for (int r = k + 1; r < n; ++r) {
      const cplx factor = a(r, k) / a(k, k);
      for (int c = k; c < n; ++c) a(r, c) -= factor * a(k, c);
    }
  }
  return det;
}

CMatrix inverse(const CMatrix& a) {
  if (!a.square()) throw std::invalid_argument("inverse: matrix not square");
  const int n = a.rows();
  CMatrix work = a;
  CMatrix inv = CMatrix::identity(n);
  const double floor = 1e-13 * std::max(1.0, a.frobenius_norm());
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(work(k, k));
    for (int r = k + 1; r < n; ++r) {
      const double mag = std::abs(work(r, k));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best <= floor) throw std::runtime_error("inverse: matrix is numerically singular");
    if (pivot != k) {
      for (int c = 0; c < n; ++c) {
        std::swap(work(k, c), work(pivot, c));
        std::swap(inv(k, c), inv(pivot, c));
      }
    }
    const cplx d = work(k, k);
    for (int c = 0; c < n; ++c) {
      work(k, c) /= d;
      inv(k, c) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == k) continue;
      const cplx factor = work(r, k);
      if (factor == cplx(0.0, 0.0)) continue;
      for (int c = 0; c < n; ++c) {
        work(r, c) -= factor * work(k, c);
        inv(r, c) -= factor * inv(k, c);
      }
    }
  }
  return inv;
}

double smallest_singular_value(const CMatrix& a) {
  if (!a.square()) throw std::invalid_argument("smallest_singular_value: matrix not square");
  const int n = a.rows();
  if (n == 0) return 0.0;
  // Cyclic Jacobi on the Hermitian Gram matrix A* A; singular values are the
  // square roots of its eigenvalues.
  CMatrix g = a.adjoint() * a;
  const double scale = std::max(1.0, g.frobenius_norm());
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(g(p, q));
    if (std::sqrt(off) <= 1e-15 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx gpq = g(p, q);
        const double r = std::abs(gpq);
        if (r <= 1e-300) continue;
        const cplx phase = gpq / r;  // g(p,q) = r * phase
        const double app = g(p, p).real();
        const double aqq = g(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                    : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary rotation U: U(p,p)=c, U(p,q)=s*phase, U(q,p)=-s*conj(phase),
        // U(q,q)=c; apply G <- U* G U.
        for (int i = 0; i < n; ++i) {
          const cplx gip = g(i, p);
          const cplx giq = g(i, q);
          g(i, p) = gip * c - giq * s * std::conj(phase);
          g(i, q) = gip * s * phase + giq * c;
        }
        for (int j = 0; j < n; ++j) {
          const cplx gpj = g(p, j);
          const cplx gqj = g(q, j);
          g(p, j) = c * gpj - s * phase * gqj;
          g(q, j) = s * std::conj(phase) * gpj + c * gqj;
        }
      }
    }
  }
  double mn = g(0, 0).real();
  for (int i = 1; i < n; ++i) mn = std::min(mn, g(i, i).real());
  return std::sqrt(std::max(0.0, mn));
}

bool is_invertible(const CMatrix& a, double tol) {
  if (!a.square()) throw std::invalid_argument("is_invertible: matrix not square");
  if (a.rows() == 0) return false;
  const double scale = a.frobenius_norm();
  if (scale == 0.0) return false;
  const double threshold = tol * scale;
  if (a.rows() <= 4) return std::abs(determinant(a)) > threshold;
  return smallest_singular_value(a) > threshold;
}

double dot(const RVector& x, const RVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double norm(const RVector& x) { return std::sqrt(dot(x, x)); }

RMatrix::RMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("RMatrix: negative dimension");
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

RMatrix RMatrix::identity(int n) {
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RMatrix RMatrix::transpose() const {
  RMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

RVector RMatrix::column(int j) const {
  RVector v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, j);
  return v;
}

void RMatrix::set_column(int j, const RVector& v) {
  if (static_cast<int>(v.size()) != rows_)
    throw std::invalid_argument("set_column: length mismatch");
  for (int r = 0; r < rows_; ++r) (*this)(r, j) = v[r];
}

double RMatrix::column_dot(int i, int j) const {
  double acc = 0.0;
  for (int r = 0; r < rows_; ++r) acc += (*this)(r, i) * (*this)(r, j);
  return acc;
}

RVector RMatrix::transpose_times(const RVector& v) const {
  if (static_cast<int>(v.size()) != rows_)
    throw std::invalid_argument("transpose_times: length mismatch");
  RVector out(cols_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    const double x = v[r];
    if (x == 0.0) continue;
    for (int c = 0; c < cols_; ++c) out[c] += (*this)(r, c) * x;
  }
  return out;
}

double RMatrix::frobenius_sq() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return s;
}

double RMatrix::frobenius_norm() const { return std::sqrt(frobenius_sq()); }

bool RMatrix::all_finite() const {
  for (double x : data_)
    if (!std::isfinite(x)) return false;
  return true;
}

RMatrix operator*(const RMatrix& lhs, const RMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_)
    throw std::invalid_argument("real matrix product: size mismatch");
  RMatrix out(lhs.rows_, rhs.cols_);
  for (int r = 0; r < lhs.rows_; ++r)
    for (int k = 0; k < lhs.cols_; ++k) {
      const double v = lhs(r, k);
      if (v == 0.0) continue;
      for (int c = 0; c < rhs.cols_; ++c) out(r, c) += v * rhs(k, c);
    }
  return out;
}

int rank_real(RMatrix m, double rel_tol) {
  const int rows = m.rows();
  const int cols = m.cols();
  const double threshold = rel_tol * std::max(1.0, m.frobenius_norm());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = rank;
    double best = std::abs(m(rank, c));
    for (int r = rank + 1; r < rows; ++r) {
      const double mag = std::abs(m(r, c));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best <= threshold) continue;
    if (pivot != rank)
      for (int j = c; j < cols; ++j) std::swap(m(rank, j), m(pivot, j));
    for (int r = rank + 1; r < rows; ++r) {
      const double factor = m(r, c) / m(rank, c);
      if (factor == 0.0) continue;
      for (int j = c; j < cols; ++j) m(r, j) -= factor * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

}  // namespace fastlat
