#include "fastlat/stbc.hpp"

#include <cmath>
#include <stdexcept>

namespace fastlat {

Constellation Constellation::pam(int q) {
  if (q < 2 || q % 2 != 0) throw std::invalid_argument("pam: q must be even and >= 2");
  Constellation s;
  for (int v = -(q - 1); v <= q - 1; v += 2) s.values.push_back(static_cast<double>(v));
  return s;
}

void Constellation::validate() const {
  if (values.empty()) throw std::invalid_argument("constellation is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw std::invalid_argument("constellation has non-finite value");
    if (i > 0 && values[i] <= values[i - 1])
      throw std::invalid_argument("constellation values must be distinct and ascending");
  }
}

RMatrix CodeBasis::real_span() const {
  RMatrix span(2 * n * n, symbol_count());
  for (int i = 0; i < symbol_count(); ++i) span.set_column(i, vec_r_mat(matrices[i]));
  return span;
}

void CodeBasis::validate(double tol) const {
  if (n < 1) throw std::invalid_argument("basis: n must be positive");
  if (l < 1 || l > n * n) throw std::invalid_argument("basis: l must satisfy 1 <= l <= n^2");
  if (static_cast<int>(matrices.size()) != symbol_count())
    throw std::invalid_argument("basis: expected " + std::to_string(symbol_count()) +
                                " matrices, got " + std::to_string(matrices.size()));
  for (int i = 0; i < symbol_count(); ++i) {
    const CMatrix& a = matrices[i];
    if (a.rows() != n || a.cols() != n)
      throw std::invalid_argument("basis: matrix " + std::to_string(i + 1) + " is not " +
                                  std::to_string(n) + "x" + std::to_string(n));
    if (!a.all_finite())
      throw std::invalid_argument("basis: matrix " + std::to_string(i + 1) +
                                  " has non-finite entries");
    if (!is_invertible(a, tol))
      throw std::invalid_argument("basis: matrix " + std::to_string(i + 1) + " is singular");
  }
  // Incremental rank so the first dependent member can be named.
  RMatrix span = real_span();
  for (int i = 1; i <= symbol_count(); ++i) {
    RMatrix prefix(span.rows(), i);
    for (int r = 0; r < span.rows(); ++r)
      for (int c = 0; c < i; ++c) prefix(r, c) = span(r, c);
    if (rank_real(prefix, tol) != i)
      throw std::invalid_argument("basis: matrix " + std::to_string(i) +
                                  " is linearly dependent on its predecessors");
  }
}

CMatrix assemble(const CodeBasis& basis, const RVector& s) {
  if (static_cast<int>(s.size()) != basis.symbol_count())
    throw std::invalid_argument("assemble: symbol vector has length " +
                                std::to_string(s.size()) + ", expected " +
                                std::to_string(basis.symbol_count()));
  CMatrix x(basis.n, basis.n);
  for (int i = 0; i < basis.symbol_count(); ++i) {
    const CMatrix& a = basis.matrices[i];
    const double si = s[i];
    if (si == 0.0) continue;
    for (int r = 0; r < basis.n; ++r)
      for (int c = 0; c < basis.n; ++c) x(r, c) += si * a(r, c);
  }
  return x;
}

CodeBasis alamouti_code() {
  const cplx i(0.0, 1.0);
  CodeBasis basis;
  basis.name = "alamouti";
  basis.n = 2;
  basis.l = 2;
  basis.matrices = {
      CMatrix::identity(2),
      CMatrix{{i, 0.0}, {0.0, -i}},
      CMatrix{{0.0, -1.0}, {1.0, 0.0}},
      CMatrix{{0.0, -i}, {-i, 0.0}},
  };
  return basis;
}

namespace {

// T X(z1,z2) with X(a,b) = [[a, -b*],[b, a*]] and T = diag(1,-1).
CMatrix twisted_codeword(cplx z1, cplx z2) {
  return CMatrix{{z1, -std::conj(z2)}, {-z2, -std::conj(z1)}};
}

}  // namespace

CodeBasis silver_code() {
  const cplx i(0.0, 1.0);
  const double r7 = 1.0 / std::sqrt(7.0);
  const cplx m11 = r7 * cplx(1.0, 1.0);
  const cplx m12 = r7 * cplx(-1.0, 2.0);
  const cplx m21 = r7 * cplx(1.0, 2.0);
  const cplx m22 = r7 * cplx(1.0, -1.0);

  CodeBasis basis = alamouti_code();
  basis.name = "silver";
  basis.l = 4;
  // Basis matrices for (Re s3, Im s3, Re s4, Im s4): evaluate the twisted
  // half of the codeword at the unit coordinate vectors through M.
  basis.matrices.push_back(twisted_codeword(m11, m21));
  basis.matrices.push_back(twisted_codeword(i * m11, i * m21));
  basis.matrices.push_back(twisted_codeword(m12, m22));
  basis.matrices.push_back(twisted_codeword(i * m12, i * m22));
  return basis;
}

}  // namespace fastlat
