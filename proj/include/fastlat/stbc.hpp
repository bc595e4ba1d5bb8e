#pragma once

#include <string>

#include "fastlat/matcore.hpp"

namespace fastlat {

/// Effective real signal alphabet: a finite set of distinct reals, sorted
/// ascending.
struct Constellation {
  std::vector<double> values;

  /// q-PAM alphabet {-(q-1), ..., -3, -1, 1, 3, ..., q-1} for even q.
  static Constellation pam(int q);

  int size() const { return static_cast<int>(values.size()); }
  void validate() const;  // distinct, finite, ascending, nonempty
};

/// A linear space-time block code X(s) = sum_i s_i A_i with 2l real symbols.
/// The A_i are n x n, invertible, and linearly independent over the reals.
struct CodeBasis {
  std::string name;
  int n = 0;  // matrix size / antenna count
  int l = 0;  // complex symbol count, l <= n^2
  std::vector<CMatrix> matrices;

  int symbol_count() const { return 2 * l; }

  /// 2n^2 x 2l real matrix whose column i is vec_r_mat(A_i).
  RMatrix real_span() const;

  /// Throws std::invalid_argument naming the offending (1-based) matrix
  /// index when a member is singular or the family is linearly dependent.
  void validate(double tol = kDefaultTol) const;
};

/// X = sum s_i A_i. `s` must have length 2l.
CMatrix assemble(const CodeBasis& basis, const RVector& s);

/// Rate-1 orthogonal 2x2 code. Real-symbol convention: s = (Re a, Im a,
/// Re b, Im b) for codewords [[a, -b*],[b, a*]] (second complex symbol
/// conjugate-flipped so that the basis matches the standard quaternion
/// units I, diag(i,-i), [[0,-1],[1,0]], [[0,-i],[-i,0]]).
CodeBasis alamouti_code();

/// Full-rate 2x2 code X(s1,s2) + T X(z1,z2) with T = diag(1,-1) and
/// (z1,z2)^t = M (s3,s4)^t for the unimodular twist
/// M = (1/sqrt 7) [[1+i, -1+2i],[1+2i, 1-i]]. Eight real basis matrices;
/// the first four equal alamouti_code().
CodeBasis silver_code();

}  // namespace fastlat
