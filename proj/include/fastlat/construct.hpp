#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "fastlat/matcore.hpp"

namespace fastlat {

/// A family of invertible matrices with u_i u_j + u_j u_i = 0 for i != j.
/// `exact` marks integer / Gaussian-integer entries, verified with zero
/// tolerance.
struct AnticommutingFamily {
  int dimension = 0;
  std::vector<CMatrix> members;
  bool exact = true;

  int size() const { return static_cast<int>(members.size()); }
};

/// Parameters of the matrix algebra the basis matrices are drawn from.
/// `degree` and `index` are taken as trusted input; the index of an algebra
/// is not computed here.
struct AlgebraParams {
  int degree = 0;
  int index = 0;
  bool division = false;

  void validate() const;  // index | degree; division implies index == degree
};

/// Upper bounds on anticommuting-family sizes and mutual-orthogonality group
/// counts for dimension n, optionally constrained by algebra parameters.
struct BoundReport {
  std::string context;
  int n = 0;
  int nu2_n = 0;
  int r_even = 0;     // max even anticommuting-family size
  int r_odd = 0;      // max odd anticommuting-family size
  int g_even = 0;     // max even group count (= r_odd + 1)
  int g_odd = 0;      // max odd group count (= r_even + 1)
  int g_general = 0;  // min(n^2, 2 nu2(n) + 4)
  int hre = 0;        // 2 nu2(n) + 1
  int g_max = 0;      // headline group bound after all constraints
  std::optional<AlgebraParams> algebra;
};

/// 2-adic valuation: the largest t with 2^t | m. Requires m >= 1.
int nu2(long long m);

/// The 2x2 generators H_1 = diag(1,-1) and H_-1 = [[0,-1],[1,0]];
/// H_1 H_-1 = -H_-1 H_1.
std::pair<CMatrix, CMatrix> h_matrices();

/// 2*ell pairwise-anticommuting invertible matrices in dimension 2^ell:
/// U_{2p-1} = H_1^{(x)(p-1)} (x) H_1 H_-1 (x) I_2^{(x)(ell-p)} and
/// U_{2p} with H_-1 in place of H_1 H_-1. Odd members are symmetric, even
/// members skew-symmetric, and the full product U_1...U_{2 ell} symmetric.
AnticommutingFamily u_family(int ell);

/// The 4x4 regular representation of the quaternion algebra (a, b):
/// returns {I, e, f, ef} with e^2 = a I, f^2 = b I, f e = -e f.
std::array<CMatrix, 4> quaternion_basis_4x4(double a, double b);

/// 2x2 complex representation of the generators of (-1,-1):
/// {i H_1, H_-1, i H_1 H_-1}, each squaring to -I and pairwise
/// anticommuting; i H_1 H_-1 is skew-Hermitian.
std::array<CMatrix, 3> quaternion_complex_rep();

/// 2*ell + 3 pairwise-anticommuting invertible matrices in dimension
/// 2^(ell+1): U_p (x) I_2 together with (U_1...U_{2 ell}) (x) m for the
/// three quaternion generators m. Saturates the anticommuting bound for
/// degree 2^(ell+1), index 2.
AnticommutingFamily anticommuting_family(int ell);

/// 2*ell + 4 pairwise mutually orthogonal matrices in dimension 2^(ell+1):
/// the identity plus 2*ell + 3 skew-Hermitian pairwise-anticommuting
/// members (the symmetric ones from the anticommuting family rotated by i).
std::vector<CMatrix> mutually_orthogonal_family(int ell);

/// r <= 2 nu2(deg/ind) + 2 for even family sizes, + 3 for odd ones; for a
/// division algebra (deg = ind) this is 2 and 3.
int anticommute_bound(const AlgebraParams& params, bool odd);

BoundReport mo_group_bound(int n, const std::optional<AlgebraParams>& params = std::nullopt);

/// Largest count of unitary, square -I, pairwise-anticommuting n x n
/// complex matrices: 2 nu2(n) + 1.
int hre_bound(long long n);

/// A family of 2t + 1 such matrices in dimension 2^t, built from u_family(t)
/// by rotating the symmetric members by i and appending i U_1...U_{2t}.
AnticommutingFamily hre_family(int t);

// Exact verification helpers (zero-tolerance equality on the entries).
bool pairwise_anticommuting_exact(const std::vector<CMatrix>& members);
bool pairwise_mutually_orthogonal_exact(const std::vector<CMatrix>& members);
bool squares_to_minus_identity_exact(const CMatrix& m);
bool squares_to_plus_or_minus_identity_exact(const CMatrix& m);
bool unitary_exact(const CMatrix& m);

struct OddDegreeScan {
  int dimension = 0;
  int pairs_tested = 0;
  int anticommuting_found = 0;  // must stay 0 in odd dimension
  double min_scaled_residual = 0.0;
};

/// Samples invertible pairs and counts those whose anticommutator vanishes.
/// In odd dimension no invertible pair can anticommute (det(AB) would have
/// to equal -det(AB)), so a nonzero count flags an implementation bug.
OddDegreeScan odd_degree_scan(int n, int trials, std::uint64_t seed);

}  // namespace fastlat
