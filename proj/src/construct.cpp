#include "fastlat/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fastlat/rng.hpp"

namespace fastlat {

void AlgebraParams::validate() const {
  if (degree < 1 || index < 1) throw std::invalid_argument("algebra: degree and index must be positive");
  if (degree % index != 0) throw std::invalid_argument("algebra: index must divide degree");
  if (division && index != degree)
    throw std::invalid_argument("algebra: a division algebra has index equal to degree");
}

int nu2(long long m) {
  if (m < 1) throw std::invalid_argument("nu2: argument must be >= 1");
  int t = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++t;
  }
  return t;
}

std::pair<CMatrix, CMatrix> h_matrices() {
  CMatrix h1{{1.0, 0.0}, {0.0, -1.0}};
  CMatrix hm1{{0.0, -1.0}, {1.0, 0.0}};
  return {h1, hm1};
}

namespace {

CMatrix kron_power(const CMatrix& m, int t) {
  CMatrix out = CMatrix::identity(1);
  for (int i = 0; i < t; ++i) out = kronecker(out, m);
  return out;
}

}  // namespace

AnticommutingFamily u_family(int ell) {
  if (ell < 1) throw std::invalid_argument("u_family: ell must be >= 1");
  const auto [h1, hm1] = h_matrices();
  const CMatrix h1hm1 = h1 * hm1;
  const CMatrix i2 = CMatrix::identity(2);

  AnticommutingFamily family;
  family.dimension = 1 << ell;
  family.exact = true;
  for (int p = 1; p <= ell; ++p) {
    const CMatrix prefix = kron_power(h1, p - 1);
    const CMatrix suffix = kron_power(i2, ell - p);
    family.members.push_back(kronecker(kronecker(prefix, h1hm1), suffix));
    family.members.push_back(kronecker(kronecker(prefix, hm1), suffix));
  }
  return family;
}

std::array<CMatrix, 4> quaternion_basis_4x4(double a, double b) {
  if (a == 0.0 || b == 0.0)
    throw std::invalid_argument("quaternion_basis_4x4: parameters must be nonzero");
  const double ab = a * b;
  CMatrix e{{0.0, a, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, a}, {0.0, 0.0, 1.0, 0.0}};
  CMatrix f{{0.0, 0.0, b, 0.0}, {0.0, 0.0, 0.0, -b}, {1.0, 0.0, 0.0, 0.0}, {0.0, -1.0, 0.0, 0.0}};
  CMatrix ef{{0.0, 0.0, 0.0, -ab}, {0.0, 0.0, b, 0.0}, {0.0, -a, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}};

  // The defining relations hold exactly in double arithmetic: every product
  // entry is a single rounded multiply shared by both sides.
  const CMatrix i4 = CMatrix::identity(4);
  if (!(e * e == cplx(a) * i4) || !(f * f == cplx(b) * i4))
    throw std::logic_error("quaternion_basis_4x4: square relations failed");
  if (!(e * f == ef) || !((f * e + ef).is_zero()))
    throw std::logic_error("quaternion_basis_4x4: anticommutation relations failed");
  return {i4, e, f, ef};
}

std::array<CMatrix, 3> quaternion_complex_rep() {
  const cplx i(0.0, 1.0);
  const auto [h1, hm1] = h_matrices();
  const CMatrix ih1 = i * h1;
  return {ih1, hm1, ih1 * hm1};
}

AnticommutingFamily anticommuting_family(int ell) {
  if (ell < 0) throw std::invalid_argument("anticommuting_family: ell must be >= 0");
  const CMatrix i2 = CMatrix::identity(2);

  AnticommutingFamily family;
  family.dimension = 1 << (ell + 1);
  family.exact = true;

  CMatrix u_product = CMatrix::identity(1 << ell);
  if (ell >= 1) {
    const AnticommutingFamily base = u_family(ell);
    for (const CMatrix& u : base.members) {
      family.members.push_back(kronecker(u, i2));
      u_product = u_product * u;
    }
  }
  for (const CMatrix& m : quaternion_complex_rep())
    family.members.push_back(kronecker(u_product, m));

  if (!pairwise_anticommuting_exact(family.members))
    throw std::logic_error("anticommuting_family: verification failed");
  return family;
}

std::vector<CMatrix> mutually_orthogonal_family(int ell) {
  if (ell < 0) throw std::invalid_argument("mutually_orthogonal_family: ell must be >= 0");
  const cplx i(0.0, 1.0);
  const CMatrix i2 = CMatrix::identity(2);
  const CMatrix ii2 = i * i2;

  std::vector<CMatrix> out;
  out.push_back(CMatrix::identity(1 << (ell + 1)));

  CMatrix u_product = CMatrix::identity(1 << ell);
  if (ell >= 1) {
    const AnticommutingFamily base = u_family(ell);
    for (int p = 0; p < base.size(); p += 2) {
      // Odd-indexed members are symmetric; rotating them by i makes the
      // whole family skew-Hermitian without breaking anticommutation.
      out.push_back(kronecker(i * base.members[p], i2));
      out.push_back(kronecker(base.members[p + 1], i2));
      u_product = u_product * base.members[p] * base.members[p + 1];
    }
  }
  const auto [h1, hm1] = h_matrices();
  out.push_back(kronecker(u_product, i * h1));
  out.push_back(kronecker(u_product, hm1));
  out.push_back(kronecker(u_product, i * (h1 * hm1)));

  for (std::size_t k = 1; k < out.size(); ++k) {
    if (!is_skew_hermitian(out[k], 0.0))
      throw std::logic_error("mutually_orthogonal_family: member is not skew-Hermitian");
  }
  if (!pairwise_mutually_orthogonal_exact(out))
    throw std::logic_error("mutually_orthogonal_family: verification failed");
  return out;
}

int anticommute_bound(const AlgebraParams& params, bool odd) {
  params.validate();
  const int t = nu2(params.degree / params.index);
  return 2 * t + (odd ? 3 : 2);
}

BoundReport mo_group_bound(int n, const std::optional<AlgebraParams>& params) {
  if (n < 1) throw std::invalid_argument("mo_group_bound: n must be positive");
  BoundReport report;
  report.n = n;
  report.nu2_n = nu2(n);
  report.g_general = std::min(n * n, 2 * report.nu2_n + 4);
  report.hre = 2 * report.nu2_n + 1;

  int t = report.nu2_n;  // matrices over M_n embed with degree n, index 1
  if (params) {
    params->validate();
    report.algebra = params;
    t = nu2(params->degree / params->index);
    report.context = params->division
                         ? "division algebra of degree " + std::to_string(params->degree)
                         : "central simple algebra (degree " + std::to_string(params->degree) +
                               ", index " + std::to_string(params->index) + ")";
  } else {
    report.context = "full matrix algebra, dimension " + std::to_string(n);
  }
  report.r_even = 2 * t + 2;
  report.r_odd = 2 * t + 3;
  report.g_odd = report.r_even + 1;
  report.g_even = report.r_odd + 1;
  report.g_max = std::min(report.g_general, report.g_even);
  return report;
}

int hre_bound(long long n) { return 2 * nu2(n) + 1; }

AnticommutingFamily hre_family(int t) {
  if (t < 0) throw std::invalid_argument("hre_family: t must be >= 0");
  const cplx i(0.0, 1.0);

  AnticommutingFamily family;
  family.dimension = 1 << t;
  family.exact = true;

  CMatrix u_product = CMatrix::identity(1 << t);
  if (t >= 1) {
    const AnticommutingFamily base = u_family(t);
    for (int p = 0; p < base.size(); p += 2) {
      family.members.push_back(i * base.members[p]);  // symmetric, square +I
      family.members.push_back(base.members[p + 1]);  // skew-symmetric, square -I
      u_product = u_product * base.members[p] * base.members[p + 1];
    }
  }
  family.members.push_back(i * u_product);

  for (const CMatrix& m : family.members) {
    if (!squares_to_minus_identity_exact(m) || !unitary_exact(m))
      throw std::logic_error("hre_family: member verification failed");
  }
  if (!pairwise_anticommuting_exact(family.members))
    throw std::logic_error("hre_family: anticommutation verification failed");
  return family;
}

bool pairwise_anticommuting_exact(const std::vector<CMatrix>& members) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!(members[i] * members[j] + members[j] * members[i]).is_zero()) return false;
  return true;
}

bool pairwise_mutually_orthogonal_exact(const std::vector<CMatrix>& members) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!(members[i] * members[j].adjoint() + members[j] * members[i].adjoint()).is_zero())
        return false;
  return true;
}

bool squares_to_minus_identity_exact(const CMatrix& m) {
  return (m * m + CMatrix::identity(m.rows())).is_zero();
}

bool squares_to_plus_or_minus_identity_exact(const CMatrix& m) {
  const CMatrix sq = m * m;
  const CMatrix id = CMatrix::identity(m.rows());
  return (sq - id).is_zero() || (sq + id).is_zero();
}

bool unitary_exact(const CMatrix& m) {
  return (m * m.adjoint() - CMatrix::identity(m.rows())).is_zero();
}

OddDegreeScan odd_degree_scan(int n, int trials, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("odd_degree_scan: n must be positive");
  if (trials < 1) throw std::invalid_argument("odd_degree_scan: trials must be positive");

  OddDegreeScan scan;
  scan.dimension = n;
  scan.min_scaled_residual = std::numeric_limits<double>::infinity();

  for (int trial = 0; trial < trials; ++trial) {
    Xoshiro256pp rng(derive_stream(seed, trial));
    auto draw_invertible = [&]() {
      for (;;) {
        CMatrix m(n, n);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) m(r, c) = cplx(rng.gaussian(), rng.gaussian());
        if (is_invertible(m)) return m;
      }
    };
    const CMatrix a = draw_invertible();
    const CMatrix b = draw_invertible();
    const CMatrix anti = a * b + b * a;
    const double residual =
        anti.frobenius_norm() / std::max(1.0, a.frobenius_norm() * b.frobenius_norm());
    scan.min_scaled_residual = std::min(scan.min_scaled_residual, residual);
    ++scan.pairs_tested;
    // For odd n an invertible anticommuting pair would force
    // det(AB) = det(-BA) = (-1)^n det(AB) = -det(AB), i.e. det(AB) = 0.
    if (residual <= kDefaultTol) ++scan.anticommuting_found;
  }
  return scan;
}

}  // namespace fastlat
