#include <doctest.h>

#include <cmath>

#include "fastlat/matcore.hpp"
#include "fastlat/rng.hpp"

using namespace fastlat;

namespace {

const cplx kI(0.0, 1.0);

CMatrix random_matrix(int n, Xoshiro256pp& rng) {
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = cplx(rng.gaussian(), rng.gaussian());
  return m;
}

// Reference inner product computed entrywise, independent of herm_inner's
// trace formulation.
cplx stacked_inner(const CMatrix& a, const CMatrix& b) {
  const auto va = vec_c(a);
  const auto vb = vec_c(b);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < va.size(); ++k) acc += va[k] * std::conj(vb[k]);
  return acc;
}

}  // namespace

TEST_CASE("vec_c stacks columns in order") {
  const CMatrix a{{1.0, kI}, {0.0, 2.0}};
  const auto v = vec_c(a);
  REQUIRE(v.size() == 4);
  CHECK(v[0] == cplx(1.0));
  CHECK(v[1] == cplx(0.0));
  CHECK(v[2] == kI);
  CHECK(v[3] == cplx(2.0));

  const auto id = vec_c(CMatrix::identity(2));
  CHECK(id == std::vector<cplx>{1.0, 0.0, 0.0, 1.0});

  const auto zero = vec_c(CMatrix(3, 3));
  CHECK(zero == std::vector<cplx>(9, cplx(0.0)));

  CHECK_THROWS_AS(vec_c(CMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("vec_r interleaves real and imaginary parts") {
  CHECK(vec_r({cplx(1.0, 2.0), cplx(3.0, -1.0)}) == RVector{1.0, 2.0, 3.0, -1.0});
  CHECK(vec_r({cplx(0.0)}) == RVector{0.0, 0.0});
  CHECK(vec_r({kI}) == RVector{0.0, 1.0});
}

TEST_CASE("herm_inner is the trace form of the stacked inner product") {
  CHECK(herm_inner(CMatrix::identity(2), CMatrix::identity(2)) == cplx(2.0));

  const CMatrix a1{{kI, 0.0}, {0.0, -kI}};
  const CMatrix a2{{0.0, -1.0}, {1.0, 0.0}};
  CHECK(herm_inner(a1, a2) == cplx(0.0));

  Xoshiro256pp rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = random_matrix(3, rng);
    const CMatrix b = random_matrix(3, rng);
    const cplx lhs = herm_inner(a, b);
    CHECK(std::abs(lhs - stacked_inner(a, b)) < 1e-12);
    CHECK(std::abs(lhs - std::conj(herm_inner(b, a))) < 1e-12);
  }

  CHECK_THROWS_AS(herm_inner(CMatrix::identity(2), CMatrix::identity(3)),
                  std::invalid_argument);
}

TEST_CASE("real dot of stacked vectors equals the real trace form") {
  CHECK(real_dot_identity_check(CMatrix::identity(2), CMatrix::identity(2), 1e-12));
  CHECK(real_dot_identity_check(kI * CMatrix::identity(2), CMatrix::identity(2), 1e-12));

  Xoshiro256pp rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = random_matrix(2, rng);
    const CMatrix b = random_matrix(2, rng);
    CHECK(real_dot_identity_check(a, b, 1e-12));
  }
}

TEST_CASE("real dot identity holds at 1e-10 relative across sizes") {
  Xoshiro256pp rng(13);
  for (int n : {2, 3, 4}) {
    for (int trial = 0; trial < 334; ++trial) {
      const CMatrix a = random_matrix(n, rng);
      const CMatrix b = random_matrix(n, rng);
      const double lhs = dot(vec_r_mat(a), vec_r_mat(b));
      const double rhs = herm_inner(a, b).real();
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("hermitian and skew-hermitian predicates") {
  for (int n : {1, 2, 3}) {
    CHECK(is_skew_hermitian(kI * CMatrix::identity(n)));
    CHECK_FALSE(is_hermitian(kI * CMatrix::identity(n)));
  }
  const CMatrix rot{{0.0, -1.0}, {1.0, 0.0}};
  CHECK(is_skew_hermitian(rot));
  CHECK_FALSE(is_hermitian(rot));
  CHECK(is_hermitian(CMatrix(2, 2)));
  CHECK(is_skew_hermitian(CMatrix(2, 2)));
  // exact path
  CHECK(is_skew_hermitian(rot, 0.0));
}

TEST_CASE("every matrix splits into hermitian plus skew-hermitian parts") {
  Xoshiro256pp rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const CMatrix a = random_matrix(3, rng);
    const CMatrix herm = cplx(0.5) * (a + a.adjoint());
    const CMatrix skew = cplx(0.5) * (a - a.adjoint());
    CHECK(is_hermitian(herm, 1e-12));
    CHECK(is_skew_hermitian(skew, 1e-12));
    CHECK((herm + skew - a).frobenius_norm() <= 1e-12 * std::max(1.0, a.frobenius_norm()));
  }
}

TEST_CASE("kronecker product") {
  const CMatrix h1{{1.0, 0.0}, {0.0, -1.0}};
  const CMatrix expanded = kronecker(h1, CMatrix::identity(2));
  const CMatrix expected{{1.0, 0.0, 0.0, 0.0},
                         {0.0, 1.0, 0.0, 0.0},
                         {0.0, 0.0, -1.0, 0.0},
                         {0.0, 0.0, 0.0, -1.0}};
  CHECK(expanded == expected);

  Xoshiro256pp rng(15);
  const CMatrix a = random_matrix(2, rng);
  CHECK(kronecker(a, CMatrix::identity(1)) == a);

  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix p = random_matrix(2, rng);
    const CMatrix q = random_matrix(2, rng);
    const CMatrix r = random_matrix(2, rng);
    const CMatrix s = random_matrix(2, rng);
    const CMatrix lhs = kronecker(p, q) * kronecker(r, s);
    const CMatrix rhs = kronecker(p * r, q * s);
    CHECK((lhs - rhs).frobenius_norm() <= 1e-12 * std::max(1.0, rhs.frobenius_norm()));
    // associativity
    const CMatrix left = kronecker(kronecker(p, q), r);
    const CMatrix right = kronecker(p, kronecker(q, r));
    CHECK((left - right).frobenius_norm() <= 1e-12 * std::max(1.0, right.frobenius_norm()));
  }
}

TEST_CASE("invertibility predicate") {
  CHECK(is_invertible(CMatrix::identity(3)));
  CHECK_FALSE(is_invertible(CMatrix(3, 3)));
  CHECK_FALSE(is_invertible(CMatrix{{1.0, 1.0}, {1.0, 1.0}}));
}

TEST_CASE("determinant and inverse") {
  const CMatrix a{{cplx(1.0, 1.0), 2.0}, {0.0, cplx(0.0, 3.0)}};
  CHECK(std::abs(determinant(a) - cplx(1.0, 1.0) * cplx(0.0, 3.0)) < 1e-14);

  Xoshiro256pp rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix m = random_matrix(4, rng);
    if (!is_invertible(m)) continue;
    const CMatrix prod = inverse(m) * m;
    CHECK((prod - CMatrix::identity(4)).frobenius_norm() < 1e-10);
  }
  CHECK_THROWS_AS(inverse(CMatrix(2, 2)), std::runtime_error);
}

TEST_CASE("smallest singular value matches construction") {
  // Matrices with known singular values: D scaled by unitary rotations.
  Xoshiro256pp rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3;
    // Build unitaries from QR-like normalization of random matrices via
    // Gram-Schmidt on columns.
    auto unitary = [&rng](int dim) {
      CMatrix m(dim, dim);
      for (int c = 0; c < dim; ++c) {
        RVector dummy;
        for (;;) {
          for (int r = 0; r < dim; ++r) m(r, c) = cplx(rng.gaussian(), rng.gaussian());
          for (int prev = 0; prev < c; ++prev) {
            cplx proj = 0.0;
            for (int r = 0; r < dim; ++r) proj += m(r, c) * std::conj(m(r, prev));
            for (int r = 0; r < dim; ++r) m(r, c) -= proj * m(r, prev);
          }
          double nrm = 0.0;
          for (int r = 0; r < dim; ++r) nrm += std::norm(m(r, c));
          nrm = std::sqrt(nrm);
          if (nrm > 1e-6) {
            for (int r = 0; r < dim; ++r) m(r, c) /= nrm;
            break;
          }
        }
      }
      return m;
    };
    const CMatrix u = unitary(n);
    const CMatrix v = unitary(n);
    CMatrix d(n, n);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 0.25;
    const CMatrix a = u * d * v.adjoint();
    CHECK(smallest_singular_value(a) == doctest::Approx(0.25).epsilon(1e-8));
  }
  CHECK(smallest_singular_value(CMatrix::identity(5)) == doctest::Approx(1.0));
}

TEST_CASE("real matrix rank") {
  RMatrix m(4, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 2.0;
  m(2, 2) = 3.0;
  CHECK(rank_real(m) == 3);
  m(2, 2) = 0.0;
  CHECK(rank_real(m) == 2);

  RMatrix dup(4, 2);
  for (int r = 0; r < 4; ++r) {
    dup(r, 0) = r + 1.0;
    dup(r, 1) = 2.0 * (r + 1.0);
  }
  CHECK(rank_real(dup) == 1);
}
