#include <doctest.h>

#include <cmath>

#include "fastlat/construct.hpp"
#include "fastlat/mograph.hpp"
#include "fastlat/stbc.hpp"

using namespace fastlat;

namespace {
const cplx kI(0.0, 1.0);
}

TEST_CASE("2-adic valuation") {
  CHECK(nu2(1) == 0);
  CHECK(nu2(4) == 2);
  CHECK(nu2(12) == 2);
  CHECK(nu2(96) == 5);
  CHECK_THROWS_AS(nu2(0), std::invalid_argument);
}

TEST_CASE("generator pair") {
  const auto [h1, hm1] = h_matrices();
  CHECK(h1 == CMatrix{{1.0, 0.0}, {0.0, -1.0}});
  CHECK(hm1 == CMatrix{{0.0, -1.0}, {1.0, 0.0}});
  CHECK(h1 * h1 == CMatrix::identity(2));
  CHECK((hm1 * hm1 + CMatrix::identity(2)).is_zero());
  CHECK((h1 * hm1 + hm1 * h1).is_zero());
}

TEST_CASE("u-family construction") {
  const AnticommutingFamily f1 = u_family(1);
  REQUIRE(f1.size() == 2);
  CHECK(f1.dimension == 2);
  CHECK(f1.members[0] == CMatrix{{0.0, -1.0}, {-1.0, 0.0}});
  CHECK(f1.members[1] == CMatrix{{0.0, -1.0}, {1.0, 0.0}});
  CHECK((f1.members[0] * f1.members[1] + f1.members[1] * f1.members[0]).is_zero());

  const AnticommutingFamily f3 = u_family(3);
  CHECK(f3.size() == 6);
  CHECK(f3.dimension == 8);
  CHECK(pairwise_anticommuting_exact(f3.members));

  CHECK_THROWS_AS(u_family(0), std::invalid_argument);
}

TEST_CASE("u-family symmetry pattern") {
  for (int ell = 1; ell <= 4; ++ell) {
    const AnticommutingFamily fam = u_family(ell);
    CMatrix product = CMatrix::identity(fam.dimension);
    for (int p = 0; p < fam.size(); ++p) {
      const CMatrix& u = fam.members[p];
      if (p % 2 == 0)
        CHECK(u.transpose() == u);  // odd-position members are symmetric
      else
        CHECK((u.transpose() + u).is_zero());  // even-position members skew
      CHECK(squares_to_plus_or_minus_identity_exact(u));
      product = product * u;
    }
    CHECK(product.transpose() == product);
  }
}

TEST_CASE("4x4 quaternion representation") {
  const auto [i4, e, f, ef] = quaternion_basis_4x4(-1.0, -1.0);
  CHECK(i4 == CMatrix::identity(4));
  CHECK((e * e + CMatrix::identity(4)).is_zero());
  CHECK((f * f + CMatrix::identity(4)).is_zero());
  CHECK(e * f == ef);
  CHECK((f * e + ef).is_zero());

  const auto [i4b, e2, f2, ef2] = quaternion_basis_4x4(1.0, 1.0);
  CHECK(e2 * e2 == CMatrix::identity(4));

  // rational generic parameters, independence over the rationals
  const auto [i4c, e3, f3, ef3] = quaternion_basis_4x4(2.5, -0.75);
  RMatrix span(32, 4);
  const CMatrix members[4] = {i4c, e3, f3, ef3};
  for (int c = 0; c < 4; ++c) span.set_column(c, vec_r_mat(members[c]));
  CHECK(rank_real(span) == 4);

  CHECK_THROWS_AS(quaternion_basis_4x4(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("2x2 complex quaternion representation") {
  const auto [ih1, hm1, ih1hm1] = quaternion_complex_rep();
  CHECK((ih1 * ih1 + CMatrix::identity(2)).is_zero());
  CHECK((hm1 * hm1 + CMatrix::identity(2)).is_zero());
  CHECK((ih1 * hm1 + hm1 * ih1).is_zero());
  CHECK(is_skew_hermitian(ih1hm1, 0.0));
  CHECK(ih1hm1 == CMatrix{{0.0, -kI}, {-kI, 0.0}});

  // coincides with the non-identity alamouti units
  const CodeBasis alamouti = alamouti_code();
  CHECK(ih1 == alamouti.matrices[1]);
  CHECK(hm1 == alamouti.matrices[2]);
  CHECK(ih1hm1 == alamouti.matrices[3]);
}

TEST_CASE("anticommuting families saturate the algebra bound") {
  const AnticommutingFamily f0 = anticommuting_family(0);
  REQUIRE(f0.size() == 3);
  const auto rep = quaternion_complex_rep();
  for (int k = 0; k < 3; ++k) CHECK(f0.members[k] == rep[k]);

  const AnticommutingFamily f2 = anticommuting_family(2);
  CHECK(f2.size() == 7);
  CHECK(f2.dimension == 8);
  CHECK(pairwise_anticommuting_exact(f2.members));
  for (const CMatrix& m : f2.members) CHECK(squares_to_plus_or_minus_identity_exact(m));

  for (int ell = 0; ell <= 4; ++ell) {
    const AnticommutingFamily fam = anticommuting_family(ell);
    const AlgebraParams params{1 << (ell + 1), 2, false};
    CHECK(fam.size() == anticommute_bound(params, /*odd=*/true));
  }
}

TEST_CASE("mutually orthogonal families") {
  const auto f0 = mutually_orthogonal_family(0);
  REQUIRE(f0.size() == 4);
  const CodeBasis alamouti = alamouti_code();
  for (int k = 0; k < 4; ++k) CHECK(f0[k] == alamouti.matrices[k]);

  const auto f1 = mutually_orthogonal_family(1);
  CHECK(f1.size() == 6);
  CHECK(f1.front().rows() == 4);
  CHECK(pairwise_mutually_orthogonal_exact(f1));
  for (std::size_t k = 1; k < f1.size(); ++k) CHECK(is_skew_hermitian(f1[k], 0.0));

  // members are linearly independent over the reals
  RMatrix span(2 * 16, static_cast<int>(f1.size()));
  for (std::size_t c = 0; c < f1.size(); ++c)
    span.set_column(static_cast<int>(c), vec_r_mat(f1[c]));
  CHECK(rank_real(span) == static_cast<int>(f1.size()));

  // the family normalizes cleanly (identity leads, so this is the family tail)
  const auto normalized = normalize_to_anticommuting(f1, 0.0);
  CHECK(normalized.size() == f1.size() - 1);
}

TEST_CASE("anticommuting bound formula") {
  CHECK(anticommute_bound({8, 2, false}, /*odd=*/true) == 7);
  CHECK(anticommute_bound({6, 6, true}, /*odd=*/true) == 3);
  CHECK(anticommute_bound({6, 6, true}, /*odd=*/false) == 2);
  for (int t = 1; t <= 5; ++t)
    CHECK(anticommute_bound({1 << t, 1, false}, /*odd=*/false) == 2 * t + 2);
  CHECK_THROWS_AS(anticommute_bound({4, 3, false}, true), std::invalid_argument);
  CHECK_THROWS_AS(anticommute_bound({4, 2, true}, true), std::invalid_argument);
}

TEST_CASE("group-count bound reports") {
  const BoundReport plain2 = mo_group_bound(2);
  CHECK(plain2.g_general == 4);  // min(4, 6)
  CHECK(plain2.g_max == 4);
  CHECK(plain2.hre == 3);
  CHECK(plain2.g_even == plain2.r_odd + 1);
  CHECK(plain2.g_odd == plain2.r_even + 1);

  const BoundReport plain8 = mo_group_bound(8);
  CHECK(plain8.g_general == 10);  // 2*3 + 4 < 64
  CHECK(plain8.g_max == 10);

  const BoundReport division4 = mo_group_bound(4, AlgebraParams{4, 4, true});
  CHECK(division4.g_max == 4);
  CHECK(division4.g_even == 4);
  CHECK(division4.g_odd == 3);

  CHECK_THROWS_AS(mo_group_bound(0), std::invalid_argument);
}

TEST_CASE("unitary square-root-of-minus-one families") {
  CHECK(hre_bound(4) == 5);
  CHECK(hre_bound(1) == 1);
  CHECK(hre_bound(12) == 5);

  const AnticommutingFamily f2 = hre_family(2);
  REQUIRE(f2.size() == 5);
  CHECK(f2.dimension == 4);
  CHECK(pairwise_anticommuting_exact(f2.members));
  for (const CMatrix& m : f2.members) {
    CHECK(unitary_exact(m));
    CHECK(squares_to_minus_identity_exact(m));
  }

  const AnticommutingFamily f0 = hre_family(0);
  REQUIRE(f0.size() == 1);
  CHECK(f0.members[0] == CMatrix{{kI}});

  for (int t = 0; t <= 4; ++t) CHECK(hre_family(t).size() == hre_bound(1ll << t));
}

TEST_CASE("no invertible anticommuting pairs in odd dimension") {
  const OddDegreeScan scan3 = odd_degree_scan(3, 1000, 61);
  CHECK(scan3.pairs_tested == 1000);
  CHECK(scan3.anticommuting_found == 0);
  CHECK(scan3.min_scaled_residual > 1e-3);  // generic pairs are far from anticommuting

  const OddDegreeScan scan1 = odd_degree_scan(1, 100, 62);
  CHECK(scan1.anticommuting_found == 0);

  // even-dimension constructions all pass their exact verification
  for (int ell = 0; ell <= 3; ++ell) {
    CHECK(pairwise_anticommuting_exact(anticommuting_family(ell).members));
    CHECK(pairwise_mutually_orthogonal_exact(mutually_orthogonal_family(ell)));
  }
}
