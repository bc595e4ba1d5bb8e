#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fastlat/json_io.hpp"
#include "fastlat/mograph.hpp"
#include "fastlat/rng.hpp"
#include "fastlat/stbc.hpp"

using namespace fastlat;

namespace {

const cplx kI(0.0, 1.0);

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/fastlat_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("pam constellations") {
  const Constellation s = Constellation::pam(4);
  CHECK(s.values == std::vector<double>{-3.0, -1.0, 1.0, 3.0});
  CHECK_NOTHROW(s.validate());
  CHECK_THROWS_AS(Constellation::pam(3), std::invalid_argument);
  CHECK_THROWS_AS(Constellation{}.validate(), std::invalid_argument);
}

TEST_CASE("alamouti basis matches the quaternion units") {
  const CodeBasis basis = alamouti_code();
  REQUIRE(basis.matrices.size() == 4);
  CHECK(basis.matrices[0] == CMatrix::identity(2));
  CHECK(basis.matrices[1] == CMatrix{{kI, 0.0}, {0.0, -kI}});
  CHECK(basis.matrices[2] == CMatrix{{0.0, -1.0}, {1.0, 0.0}});
  CHECK(basis.matrices[3] == CMatrix{{0.0, -kI}, {-kI, 0.0}});
  CHECK_NOTHROW(basis.validate());

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(mutually_orthogonal(basis.matrices[i], basis.matrices[j], 0.0));

  CHECK(rank_real(basis.real_span()) == 4);
}

TEST_CASE("assemble is the symbol-weighted sum") {
  const CodeBasis basis = alamouti_code();
  CHECK(assemble(basis, {1.0, 0.0, 0.0, 0.0}) == basis.matrices[0]);
  CHECK(assemble(basis, {0.0, 0.0, 0.0, 0.0}) == CMatrix(2, 2));

  // 1*I + 2*diag(i,-i) + 3*[[0,-1],[1,0]] + 4*[[0,-i],[-i,0]], summed by hand
  const CMatrix x = assemble(basis, {1.0, 2.0, 3.0, 4.0});
  const CMatrix expected{{cplx(1.0, 2.0), cplx(-3.0, -4.0)},
                         {cplx(3.0, -4.0), cplx(1.0, -2.0)}};
  CHECK(x == expected);

  CHECK_THROWS_AS(assemble(basis, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("assemble is additive and homogeneous") {
  const CodeBasis basis = silver_code();
  Xoshiro256pp rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    RVector a(8), b(8);
    for (int i = 0; i < 8; ++i) {
      a[i] = rng.gaussian();
      b[i] = rng.gaussian();
    }
    RVector sum(8);
    for (int i = 0; i < 8; ++i) sum[i] = a[i] + b[i];
    const CMatrix lhs = assemble(basis, sum);
    const CMatrix rhs = assemble(basis, a) + assemble(basis, b);
    CHECK((lhs - rhs).frobenius_norm() <= 1e-12 * std::max(1.0, rhs.frobenius_norm()));

    RVector scaled(8);
    for (int i = 0; i < 8; ++i) scaled[i] = 2.5 * a[i];
    CHECK((assemble(basis, scaled) - cplx(2.5) * assemble(basis, a)).frobenius_norm() <=
          1e-12 * std::max(1.0, assemble(basis, a).frobenius_norm()));
  }
}

TEST_CASE("silver basis invariants") {
  const CodeBasis basis = silver_code();
  REQUIRE(basis.matrices.size() == 8);
  CHECK(basis.n == 2);
  CHECK(basis.l == 4);
  CHECK_NOTHROW(basis.validate());
  CHECK(rank_real(basis.real_span()) == 8);

  const CodeBasis alamouti = alamouti_code();
  for (int i = 0; i < 4; ++i) CHECK(basis.matrices[i] == alamouti.matrices[i]);

  // every unit-norm symbol vector maps to a nonzero codeword
  Xoshiro256pp rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    RVector s(8);
    double nrm = 0.0;
    for (int i = 0; i < 8; ++i) {
      s[i] = rng.gaussian();
      nrm += s[i] * s[i];
    }
    nrm = std::sqrt(nrm);
    for (double& v : s) v /= nrm;
    CHECK(assemble(basis, s).frobenius_norm() > 1e-3);
  }
}

TEST_CASE("basis JSON round-trip is bit-exact") {
  const CodeBasis basis = silver_code();
  TempFile file("silver.json");
  save_code(basis, file.path);
  const CodeBasis loaded = load_code(file.path);
  CHECK(loaded.name == basis.name);
  CHECK(loaded.n == basis.n);
  CHECK(loaded.l == basis.l);
  REQUIRE(loaded.matrices.size() == basis.matrices.size());
  for (std::size_t i = 0; i < basis.matrices.size(); ++i)
    CHECK(loaded.matrices[i] == basis.matrices[i]);  // exact entrywise
}

TEST_CASE("loading rejects a singular member, naming its index") {
  CodeBasis basis = alamouti_code();
  basis.matrices[2] = CMatrix{{1.0, 1.0}, {1.0, 1.0}};  // rank 1
  TempFile file("singular.json");
  save_code(basis, file.path);  // save_code does not validate
  try {
    load_code(file.path);
    FAIL("expected rejection of the singular member");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("matrix 3") != std::string::npos);
  }
}

TEST_CASE("loading rejects a dependent family, naming its index") {
  CodeBasis basis = alamouti_code();
  basis.matrices[3] = basis.matrices[1];  // duplicate
  TempFile file("dependent.json");
  save_code(basis, file.path);
  try {
    load_code(file.path);
    FAIL("expected rejection of the dependent member");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("matrix 4") != std::string::npos);
  }
}

TEST_CASE("loading rejects malformed JSON") {
  TempFile file("malformed.json");
  std::ofstream(file.path) << "{ not json";
  CHECK_THROWS_AS(load_code(file.path), std::invalid_argument);
}
