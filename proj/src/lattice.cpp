#include "fastlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fastlat {

Channel sample_channel(std::uint64_t seed, int n) {
  if (n < 1) throw std::invalid_argument("sample_channel: n must be positive");
  Xoshiro256pp rng(seed);
  const double sigma = 1.0 / std::sqrt(2.0);  // unit-variance complex entries
  for (int attempt = 0; attempt < 64; ++attempt) {
    CMatrix h(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        h(r, c) = cplx(sigma * rng.gaussian(), sigma * rng.gaussian());
    if (std::abs(determinant(h)) >= kChannelDetMin) return Channel{std::move(h), seed};
  }
  throw std::runtime_error("sample_channel: repeated degenerate draws; check the RNG stream");
}

LatticeMatrix build_T(const CodeBasis& basis, const CMatrix& h) {
  if (h.rows() != basis.n || h.cols() != basis.n)
    throw std::invalid_argument("build_T: channel size does not match the basis");
  LatticeMatrix out;
  out.t = RMatrix(2 * basis.n * basis.n, basis.symbol_count());
  out.column_order.resize(basis.symbol_count());
  for (int i = 0; i < basis.symbol_count(); ++i) {
    out.t.set_column(i, vec_r_mat(h * basis.matrices[i]));
    out.column_order[i] = i;
  }
  return out;
}

LatticeMatrix permute_T(const LatticeMatrix& t, const GroupPartition& partition) {
  const int cols = t.t.cols();
  partition.validate(cols);
  const std::vector<int> pi = partition.permutation();
  LatticeMatrix out;
  out.t = RMatrix(t.t.rows(), cols);
  out.column_order.resize(cols);
  for (int pos = 0; pos < cols; ++pos) {
    out.t.set_column(pos, t.t.column(pi[pos]));
    out.column_order[pos] = t.column_order[pi[pos]];
  }
  return out;
}

QRFactors ordered_qr(const LatticeMatrix& t) {
  const int rows = t.t.rows();
  const int cols = t.t.cols();
  if (cols > rows) throw std::invalid_argument("ordered_qr: more columns than rows");
  const double floor = 1e-10 * t.t.frobenius_norm();

  QRFactors f;
  f.q = t.t;
  f.r = RMatrix(cols, cols);
  for (int j = 0; j < cols; ++j) {
    RVector v = f.q.column(j);
    for (int i = 0; i < j; ++i) {
      const RVector qi = f.q.column(i);
      const double rij = dot(qi, v);
      f.r(i, j) = rij;
      for (int k = 0; k < rows; ++k) v[k] -= rij * qi[k];
    }
    const double rjj = norm(v);
    if (rjj <= floor)
      throw std::runtime_error("ordered_qr: column " + std::to_string(j + 1) +
                               " is numerically dependent on its predecessors");
    f.r(j, j) = rjj;
    for (int k = 0; k < rows; ++k) v[k] /= rjj;
    f.q.set_column(j, v);
  }
  return f;
}

namespace {

// position -> group id (0..g-1), or -1 for remainder positions
std::vector<int> position_groups(const GroupPartition& partition) {
  std::vector<int> ids;
  for (std::size_t gi = 0; gi < partition.groups.size(); ++gi)
    ids.insert(ids.end(), partition.groups[gi].size(), static_cast<int>(gi));
  ids.insert(ids.end(), partition.remainder.size(), -1);
  return ids;
}

}  // namespace

double max_off_block(const RMatrix& r, const GroupPartition& partition) {
  const int m = r.cols();
  if (partition.total() != m)
    throw std::invalid_argument("max_off_block: partition does not match R");
  const std::vector<int> ids = position_groups(partition);
  double worst = 0.0;
  for (int row = 0; row < m; ++row) {
    for (int col = row + 1; col < m; ++col) {
      if (ids[col] == -1) continue;           // remainder columns may be dense
      if (ids[row] == ids[col]) continue;     // inside a group block
      worst = std::max(worst, std::abs(r(row, col)));
    }
  }
  return worst;
}

bool verify_block_structure(const RMatrix& r, const GroupPartition& partition, double tol) {
  return max_off_block(r, partition) <= tol * r.frobenius_norm();
}

std::vector<CMatrix> structured_probe_channels(int n) {
  std::vector<CMatrix> probes;
  const cplx im(0.0, 1.0);
  for (int k = 0; k < n; ++k) {
    CMatrix e(n, n);
    e(k, k) = 1.0;
    probes.push_back(e);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      if (k == l) continue;
      CMatrix plus(n, n);
      plus(k, k) = 1.0;
      plus(k, l) = 1.0;
      probes.push_back(plus);
      CMatrix minus(n, n);
      minus(k, k) = 1.0;
      minus(k, l) = -im;
      probes.push_back(minus);
    }
  }
  return probes;
}

OrthogonalityProbe column_orthogonality_test(const CodeBasis& basis, int i, int j,
                                             int num_channels, std::uint64_t seed) {
  if (i == j) throw std::invalid_argument("column_orthogonality_test: need distinct indices");
  if (i < 0 || j < 0 || i >= basis.symbol_count() || j >= basis.symbol_count())
    throw std::invalid_argument("column_orthogonality_test: index out of range");

  const bool mo = mutually_orthogonal(basis.matrices[i], basis.matrices[j]);

  auto scaled_dot = [&](const CMatrix& h) {
    const RVector ci = vec_r_mat(h * basis.matrices[i]);
    const RVector cj = vec_r_mat(h * basis.matrices[j]);
    const double scale = norm(ci) * norm(cj);
    if (scale == 0.0) return 0.0;
    return std::abs(dot(ci, cj)) / scale;
  };

  OrthogonalityProbe result;
  std::vector<CMatrix> channels;
  channels.reserve(num_channels);
  for (int trial = 0; trial < num_channels; ++trial)
    channels.push_back(sample_channel(derive_stream(seed, trial), basis.n).h);
  const std::vector<CMatrix> probes = structured_probe_channels(basis.n);

  if (mo) {
    for (const CMatrix& h : channels) result.max_scaled_dot = std::max(result.max_scaled_dot, scaled_dot(h));
    for (const CMatrix& h : probes) result.max_scaled_dot = std::max(result.max_scaled_dot, scaled_dot(h));
    if (result.max_scaled_dot > 1e-8)
      throw std::runtime_error(
          "column_orthogonality_test: mutually orthogonal pair produced a non-orthogonal "
          "column pair; tolerance configuration is inconsistent");
    result.always_orthogonal = true;
    return result;
  }

  for (const CMatrix& h : channels) {
    const double d = scaled_dot(h);
    result.max_scaled_dot = std::max(result.max_scaled_dot, d);
    if (d > 1e-6) {
      result.witness = Channel{h, std::nullopt};
      return result;
    }
  }
  for (const CMatrix& h : probes) {
    const double d = scaled_dot(h);
    result.max_scaled_dot = std::max(result.max_scaled_dot, d);
    if (d > 1e-6) {
      result.witness = Channel{h, std::nullopt};
      return result;
    }
  }
  throw std::runtime_error(
      "column_orthogonality_test: no witness channel found for a non-orthogonal pair; "
      "tolerance configuration is inconsistent");
}

}  // namespace fastlat
