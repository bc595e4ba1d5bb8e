#pragma once

#include <cstdint>
#include <optional>

#include "fastlat/mograph.hpp"
#include "fastlat/rng.hpp"

namespace fastlat {

/// Channels with |det H| below this are resampled (or rejected by decoders).
inline constexpr double kChannelDetMin = 1e-8;

struct Channel {
  CMatrix h;
  std::optional<std::uint64_t> seed;
};

/// Real lattice generator: 2n^2 x 2l, column i = vec_r_mat(H A_{order[i]}).
struct LatticeMatrix {
  RMatrix t;
  std::vector<int> column_order;  // position -> basis index
};

struct QRFactors {
  RMatrix q;  // 2n^2 x 2l, orthonormal columns
  RMatrix r;  // 2l x 2l, upper triangular, nonnegative diagonal
};

/// n x n matrix with i.i.d. circularly symmetric complex Gaussian entries of
/// unit variance, deterministic in the seed. Degenerate draws (|det H| below
/// kChannelDetMin) are resampled from the same stream, a bounded number of
/// times.
Channel sample_channel(std::uint64_t seed, int n);

LatticeMatrix build_T(const CodeBasis& basis, const CMatrix& h);

/// Reorders columns group 1, ..., group g, remainder; records the
/// permutation for decoding.
LatticeMatrix permute_T(const LatticeMatrix& t, const GroupPartition& partition);

/// Thin QR by modified Gram-Schmidt in strict left-to-right column order.
/// Throws when a column norm collapses below 1e-10 * ||T||_F.
QRFactors ordered_qr(const LatticeMatrix& t);

/// Largest magnitude of an R entry lying outside the allowed pattern
/// (diagonal group blocks, the rightmost remainder columns, and the lower
/// triangle, which is structurally zero).
double max_off_block(const RMatrix& r, const GroupPartition& partition);

bool verify_block_structure(const RMatrix& r, const GroupPartition& partition,
                            double tol = 1e-8);

struct OrthogonalityProbe {
  bool always_orthogonal = false;
  std::optional<Channel> witness;  // channel with non-orthogonal columns (i, j)
  double max_scaled_dot = 0.0;     // max |dot| / (|col_i| |col_j|) observed
};

/// Channel-independence test for columns i and j of T(H): for a mutually
/// orthogonal pair, asserts near-zero dots across `num_channels` sampled
/// channels plus the structured probes; otherwise hunts for a witness
/// channel with a clearly nonzero dot and returns it.
OrthogonalityProbe column_orthogonality_test(const CodeBasis& basis, int i, int j,
                                             int num_channels, std::uint64_t seed);

/// Deterministic probe channels: E_kk, E_kk + E_kl, and E_kk - i E_kl. Their
/// Gram matrices H*H realize the rank-one and paired patterns that expose
/// any non-skew-Hermitian product A_i A_j*.
std::vector<CMatrix> structured_probe_channels(int n);

}  // namespace fastlat
