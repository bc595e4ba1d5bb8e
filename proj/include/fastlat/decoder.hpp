#pragma once

#include <cstdint>

#include "fastlat/lattice.hpp"

namespace fastlat {

/// Exhaustive search is refused beyond this many candidate tuples.
inline constexpr std::uint64_t kBruteForceCap = 1ull << 24;

struct DecodeResult {
  RVector symbols;              // length 2l, entries drawn from the alphabet
  double metric = 0.0;          // ||Y - H X(symbols)||_F^2
  std::uint64_t metric_evals = 0;
};

struct SimConfig {
  int trials = 1;
  double n0 = 0.0;              // per-entry complex noise variance
  std::uint64_t seed = 0;
  Constellation constellation;
};

struct TrialRecord {
  int trial = 0;
  bool agree = false;
  double ser_contrib = 0.0;
  std::uint64_t evals_brute = 0;
  std::uint64_t evals_fast = 0;
};

struct SimSummary {
  int trials = 0;
  double agreement_rate = 0.0;
  double symbol_error_rate = 0.0;
  double mean_evals_brute = 0.0;
  double mean_evals_fast = 0.0;
  double wall_ms = 0.0;
};

/// Exhaustive maximum-likelihood decode: minimizes ||Y - H X(s)||_F^2 over
/// the full alphabet product, ties broken toward the lexicographically
/// smallest symbol vector. metric_evals = |S|^(2l).
DecodeResult ml_brute(const CMatrix& y, const CMatrix& h, const CodeBasis& basis,
                      const Constellation& s);

/// Conditioned parallel decode through the permuted lattice's QR factors:
/// for each remainder assignment the groups are minimized independently
/// against their diagonal blocks. Produces the ml_brute argmin under the
/// same tie-break. metric_evals = |S|^w * sum_i |S|^(n_i) plus |S|^w
/// remainder evaluations when the remainder is nonempty (w = remainder
/// size).
DecodeResult fast_decode(const CMatrix& y, const CMatrix& h, const CodeBasis& basis,
                         const GroupPartition& partition, const Constellation& s);

/// Monte-Carlo run comparing both decoders trial by trial; deterministic in
/// config.seed. Per-trial rows are appended to `records` when provided.
SimSummary simulate(const CodeBasis& basis, const GroupPartition& partition,
                    const SimConfig& config, std::vector<TrialRecord>* records = nullptr);

}  // namespace fastlat
