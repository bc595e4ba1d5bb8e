#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "fastlat/stbc.hpp"

namespace fastlat {

/// Largest vertex count handled exactly by optimal_partition; beyond it a
/// greedy bound is returned and flagged heuristic.
inline constexpr int kExactSearchLimit = 24;

/// Undirected graph on basis indices 0..v-1. An edge marks a pair of basis
/// matrices that is NOT mutually orthogonal.
class ConflictGraph {
 public:
  explicit ConflictGraph(int v);

  int vertex_count() const { return v_; }
  void add_edge(int i, int j);
  bool has_edge(int i, int j) const;
  std::uint64_t neighbors(int i) const { return adj_[i]; }
  int edge_count() const;
  bool complete() const;
  std::vector<std::pair<int, int>> edges() const;

 private:
  int v_ = 0;
  std::vector<std::uint64_t> adj_;
};

/// Disjoint groups plus a conditioned remainder, together covering all
/// basis indices. Groups are kept sorted by smallest member; vertex lists
/// and the remainder are sorted ascending.
struct GroupPartition {
  std::vector<std::vector<int>> groups;
  std::vector<int> remainder;

  int group_count() const { return static_cast<int>(groups.size()); }
  int total() const;
  std::vector<int> sizes() const;
  int remainder_size() const { return static_cast<int>(remainder.size()); }
  int max_group_size() const;

  /// Column order for the permuted lattice matrix: group 1, group 2, ...,
  /// remainder. Entry p is the basis index placed at position p.
  std::vector<int> permutation() const;

  /// Throws unless the sets are disjoint, sorted, and cover {0..v-1}.
  void validate(int v) const;
};

struct BoundCheck {
  std::string name;
  long long lhs = 0;
  long long rhs = 0;
  bool applicable = true;
  bool pass = true;
};

struct ComplexityReport {
  bool fast_decodable = false;
  int exponent = 0;  // remainder size + max group size, or 2l when not FD
  std::optional<GroupPartition> partition;
  std::optional<int> g_group;
  bool heuristic = false;
  std::vector<BoundCheck> bound_checks;
};

/// Definition check: A B* + B A* vanishes within tol (relative to the
/// product of Frobenius norms). tol = 0 selects exact comparison.
bool mutually_orthogonal(const CMatrix& a, const CMatrix& b, double tol = kDefaultTol);

ConflictGraph conflict_graph(const CodeBasis& basis, double tol = kDefaultTol);

/// Minimizes |W| + (largest component of G - W) over all W for which G - W
/// has at least two components; the components become the groups and W the
/// remainder. Exact up to kExactSearchLimit vertices (branch and bound),
/// greedy beyond that. Ties are broken toward the lexicographically
/// smallest sorted remainder.
ComplexityReport optimal_partition(const ConflictGraph& g);

/// Reference enumerator over every subset W; small graphs only (v <= 16).
/// Kept independent of the branch-and-bound path so the two can be diffed.
ComplexityReport optimal_partition_exhaustive(const ConflictGraph& g);

/// Number of connected components when >= 2 (the code then splits with an
/// empty remainder); absent for connected graphs.
std::optional<int> g_group(const ConflictGraph& g);

/// Maps a pairwise mutually orthogonal family {A1, ..., Am} to
/// {A1^-1 A2, ..., A1^-1 Am} and verifies the result is skew-Hermitian and
/// pairwise anticommuting before returning it.
std::vector<CMatrix> normalize_to_anticommuting(const std::vector<CMatrix>& family,
                                                double tol = kDefaultTol);

/// Evaluates every structural inequality applicable to the report for a
/// code with parameters (n, l); a failing check indicates a bug in the
/// analysis, never a property of the code.
std::vector<BoundCheck> verify_theorem_bounds(const ComplexityReport& report, int n, int l,
                                              bool division_algebra = false);

}  // namespace fastlat
