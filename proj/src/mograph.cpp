#include "fastlat/mograph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace fastlat {

ConflictGraph::ConflictGraph(int v) : v_(v) {
  if (v < 1 || v > 64)
    throw std::invalid_argument("ConflictGraph: vertex count must be in [1, 64]");
  adj_.assign(v, 0);
}

void ConflictGraph::add_edge(int i, int j) {
  if (i < 0 || j < 0 || i >= v_ || j >= v_ || i == j)
    throw std::invalid_argument("ConflictGraph: bad edge");
  adj_[i] |= 1ull << j;
  adj_[j] |= 1ull << i;
}

bool ConflictGraph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= v_ || j >= v_)
    throw std::invalid_argument("ConflictGraph: vertex out of range");
  if (i == j) return false;
  return (adj_[i] >> j) & 1;
}

int ConflictGraph::edge_count() const {
  int total = 0;
  for (std::uint64_t row : adj_) total += std::popcount(row);
  return total / 2;
}

bool ConflictGraph::complete() const {
  for (int i = 0; i < v_; ++i)
    if (std::popcount(adj_[i]) != v_ - 1) return false;
  return true;
}

std::vector<std::pair<int, int>> ConflictGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < v_; ++i)
    for (int j = i + 1; j < v_; ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

int GroupPartition::total() const {
  int t = remainder_size();
  for (const auto& g : groups) t += static_cast<int>(g.size());
  return t;
}

std::vector<int> GroupPartition::sizes() const {
  std::vector<int> s;
  s.reserve(groups.size());
  for (const auto& g : groups) s.push_back(static_cast<int>(g.size()));
  return s;
}

int GroupPartition::max_group_size() const {
  int m = 0;
  for (const auto& g : groups) m = std::max(m, static_cast<int>(g.size()));
  return m;
}

std::vector<int> GroupPartition::permutation() const {
  std::vector<int> pi;
  pi.reserve(total());
  for (const auto& g : groups) pi.insert(pi.end(), g.begin(), g.end());
  pi.insert(pi.end(), remainder.begin(), remainder.end());
  return pi;
}

void GroupPartition::validate(int v) const {
  if (groups.empty()) throw std::invalid_argument("partition: needs at least one group");
  std::vector<char> seen(v, 0);
  int count = 0;
  auto absorb = [&](const std::vector<int>& set, const char* what) {
    for (int u : set) {
      if (u < 0 || u >= v)
        throw std::invalid_argument(std::string("partition: ") + what + " index out of range");
      if (seen[u]) throw std::invalid_argument("partition: sets are not disjoint");
      seen[u] = 1;
      ++count;
    }
  };
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("partition: empty group");
    absorb(g, "group");
  }
  absorb(remainder, "remainder");
  if (count != v)
    throw std::invalid_argument("partition: covers " + std::to_string(count) +
                                " of " + std::to_string(v) + " indices");
}

bool mutually_orthogonal(const CMatrix& a, const CMatrix& b, double tol) {
  if (!a.square() || !b.square() || a.rows() != b.rows())
    throw std::invalid_argument("mutually_orthogonal: size mismatch");
  CMatrix res = a * b.adjoint() + b * a.adjoint();
  if (tol == 0.0) return res.is_zero();
  return res.frobenius_norm() <= tol * std::max(1.0, a.frobenius_norm() * b.frobenius_norm());
}

ConflictGraph conflict_graph(const CodeBasis& basis, double tol) {
  const int v = basis.symbol_count();
  ConflictGraph g(v);
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j)
      if (!mutually_orthogonal(basis.matrices[i], basis.matrices[j], tol)) g.add_edge(i, j);
  return g;
}

namespace {

struct CompInfo {
  std::vector<std::uint64_t> comps;  // discovery order = ascending smallest vertex
  int max_size = 0;
};

CompInfo components_of(const std::vector<std::uint64_t>& adj, std::uint64_t alive) {
  CompInfo out;
  std::uint64_t remaining = alive;
  while (remaining) {
    std::uint64_t comp = 0;
    std::uint64_t frontier = remaining & (~remaining + 1);  // lowest set bit
    while (frontier) {
      comp |= frontier;
      std::uint64_t next = 0;
      std::uint64_t f = frontier;
      while (f) {
        next |= adj[std::countr_zero(f)];
        f &= f - 1;
      }
      frontier = next & alive & ~comp;
    }
    out.comps.push_back(comp);
    out.max_size = std::max(out.max_size, std::popcount(comp));
    remaining &= ~comp;
  }
  return out;
}

struct CompStats {
  int max_size = 0;
  int count = 0;
};

// Allocation-free variant for the inner search loop.
CompStats component_stats(const std::vector<std::uint64_t>& adj, std::uint64_t alive) {
  CompStats st;
  std::uint64_t remaining = alive;
  while (remaining) {
    std::uint64_t comp = 0;
    std::uint64_t frontier = remaining & (~remaining + 1);
    while (frontier) {
      comp |= frontier;
      std::uint64_t next = 0;
      std::uint64_t f = frontier;
      while (f) {
        next |= adj[std::countr_zero(f)];
        f &= f - 1;
      }
      frontier = next & alive & ~comp;
    }
    st.max_size = std::max(st.max_size, std::popcount(comp));
    ++st.count;
    remaining &= ~comp;
  }
  return st;
}

std::vector<int> mask_to_list(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

// Minimizes |W| + max component size over subsets W leaving >= 2 components.
// Branch and bound over removal sets in lexicographic order with an
// incumbent bound; since strict improvements are kept and subsets appear in
// lexicographic order, the recorded minimizer is the lexicographically
// smallest optimal remainder.
class ExactSearch {
 public:
  ExactSearch(const std::vector<std::uint64_t>& adj, int v)
      : adj_(adj), v_(v), full_(v == 64 ? ~0ull : ((1ull << v) - 1)) {}

  // Caller guarantees the graph is not complete, so a split exists.
  void run() {
    best_ = std::min(greedy_bound(), v_ - 1) + 1;
    w_.clear();
    best_w_.clear();
    dfs(full_, 0, -1);
  }

  int best() const { return best_; }
  const std::vector<int>& remainder() const { return best_w_; }

 private:
  int greedy_bound() {
    int best = 2 * v_;
    std::uint64_t alive = full_;
    int removed = 0;
    while (true) {
      const CompStats st = component_stats(adj_, alive);
      if (st.count >= 2) best = std::min(best, removed + st.max_size);
      if (std::popcount(alive) <= 2) break;
      int pick = -1;
      int best_deg = -1;
      std::uint64_t it = alive;
      while (it) {
        const int u = std::countr_zero(it);
        it &= it - 1;
        const int deg = std::popcount(adj_[u] & alive);
        if (deg > best_deg) {
          best_deg = deg;
          pick = u;
        }
      }
      alive &= ~(1ull << pick);
      ++removed;
    }
    return best;
  }

  void dfs(std::uint64_t alive, int removed, int last) {
    const CompStats st = component_stats(adj_, alive);
    if (st.count >= 2) {
      const int f = removed + st.max_size;
      if (f < best_) {
        best_ = f;
        best_w_ = w_;
      }
      // Once everything is a singleton, further removals only add cost.
      if (st.max_size == 1) return;
    }
    if (removed + 2 >= best_) return;
    for (int u = last + 1; u < v_; ++u) {
      if (!((alive >> u) & 1)) continue;
      w_.push_back(u);
      dfs(alive & ~(1ull << u), removed + 1, u);
      w_.pop_back();
    }
  }

  const std::vector<std::uint64_t>& adj_;
  int v_;
  std::uint64_t full_;
  int best_ = 0;
  std::vector<int> w_;
  std::vector<int> best_w_;
};

std::vector<std::uint64_t> adjacency_of(const ConflictGraph& g) {
  std::vector<std::uint64_t> adj(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) adj[i] = g.neighbors(i);
  return adj;
}

ComplexityReport not_fast_decodable(const ConflictGraph& g) {
  ComplexityReport report;
  report.fast_decodable = false;
  report.exponent = g.vertex_count();
  report.g_group = g_group(g);
  return report;
}

ComplexityReport report_for_remainder(const ConflictGraph& g,
                                      const std::vector<std::uint64_t>& adj,
                                      const std::vector<int>& w, bool heuristic) {
  std::uint64_t wmask = 0;
  for (int u : w) wmask |= 1ull << u;
  const std::uint64_t full =
      g.vertex_count() == 64 ? ~0ull : ((1ull << g.vertex_count()) - 1);
  const CompInfo info = components_of(adj, full & ~wmask);

  GroupPartition partition;
  for (std::uint64_t comp : info.comps) partition.groups.push_back(mask_to_list(comp));
  partition.remainder = w;
  std::sort(partition.remainder.begin(), partition.remainder.end());

  // Post-search re-verification: no edge may cross two distinct groups.
  for (std::size_t gi = 0; gi < partition.groups.size(); ++gi)
    for (std::size_t gj = gi + 1; gj < partition.groups.size(); ++gj)
      for (int u : partition.groups[gi])
        for (int v : partition.groups[gj])
          if (g.has_edge(u, v))
            throw std::logic_error("optimal_partition: cross-group edge after search");

  ComplexityReport report;
  report.fast_decodable = true;
  report.exponent = static_cast<int>(w.size()) + info.max_size;
  report.partition = std::move(partition);
  report.g_group = g_group(g);
  report.heuristic = heuristic;
  return report;
}

}  // namespace

ComplexityReport optimal_partition(const ConflictGraph& g) {
  const int v = g.vertex_count();
  if (v < 2) throw std::invalid_argument("optimal_partition: need at least two vertices");
  if (g.complete()) return not_fast_decodable(g);

  const std::vector<std::uint64_t> adj = adjacency_of(g);
  if (v > kExactSearchLimit) {
    // Greedy peel; report the best split seen along the way.
    const std::uint64_t full = (v == 64) ? ~0ull : ((1ull << v) - 1);
    std::uint64_t alive = full;
    std::vector<int> removed_order;
    int best_f = 2 * v;
    std::vector<int> best_w;
    while (true) {
      const CompInfo info = components_of(adj, alive);
      if (info.comps.size() >= 2) {
        const int f = static_cast<int>(removed_order.size()) + info.max_size;
        if (f < best_f) {
          best_f = f;
          best_w = removed_order;
        }
      }
      if (std::popcount(alive) <= 2) break;
      int pick = -1;
      int best_deg = -1;
      std::uint64_t it = alive;
      while (it) {
        const int u = std::countr_zero(it);
        it &= it - 1;
        const int deg = std::popcount(adj[u] & alive);
        if (deg > best_deg) {
          best_deg = deg;
          pick = u;
        }
      }
      alive &= ~(1ull << pick);
      removed_order.push_back(pick);
    }
    return report_for_remainder(g, adj, best_w, /*heuristic=*/true);
  }

  ExactSearch search(adj, v);
  search.run();
  return report_for_remainder(g, adj, search.remainder(), /*heuristic=*/false);
}

ComplexityReport optimal_partition_exhaustive(const ConflictGraph& g) {
  const int v = g.vertex_count();
  if (v < 2) throw std::invalid_argument("optimal_partition_exhaustive: need at least two vertices");
  if (v > 16)
    throw std::invalid_argument("optimal_partition_exhaustive: limited to 16 vertices");
  const std::vector<std::uint64_t> adj = adjacency_of(g);
  const std::uint64_t full = (1ull << v) - 1;

  bool found = false;
  int best_f = 0;
  std::vector<int> best_w;
  for (std::uint64_t wmask = 0; wmask <= full; ++wmask) {
    const CompInfo info = components_of(adj, full & ~wmask);
    if (info.comps.size() < 2) continue;
    const int f = std::popcount(wmask) + info.max_size;
    std::vector<int> w = mask_to_list(wmask);
    if (!found || f < best_f ||
        (f == best_f && std::lexicographical_compare(w.begin(), w.end(), best_w.begin(),
                                                     best_w.end()))) {
      found = true;
      best_f = f;
      best_w = std::move(w);
    }
  }
  if (!found) return not_fast_decodable(g);
  return report_for_remainder(g, adj, best_w, /*heuristic=*/false);
}

std::optional<int> g_group(const ConflictGraph& g) {
  const std::vector<std::uint64_t> adj = adjacency_of(g);
  const std::uint64_t full =
      g.vertex_count() == 64 ? ~0ull : ((1ull << g.vertex_count()) - 1);
  const CompInfo info = components_of(adj, full);
  if (info.comps.size() >= 2) return static_cast<int>(info.comps.size());
  return std::nullopt;
}

std::vector<CMatrix> normalize_to_anticommuting(const std::vector<CMatrix>& family,
                                                double tol) {
  if (family.empty())
    throw std::invalid_argument("normalize_to_anticommuting: empty family");
  const CMatrix lead_inv = inverse(family[0]);
  std::vector<CMatrix> out;
  out.reserve(family.size() - 1);
  for (std::size_t i = 1; i < family.size(); ++i) out.push_back(lead_inv * family[i]);

  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!is_skew_hermitian(out[i], tol))
      throw std::runtime_error("normalize_to_anticommuting: member " + std::to_string(i + 2) +
                               " is not skew-Hermitian after normalization");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      CMatrix anti = out[i] * out[j] + out[j] * out[i];
      const bool ok = tol == 0.0
                          ? anti.is_zero()
                          : anti.frobenius_norm() <=
                                tol * std::max(1.0, out[i].frobenius_norm() *
                                                        out[j].frobenius_norm());
      if (!ok)
        throw std::runtime_error("normalize_to_anticommuting: members " +
                                 std::to_string(i + 2) + " and " + std::to_string(j + 2) +
                                 " do not anticommute after normalization");
    }
  }
  return out;
}

namespace {

int two_adic(int m) {
  int t = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++t;
  }
  return t;
}

}  // namespace

std::vector<BoundCheck> verify_theorem_bounds(const ComplexityReport& report, int n, int l,
                                              bool division_algebra) {
  if (n < 1 || l < 1 || l > n * n)
    throw std::invalid_argument("verify_theorem_bounds: bad code parameters");
  std::vector<BoundCheck> checks;
  auto push = [&checks](const std::string& name, long long lhs, long long rhs,
                        bool applicable, bool pass) {
    checks.push_back({name, lhs, rhs, applicable, !applicable || pass});
  };

  const bool fd = report.fast_decodable && report.partition.has_value();
  long long sum_sizes = 0;
  long long min_size = 0;
  long long min_size_ge2 = 0;
  long long g = 0;
  if (fd) {
    const auto sizes = report.partition->sizes();
    g = static_cast<long long>(sizes.size());
    min_size = sizes.empty() ? 0 : *std::min_element(sizes.begin(), sizes.end());
    for (int s : sizes) {
      sum_sizes += s;
      if (s >= 2 && (min_size_ge2 == 0 || s < min_size_ge2)) min_size_ge2 = s;
    }
  }

  push("group_size_sum", sum_sizes, static_cast<long long>(n) * n + min_size, fd,
       sum_sizes <= static_cast<long long>(n) * n + min_size);
  push("group_size_sum_sharp", sum_sizes,
       static_cast<long long>(n) * n + min_size_ge2 - 1, fd && min_size_ge2 >= 2,
       sum_sizes <= static_cast<long long>(n) * n + min_size_ge2 - 1);
  push("group_count_max", g, static_cast<long long>(n) * n, fd,
       g <= static_cast<long long>(n) * n);
  push("group_count_dyadic", g, 2ll * two_adic(n) + 4, fd, g <= 2ll * two_adic(n) + 4);

  const bool full_rate = (l == n * n);
  push("full_rate_exponent_floor", report.exponent, static_cast<long long>(n) * n + 1,
       full_rate, report.exponent >= n * n + 1);
  push("full_rate_no_group_split", report.g_group.has_value() ? 1 : 0, 0, full_rate,
       !report.g_group.has_value());

  push("division_group_count", g, 4, division_algebra && fd, g <= 4);
  push("division_exponent_floor", report.exponent, (l + 1) / 2, division_algebra,
       report.exponent >= (l + 1) / 2);

  return checks;
}

}  // namespace fastlat
