// fastlat — analysis toolkit for fast lattice decodability of space-time
// block codes. Subcommands: analyze, qr-verify, construct, bounds, simulate,
// oracle. Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
// 1 verification failure, 2 usage/input error.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fastlat/construct.hpp"
#include "fastlat/decoder.hpp"
#include "fastlat/json_io.hpp"
#include "fastlat/lattice.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

fastlat::CodeBasis resolve_basis(const std::string& builtin, const std::string& input) {
  if (!builtin.empty() && !input.empty())
    throw std::invalid_argument("give either --builtin or --input, not both");
  if (!builtin.empty()) {
    if (builtin == "alamouti") return fastlat::alamouti_code();
    if (builtin == "silver") return fastlat::silver_code();
    throw std::invalid_argument("unknown builtin code: " + builtin +
                                " (expected alamouti or silver)");
  }
  if (!input.empty()) return fastlat::load_code(input);
  throw std::invalid_argument("a code is required: --builtin <name> or --input <path>");
}

fastlat::GroupPartition resolve_partition(const fastlat::CodeBasis& basis,
                                          const std::string& path, bool automatic,
                                          double tol) {
  if (automatic && !path.empty())
    throw std::invalid_argument("give either --partition or --auto, not both");
  if (!path.empty()) return fastlat::load_partition(path, basis.symbol_count());
  if (automatic) {
    const auto report = fastlat::optimal_partition(fastlat::conflict_graph(basis, tol));
    if (!report.partition)
      throw std::runtime_error("code is not fast decodable; no partition exists");
    return *report.partition;
  }
  throw std::invalid_argument("a partition is required: --partition <path> or --auto");
}

json edges_to_json(const fastlat::ConflictGraph& graph) {
  json edges = json::array();
  for (const auto& [i, j] : graph.edges()) edges.push_back(json::array({i + 1, j + 1}));
  return edges;
}

int run_analyze(const std::string& builtin, const std::string& input, double tol,
                bool division) {
  const fastlat::CodeBasis basis = resolve_basis(builtin, input);
  basis.validate(tol);
  const fastlat::ConflictGraph graph = fastlat::conflict_graph(basis, tol);
  fastlat::ComplexityReport report = fastlat::optimal_partition(graph);
  report.bound_checks = fastlat::verify_theorem_bounds(report, basis.n, basis.l, division);

  json out{{"basis", json{{"name", basis.name}, {"n", basis.n}, {"l", basis.l}}},
           {"tolerance", tol},
           {"conflict_edges", edges_to_json(graph)},
           {"report", fastlat::report_to_json(report)}};
  std::cout << out.dump(2) << '\n';

  for (const fastlat::BoundCheck& check : report.bound_checks) {
    if (!check.pass) {
      std::cerr << "bound check failed: " << check.name << " (lhs=" << check.lhs
                << ", rhs=" << check.rhs << ")\n";
      return kExitVerificationFailure;
    }
  }
  return kExitOk;
}

int run_qr_verify(const std::string& builtin, const std::string& input,
                  const std::string& partition_path, bool automatic, std::uint64_t seed,
                  int trials, double tol, const std::string& format) {
  const fastlat::CodeBasis basis = resolve_basis(builtin, input);
  const fastlat::GroupPartition partition =
      resolve_partition(basis, partition_path, automatic, fastlat::kDefaultTol);
  partition.validate(basis.symbol_count());

  bool all_pass = true;
  json rows = json::array();
  if (format == "csv") std::cout << "trial,max_off_block,scale,pass\n";
  for (int trial = 0; trial < trials; ++trial) {
    const fastlat::Channel channel =
        fastlat::sample_channel(fastlat::derive_stream(seed, trial), basis.n);
    const fastlat::LatticeMatrix t = fastlat::build_T(basis, channel.h);
    const fastlat::LatticeMatrix t_pi = fastlat::permute_T(t, partition);
    const fastlat::QRFactors qr = fastlat::ordered_qr(t_pi);
    const double off = fastlat::max_off_block(qr.r, partition);
    const double scale = t.t.frobenius_norm();
    const bool pass = off <= tol * scale;
    all_pass = all_pass && pass;
    if (format == "csv")
      std::cout << trial + 1 << ',' << off << ',' << scale << ',' << (pass ? 1 : 0) << '\n';
    else
      rows.push_back(json{{"trial", trial + 1},
                          {"max_off_block", off},
                          {"scale", scale},
                          {"pass", pass}});
  }
  if (format != "csv") {
    json out{{"partition", fastlat::partition_to_json(partition)},
             {"trials", trials},
             {"tolerance", tol},
             {"results", std::move(rows)},
             {"all_pass", all_pass}};
    std::cout << out.dump(2) << '\n';
  }
  if (!all_pass) {
    std::cerr << "qr-verify: off-block mass above tolerance in at least one trial\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

json family_to_json(const std::vector<fastlat::CMatrix>& members) {
  json arr = json::array();
  for (const auto& m : members) arr.push_back(fastlat::matrix_to_json(m));
  return arr;
}

int run_construct(const std::string& family, int ell, int t) {
  json out;
  bool verified = true;
  if (family == "u") {
    const auto fam = fastlat::u_family(ell);
    verified = fastlat::pairwise_anticommuting_exact(fam.members);
    out = json{{"family", "u"},
               {"ell", ell},
               {"dimension", fam.dimension},
               {"count", fam.size()},
               {"matrices", family_to_json(fam.members)},
               {"verification", json{{"pairwise_anticommuting", verified}, {"exact", fam.exact}}}};
  } else if (family == "anticommute") {
    const auto fam = fastlat::anticommuting_family(ell);
    const bool anti = fastlat::pairwise_anticommuting_exact(fam.members);
    bool invertible = true;
    for (const auto& m : fam.members)
      invertible = invertible && fastlat::squares_to_plus_or_minus_identity_exact(m);
    verified = anti && invertible;
    out = json{{"family", "anticommute"},
               {"ell", ell},
               {"dimension", fam.dimension},
               {"count", fam.size()},
               {"matrices", family_to_json(fam.members)},
               {"verification", json{{"pairwise_anticommuting", anti},
                                     {"squares_are_plus_minus_identity", invertible},
                                     {"exact", fam.exact}}}};
  } else if (family == "mo") {
    const auto members = fastlat::mutually_orthogonal_family(ell);
    const bool mo = fastlat::pairwise_mutually_orthogonal_exact(members);
    bool skew = true;
    for (std::size_t i = 1; i < members.size(); ++i)
      skew = skew && fastlat::is_skew_hermitian(members[i], 0.0);
    verified = mo && skew;
    out = json{{"family", "mo"},
               {"ell", ell},
               {"dimension", members.front().rows()},
               {"count", static_cast<int>(members.size())},
               {"matrices", family_to_json(members)},
               {"verification", json{{"pairwise_mutually_orthogonal", mo},
                                     {"non_identity_members_skew_hermitian", skew},
                                     {"exact", true}}}};
  } else if (family == "hre") {
    const auto fam = fastlat::hre_family(t);
    const bool anti = fastlat::pairwise_anticommuting_exact(fam.members);
    bool unitary = true;
    bool square = true;
    for (const auto& m : fam.members) {
      unitary = unitary && fastlat::unitary_exact(m);
      square = square && fastlat::squares_to_minus_identity_exact(m);
    }
    verified = anti && unitary && square;
    out = json{{"family", "hre"},
               {"t", t},
               {"dimension", fam.dimension},
               {"count", fam.size()},
               {"matrices", family_to_json(fam.members)},
               {"verification", json{{"pairwise_anticommuting", anti},
                                     {"unitary", unitary},
                                     {"squares_are_minus_identity", square},
                                     {"exact", fam.exact}}}};
  } else {
    throw std::invalid_argument("unknown family: " + family +
                                " (expected u, anticommute, mo, or hre)");
  }
  std::cout << out.dump(2) << '\n';
  if (!verified) {
    std::cerr << "construct: family verification failed\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

int run_bounds(int n, int deg, int ind, bool division, const std::string& format) {
  std::optional<fastlat::AlgebraParams> params;
  if (deg > 0 || ind > 0 || division) {
    if (division && deg == 0 && ind == 0) {
      // Division algebra with unspecified degree: deg = ind = n.
      params = fastlat::AlgebraParams{n, n, true};
    } else {
      if (deg <= 0 || ind <= 0)
        throw std::invalid_argument("--deg and --ind must be given together");
      params = fastlat::AlgebraParams{deg, ind, division};
    }
  }
  if (format == "table") {
    std::cout << "n,nu2,g_general,hre,g_max\n";
    for (int k = 1; k <= n; ++k) {
      const fastlat::BoundReport r = fastlat::mo_group_bound(k, params);
      std::cout << k << ',' << r.nu2_n << ',' << r.g_general << ',' << r.hre << ','
                << r.g_max << '\n';
    }
    return kExitOk;
  }
  std::cout << fastlat::bound_report_to_json(fastlat::mo_group_bound(n, params)).dump(2)
            << '\n';
  return kExitOk;
}

int run_simulate(const std::string& builtin, const std::string& input,
                 const std::string& partition_path, bool automatic, int trials, double n0,
                 std::uint64_t seed, int constellation_q, const std::string& format) {
  const fastlat::CodeBasis basis = resolve_basis(builtin, input);
  const fastlat::GroupPartition partition =
      resolve_partition(basis, partition_path, automatic, fastlat::kDefaultTol);

  fastlat::SimConfig config;
  config.trials = trials;
  config.n0 = n0;
  config.seed = seed;
  config.constellation = fastlat::Constellation::pam(constellation_q);

  std::vector<fastlat::TrialRecord> records;
  const fastlat::SimSummary summary = fastlat::simulate(basis, partition, config, &records);

  json summary_json{{"trials", summary.trials},
                    {"agreement_rate", summary.agreement_rate},
                    {"symbol_error_rate", summary.symbol_error_rate},
                    {"mean_evals_brute", summary.mean_evals_brute},
                    {"mean_evals_fast", summary.mean_evals_fast},
                    {"n0", n0},
                    {"seed", seed},
                    {"constellation_q", constellation_q}};
  if (format == "json") {
    json rows = json::array();
    for (const auto& r : records)
      rows.push_back(json{{"trial", r.trial},
                          {"agree", r.agree},
                          {"ser_contrib", r.ser_contrib},
                          {"evals_brute", r.evals_brute},
                          {"evals_fast", r.evals_fast}});
    std::cout << json{{"trials", std::move(rows)}, {"summary", summary_json}}.dump(2) << '\n';
  } else {
    std::cout << "trial,agree,ser_contrib,evals_brute,evals_fast\n";
    for (const auto& r : records)
      std::cout << r.trial << ',' << (r.agree ? 1 : 0) << ',' << r.ser_contrib << ','
                << r.evals_brute << ',' << r.evals_fast << '\n';
    std::cout << summary_json.dump() << '\n';
  }
  // Wall-clock stays off stdout so identical seeds give identical bytes.
  std::cerr << "simulate: " << summary.trials << " trials in " << summary.wall_ms << " ms\n";

  if (summary.agreement_rate < 1.0) {
    std::cerr << "simulate: fast decoder disagreed with exhaustive search\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

int run_oracle(int vertices, int trials, std::uint64_t seed) {
  if (vertices < 2 || vertices > 10)
    throw std::invalid_argument("oracle: --vertices must be in [2, 10]");
  int mismatches = 0;
  for (int trial = 0; trial < trials; ++trial) {
    fastlat::Xoshiro256pp rng(fastlat::derive_stream(seed, trial));
    // Edge density swept across trials so sparse and dense graphs both occur.
    const double density = 0.1 + 0.8 * (trial % 9) / 8.0;
    fastlat::ConflictGraph graph(vertices);
    for (int i = 0; i < vertices; ++i)
      for (int j = i + 1; j < vertices; ++j)
        if (rng.uniform01() < density) graph.add_edge(i, j);
    const auto fast = fastlat::optimal_partition(graph);
    const auto brute = fastlat::optimal_partition_exhaustive(graph);
    if (fast.exponent != brute.exponent) ++mismatches;
  }
  json out{{"vertices", vertices}, {"trials", trials}, {"mismatches", mismatches},
           {"pass", mismatches == 0}};
  std::cout << out.dump(2) << '\n';
  return mismatches == 0 ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fast lattice decodability analysis for space-time block codes"};
  app.require_subcommand(1);

  std::string builtin, input, partition_path, family = "u", format = "json";
  std::string sim_format = "csv";
  bool automatic = false, division = false;
  double tol = fastlat::kDefaultTol;
  double qr_tol = 1e-8;
  std::uint64_t seed = 0;
  int trials = 50, ell = 1, t_param = 1, n_param = 2, deg = 0, ind = 0;
  int constellation_q = 4, vertices = 8;
  double n0 = 0.0;

  CLI::App* analyze = app.add_subcommand("analyze", "conflict graph, optimal partition, bounds");
  analyze->add_option("--builtin", builtin, "built-in code (alamouti|silver)");
  analyze->add_option("--input", input, "code basis JSON file");
  analyze->add_option("--tol", tol, "mutual-orthogonality tolerance");
  analyze->add_flag("--division", division, "basis comes from a division algebra");

  CLI::App* qr = app.add_subcommand("qr-verify", "zero-block structure of R over random channels");
  qr->add_option("--builtin", builtin, "built-in code (alamouti|silver)");
  qr->add_option("--input", input, "code basis JSON file");
  qr->add_option("--partition", partition_path, "partition JSON file");
  qr->add_flag("--auto", automatic, "use the optimal partition");
  qr->add_option("--seed", seed, "RNG seed")->required();
  qr->add_option("--trials", trials, "number of channels");
  qr->add_option("--tol", qr_tol, "off-block tolerance (relative to ||T||_F)");
  qr->add_option("--format", format, "json|csv");

  CLI::App* construct = app.add_subcommand("construct", "explicit matrix families");
  construct->add_option("--family", family, "u|anticommute|mo|hre")->required();
  construct->add_option("--ell", ell, "family parameter");
  construct->add_option("--t", t_param, "parameter for the hre family");

  CLI::App* bounds = app.add_subcommand("bounds", "group-count bound report");
  bounds->add_option("--n", n_param, "matrix dimension")->required();
  bounds->add_option("--deg", deg, "algebra degree");
  bounds->add_option("--ind", ind, "algebra index");
  bounds->add_flag("--division", division, "division algebra");
  bounds->add_option("--format", format, "json|table (table lists n = 1..N)");

  CLI::App* simulate = app.add_subcommand("simulate", "joint decoder Monte-Carlo run");
  simulate->add_option("--builtin", builtin, "built-in code (alamouti|silver)");
  simulate->add_option("--input", input, "code basis JSON file");
  simulate->add_option("--partition", partition_path, "partition JSON file");
  simulate->add_flag("--auto", automatic, "use the optimal partition");
  simulate->add_option("--trials", trials, "number of trials");
  simulate->add_option("--n0", n0, "noise variance");
  simulate->add_option("--seed", seed, "RNG seed")->required();
  simulate->add_option("--constellation", constellation_q, "PAM size (even)");
  simulate->add_option("--format", sim_format, "csv|json");

  CLI::App* oracle = app.add_subcommand("oracle", "diff partition search against enumeration");
  oracle->add_option("--vertices", vertices, "graph size (<= 10)");
  oracle->add_option("--trials", trials, "number of random graphs");
  oracle->add_option("--seed", seed, "RNG seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(builtin, input, tol, division);
    if (*qr) return run_qr_verify(builtin, input, partition_path, automatic, seed, trials,
                                  qr_tol, format);
    if (*construct) return run_construct(family, ell, t_param);
    if (*bounds) return run_bounds(n_param, deg, ind, division, format);
    if (*simulate) return run_simulate(builtin, input, partition_path, automatic, trials, n0,
                                       seed, constellation_q, sim_format);
    if (*oracle) return run_oracle(vertices, trials, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerificationFailure;
  }
  return kExitUsage;
}
