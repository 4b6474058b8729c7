// Command-line surface: dist / gram / bench / validate / build-graph / oracle.
// Exit codes: 0 ok, 2 input error, 3 math-domain error, 4 internal.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ust/io.hpp"
#include "ust/kernel.hpp"
#include "ust/oracle.hpp"
#include "ust/slicing.hpp"
#include "ust/ust.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct CommonOpts {
  std::string graph_path;
  std::string measures_path;
  std::string omega = "length";
  double p = 1.0;
  bool p_inf = false;
  double b = 1.0;
  double lambda = 1.0;
  double alpha = 0.0;
  double w1_root = 1.0;
  double w2_root = 1.0;
  std::uint32_t slices = 10;
  std::uint64_t seed = 0;
  double tie_tol = ust::kDefaultTieTol;
  std::optional<std::uint32_t> root;
  std::string out_path;
  std::string format = "csv";
};

void add_param_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--p", o.p, "order p >= 1");
  cmd->add_flag("--p-inf", o.p_inf, "use the sup form (p = infinity)");
  cmd->add_option("--b", o.b, "Lipschitz bound b");
  cmd->add_option("--lambda", o.lambda, "Lagrange multiplier");
  cmd->add_option("--alpha", o.alpha, "root-interval shrinkage");
  cmd->add_option("--w1-root", o.w1_root, "w1 at the root");
  cmd->add_option("--w2-root", o.w2_root, "w2 at the root");
  cmd->add_option("--omega", o.omega, "'length' or a per-edge values file");
  cmd->add_option("--tie-tol", o.tie_tol, "shortest-path tie tolerance");
}

void add_root_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--slices", o.slices, "number of sampled roots");
  cmd->add_option("--seed", o.seed, "seed for all randomness");
  cmd->add_option("--root", o.root, "pin a single root instead of sampling");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out_path, "output file (default stdout)");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

ust::UstParams make_params(const CommonOpts& o, const ust::PhysicalGraph& g) {
  ust::UstParams params;
  params.p = o.p_inf ? ust::kOrderInf : o.p;
  params.b = o.b;
  params.lambda = o.lambda;
  params.alpha = o.alpha;
  params.w1_root = o.w1_root;
  params.w2_root = o.w2_root;
  if (o.omega != "length") params.omega = ust::read_omega_file(o.omega, g.edge_count());
  ust::validate_params(params, g.edge_count());
  return params;
}

std::vector<ust::DiscreteMeasure> load_measures(const CommonOpts& o,
                                                const ust::PhysicalGraph& g) {
  std::vector<ust::LabeledMeasure> labeled = ust::read_measures_file(o.measures_path);
  if (labeled.empty()) throw ust::ParseError("measures document is empty");
  std::vector<ust::DiscreteMeasure> ms;
  ms.reserve(labeled.size());
  for (auto& lm : labeled) {
    if (!lm.measure.empty() && lm.measure.max_node() >= g.node_count())
      throw ust::SupportOffGraph("measure '" + lm.label + "' leaves the graph");
    ms.push_back(std::move(lm.measure));
  }
  return ms;
}

ust::Matrix distance_matrix(const CommonOpts& o, const ust::PhysicalGraph& g,
                            const ust::UstParams& params,
                            const std::vector<ust::DiscreteMeasure>& ms) {
  if (o.root) {
    ust::RootedPreprocess pre = ust::shortest_path_tree(g, *o.root, o.tie_tol);
    return ust::pairwise_matrix(pre, params, ms);
  }
  std::uint32_t k = std::min<std::uint32_t>(o.slices, g.node_count());
  ust::RootSet roots = ust::sample_roots(g, k, o.seed, o.tie_tol);
  if (roots.truncated)
    std::cerr << "warning: only " << roots.roots.size() << " of " << k
              << " requested roots pass the uniqueness check\n";
  return ust::sliced_pairwise_matrix(g, roots, params, ms, o.tie_tol);
}

void emit_matrix(const CommonOpts& o, const ust::Matrix& m) {
  std::ostringstream body;
  if (o.format == "csv") {
    ust::write_csv_matrix(body, m);
  } else {
    nlohmann::json doc;
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      auto row = nlohmann::json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
      rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
    body << doc.dump(2) << "\n";
  }
  if (o.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(o.out_path);
    if (!out) throw ust::FileError("cannot open " + o.out_path + " for writing");
    out << body.str();
  }
}

void emit_text(const CommonOpts& o, const std::string& body) {
  if (o.out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(o.out_path);
    if (!out) throw ust::FileError("cannot open " + o.out_path + " for writing");
    out << body;
  }
}

int run_dist(const CommonOpts& o) {
  ust::PhysicalGraph g = ust::read_graph_file(o.graph_path);
  ust::UstParams params = make_params(o, g);
  std::vector<ust::DiscreteMeasure> ms = load_measures(o, g);
  emit_matrix(o, distance_matrix(o, g, params, ms));
  return 0;
}

int run_gram(const CommonOpts& o, double t) {
  ust::PhysicalGraph g = ust::read_graph_file(o.graph_path);
  ust::UstParams params = make_params(o, g);
  std::vector<ust::DiscreteMeasure> ms = load_measures(o, g);
  ust::GramMatrix k = ust::gram(distance_matrix(o, g, params, ms), t);
  emit_matrix(o, k.values);
  return 0;
}

int run_validate(const CommonOpts& o) {
  ust::PhysicalGraph g = ust::read_graph_file(o.graph_path);
  std::ostringstream body;
  body << "node,ok,tied_count\n";
  std::uint64_t bad = 0;
  for (ust::NodeId v = 0; v < g.node_count(); ++v) {
    ust::UniquenessReport rep = ust::validate_root(g, v, o.tie_tol);
    if (!rep.ok) ++bad;
    body << v << "," << (rep.ok ? 1 : 0) << "," << rep.tied_nodes.size() << "\n";
  }
  emit_text(o, body.str());
  std::cerr << bad << " of " << g.node_count() << " roots fail uniqueness\n";
  return 0;
}

int run_build_graph(const CommonOpts& o, const std::string& points_path,
                    std::uint32_t m, const std::string& density) {
  ust::PointCloud pc = ust::read_points_file(points_path);
  ust::Clustering clustering = ust::farthest_point_clustering(pc, m, o.seed);
  ust::EdgeDensity d =
      density == "log" ? ust::EdgeDensity::log : ust::EdgeDensity::sqrt;
  ust::PhysicalGraph g = ust::build_random_graph(clustering.centroids, d, o.seed);
  std::ostringstream body;
  ust::write_graph(body, g);
  emit_text(o, body.str());
  return 0;
}

ust::DiscreteMeasure truncate_measure(const ust::DiscreteMeasure& m,
                                      std::size_t cap) {
  if (m.support_size() <= cap) return m;
  std::vector<ust::MassEntry> entries = m.entries();
  std::sort(entries.begin(), entries.end(),
            [](const ust::MassEntry& a, const ust::MassEntry& b) {
              if (a.mass != b.mass) return a.mass > b.mass;
              return a.node < b.node;
            });
  entries.resize(cap);
  return ust::new_measure(std::move(entries));
}

int run_oracle(const CommonOpts& o, double a1, bool a1_set,
               std::optional<double> wp, std::size_t i, std::size_t j) {
  ust::PhysicalGraph g = ust::read_graph_file(o.graph_path);
  ust::UstParams params = make_params(o, g);
  std::vector<ust::DiscreteMeasure> ms = load_measures(o, g);
  if (i >= ms.size() || j >= ms.size())
    throw ust::ParseError("pair indices exceed the measure list");
  ust::NodeId root = o.root.value_or(0);

  ust::TransportInstance inst =
      wp ? ust::wasserstein_instance(g, *wp, ms[i], ms[j])
         : ust::extend_problem(g, root, params, a1_set ? a1 : params.b, ms[i],
                               ms[j]);
  ust::TransportSolution sol = ust::solve_transportation(inst);
  ust::SolveCertificate cert = ust::certify(inst, sol);

  double value = sol.value;
  if (wp && *wp != 1.0) value = std::pow(std::max(0.0, value), 1.0 / *wp);

  nlohmann::json doc;
  doc["value"] = value;
  doc["plan_mass"] = sol.real_mass(inst);
  doc["dual_gap"] = cert.duality_gap;
  emit_text(o, doc.dump(2) + "\n");
  return 0;
}

int run_bench(const CommonOpts& o, std::size_t oracle_cap) {
  ust::PhysicalGraph g = ust::read_graph_file(o.graph_path);
  ust::UstParams params = make_params(o, g);
  std::vector<ust::DiscreteMeasure> ms = load_measures(o, g);
  ust::NodeId root = o.root.value_or(0);

  auto t0 = Clock::now();
  ust::RootedPreprocess pre = ust::shortest_path_tree(g, root, o.tie_tol);
  double preprocess_ms = elapsed_ms(t0);

  std::uint64_t pairs = 0;
  double pair_us_total = 0.0;
  double touched_total = 0.0;
  volatile double sink = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      auto t1 = Clock::now();
      sink = sink + ust::ust_distance(pre, params, ms[i], ms[j]);
      pair_us_total += elapsed_ms(t1) * 1000.0;
      touched_total += static_cast<double>(ust::touched_edge_count(pre, ms[i], ms[j]));
      ++pairs;
    }
  }
  if (pairs == 0) throw ust::ParseError("bench needs at least two measures");

  std::ostringstream body;
  body << "metric,value\n";
  body << "preprocess_ms," << ust::format_double(preprocess_ms) << "\n";
  body << "pairs," << pairs << "\n";
  body << "per_pair_us_mean," << ust::format_double(pair_us_total / static_cast<double>(pairs)) << "\n";
  body << "touched_edges_mean," << ust::format_double(touched_total / static_cast<double>(pairs)) << "\n";

  if (oracle_cap > 0) {
    ust::DiscreteMeasure mu = truncate_measure(ms[0], oracle_cap);
    ust::DiscreteMeasure nu = truncate_measure(ms[1], oracle_cap);
    auto t2 = Clock::now();
    double et = ust::et_lambda(g, root, params, params.b, mu, nu);
    double oracle_ms = elapsed_ms(t2);
    body << "oracle_ms," << ust::format_double(oracle_ms) << "\n";
    body << "oracle_value," << ust::format_double(et) << "\n";
  }
  emit_text(o, body.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unbalanced Sobolev transport on weighted graphs"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* dist = app.add_subcommand("dist", "pairwise distance matrix");
  dist->add_option("--graph", o.graph_path, "graph file")->required();
  dist->add_option("--measures", o.measures_path, "measures file")->required();
  add_param_flags(dist, o);
  add_root_flags(dist, o);
  add_output_flags(dist, o);

  double t = 1.0;
  auto* gram = app.add_subcommand("gram", "kernel matrix exp(-t d)");
  gram->add_option("--graph", o.graph_path, "graph file")->required();
  gram->add_option("--measures", o.measures_path, "measures file")->required();
  gram->add_option("--t", t, "bandwidth multiplier");
  add_param_flags(gram, o);
  add_root_flags(gram, o);
  add_output_flags(gram, o);

  auto* validate = app.add_subcommand("validate", "per-node root uniqueness report");
  validate->add_option("--graph", o.graph_path, "graph file")->required();
  validate->add_option("--tie-tol", o.tie_tol, "shortest-path tie tolerance");
  add_output_flags(validate, o);

  std::string points_path, density = "sqrt";
  std::uint32_t cluster_m = 0;
  auto* build = app.add_subcommand("build-graph", "cluster points, sample a random graph");
  build->add_option("--points", points_path, "point cloud file")->required();
  build->add_option("--m", cluster_m, "cluster count")->required();
  build->add_option("--density", density, "log or sqrt")
      ->check(CLI::IsMember({"log", "sqrt"}));
  build->add_option("--seed", o.seed, "seed for all randomness");
  add_output_flags(build, o);

  double a1 = 1.0;
  bool a1_set = false;
  std::optional<double> wp;
  std::size_t pair_i = 0, pair_j = 1;
  auto* oracle = app.add_subcommand("oracle", "exact LP reference values");
  oracle->add_option("--graph", o.graph_path, "graph file")->required();
  oracle->add_option("--measures", o.measures_path, "measures file")->required();
  oracle->add_option("--a1", a1, "weight slope (default b)")
      ->each([&](const std::string&) { a1_set = true; });
  oracle->add_option("--wp", wp, "compute p-Wasserstein of this order instead");
  oracle->add_option("--i", pair_i, "first measure index");
  oracle->add_option("--j", pair_j, "second measure index");
  add_param_flags(oracle, o);
  oracle->add_option("--root", o.root, "root for the weight functions");
  add_output_flags(oracle, o);

  std::size_t oracle_cap = 0;
  auto* bench = app.add_subcommand("bench", "timing rows for pair evaluation");
  bench->add_option("--graph", o.graph_path, "graph file")->required();
  bench->add_option("--measures", o.measures_path, "measures file")->required();
  bench->add_option("--with-oracle", oracle_cap,
                    "also time the LP oracle on supports truncated to this size");
  add_param_flags(bench, o);
  bench->add_option("--root", o.root, "preprocess root (default 0)");
  add_output_flags(bench, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*dist) return run_dist(o);
    if (*gram) return run_gram(o, t);
    if (*validate) return run_validate(o);
    if (*build) return run_build_graph(o, points_path, cluster_m, density);
    if (*oracle) return run_oracle(o, a1, a1_set, wp, pair_i, pair_j);
    if (*bench) return run_bench(o, oracle_cap);
  } catch (const ust::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.category()) {
      case ust::ErrorCategory::input: return 2;
      case ust::ErrorCategory::domain: return 3;
      case ust::ErrorCategory::internal: return 4;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
