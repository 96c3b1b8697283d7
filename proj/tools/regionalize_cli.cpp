// regionalize: command-line front end.
//
// Exit status: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "regionalize/constraint_graph.hpp"
#include "regionalize/csv.hpp"
#include "regionalize/dataset.hpp"
#include "regionalize/error.hpp"
#include "regionalize/hierarchical.hpp"
#include "regionalize/io.hpp"
#include "regionalize/metrics.hpp"
#include "regionalize/partitional.hpp"
#include "regionalize/render.hpp"

namespace fs = std::filesystem;
using namespace regionalize;

namespace {

struct DataArgs {
  std::string features;
  std::string adjacency;
  std::string dir;
  double variance_target = 0.85;
};

void add_data_options(CLI::App* cmd, DataArgs& a, bool with_preprocess = true) {
  cmd->add_option("--features", a.features, "features CSV (unit_id,f1,...)");
  cmd->add_option("--adjacency", a.adjacency, "adjacency CSV (src,dst)");
  cmd->add_option("--dataset", a.dir, "directory with features.csv and adjacency.csv");
  if (with_preprocess) {
    cmd->add_option("--variance-target", a.variance_target, "PCA explained-variance target")
        ->check(CLI::Range(0.0, 1.0));
  }
}

Dataset load_raw(const DataArgs& a) {
  if (!a.dir.empty()) {
    if (!a.features.empty() || !a.adjacency.empty()) {
      throw InvalidArgument("give either --dataset or --features/--adjacency, not both");
    }
    return load_dataset_dir(a.dir);
  }
  if (a.features.empty() || a.adjacency.empty()) {
    throw InvalidArgument("--features and --adjacency are required (or --dataset DIR)");
  }
  return load_dataset(a.features, a.adjacency);
}

Dataset load_prepared(const DataArgs& a) {
  if (!(a.variance_target > 0.0)) throw InvalidArgument("--variance-target must be in (0, 1]");
  return preprocess(load_raw(a), a.variance_target);
}

std::optional<double> parse_sigma(const std::string& s) {
  if (s.empty() || s == "median") return std::nullopt;
  const double v = csv::to_double(s, "--sigma");
  if (!(v > 0.0)) throw InvalidArgument("--sigma must be positive or 'median'");
  return v;
}

struct MethodArgs {
  std::string method = "bssc";
  int k = 2;
  double delta = 1.0;
  std::optional<double> delta_fraction;
  std::string sigma = "median";
  std::uint64_t seed = kDefaultSeed;
  int restarts = 10;
  bool normalize_rows = false;
};

void add_method_options(CLI::App* cmd, MethodArgs& m, bool with_delta = true) {
  cmd->add_option("--k", m.k, "number of regions");
  if (with_delta) {
    auto* hops = cmd->add_option("--delta", m.delta, "hop radius (ssc/bssc) or weight in [0,1] (scm)");
    cmd->add_option("--delta-fraction", m.delta_fraction, "hop radius as a fraction of the graph diameter")
        ->excludes(hops);
  }
  cmd->add_option("--sigma", m.sigma, "RBF bandwidth, or 'median'");
  cmd->add_option("--seed", m.seed, "random seed");
  cmd->add_option("--restarts", m.restarts, "k-means restarts");
  cmd->add_flag("--normalize-rows", m.normalize_rows, "unit-length embedding rows before k-means");
}

MethodConfig to_config(const MethodArgs& m, const Dataset& d, double delta) {
  MethodConfig cfg;
  cfg.method = parse_method(m.method);
  cfg.delta = delta;
  cfg.k = m.k;
  cfg.sigma = parse_sigma(m.sigma);
  cfg.kmeans_restarts = m.restarts;
  cfg.seed = m.seed;
  cfg.normalize_rows = m.normalize_rows;
  if (cfg.k > d.size()) throw InvalidArgument("--k exceeds the number of units");
  cfg.validate();
  return cfg;
}

double resolve_delta(const MethodArgs& m, const Dataset& d) {
  if (!m.delta_fraction) return m.delta;
  const double f = *m.delta_fraction;
  if (f < 0.0 || f > 1.0) throw InvalidArgument("--delta-fraction must be in [0, 1]");
  if (parse_method(m.method) == Method::scm) return f;
  return hops_from_fraction(f, diameter(d.graph));
}

void write_text(const fs::path& path, const std::string& text) { csv::write_file(path, text); }

// delineate ---------------------------------------------------------------

struct DelineateArgs {
  DataArgs data;
  MethodArgs method;
  double gamma = 1.0;
  std::string out;
};

int run_delineate(const DelineateArgs& a) {
  const Dataset d = load_prepared(a.data);
  const MethodConfig cfg = to_config(a.method, d, resolve_delta(a.method, d));
  const Delineation result = delineate(d, cfg);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

  auto json = to_json(evaluate(d, result.partition, a.gamma));
  json["method"] = to_string(cfg.method);
  json["k"] = cfg.k;
  json["delta"] = cfg.delta;
  json["sigma"] = result.sigma;
  json["seed"] = cfg.seed;
  const fs::path out(a.out);
  write_labels(out / "labels.csv", d, result.partition);
  write_text(out / "metrics.json", format_json(json));
  return 0;
}

// hierarchy ---------------------------------------------------------------

struct HierarchyArgs {
  DataArgs data;
  MethodArgs method;
  std::string linkage = "hssc";
  std::string kernel = "binarized";
  std::string update = "recompute";
  int kmax = 10;
  std::vector<int> levels;
  std::string out;
};

int run_hierarchy(const HierarchyArgs& a) {
  const Dataset d = load_prepared(a.data);
  if (a.kmax < 1) throw InvalidArgument("--kmax must be positive");
  const KernelKind kernel = a.kernel == "binarized"   ? KernelKind::binarized
                            : a.kernel == "truncated" ? KernelKind::truncated
                                                      : throw InvalidArgument("unknown kernel '" + a.kernel + "'");
  const double delta = resolve_delta(a.method, d);

  MergeTree tree;
  if (a.linkage == "hssc") {
    MethodArgs m = a.method;
    m.method = kernel == KernelKind::binarized ? "bssc" : "ssc";
    m.k = 2;
    tree = hssc(d, to_config(m, d, delta), a.kmax);
  } else {
    AgglomerativeConfig cfg;
    cfg.linkage = parse_linkage(a.linkage);
    if (delta != std::floor(delta) || delta < 0) throw InvalidArgument("--delta must be a nonnegative integer");
    cfg.delta = static_cast<int>(delta);
    cfg.kernel = kernel;
    cfg.sigma = parse_sigma(a.method.sigma);
    if (a.update == "recompute") {
      cfg.update = ConstraintUpdate::recompute;
    } else if (a.update == "fixed") {
      cfg.update = ConstraintUpdate::fixed;
    } else {
      throw InvalidArgument("unknown --update '" + a.update + "'");
    }
    tree = agglomerative(d, cfg);
  }

  std::vector<int> levels = a.levels;
  if (levels.empty()) {
    for (int k = 1; k <= std::min(a.kmax, tree.max_level()); ++k) levels.push_back(k);
  }
  const fs::path out(a.out);
  write_text(out / "merge_log.csv", format_merge_log(tree));
  for (int k : levels) write_labels(out / ("labels_k" + std::to_string(k) + ".csv"), d, tree.at(k));
  return 0;
}

// sweep -------------------------------------------------------------------

struct SweepArgs {
  DataArgs data;
  MethodArgs method;
  std::string grid;
  bool normalized = false;
  double gamma = 1.0;
  std::string out;
};

std::vector<double> parse_grid(const std::string& text) {
  const auto parts = csv::split(text, ':');
  std::vector<double> values;
  if (parts.size() == 1) {
    values.push_back(csv::to_double(parts[0], "--delta-grid"));
    return values;
  }
  if (parts.size() != 3) throw InvalidArgument("--delta-grid must be a:b:step");
  const double a = csv::to_double(parts[0], "--delta-grid");
  const double b = csv::to_double(parts[1], "--delta-grid");
  const double step = csv::to_double(parts[2], "--delta-grid");
  if (!(step > 0.0)) throw InvalidArgument("--delta-grid step must be positive");
  const double slack = 1e-9 * std::max(1.0, std::fabs(b));
  for (long i = 0;; ++i) {
    const double v = a + static_cast<double>(i) * step;
    if (v > b + slack) break;
    values.push_back(v);
  }
  if (values.empty()) throw InvalidArgument("--delta-grid is empty");
  return values;
}

int run_sweep(const SweepArgs& a) {
  const std::vector<double> grid = parse_grid(a.grid);
  const Dataset d = load_prepared(a.data);
  const bool hops = parse_method(a.method.method) != Method::scm;
  const int diam = a.normalized && hops ? diameter(d.graph) : 0;

  std::ostringstream out;
  out << "delta,pct_ml,c,ssw,cbalance\n";
  for (double g : grid) {
    double delta = g;
    if (a.normalized && hops) {
      if (g < 0.0 || g > 1.0) throw InvalidArgument("normalized grid values must lie in [0, 1]");
      delta = hops_from_fraction(g, diam);
    }
    const MethodConfig cfg = to_config(a.method, d, delta);
    const Delineation result = delineate(d, cfg);
    for (const auto& w : result.warnings) std::cerr << "warning: delta " << csv::format(g) << ": " << w << '\n';
    const MetricReport r = evaluate(d, result.partition, a.gamma);
    out << csv::format(g) << ',' << csv::format(r.pct_ml) << ',' << csv::format(r.contiguity_c) << ','
        << csv::format(r.ssw) << ',' << csv::format(r.cbalance) << '\n';
  }
  write_text(a.out, out.str());
  return 0;
}

// synth -------------------------------------------------------------------

struct SynthArgs {
  std::string spec_file;
  int rows = 10;
  int cols = 10;
  std::string blocks = "1x2";
  int dim = 3;
  double sigma = 0.0;
  double separation = 1.0;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

int run_synth(const SynthArgs& a, const CLI::App& cmd) {
  SyntheticSpec spec;
  if (!a.spec_file.empty()) spec = load_synthetic_spec(a.spec_file);
  auto given = [&](const char* name) { return a.spec_file.empty() || cmd.count(name) > 0; };
  if (given("--rows")) spec.rows = a.rows;
  if (given("--cols")) spec.cols = a.cols;
  if (given("--dim")) spec.feature_dim = a.dim;
  if (given("--sigma")) spec.noise_sigma = a.sigma;
  if (given("--separation")) spec.separation = a.separation;
  if (given("--seed")) spec.seed = a.seed;
  if (given("--blocks") || spec.planted_regions.empty() ||
      spec.planted_regions.size() != static_cast<std::size_t>(spec.rows) * static_cast<std::size_t>(spec.cols)) {
    if (spec.rows < 1 || spec.cols < 1) throw InvalidArgument("--rows and --cols must be positive");
    spec.planted_regions = parse_blocks(a.blocks, spec.rows, spec.cols);
  }
  spec.validate();

  const SyntheticData data = generate_synthetic(spec);
  const fs::path out(a.out);
  save_dataset(data.dataset, out);
  write_labels(out / "truth.csv", data.dataset, data.truth);
  return 0;
}

// eval --------------------------------------------------------------------

struct EvalArgs {
  DataArgs data;
  std::string labels;
  std::string labels2;
  double gamma = 1.0;
  std::string out;
};

int run_eval(const EvalArgs& a) {
  const Dataset d = load_prepared(a.data);
  const Partition p = read_labels(a.labels, d);
  auto json = to_json(evaluate(d, p, a.gamma));
  if (!a.labels2.empty()) json["ari"] = adjusted_rand(p, read_labels(a.labels2, d));
  const std::string text = format_json(json);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
  return 0;
}

// render ------------------------------------------------------------------

struct RenderArgs {
  std::string labels;
  std::string dir;
  int cell = 24;
  std::string out;
};

int run_render(const RenderArgs& a) {
  const Dataset d = load_dataset_dir(a.dir);
  write_text(a.out, render_svg(d, read_labels(a.labels, d), a.cell));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatially constrained spectral regionalization"};
  app.set_config("--config", "", "TOML/INI file with option values; flags override it");
  app.require_subcommand(1);
  app.set_version_flag("--version", "regionalize 0.1.0");

  DelineateArgs del;
  auto* c_del = app.add_subcommand("delineate", "partitional SSC / BSSC / SCM");
  add_data_options(c_del, del.data);
  add_method_options(c_del, del.method);
  c_del->add_option("--method", del.method.method, "ssc, bssc or scm")->check(CLI::IsMember({"ssc", "bssc", "scm"}));
  c_del->add_option("--gamma", del.gamma, "contiguity distance-decay exponent");
  c_del->add_option("--out", del.out, "output directory")->required();

  HierarchyArgs hier;
  auto* c_hier = app.add_subcommand("hierarchy", "HSSC or constrained agglomerative clustering");
  add_data_options(c_hier, hier.data);
  add_method_options(c_hier, hier.method);
  c_hier->add_option("--method", hier.linkage, "hssc, single, complete, upgma or ward")
      ->check(CLI::IsMember({"hssc", "single", "complete", "upgma", "ward"}));
  c_hier->add_option("--kernel", hier.kernel, "binarized or truncated")
      ->check(CLI::IsMember({"binarized", "truncated"}));
  c_hier->add_option("--update", hier.update, "agglomerative constraint handling: recompute or fixed")
      ->check(CLI::IsMember({"recompute", "fixed"}));
  c_hier->add_option("--kmax", hier.kmax, "deepest HSSC level / highest level written");
  c_hier->add_option("--levels", hier.levels, "region counts to write labels for")->delimiter(',');
  c_hier->add_option("--out", hier.out, "output directory")->required();

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "metrics over a grid of delta values");
  add_data_options(c_sweep, sweep.data);
  add_method_options(c_sweep, sweep.method, false);
  c_sweep->add_option("--method", sweep.method.method, "ssc, bssc or scm")
      ->check(CLI::IsMember({"ssc", "bssc", "scm"}));
  c_sweep->add_option("--delta-grid", sweep.grid, "a:b:step (inclusive) or a single value")->required();
  c_sweep->add_flag("--normalized", sweep.normalized, "grid values are fractions of the graph diameter");
  c_sweep->add_option("--gamma", sweep.gamma, "contiguity distance-decay exponent");
  c_sweep->add_option("--out", sweep.out, "output CSV file")->required();

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "planted-region lattice dataset");
  c_synth->add_option("--spec", synth.spec_file, "key = value spec file; flags override it");
  c_synth->add_option("--rows", synth.rows, "lattice rows");
  c_synth->add_option("--cols", synth.cols, "lattice columns");
  c_synth->add_option("--blocks", synth.blocks, "BRxBC block grid or row-major label list");
  c_synth->add_option("--dim", synth.dim, "feature dimension");
  c_synth->add_option("--sigma", synth.sigma, "noise standard deviation");
  c_synth->add_option("--separation", synth.separation, "distance between consecutive region means");
  c_synth->add_option("--seed", synth.seed, "random seed");
  c_synth->add_option("--out", synth.out, "output directory")->required();

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "metrics of a labeling (and ARI against a second one)");
  add_data_options(c_eval, ev.data);
  c_eval->add_option("--labels", ev.labels, "labels CSV (unit_id,region)")->required();
  c_eval->add_option("--labels2", ev.labels2, "second labels CSV for ARI");
  c_eval->add_option("--gamma", ev.gamma, "contiguity distance-decay exponent");
  c_eval->add_option("--out", ev.out, "write JSON here instead of stdout");

  RenderArgs rend;
  auto* c_rend = app.add_subcommand("render", "SVG region map of a lattice dataset");
  c_rend->add_option("--labels", rend.labels, "labels CSV")->required();
  c_rend->add_option("--dataset", rend.dir, "dataset directory with coords.csv")->required();
  c_rend->add_option("--cell", rend.cell, "cell size in pixels");
  c_rend->add_option("--out", rend.out, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*c_del) return run_delineate(del);
    if (*c_hier) return run_hierarchy(hier);
    if (*c_sweep) return run_sweep(sweep);
    if (*c_synth) return run_synth(synth, *c_synth);
    if (*c_eval) return run_eval(ev);
    if (*c_rend) return run_render(rend);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
