#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "regionalize/affinity.hpp"
#include "regionalize/constraint_graph.hpp"
#include "regionalize/dataset.hpp"
#include "regionalize/error.hpp"
#include "regionalize/hierarchical.hpp"
#include "regionalize/kmeans.hpp"
#include "regionalize/metrics.hpp"
#include "regionalize/partitional.hpp"
#include "regionalize/spectral.hpp"

namespace py = pybind11;
using namespace regionalize;

namespace {

Partition to_partition(const std::vector<int>& labels) { return Partition::canonical(labels); }

std::vector<std::vector<int>> level_labels(const MergeTree& tree) {
  std::vector<std::vector<int>> out;
  for (const auto& p : tree.levels) out.push_back(p.labels());
  return out;
}

MethodConfig method_config(const std::string& method, int k, double delta, std::optional<double> sigma, int restarts,
                           std::uint64_t seed) {
  MethodConfig cfg;
  cfg.method = parse_method(method);
  cfg.k = k;
  cfg.delta = delta;
  cfg.sigma = sigma;
  cfg.kmeans_restarts = restarts;
  cfg.seed = seed;
  return cfg;
}

py::dict report_dict(const MetricReport& r) {
  py::list regions;
  for (const auto& reg : r.per_region) {
    py::dict d;
    d["size"] = reg.size;
    d["ssw"] = reg.ssw;
    d["connected"] = reg.connected;
    regions.append(d);
  }
  py::dict out;
  out["ssw"] = r.ssw;
  out["pct_ml"] = r.pct_ml;
  out["contiguity_c"] = r.contiguity_c;
  out["cbalance"] = r.cbalance;
  out["per_region"] = regions;
  return out;
}

}  // namespace

PYBIND11_MODULE(_regionalize, m) {
  m.doc() = "Spatially constrained spectral regionalization";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  py::class_<ConstraintGraph>(m, "ConstraintGraph")
      .def(py::init([](int n, const std::vector<Edge>& edges) { return ConstraintGraph(n, edges); }), py::arg("n"),
           py::arg("edges"))
      .def_property_readonly("size", &ConstraintGraph::size)
      .def_property_readonly("edges", &ConstraintGraph::edges)
      .def("degree", &ConstraintGraph::degree)
      .def("adjacency_matrix", &ConstraintGraph::adjacency_matrix)
      .def("diameter", [](const ConstraintGraph& g) { return diameter(g); })
      .def("components", [](const ConstraintGraph& g) { return components(g); })
      .def("binarized_kernel", [](const ConstraintGraph& g, int delta) { return binarized_kernel(g, delta).matrix; },
           py::arg("delta"))
      .def("truncated_kernel",
           [](const ConstraintGraph& g, int delta) { return truncated_exponential_kernel(g, delta).matrix; },
           py::arg("delta"))
      .def("exponential_kernel",
           [](const ConstraintGraph& g, double tol) { return exponential_kernel(g, tol).matrix; },
           py::arg("tolerance") = 1e-12);

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("unit_ids", &Dataset::unit_ids)
      .def_readonly("graph", &Dataset::graph)
      .def_property_readonly("features", [](const Dataset& d) { return d.features.values; })
      .def_property_readonly("feature_names", [](const Dataset& d) { return d.features.names; })
      .def_property_readonly("coordinates", [](const Dataset& d) { return d.coordinates; })
      .def_property_readonly("size", &Dataset::size)
      .def("preprocess", [](const Dataset& d, double target) { return preprocess(d, target); },
           py::arg("variance_target") = 0.85)
      .def("save", [](const Dataset& d, const std::filesystem::path& dir) { save_dataset(d, dir); });

  m.def("load_dataset", &load_dataset, py::arg("features_path"), py::arg("adjacency_path"));
  m.def("load_dataset_dir", &load_dataset_dir, py::arg("directory"));
  m.def(
      "generate_synthetic",
      [](int rows, int cols, const std::string& blocks, int feature_dim, double noise_sigma, std::uint64_t seed,
         double separation) {
        SyntheticSpec spec;
        spec.rows = rows;
        spec.cols = cols;
        spec.planted_regions = parse_blocks(blocks, rows, cols);
        spec.feature_dim = feature_dim;
        spec.noise_sigma = noise_sigma;
        spec.seed = seed;
        spec.separation = separation;
        auto data = generate_synthetic(spec);
        return py::make_tuple(data.dataset, data.truth.labels());
      },
      py::arg("rows") = 10, py::arg("cols") = 10, py::arg("blocks") = "1x2", py::arg("feature_dim") = 3,
      py::arg("noise_sigma") = 0.0, py::arg("seed") = kDefaultSeed, py::arg("separation") = 1.0,
      "Planted-region lattice; returns (dataset, truth labels).");

  m.def("median_sigma", &median_sigma, py::arg("features"));
  m.def(
      "rbf_similarity", [](const Eigen::MatrixXd& x, double sigma) { return rbf_similarity(x, sigma).values; },
      py::arg("features"), py::arg("sigma"));
  m.def(
      "combine_hadamard",
      [](const Eigen::MatrixXd& s, const Eigen::MatrixXd& sc) {
        return combine_hadamard({s, AffinityKind::feature}, sc).values;
      },
      py::arg("similarity"), py::arg("kernel"));
  m.def(
      "combine_weighted",
      [](const Eigen::MatrixXd& s, const Eigen::MatrixXd& c, double delta) {
        return combine_weighted({s, AffinityKind::feature}, c, delta).values;
      },
      py::arg("similarity"), py::arg("adjacency"), py::arg("delta"));
  m.def(
      "laplacian",
      [](const Eigen::MatrixXd& s) {
        auto lp = laplacian({s, AffinityKind::combined});
        return py::make_tuple(lp.laplacian, lp.degrees);
      },
      py::arg("affinity"), "Returns (L, degrees).");
  m.def(
      "generalized_eigs",
      [](const Eigen::MatrixXd& s, int k) {
        auto e = generalized_eigs(laplacian({s, AffinityKind::combined}), k);
        return py::make_tuple(e.eigenvalues, e.vectors);
      },
      py::arg("affinity"), py::arg("k"), "k smallest eigenpairs of L r = lambda D r; returns (values, vectors).");
  m.def(
      "kmeans",
      [](const Eigen::MatrixXd& x, int k, int restarts, std::uint64_t seed) {
        auto r = kmeans(x, k, restarts, seed);
        return py::make_tuple(r.partition.labels(), r.centroids, r.inertia);
      },
      py::arg("points"), py::arg("k"), py::arg("restarts") = 10, py::arg("seed") = kDefaultSeed);

  m.def(
      "delineate",
      [](const Dataset& d, const std::string& method, int k, double delta, std::optional<double> sigma, int restarts,
         std::uint64_t seed) {
        return delineate(d, method_config(method, k, delta, sigma, restarts, seed)).partition.labels();
      },
      py::arg("dataset"), py::arg("method") = "bssc", py::arg("k") = 2, py::arg("delta") = 1.0,
      py::arg("sigma") = py::none(), py::arg("restarts") = 10, py::arg("seed") = kDefaultSeed,
      "Partitional SSC / BSSC / SCM on a preprocessed dataset; returns 0-based labels.");
  m.def(
      "hssc",
      [](const Dataset& d, int k_max, const std::string& method, double delta, std::optional<double> sigma,
         int restarts, std::uint64_t seed) {
        const auto tree = hssc(d, method_config(method, 2, delta, sigma, restarts, seed), k_max);
        py::list splits;
        for (const auto& s : tree.splits) splits.append(py::make_tuple(s.level, s.parent, s.child, s.parent_ssw));
        return py::make_tuple(level_labels(tree), splits);
      },
      py::arg("dataset"), py::arg("k_max"), py::arg("method") = "bssc", py::arg("delta") = 1.0,
      py::arg("sigma") = py::none(), py::arg("restarts") = 10, py::arg("seed") = kDefaultSeed,
      "Returns (levels, splits); levels[k - 1] has k regions.");
  m.def(
      "agglomerative",
      [](const Dataset& d, const std::string& linkage, int delta, const std::string& kernel,
         const std::string& update, std::optional<double> sigma) {
        AgglomerativeConfig cfg;
        cfg.linkage = parse_linkage(linkage);
        cfg.delta = delta;
        if (kernel == "binarized") cfg.kernel = KernelKind::binarized;
        else if (kernel == "truncated") cfg.kernel = KernelKind::truncated;
        else throw InvalidArgument("unknown kernel '" + kernel + "'");
        if (update == "recompute") cfg.update = ConstraintUpdate::recompute;
        else if (update == "fixed") cfg.update = ConstraintUpdate::fixed;
        else throw InvalidArgument("unknown update '" + update + "'");
        cfg.sigma = sigma;
        const auto tree = agglomerative(d, cfg);
        py::list merges;
        for (const auto& mr : tree.merges) merges.append(py::make_tuple(mr.level, mr.first, mr.second, mr.linkage, mr.forced));
        return py::make_tuple(level_labels(tree), merges);
      },
      py::arg("dataset"), py::arg("linkage") = "single", py::arg("delta") = 1, py::arg("kernel") = "binarized",
      py::arg("update") = "recompute", py::arg("sigma") = py::none(),
      "Returns (levels, merges); levels[k - 1] has k regions.");

  m.def(
      "ssw", [](const Eigen::MatrixXd& x, const std::vector<int>& labels) { return ssw(x, to_partition(labels)); },
      py::arg("features"), py::arg("labels"));
  m.def(
      "pct_ml",
      [](const ConstraintGraph& g, const std::vector<int>& labels) { return pct_ml(g, to_partition(labels)); },
      py::arg("graph"), py::arg("labels"));
  m.def(
      "contiguity_c",
      [](const ConstraintGraph& g, const std::vector<int>& labels, double gamma) {
        return contiguity_c(g, to_partition(labels), gamma);
      },
      py::arg("graph"), py::arg("labels"), py::arg("gamma") = 1.0);
  m.def(
      "cbalance", [](const std::vector<int>& labels) { return cbalance(to_partition(labels)); }, py::arg("labels"));
  m.def(
      "adjusted_rand",
      [](const std::vector<int>& p, const std::vector<int>& q) {
        return adjusted_rand(to_partition(p), to_partition(q));
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "evaluate",
      [](const Dataset& d, const std::vector<int>& labels, double gamma) {
        return report_dict(evaluate(d, to_partition(labels), gamma));
      },
      py::arg("dataset"), py::arg("labels"), py::arg("gamma") = 1.0);
}
