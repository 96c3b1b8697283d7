#include "regionalize/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "regionalize/csv.hpp"
#include "regionalize/error.hpp"
#include "regionalize/random.hpp"

namespace regionalize {

namespace fs = std::filesystem;

void Dataset::validate() const {
  const int n = size();
  if (n < 2) throw DataError("a dataset needs at least 2 units, found " + std::to_string(n));
  if (features.rows() != n) {
    throw DataError("feature matrix has " + std::to_string(features.rows()) + " rows for " +
                    std::to_string(n) + " units");
  }
  if (graph.size() != n) {
    throw DataError("constraint graph has " + std::to_string(graph.size()) + " vertices for " +
                    std::to_string(n) + " units");
  }
  if (coordinates && coordinates->rows() != n) throw DataError("coordinate count does not match units");
  std::unordered_map<std::string, int> seen;
  for (int i = 0; i < n; ++i) {
    if (!seen.emplace(unit_ids[static_cast<std::size_t>(i)], i).second) {
      throw DataError("duplicate unit_id '" + unit_ids[static_cast<std::size_t>(i)] + "'");
    }
  }
}

int Dataset::index_of(const std::string& unit_id) const {
  const auto it = std::find(unit_ids.begin(), unit_ids.end(), unit_id);
  return it == unit_ids.end() ? -1 : static_cast<int>(it - unit_ids.begin());
}

namespace {

std::unordered_map<std::string, int> index_units(const std::vector<std::string>& ids) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], static_cast<int>(i));
  return index;
}

}  // namespace

Dataset load_dataset(const fs::path& features_path, const fs::path& adjacency_path) {
  const auto ftable = csv::read(features_path);
  if (ftable.header.size() < 2) {
    throw DataError(features_path.string() + ": header must be unit_id followed by at least one feature");
  }
  const auto n = ftable.rows.size();
  const auto d = ftable.header.size() - 1;

  Dataset out;
  out.features.names.assign(ftable.header.begin() + 1, ftable.header.end());
  out.features.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  out.unit_ids.reserve(n);
  std::unordered_map<std::string, int> index;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = ftable.rows[r];
    const std::string where = features_path.string() + ":" + std::to_string(ftable.line_numbers[r]);
    if (row[0].empty()) throw DataError(where + ": empty unit_id");
    if (!index.emplace(row[0], static_cast<int>(r)).second) {
      throw DataError(where + ": duplicate unit_id '" + row[0] + "'");
    }
    out.unit_ids.push_back(row[0]);
    for (std::size_t c = 0; c < d; ++c) {
      out.features.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          csv::to_double(row[c + 1], where);
    }
  }

  const auto atable = csv::read(adjacency_path);
  if (atable.header.size() != 2) throw DataError(adjacency_path.string() + ": header must be src,dst");
  std::vector<Edge> edges;
  edges.reserve(atable.rows.size());
  for (std::size_t r = 0; r < atable.rows.size(); ++r) {
    const auto& row = atable.rows[r];
    const std::string where = adjacency_path.string() + ":" + std::to_string(atable.line_numbers[r]);
    const auto a = index.find(row[0]);
    const auto b = index.find(row[1]);
    if (a == index.end() || b == index.end()) {
      throw DataError(where + ": unknown unit_id '" + (a == index.end() ? row[0] : row[1]) + "'");
    }
    if (a->second == b->second) throw DataError(where + ": self-loop on '" + row[0] + "'");
    edges.emplace_back(a->second, b->second);
  }
  out.graph = ConstraintGraph(static_cast<int>(n), edges);
  out.validate();
  return out;
}

Dataset load_dataset_dir(const fs::path& dir) {
  Dataset out = load_dataset(dir / "features.csv", dir / "adjacency.csv");
  const auto coords_path = dir / "coords.csv";
  if (!fs::exists(coords_path)) return out;

  const auto table = csv::read(coords_path);
  if (table.header.size() != 3) throw DataError(coords_path.string() + ": header must be unit_id,x,y");
  const auto index = index_units(out.unit_ids);
  Eigen::MatrixX2d coords(out.size(), 2);
  std::vector<char> filled(static_cast<std::size_t>(out.size()), 0);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = coords_path.string() + ":" + std::to_string(table.line_numbers[r]);
    const auto it = index.find(row[0]);
    if (it == index.end()) throw DataError(where + ": unknown unit_id '" + row[0] + "'");
    coords(it->second, 0) = csv::to_double(row[1], where);
    coords(it->second, 1) = csv::to_double(row[2], where);
    filled[static_cast<std::size_t>(it->second)] = 1;
  }
  for (int i = 0; i < out.size(); ++i) {
    if (!filled[static_cast<std::size_t>(i)]) {
      throw DataError(coords_path.string() + ": missing coordinates for '" +
                      out.unit_ids[static_cast<std::size_t>(i)] + "'");
    }
  }
  out.coordinates = std::move(coords);
  return out;
}

void save_dataset(const Dataset& d, const fs::path& dir) {
  fs::create_directories(dir);
  std::ostringstream f;
  f << "unit_id";
  for (int c = 0; c < d.features.cols(); ++c) {
    const auto name = static_cast<std::size_t>(c) < d.features.names.size()
                          ? d.features.names[static_cast<std::size_t>(c)]
                          : "f" + std::to_string(c + 1);
    f << ',' << name;
  }
  f << '\n';
  for (int i = 0; i < d.size(); ++i) {
    f << d.unit_ids[static_cast<std::size_t>(i)];
    for (int c = 0; c < d.features.cols(); ++c) f << ',' << csv::format(d.features.values(i, c));
    f << '\n';
  }
  csv::write_file(dir / "features.csv", f.str());

  std::ostringstream a;
  a << "src,dst\n";
  for (const auto& [u, v] : d.graph.edges()) {
    a << d.unit_ids[static_cast<std::size_t>(u)] << ',' << d.unit_ids[static_cast<std::size_t>(v)] << '\n';
  }
  csv::write_file(dir / "adjacency.csv", a.str());

  if (d.coordinates) {
    std::ostringstream c;
    c << "unit_id,x,y\n";
    for (int i = 0; i < d.size(); ++i) {
      c << d.unit_ids[static_cast<std::size_t>(i)] << ',' << csv::format((*d.coordinates)(i, 0)) << ','
        << csv::format((*d.coordinates)(i, 1)) << '\n';
    }
    csv::write_file(dir / "coords.csv", c.str());
  }
}

std::vector<int> constant_columns(const Eigen::MatrixXd& values) {
  std::vector<int> out;
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    if (values.rows() == 0 || (values.col(c).array() == values(0, c)).all()) {
      out.push_back(static_cast<int>(c));
    }
  }
  return out;
}

FeatureMatrix standardize(const FeatureMatrix& f) {
  const auto n = f.values.rows();
  if (n < 2) throw DataError("standardization needs at least 2 rows");
  FeatureMatrix out{f.values, FeatureStage::standardized, f.names};
  for (Eigen::Index c = 0; c < f.values.cols(); ++c) {
    auto col = out.values.col(c);
    const double mean = col.mean();
    col.array() -= mean;
    const double var = col.squaredNorm() / static_cast<double>(n - 1);
    if (!(var > 0.0)) {
      const auto name = static_cast<std::size_t>(c) < f.names.size() ? f.names[static_cast<std::size_t>(c)]
                                                                      : std::to_string(c);
      throw DataError("feature '" + name + "' is constant and cannot be standardized");
    }
    col /= std::sqrt(var);
  }
  return out;
}

PcaResult principal_components(const Eigen::MatrixXd& z, double variance_target) {
  if (!(variance_target > 0.0 && variance_target <= 1.0)) {
    throw InvalidArgument("variance target must lie in (0, 1]");
  }
  const auto n = z.rows();
  const auto d = z.cols();
  if (n < 2 || d < 1) throw DataError("PCA needs at least 2 rows and 1 column");

  const Eigen::MatrixXd corr = (z.transpose() * z) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr);
  if (solver.info() != Eigen::Success) throw NumericalError("eigendecomposition of correlation matrix failed");

  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  const auto& evals = solver.eigenvalues();
  // Eigen returns ascending values; walk them descending with ties in index order.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return evals(a) > evals(b); });

  double total = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) total += std::max(evals(i), 0.0);
  if (!(total > 0.0)) throw DataError("no informative features");

  PcaResult out;
  out.explained.reserve(static_cast<std::size_t>(d));
  for (int idx : order) out.explained.push_back(std::max(evals(idx), 0.0) / total);

  double cumulative = 0.0;
  out.retained = static_cast<int>(d);
  for (int i = 0; i < d; ++i) {
    cumulative += out.explained[static_cast<std::size_t>(i)];
    if (cumulative >= variance_target - 1e-12) {
      out.retained = i + 1;
      break;
    }
  }

  out.loadings.resize(d, out.retained);
  for (int i = 0; i < out.retained; ++i) {
    Eigen::VectorXd v = solver.eigenvectors().col(order[static_cast<std::size_t>(i)]);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    out.loadings.col(i) = v;
  }
  out.scores = z * out.loadings;
  return out;
}

Dataset preprocess(const Dataset& d, double variance_target) {
  if (d.features.stage != FeatureStage::raw) throw InvalidArgument("preprocess expects raw features");
  if (!(variance_target > 0.0 && variance_target <= 1.0)) {
    throw InvalidArgument("variance target must lie in (0, 1]");
  }
  const auto dropped = constant_columns(d.features.values);
  if (static_cast<Eigen::Index>(dropped.size()) == d.features.values.cols()) {
    throw DataError("no informative features");
  }

  FeatureMatrix kept;
  kept.stage = FeatureStage::raw;
  kept.values.resize(d.features.values.rows(), d.features.values.cols() - static_cast<Eigen::Index>(dropped.size()));
  Eigen::Index out_col = 0;
  for (Eigen::Index c = 0; c < d.features.values.cols(); ++c) {
    if (std::binary_search(dropped.begin(), dropped.end(), static_cast<int>(c))) continue;
    kept.values.col(out_col++) = d.features.values.col(c);
    if (static_cast<std::size_t>(c) < d.features.names.size()) {
      kept.names.push_back(d.features.names[static_cast<std::size_t>(c)]);
    }
  }

  const FeatureMatrix z = standardize(kept);
  const PcaResult pca = principal_components(z.values, variance_target);

  Dataset out = d;
  out.features.values = pca.scores;
  out.features.stage = FeatureStage::reduced;
  out.features.names.clear();
  for (int i = 0; i < pca.retained; ++i) out.features.names.push_back("pc" + std::to_string(i + 1));
  return out;
}

void SyntheticSpec::validate() const {
  if (rows < 1 || cols < 1) throw InvalidArgument("lattice dimensions must be positive");
  if (rows * cols < 2) throw InvalidArgument("lattice must contain at least 2 units");
  if (static_cast<int>(planted_regions.size()) != rows * cols) {
    throw InvalidArgument("planted_regions has " + std::to_string(planted_regions.size()) +
                          " labels for a " + std::to_string(rows) + "x" + std::to_string(cols) + " lattice");
  }
  if (feature_dim < 1) throw InvalidArgument("feature_dim must be positive");
  if (!(noise_sigma >= 0.0)) throw InvalidArgument("noise_sigma must be nonnegative");
  if (!std::isfinite(separation)) throw InvalidArgument("separation must be finite");
  const int k = *std::max_element(planted_regions.begin(), planted_regions.end()) + 1;
  std::vector<char> used(static_cast<std::size_t>(std::max(k, 0)), 0);
  for (int label : planted_regions) {
    if (label < 0) throw InvalidArgument("planted region labels must be nonnegative");
    used[static_cast<std::size_t>(label)] = 1;
  }
  for (int r = 0; r < k; ++r) {
    if (!used[static_cast<std::size_t>(r)]) {
      throw InvalidArgument("planted region labels must be 0..k-1 without gaps (missing " + std::to_string(r) + ")");
    }
  }
}

std::vector<int> block_labels(int rows, int cols, int block_rows, int block_cols) {
  if (block_rows < 1 || block_cols < 1 || block_rows > rows || block_cols > cols) {
    throw InvalidArgument("block grid " + std::to_string(block_rows) + "x" + std::to_string(block_cols) +
                          " does not fit a " + std::to_string(rows) + "x" + std::to_string(cols) + " lattice");
  }
  std::vector<int> labels(static_cast<std::size_t>(rows * cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int br = r * block_rows / rows;
      const int bc = c * block_cols / cols;
      labels[static_cast<std::size_t>(r * cols + c)] = br * block_cols + bc;
    }
  }
  return labels;
}

std::vector<int> parse_blocks(const std::string& spec, int rows, int cols) {
  const auto text = std::string(csv::trim(spec));
  const auto x = text.find('x');
  if (x != std::string::npos && text.find(',') == std::string::npos) {
    const auto br = csv::to_integer(std::string(csv::trim(text.substr(0, x))), "blocks");
    const auto bc = csv::to_integer(std::string(csv::trim(text.substr(x + 1))), "blocks");
    return block_labels(rows, cols, static_cast<int>(br), static_cast<int>(bc));
  }
  std::vector<int> labels;
  for (const auto& field : csv::split(text)) {
    labels.push_back(static_cast<int>(csv::to_integer(field, "blocks")));
  }
  if (static_cast<int>(labels.size()) != rows * cols) {
    throw InvalidArgument("blocks label list has " + std::to_string(labels.size()) + " entries, expected " +
                          std::to_string(rows * cols));
  }
  return labels;
}

SyntheticSpec load_synthetic_spec(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::unordered_map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = csv::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    kv[std::string(csv::trim(body.substr(0, eq)))] = std::string(csv::trim(body.substr(eq + 1)));
  }

  SyntheticSpec spec;
  std::string blocks = "1x1";
  for (const auto& [key, value] : kv) {
    const std::string where = path.string() + ": " + key;
    if (key == "rows") spec.rows = static_cast<int>(csv::to_integer(value, where));
    else if (key == "cols") spec.cols = static_cast<int>(csv::to_integer(value, where));
    else if (key == "planted_regions") blocks = value;
    else if (key == "feature_dim") spec.feature_dim = static_cast<int>(csv::to_integer(value, where));
    else if (key == "noise_sigma") spec.noise_sigma = csv::to_double(value, where);
    else if (key == "seed") spec.seed = static_cast<std::uint64_t>(csv::to_integer(value, where));
    else if (key == "separation") spec.separation = csv::to_double(value, where);
    else throw DataError(path.string() + ": unknown key '" + key + "'");
  }
  spec.planted_regions = parse_blocks(blocks, spec.rows, spec.cols);
  spec.validate();
  return spec;
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const int rows = spec.rows;
  const int cols = spec.cols;
  const int n = rows * cols;
  const int d = spec.feature_dim;

  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  ConstraintGraph graph(n, edges);

  const Partition truth(spec.planted_regions, *std::max_element(spec.planted_regions.begin(),
                                                                spec.planted_regions.end()) + 1);
  for (const auto& region : truth.members()) {
    if (components(graph, region).size() != 1) {
      throw DataError("planted region " + std::to_string(truth[region.front()]) +
                      " is not connected on the lattice");
    }
  }

  Dataset ds;
  ds.unit_ids.reserve(static_cast<std::size_t>(n));
  ds.features.values.resize(n, d);
  ds.coordinates = Eigen::MatrixX2d(n, 2);
  for (int j = 0; j < d; ++j) ds.features.names.push_back("f" + std::to_string(j + 1));

  Rng rng(spec.seed);
  const double step = spec.separation / std::sqrt(static_cast<double>(d));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      ds.unit_ids.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
      (*ds.coordinates)(v, 0) = c;
      (*ds.coordinates)(v, 1) = r;
      const double mean = truth[v] * step;
      for (int j = 0; j < d; ++j) ds.features.values(v, j) = mean + spec.noise_sigma * rng.normal();
    }
  }
  ds.graph = std::move(graph);
  ds.validate();
  return {std::move(ds), truth};
}

}  // namespace regionalize
