#include "regionalize/io.hpp"

#include <sstream>
#include <unordered_map>
#include <vector>

#include "regionalize/csv.hpp"
#include "regionalize/error.hpp"

namespace regionalize {

std::string format_labels(const Dataset& d, const Partition& p) {
  if (p.size() != d.size()) throw InvalidArgument("partition size does not match the dataset");
  std::ostringstream out;
  out << "unit_id,region\n";
  for (int i = 0; i < d.size(); ++i) out << d.unit_ids[static_cast<std::size_t>(i)] << ',' << p[i] + 1 << '\n';
  return out.str();
}

void write_labels(const std::filesystem::path& path, const Dataset& d, const Partition& p) {
  csv::write_file(path, format_labels(d, p));
}

Partition read_labels(const std::filesystem::path& path, const Dataset& d) {
  const auto table = csv::read(path);
  if (table.header.size() != 2) throw DataError(path.string() + ": header must be unit_id,region");
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < d.size(); ++i) index.emplace(d.unit_ids[static_cast<std::size_t>(i)], i);

  std::vector<long long> raw(static_cast<std::size_t>(d.size()));
  std::vector<char> seen(static_cast<std::size_t>(d.size()), 0);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = path.string() + ":" + std::to_string(table.line_numbers[r]);
    const auto it = index.find(row[0]);
    if (it == index.end()) throw DataError(where + ": unknown unit_id '" + row[0] + "'");
    if (seen[static_cast<std::size_t>(it->second)]) throw DataError(where + ": duplicate unit_id '" + row[0] + "'");
    seen[static_cast<std::size_t>(it->second)] = 1;
    raw[static_cast<std::size_t>(it->second)] = csv::to_integer(row[1], where);
  }
  for (int i = 0; i < d.size(); ++i) {
    if (!seen[static_cast<std::size_t>(i)]) {
      throw DataError(path.string() + ": no label for unit '" + d.unit_ids[static_cast<std::size_t>(i)] + "'");
    }
  }
  std::unordered_map<long long, int> remap;
  std::vector<int> labels;
  labels.reserve(raw.size());
  for (long long v : raw) labels.push_back(remap.try_emplace(v, static_cast<int>(remap.size())).first->second);
  return Partition::canonical(labels);
}

nlohmann::ordered_json to_json(const MetricReport& r) {
  nlohmann::ordered_json j;
  j["ssw"] = r.ssw;
  j["pct_ml"] = r.pct_ml;
  j["contiguity_c"] = r.contiguity_c;
  j["cbalance"] = r.cbalance;
  auto regions = nlohmann::ordered_json::array();
  for (const auto& region : r.per_region) {
    regions.push_back({{"size", region.size}, {"ssw", region.ssw}, {"connected", region.connected}});
  }
  j["per_region"] = std::move(regions);
  return j;
}

std::string format_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace regionalize
