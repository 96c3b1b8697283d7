#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "regionalize/dataset.hpp"
#include "regionalize/metrics.hpp"
#include "regionalize/partition.hpp"

namespace regionalize {

/// `unit_id,region` rows in dataset order, regions numbered from 1.
std::string format_labels(const Dataset& d, const Partition& p);
void write_labels(const std::filesystem::path& path, const Dataset& d, const Partition& p);

/// Reads a labels CSV against `d`'s units. Every unit must appear exactly
/// once; region values may be any integers and are relabeled by first
/// occurrence in dataset order.
Partition read_labels(const std::filesystem::path& path, const Dataset& d);

/// Flat JSON object: ssw, pct_ml, contiguity_c, cbalance, per_region
/// (array of {size, ssw, connected}).
nlohmann::ordered_json to_json(const MetricReport& r);

/// Pretty-printed JSON with a trailing newline.
std::string format_json(const nlohmann::ordered_json& j);

}  // namespace regionalize
