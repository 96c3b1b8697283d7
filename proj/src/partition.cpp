#include "regionalize/partition.hpp"

#include <string>
#include <unordered_map>

#include "regionalize/error.hpp"

namespace regionalize {

Partition::Partition(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
  if (k_ < 1 && !labels_.empty()) {
    throw InvalidArgument("partition must have at least one region");
  }
  std::vector<int> counts(static_cast<std::size_t>(std::max(k_, 0)), 0);
  for (int label : labels_) {
    if (label < 0 || label >= k_) {
      throw InvalidArgument("region label " + std::to_string(label) + " outside [0, " +
                            std::to_string(k_) + ")");
    }
    ++counts[static_cast<std::size_t>(label)];
  }
  for (int r = 0; r < k_; ++r) {
    if (counts[static_cast<std::size_t>(r)] == 0) {
      throw InvalidArgument("region " + std::to_string(r) + " is empty");
    }
  }
}

Partition Partition::canonical(std::span<const int> raw) {
  std::unordered_map<int, int> remap;
  std::vector<int> labels;
  labels.reserve(raw.size());
  for (int label : raw) {
    auto [it, inserted] = remap.try_emplace(label, static_cast<int>(remap.size()));
    labels.push_back(it->second);
  }
  const int k = static_cast<int>(remap.size());
  return Partition(std::move(labels), k);
}

Partition Partition::single(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 0), 1); }

Partition Partition::singletons(int n) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i;
  return Partition(std::move(labels), n);
}

std::vector<int> Partition::sizes() const {
  std::vector<int> counts(static_cast<std::size_t>(k_), 0);
  for (int label : labels_) ++counts[static_cast<std::size_t>(label)];
  return counts;
}

std::vector<std::vector<int>> Partition::members() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(k_));
  for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(labels_[static_cast<std::size_t>(i)])].push_back(i);
  return out;
}

}  // namespace regionalize
