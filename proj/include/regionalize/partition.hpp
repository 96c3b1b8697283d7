#pragma once

#include <span>
#include <vector>

namespace regionalize {

/// Assignment of N units to k regions. Region ids are 0-based internally;
/// file formats use 1-based ids.
class Partition {
 public:
  Partition() = default;

  /// Takes labels already in [0, k); throws InvalidArgument if a label is out
  /// of range or a region is empty.
  Partition(std::vector<int> labels, int k);

  /// Relabels arbitrary integer labels densely, in order of first occurrence.
  static Partition canonical(std::span<const int> raw);

  /// Everything in one region.
  static Partition single(int n);
  /// Every unit its own region.
  static Partition singletons(int n);

  [[nodiscard]] int size() const { return static_cast<int>(labels_.size()); }
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int operator[](int unit) const { return labels_[static_cast<std::size_t>(unit)]; }
  [[nodiscard]] const std::vector<int>& labels() const { return labels_; }

  [[nodiscard]] std::vector<int> sizes() const;
  /// Sorted member lists, one per region.
  [[nodiscard]] std::vector<std::vector<int>> members() const;
  /// Same partition, relabeled by first occurrence.
  [[nodiscard]] Partition canonicalized() const { return canonical(labels_); }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

}  // namespace regionalize
