#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wsc/error.hpp"
#include "wsc/pattern.hpp"

namespace wsc {

/// Set partition of {0, ..., m-1}, stored as a restricted growth string:
/// block_of[v] is the block of v, blocks numbered by first appearance.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> rgs) : block_of_(std::move(rgs)) {
    int next = 0;
    for (int b : block_of_) {
      if (b < 0 || b > next) throw Error(ErrorCode::kParseError, "not a restricted growth string");
      if (b == next) ++next;
    }
    blocks_.resize(static_cast<std::size_t>(next));
    for (std::size_t v = 0; v < block_of_.size(); ++v) blocks_[block_of_[v]].push_back(static_cast<int>(v));
  }

  int element_count() const noexcept { return static_cast<int>(block_of_.size()); }
  int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
  const std::vector<int>& block_of() const noexcept { return block_of_; }
  const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }

  /// Block sizes in nonincreasing order.
  std::vector<int> signature() const {
    std::vector<int> sizes;
    for (const auto& b : blocks_) sizes.push_back(static_cast<int>(b.size()));
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
  }

  /// "2+1+1"
  std::string signature_string() const {
    std::string out;
    for (int s : signature()) {
      if (!out.empty()) out += '+';
      out += std::to_string(s);
    }
    return out;
  }

  /// "{1,3}{2}" with 1-based elements.
  std::string to_string() const {
    std::string out;
    for (const auto& b : blocks_) {
      out += '{';
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i != 0) out += ',';
        out += std::to_string(b[i] + 1);
      }
      out += '}';
    }
    return out;
  }

  bool is_finest() const noexcept { return block_count() == element_count(); }

  friend bool operator==(const Partition& a, const Partition& b) { return a.block_of_ == b.block_of_; }

 private:
  std::vector<int> block_of_;
  std::vector<std::vector<int>> blocks_;
};

/// All set partitions of m elements in lexicographic restricted-growth-string
/// order (the single block first, the finest partition last).
inline std::vector<Partition> enumerate_partitions(int m) {
  if (m < 2 || m > kMaxPatternVertices) {
    throw Error(ErrorCode::kUnsupportedSize, "partitions supported for 2 <= m <= 8, got " + std::to_string(m));
  }
  std::vector<Partition> out;
  std::vector<int> rgs(static_cast<std::size_t>(m), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(m), 0);  // max of rgs[0..i]
  while (true) {
    out.emplace_back(rgs);
    // Rightmost position that can still grow.
    int i = m - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (int j = i + 1; j < m; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

/// mu(0, sigma) = (-1)^(m - k) * prod over blocks of (|B| - 1)!
inline std::int64_t mobius_coefficient(const Partition& p) {
  std::int64_t value = 1;
  for (const auto& b : p.blocks()) {
    for (std::int64_t f = 2; f < static_cast<std::int64_t>(b.size()); ++f) value *= f;
  }
  return (p.element_count() - p.block_count()) % 2 == 0 ? value : -value;
}

}  // namespace wsc
