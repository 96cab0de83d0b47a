#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace wsc {

/// Value of one plan term before its coefficient is applied.
struct TermValue {
  std::int64_t coefficient = 0;
  std::string signature;   // block sizes, "2+1+1"
  std::string contracted;  // contracted pattern literal
  double value = 0.0;
};

struct CountResult {
  std::string pattern;  // catalog id or literal spec
  double labeled = 0.0;
  double unlabeled = 0.0;
  std::string method;   // "closed", "engine" or "oracle"
  std::size_t n = 0;
  std::uint64_t aut_count = 1;
  std::vector<TermValue> terms;  // engine only, when requested

  /// Sets L and derives the unlabeled count L / |Aut|.
  void set_labeled(double value) {
    labeled = value;
    unlabeled = value / static_cast<double>(aut_count);
  }
};

}  // namespace wsc
