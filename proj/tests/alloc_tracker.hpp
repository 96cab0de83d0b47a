#pragma once

// Heap accounting through replaced global operator new/delete. Link
// alloc_tracker.cpp into a binary to enable it.

#include <cstddef>

namespace wsc_test::alloc {

std::size_t current_bytes();
std::size_t peak_bytes();
// Resets the peak to the current live total.
void reset_peak();

/// Peak live heap over a scope, relative to the live total at entry.
class PeakScope {
 public:
  PeakScope() : base_(current_bytes()) { reset_peak(); }
  std::size_t extra_bytes() const { return peak_bytes() - base_; }

 private:
  std::size_t base_;
};

}  // namespace wsc_test::alloc
