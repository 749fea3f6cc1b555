#pragma once

#include <cstddef>
#include <vector>

namespace pudg {

struct HittingSetResult {
  std::vector<std::size_t> chosen;  // sorted element ids
  bool exact = true;
};

// Smallest set of elements meeting every family member (elements are 0..universe-1).
// Branch and bound when the total family size is at most exact_cap, greedy otherwise.
HittingSetResult min_hitting_set(const std::vector<std::vector<std::size_t>>& family, std::size_t universe,
                                 std::size_t exact_cap = 64);

}  // namespace pudg
