#pragma once

#include "pudg/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pudg {

// Square assignment problems. Result: column chosen for each row, or nullopt when the
// allowed cells admit no perfect matching.

// Minimum total cost; nullopt cells are forbidden.
std::optional<std::vector<std::size_t>> min_cost_assignment(
    const std::vector<std::vector<std::optional<std::int64_t>>>& cost);

// Maximum product of weights; zero weights are forbidden. Exact, no logarithms.
std::optional<std::vector<std::size_t>> max_product_assignment(const std::vector<std::vector<Rational>>& weight);

}  // namespace pudg
