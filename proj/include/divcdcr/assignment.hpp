#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace divcdcr {

// Maximum-weight bipartite matching (Kuhn-Munkres with potentials, O(n^3)).
// weights is rows x cols, possibly rectangular. Returns, for every row, the
// matched column or nullopt when there are more rows than columns.
std::vector<std::optional<std::size_t>> max_weight_assignment(
    const std::vector<std::vector<double>>& weights);

}  // namespace divcdcr
