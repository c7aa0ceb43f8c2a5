#include "divcdcr/assignment.hpp"

#include <algorithm>
#include <limits>

namespace divcdcr {

std::vector<std::optional<std::size_t>> max_weight_assignment(
    const std::vector<std::vector<double>>& weights) {
  const std::size_t rows = weights.size();
  std::size_t cols = 0;
  for (const auto& row : weights) cols = std::max(cols, row.size());
  std::vector<std::optional<std::size_t>> result(rows);
  if (rows == 0 || cols == 0) return result;

  // Square cost matrix, 1-indexed, minimizing (max - weight). Padding cells
  // cost max, i.e. weight 0.
  const std::size_t n = std::max(rows, cols);
  double top = 0.0;
  for (const auto& row : weights) {
    for (double w : row) top = std::max(top, w);
  }
  auto cost = [&](std::size_t i, std::size_t j) {
    if (i > rows || j > cols || j > weights[i - 1].size()) return top;
    return top - weights[i - 1][j - 1];
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0);  // column -> row
  std::vector<std::size_t> way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> min_slack(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = match[j];
    if (i >= 1 && i <= rows && j <= cols) result[i - 1] = j - 1;
  }
  return result;
}

}  // namespace divcdcr
