#pragma once

#include <vector>

namespace plim {

// Tarjan SCCs (iterative), components in reverse topological order.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adj);

}  // namespace plim
