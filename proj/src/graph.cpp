#include "plim/graph.hpp"

#include <algorithm>

namespace plim {

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adj) {
    int n = static_cast<int>(adj.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> onstack(n, false);
    std::vector<int> stk;
    std::vector<std::vector<int>> out;
    int counter = 0;

    // explicit stack: (vertex, next-edge-index)
    std::vector<std::pair<int, size_t>> call;
    for (int s = 0; s < n; ++s) {
        if (index[s] != -1) continue;
        call.push_back({s, 0});
        while (!call.empty()) {
            auto& [v, ei] = call.back();
            if (ei == 0) {
                index[v] = low[v] = counter++;
                stk.push_back(v);
                onstack[v] = true;
            }
            bool descended = false;
            while (ei < adj[v].size()) {
                int w = adj[v][ei++];
                if (index[w] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (onstack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                std::vector<int> c;
                int w;
                do {
                    w = stk.back();
                    stk.pop_back();
                    onstack[w] = false;
                    comp[w] = static_cast<int>(out.size());
                    c.push_back(w);
                } while (w != v);
                std::sort(c.begin(), c.end());
                out.push_back(std::move(c));
            }
            int done = v;
            call.pop_back();
            if (!call.empty()) {
                int parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return out;
}

}  // namespace plim
