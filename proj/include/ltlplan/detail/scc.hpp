#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ltlplan::detail {

/// Tarjan's algorithm without recursion. Returns the component id of every
/// vertex; ids are assigned in reverse topological order of the condensation.
inline std::vector<std::uint32_t> strongly_connected_components(
    const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t* num_components = nullptr) {
    const std::uint32_t n = static_cast<std::uint32_t>(adj.size());
    constexpr std::uint32_t unvisited = UINT32_MAX;
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::uint32_t counter = 0, ncomp = 0;

    struct Frame {
        std::uint32_t v;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next < adj[f.v].size()) {
                std::uint32_t w = adj[f.v][f.next++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            std::uint32_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
        }
    }
    if (num_components) *num_components = ncomp;
    return comp;
}

/// Vertices reachable from `sources` (inclusive).
inline std::vector<bool> reachable_from(const std::vector<std::vector<std::uint32_t>>& adj,
                                        const std::vector<std::uint32_t>& sources) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<std::uint32_t> work;
    for (auto s : sources) {
        if (!seen[s]) {
            seen[s] = true;
            work.push_back(s);
        }
    }
    while (!work.empty()) {
        auto v = work.back();
        work.pop_back();
        for (auto w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                work.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace ltlplan::detail
