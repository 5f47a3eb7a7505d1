#pragma once

#include <map>
#include <queue>
#include <set>
#include <vector>

#include "common.hpp"

namespace concgraph {

/// Depth-first cycle detector over a snapshot (3-colour, iterative).
inline bool oracle_cycle_check(const Snapshot& s) {
    std::map<Key, std::vector<Key>> adj;
    for (Key v : s.vertices) adj[v];
    for (auto& [u, v] : s.edges) adj[u].push_back(v);

    enum { White, Grey, Black };
    std::map<Key, int> colour;
    for (auto& [v, _] : adj) colour[v] = White;

    for (auto& [root, _] : adj) {
        if (colour[root] != White) continue;
        // stack of (vertex, next child index)
        std::vector<std::pair<Key, std::size_t>> stack{{root, 0}};
        colour[root] = Grey;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < adj[v].size()) {
                Key w = adj[v][i++];
                auto it = colour.find(w);
                if (it == colour.end()) continue;  // edge to unknown vertex
                if (it->second == Grey) return true;
                if (it->second == White) {
                    it->second = Grey;
                    stack.emplace_back(w, 0);
                }
            } else {
                colour[v] = Black;
                stack.pop_back();
            }
        }
    }
    return false;
}

/// Breadth-first reachability over a snapshot (path of length >= 1).
inline bool oracle_bfs_reachable(const Snapshot& s, Key from, Key to) {
    std::map<Key, std::vector<Key>> adj;
    std::set<Key> live(s.vertices.begin(), s.vertices.end());
    if (live.count(from) == 0) return false;
    for (auto& [u, v] : s.edges) adj[u].push_back(v);

    std::set<Key> seen;
    std::queue<Key> q;
    q.push(from);
    while (!q.empty()) {
        Key v = q.front();
        q.pop();
        for (Key w : adj[v]) {
            if (w == to) return true;
            if (live.count(w) != 0 && seen.insert(w).second) q.push(w);
        }
    }
    return false;
}

}  // namespace concgraph
