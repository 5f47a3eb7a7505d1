#pragma once

#include <random>
#include <vector>

#include "workload.hpp"

namespace concgraph::bench {

/// Planned initial edges over vertices 1..n: every (i,j) with i<j when
/// density is 1 (key-ascending orientation, hence acyclic by construction),
/// otherwise each pair kept with probability `density`.
inline std::vector<std::pair<Key, Key>> plan_initial_edges(int n, double density,
                                                           std::uint64_t seed) {
    std::vector<std::pair<Key, Key>> edges;
    std::mt19937_64 rng(seed ^ 0xA5EEDull);
    std::bernoulli_distribution keep(density);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (density >= 1.0 || keep(rng)) edges.emplace_back(i, j);
        }
    }
    return edges;
}

/// Seeds vertices 1..initial_vertices and the planned edge set into the graph
/// (bulk construction; the graph must be quiescent).
inline void seed_initial_graph(GraphApi& g, const WorkloadSpec& spec) {
    std::vector<Key> vertices;
    vertices.reserve(static_cast<std::size_t>(spec.initial_vertices));
    for (int i = 1; i <= spec.initial_vertices; ++i) vertices.push_back(i);
    g.bulk_load(vertices, plan_initial_edges(spec.initial_vertices, spec.density, spec.seed));
}

}  // namespace concgraph::bench
