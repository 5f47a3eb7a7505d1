#pragma once

#include "../oracle.hpp"

namespace concgraph::verify {

/// True iff the graph's snapshot (confirmed edges over live vertices) is
/// acyclic. Callable at quiescence or under a stop-the-world probe.
template <typename Graph>
bool audit_acyclicity(const Graph& g) {
    return !oracle_cycle_check(g.snapshot());
}

/// Structural audit shared by tests: sortedness and uniqueness of the
/// snapshot listing (the snapshot walk itself returns keys in list order).
inline bool audit_sorted_unique(const Snapshot& s) {
    for (std::size_t i = 1; i < s.vertices.size(); ++i) {
        if (s.vertices[i - 1] >= s.vertices[i]) return false;
    }
    for (std::size_t i = 1; i < s.edges.size(); ++i) {
        if (s.edges[i - 1].first == s.edges[i].first &&
            s.edges[i - 1].second >= s.edges[i].second) {
            return false;
        }
    }
    return true;
}

}  // namespace concgraph::verify
