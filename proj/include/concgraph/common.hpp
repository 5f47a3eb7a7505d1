#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace concgraph {

/// Vertex / edge key. User keys must lie strictly between the two sentinels.
using Key = std::int64_t;

inline constexpr Key kSentinelMin = std::numeric_limits<Key>::min();
inline constexpr Key kSentinelMax = std::numeric_limits<Key>::max();

inline void require_user_key(Key k) {
    if (k == kSentinelMin || k == kSentinelMax) {
        throw std::invalid_argument("concgraph: key collides with a sentinel value");
    }
}

/// Lifecycle of an edge node in the acyclicity-preserving variant.
/// Legal transitions: Transit->Added, Transit->Marked, Added->Marked.
enum class EdgeStatus : std::uint8_t { Transit = 0, Marked = 1, Added = 2 };

inline const char* to_string(EdgeStatus s) {
    switch (s) {
        case EdgeStatus::Transit: return "transit";
        case EdgeStatus::Marked: return "marked";
        case EdgeStatus::Added: return "added";
    }
    return "?";
}

/// What happens to nodes after they are physically unlinked.
enum class ReclaimPolicy {
    Deferred,  // epoch-based: freed once no traversal can still hold them
    Leak,      // kept until the graph is destroyed (no reclamation during the run)
};

/// Read-only operation counters, sampled via diagnostics().
struct Diagnostics {
    std::uint64_t vertex_validation_retries = 0;
    std::uint64_t edge_validation_retries = 0;
    std::uint64_t retry_budget_exceeded = 0;
    // acyclic variant only
    std::uint64_t cycle_checks = 0;
    std::uint64_t cycle_aborts = 0;
    std::uint64_t suspected_false_positives = 0;
};

/// Consistent vertex/edge listing taken at quiescence; the audit helpers and
/// the benchmark run over it.
struct Snapshot {
    std::vector<Key> vertices;                  // ascending
    std::vector<std::pair<Key, Key>> edges;     // (from, to), from ascending
};

}  // namespace concgraph
