#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "api.hpp"

namespace concgraph::bench {

/// Mix slots, in this order everywhere.
enum class OpKind : int {
    AddVertex = 0,
    AddEdge = 1,
    RemoveVertex = 2,
    RemoveEdge = 3,
    ContainsVertex = 4,
    ContainsEdge = 5,
};

struct WorkloadSpec {
    std::string name = "custom";
    std::array<int, 6> mix{};  // percentages per OpKind; must sum to 100
    int key_range = 1000;
    int threads = 1;
    double secs = 2.0;  // short default; full-length runs use 20
    std::uint64_t seed = 1;
    Variant variant = Variant::NoDie;
    bool acyclic = false;
    int initial_vertices = 1000;
    double density = 1.0;  // 1.0 = complete key-ascending seed
    int iters = 1;         // result averaged over iterations
    ReclaimPolicy reclaim = ReclaimPolicy::Deferred;
};

inline void validate(const WorkloadSpec& s) {
    int sum = 0;
    for (int p : s.mix) {
        if (p < 0) throw std::invalid_argument("workload: negative mix percentage");
        sum += p;
    }
    if (sum != 100) throw std::invalid_argument("workload: mix must sum to 100");
    if (s.key_range < 1) throw std::invalid_argument("workload: key_range must be >= 1");
    if (s.threads < 1) throw std::invalid_argument("workload: threads must be >= 1");
    if (s.variant == Variant::Sequential && s.threads != 1) {
        throw std::invalid_argument("workload: the sequential variant is single-threaded only");
    }
    if (s.secs <= 0) throw std::invalid_argument("workload: secs must be positive");
    if (s.iters < 1) throw std::invalid_argument("workload: iters must be >= 1");
    if (s.initial_vertices < 0 || s.initial_vertices > s.key_range) {
        throw std::invalid_argument("workload: initial graph size must fit the key range");
    }
    if (s.density < 0.0 || s.density > 1.0) {
        throw std::invalid_argument("workload: density must be in [0,1]");
    }
}

/// The three measured mixes.
inline std::array<WorkloadSpec, 3> builtin_workloads() {
    WorkloadSpec update;
    update.name = "update";
    update.mix = {25, 25, 10, 10, 15, 15};

    WorkloadSpec contains;
    contains.name = "contains";
    contains.mix = {7, 7, 3, 3, 40, 40};

    WorkloadSpec edges;
    edges.name = "edges";
    edges.mix = {0, 40, 0, 60, 0, 0};

    return {update, contains, edges};
}

inline WorkloadSpec builtin_workload(const std::string& name) {
    for (auto& w : builtin_workloads()) {
        if (w.name == name) return w;
    }
    throw std::invalid_argument("workload: unknown preset '" + name + "'");
}

struct OpDraw {
    OpKind kind;
    Key a = 0;
    Key b = 0;
};

/// Per-thread deterministic op/key stream: same seed, same stream.
class OpStream {
public:
    OpStream(const WorkloadSpec& s, int tid)
        : rng_(mix_seed(s.seed, tid)), key_range_(s.key_range) {
        int acc = 0;
        for (std::size_t i = 0; i < 6; ++i) {
            acc += s.mix[i];
            cumulative_[i] = acc;
        }
    }

    OpDraw next() {
        OpDraw d;
        const int r = static_cast<int>(rng_() % 100);
        std::size_t k = 0;
        while (r >= cumulative_[k]) ++k;
        d.kind = static_cast<OpKind>(k);
        d.a = draw_key();
        if (d.kind == OpKind::AddEdge || d.kind == OpKind::RemoveEdge ||
            d.kind == OpKind::ContainsEdge) {
            d.b = draw_key();
        }
        return d;
    }

private:
    Key draw_key() { return static_cast<Key>(rng_() % static_cast<std::uint64_t>(key_range_)) + 1; }

    static std::uint64_t mix_seed(std::uint64_t seed, int tid) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(tid) + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 rng_;
    int key_range_;
    std::array<int, 6> cumulative_{};
};

}  // namespace concgraph::bench
