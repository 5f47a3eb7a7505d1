#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <thread>
#include <vector>

#include "../oracle.hpp"
#include "seed.hpp"

namespace concgraph::bench {

struct BenchResult {
    std::string workload;
    std::string variant_label;
    int threads = 0;
    std::uint64_t total_ops = 0;
    double ops_per_sec = 0.0;  // mean over iterations
    std::array<std::uint64_t, 6> per_op{};
    std::uint64_t failed_add_edge = 0;
    std::uint64_t false_positives = 0;
    std::uint64_t resurrect_fallbacks = 0;  // add_vertex fell back to a deleted key
    bool acyclic_audit_pass = true;         // acyclic runs: end-of-run audit
    std::vector<double> per_iter_ops_per_sec;
};

namespace detail_run {

// Keys ever targeted by remove_vertex this run; add_vertex avoids them so a
// deleted key never comes back (bounded redraw, counted fallback).
class DeletedRegistry {
public:
    explicit DeletedRegistry(int key_range)
        : flags_(static_cast<std::size_t>(key_range) + 1) {}

    void mark(Key k) { flags_[static_cast<std::size_t>(k)].store(1, std::memory_order_relaxed); }

    bool deleted(Key k) const {
        return flags_[static_cast<std::size_t>(k)].load(std::memory_order_relaxed) != 0;
    }

    // nearest non-deleted key at or after k (wrapping), up to `attempts` probes
    Key pick_fresh(Key k, int key_range, int attempts, bool& fell_back) const {
        Key c = k;
        for (int i = 0; i < attempts; ++i) {
            if (!deleted(c)) {
                fell_back = false;
                return c;
            }
            c = (c % key_range) + 1;
        }
        fell_back = true;
        return k;
    }

private:
    std::vector<std::atomic<std::uint8_t>> flags_;
};

struct ThreadTotals {
    std::uint64_t ops = 0;
    std::array<std::uint64_t, 6> per_op{};
    std::uint64_t failed_add_edge = 0;
    std::uint64_t resurrect_fallbacks = 0;
};

}  // namespace detail_run

/// One timed iteration against a fresh, seeded graph.
inline detail_run::ThreadTotals run_iteration(GraphApi& g, const WorkloadSpec& spec,
                                              double& elapsed_secs) {
    using Clock = std::chrono::steady_clock;
    detail_run::DeletedRegistry registry(spec.key_range);
    std::atomic<bool> stop{false};
    std::vector<detail_run::ThreadTotals> totals(static_cast<std::size_t>(spec.threads));

    auto worker = [&](int tid) {
        OpStream stream(spec, tid);
        auto& t = totals[static_cast<std::size_t>(tid)];
        while (!stop.load(std::memory_order_relaxed)) {
            OpDraw d = stream.next();
            switch (d.kind) {
                case OpKind::AddVertex: {
                    bool fell_back = false;
                    Key k = registry.pick_fresh(d.a, spec.key_range, 64, fell_back);
                    if (fell_back) ++t.resurrect_fallbacks;
                    g.add_vertex(k);
                    break;
                }
                case OpKind::AddEdge:
                    if (!g.add_edge(d.a, d.b)) ++t.failed_add_edge;
                    break;
                case OpKind::RemoveVertex:
                    registry.mark(d.a);  // before the call: never re-added afterwards
                    g.remove_vertex(d.a);
                    break;
                case OpKind::RemoveEdge:
                    g.remove_edge(d.a, d.b);
                    break;
                case OpKind::ContainsVertex:
                    g.contains_vertex(d.a);
                    break;
                case OpKind::ContainsEdge:
                    g.contains_edge(d.a, d.b);
                    break;
            }
            ++t.ops;
            ++t.per_op[static_cast<std::size_t>(d.kind)];
        }
    };

    const auto start = Clock::now();
    std::vector<std::thread> threads;
    for (int tid = 0; tid < spec.threads; ++tid) threads.emplace_back(worker, tid);
    std::this_thread::sleep_for(std::chrono::duration<double>(spec.secs));
    stop.store(true, std::memory_order_relaxed);
    for (auto& th : threads) th.join();
    elapsed_secs = std::chrono::duration<double>(Clock::now() - start).count();

    detail_run::ThreadTotals sum;
    for (auto& t : totals) {
        sum.ops += t.ops;
        sum.failed_add_edge += t.failed_add_edge;
        sum.resurrect_fallbacks += t.resurrect_fallbacks;
        for (std::size_t i = 0; i < 6; ++i) sum.per_op[i] += t.per_op[i];
    }
    return sum;
}

/// Spawns spec.threads workers drawing ops i.i.d. from the mix for spec.secs,
/// repeated spec.iters times on fresh seeded graphs; counts are aggregated and
/// the throughput averaged.
inline BenchResult run_benchmark(const WorkloadSpec& spec) {
    validate(spec);
    BenchResult r;
    r.workload = spec.name;
    r.variant_label = std::string(to_string(spec.variant)) + (spec.acyclic ? "-acyclic" : "");
    r.threads = spec.threads;

    for (int it = 0; it < spec.iters; ++it) {
        auto g = make_graph(spec.variant, spec.acyclic, spec.reclaim);
        seed_initial_graph(*g, spec);

        double elapsed = 0.0;
        auto totals = run_iteration(*g, spec, elapsed);

        r.total_ops += totals.ops;
        r.failed_add_edge += totals.failed_add_edge;
        r.resurrect_fallbacks += totals.resurrect_fallbacks;
        for (std::size_t i = 0; i < 6; ++i) r.per_op[i] += totals.per_op[i];
        r.per_iter_ops_per_sec.push_back(static_cast<double>(totals.ops) / elapsed);
        r.false_positives += g->diagnostics().suspected_false_positives;
        if (spec.acyclic) {
            r.acyclic_audit_pass = r.acyclic_audit_pass && !oracle_cycle_check(g->snapshot());
        }
    }
    double mean = 0.0;
    for (double v : r.per_iter_ops_per_sec) mean += v;
    r.ops_per_sec = mean / static_cast<double>(r.per_iter_ops_per_sec.size());
    return r;
}

}  // namespace concgraph::bench
