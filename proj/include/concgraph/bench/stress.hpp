#pragma once

#include <atomic>
#include <chrono>
#include <shared_mutex>
#include <thread>

#include "../verify/audit.hpp"
#include "runner.hpp"

namespace concgraph::bench {

struct StressReport {
    std::uint64_t ops = 0;
    int probes = 0;
    int probes_failed = 0;
    bool final_audit_pass = false;
    bool sorted_unique_pass = true;
};

/// Acyclicity stress: workers hammer the graph while a prober periodically
/// stops the world (workers take the world lock shared per op) and audits the
/// snapshot. Runs until `max_ops` or `secs`, whichever first is hit.
inline StressReport run_stress_audit(GraphApi& g, const WorkloadSpec& spec,
                                     std::uint64_t max_ops, int probe_count) {
    using Clock = std::chrono::steady_clock;
    StressReport rep;
    std::shared_mutex world;
    std::atomic<bool> stop{false};
    std::atomic<bool> probe_pending{false};  // keeps the prober from starving
    std::atomic<std::uint64_t> ops{0};
    detail_run::DeletedRegistry registry(spec.key_range);

    auto worker = [&](int tid) {
        OpStream stream(spec, tid);
        while (!stop.load(std::memory_order_relaxed)) {
            OpDraw d = stream.next();
            while (probe_pending.load(std::memory_order_acquire)) std::this_thread::yield();
            std::shared_lock<std::shared_mutex> in_world(world);
            switch (d.kind) {
                case OpKind::AddVertex: {
                    bool fell_back = false;
                    g.add_vertex(registry.pick_fresh(d.a, spec.key_range, 64, fell_back));
                    break;
                }
                case OpKind::AddEdge:
                    g.add_edge(d.a, d.b);
                    break;
                case OpKind::RemoveVertex:
                    registry.mark(d.a);
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
            if (ops.fetch_add(1, std::memory_order_relaxed) + 1 >= max_ops) {
                stop.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> threads;
    for (int tid = 0; tid < spec.threads; ++tid) threads.emplace_back(worker, tid);

    const auto deadline = Clock::now() + std::chrono::duration<double>(spec.secs);
    const auto interval = std::chrono::duration<double>(spec.secs / (probe_count + 1));
    // pace probes by ops when the op bound governs, by time otherwise
    constexpr std::uint64_t kNoOpBound = ~std::uint64_t{0};
    const std::uint64_t op_step =
        max_ops == kNoOpBound ? 0 : std::max<std::uint64_t>(1, max_ops / (probe_count + 1));
    for (int p = 0; p < probe_count && !stop.load(std::memory_order_relaxed); ++p) {
        if (op_step > 0) {
            const std::uint64_t threshold = op_step * static_cast<std::uint64_t>(p + 1);
            while (!stop.load(std::memory_order_relaxed) &&
                   ops.load(std::memory_order_relaxed) < threshold && Clock::now() < deadline) {
                std::this_thread::sleep_for(std::chrono::microseconds(200));
            }
        } else {
            std::this_thread::sleep_for(interval);
        }
        if (stop.load(std::memory_order_relaxed) || Clock::now() >= deadline) break;
        probe_pending.store(true, std::memory_order_release);
        {
            std::unique_lock<std::shared_mutex> frozen(world);  // no op in flight
            Snapshot s = g.snapshot();
            ++rep.probes;
            if (oracle_cycle_check(s)) ++rep.probes_failed;
            if (!verify::audit_sorted_unique(s)) rep.sorted_unique_pass = false;
        }
        probe_pending.store(false, std::memory_order_release);
    }
    while (!stop.load(std::memory_order_relaxed) && Clock::now() < deadline) {
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    stop.store(true, std::memory_order_relaxed);
    for (auto& t : threads) t.join();

    rep.ops = ops.load();
    Snapshot final_snap = g.snapshot();
    rep.final_audit_pass = !oracle_cycle_check(final_snap);
    if (!verify::audit_sorted_unique(final_snap)) rep.sorted_unique_pass = false;
    return rep;
}

/// Edge-updates mix with 10% vertex churn, the audit workload.
inline WorkloadSpec audit_workload() {
    WorkloadSpec s;
    s.name = "audit";
    s.mix = {5, 36, 5, 54, 0, 0};
    s.acyclic = true;
    return s;
}

}  // namespace concgraph::bench
