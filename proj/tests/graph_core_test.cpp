#include "concgraph/digraph.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <future>
#include <thread>

#include "concgraph/sequential.hpp"
#include "concgraph/verify/audit.hpp"
#include "concgraph/verify/schedule.hpp"
#include "testutil.hpp"

using namespace concgraph;
using verify::ScriptedSchedule;

TEST(PlainEdgeTraits, ValidatorExamples) {
    using Traits = detail::PlainEdgeTraits;
    detail::PlainEdgeNode a(1), b(2);
    a.enext.store(&b, std::memory_order_relaxed);
    EXPECT_TRUE(Traits::validate(&a, &b));  // unmarked, unmarked, adjacent

    detail::PlainEdgeNode c(3);
    EXPECT_FALSE(Traits::validate(&a, &c));  // not adjacent

    b.marked.store(true, std::memory_order_relaxed);  // concurrent unlink of curr
    EXPECT_FALSE(Traits::validate(&a, &b));
}

TEST(DirectedGraph, VertexExamples) {
    DirectedGraph g;
    EXPECT_TRUE(g.add_vertex(5));
    EXPECT_EQ(g.snapshot().vertices, (std::vector<Key>{5}));
    EXPECT_TRUE(g.add_vertex(5));  // idempotent re-add
    EXPECT_EQ(g.snapshot().vertices, (std::vector<Key>{5}));
    EXPECT_TRUE(g.add_vertex(7));
    EXPECT_TRUE(g.remove_vertex(7));
    EXPECT_EQ(g.snapshot().vertices, (std::vector<Key>{5}));
    EXPECT_FALSE(g.remove_vertex(9));
    EXPECT_TRUE(g.contains_vertex(5));
    EXPECT_FALSE(g.contains_vertex(6));
}

TEST(DirectedGraph, EdgeExamples) {
    DirectedGraph g;
    g.add_vertex(5);
    g.add_vertex(7);
    EXPECT_TRUE(g.add_edge(5, 7));
    EXPECT_EQ(g.snapshot().edges, (std::vector<std::pair<Key, Key>>{{5, 7}}));
    EXPECT_FALSE(g.add_edge(5, 9));  // vertex 9 absent
    EXPECT_TRUE(g.contains_edge(5, 7));
    EXPECT_FALSE(g.contains_edge(7, 5));
    EXPECT_TRUE(g.remove_edge(5, 7));
    EXPECT_TRUE(g.snapshot().edges.empty());
    EXPECT_TRUE(g.remove_edge(5, 7));   // absent edge, live endpoints
    EXPECT_FALSE(g.remove_edge(5, 9));  // dead endpoint
}

TEST(DirectedGraph, SentinelKeysRejected) {
    DirectedGraph g;
    EXPECT_THROW(g.add_vertex(kSentinelMin), std::invalid_argument);
    EXPECT_THROW(g.remove_vertex(kSentinelMax), std::invalid_argument);
    EXPECT_THROW(g.add_edge(1, kSentinelMax), std::invalid_argument);
    EXPECT_THROW(g.contains_edge(kSentinelMin, 1), std::invalid_argument);
}

TEST(DirectedGraph, RemoveIncomingEdgesSweep) {
    // {1->3, 2->3}; removing 3 with the sweep leaves no trace of key 3
    DirectedGraph g;
    for (Key k : {1, 2, 3}) g.add_vertex(k);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    EXPECT_TRUE(g.remove_vertex(3, /*remove_incoming=*/true));
    EXPECT_TRUE(g.snapshot().edges.empty());
    // a re-added key observes the sweep: the old edges are physically gone
    g.add_vertex(3);
    EXPECT_FALSE(g.contains_edge(1, 3));
    EXPECT_FALSE(g.contains_edge(2, 3));

    // sweep with no incoming edges: no structural change
    DirectedGraph h;
    h.add_vertex(1);
    h.add_vertex(2);
    h.add_edge(1, 2);
    h.remove_vertex(1, true);
    EXPECT_EQ(h.snapshot().vertices, (std::vector<Key>{2}));
}

TEST(DirectedGraph, NoSweepKeepsPhysicalNodes) {
    DirectedGraph g;
    for (Key k : {1, 2, 3}) g.add_vertex(k);
    g.add_edge(1, 3);
    EXPECT_TRUE(g.remove_vertex(3, /*remove_incoming=*/false));
    EXPECT_FALSE(g.contains_edge(1, 3));  // hidden: endpoint dead
    g.add_vertex(3);
    EXPECT_TRUE(g.contains_edge(1, 3));  // the old node resurfaces
}

TEST(DirectedGraph, SequentialEquivalenceRandomised) {
    // single-threaded return values equal the reference graph, both sweep modes
    for (bool die : {false, true}) {
        DirectedGraph g;
        SequentialGraph oracle;
        auto ops = testutil::random_ops(10000, 48, die ? 11 : 7);
        std::size_t i = 0;
        for (auto& op : ops) {
            bool got, want;
            using testutil::Method;
            switch (op.m) {
                case Method::AddVertex:
                    got = g.add_vertex(op.a);
                    want = oracle.add_vertex(op.a);
                    break;
                case Method::RemoveVertex:
                    got = g.remove_vertex(op.a, die);
                    want = oracle.remove_vertex(op.a, die);
                    break;
                case Method::ContainsVertex:
                    got = g.contains_vertex(op.a);
                    want = oracle.contains_vertex(op.a);
                    break;
                case Method::AddEdge:
                    got = g.add_edge(op.a, op.b);
                    want = oracle.add_edge(op.a, op.b);
                    break;
                case Method::RemoveEdge:
                    got = g.remove_edge(op.a, op.b);
                    want = oracle.remove_edge(op.a, op.b);
                    break;
                default:
                    got = g.contains_edge(op.a, op.b);
                    want = oracle.contains_edge(op.a, op.b);
                    break;
            }
            ASSERT_EQ(got, want) << "op " << i << " method " << static_cast<int>(op.m) << " ("
                                 << op.a << "," << op.b << ") die=" << die;
            ++i;
        }
    }
}

TEST(DirectedGraph, QuiescentSortednessAndUniqueness) {
    DirectedGraph g;
    for (auto& op : testutil::random_ops(4000, 64, 3, /*edge_heavy=*/true)) {
        switch (op.m) {
            case testutil::Method::AddVertex: g.add_vertex(op.a); break;
            case testutil::Method::RemoveVertex: g.remove_vertex(op.a, false); break;
            case testutil::Method::AddEdge: g.add_edge(op.a, op.b); break;
            case testutil::Method::RemoveEdge: g.remove_edge(op.a, op.b); break;
            case testutil::Method::ContainsVertex: g.contains_vertex(op.a); break;
            default: g.contains_edge(op.a, op.b); break;
        }
    }
    EXPECT_TRUE(verify::audit_sorted_unique(g.snapshot()));
}

TEST(DirectedGraph, DeadlockFreedomSmoke) {
    // pure updates from several threads: the global op counter keeps moving
    DirectedGraph g;
    std::atomic<bool> stop{false};
    std::atomic<std::uint64_t> ops{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            std::mt19937_64 rng(static_cast<std::uint64_t>(t) + 1);
            while (!stop.load(std::memory_order_relaxed)) {
                Key a = static_cast<Key>(rng() % 32) + 1;
                Key b = static_cast<Key>(rng() % 32) + 1;
                switch (rng() % 4) {
                    case 0: g.add_vertex(a); break;
                    case 1: g.remove_vertex(a, rng() % 2 == 0); break;
                    case 2: g.add_edge(a, b); break;
                    default: g.remove_edge(a, b); break;
                }
                ops.fetch_add(1, std::memory_order_relaxed);
            }
        });
    }
    std::uint64_t last = 0;
    for (int interval = 0; interval < 6; ++interval) {
        std::this_thread::sleep_for(std::chrono::milliseconds(200));
        std::uint64_t now = ops.load();
        EXPECT_GT(now, last) << "no progress in watchdog interval " << interval;
        last = now;
    }
    stop.store(true);
    for (auto& t : threads) t.join();
    EXPECT_TRUE(verify::audit_sorted_unique(g.snapshot()));
}

TEST(DirectedGraph, RemovedKeyStaysAbsent) {
    // observable mark monotonicity: with no re-adds, a removed key never
    // reappears to readers
    DirectedGraph g;
    constexpr Key kKeys = 64;
    for (Key k = 1; k <= kKeys; ++k) g.add_vertex(k);

    std::vector<std::atomic<std::int64_t>> removed_at(kKeys + 1);
    for (auto& r : removed_at) r.store(-1);
    auto now = [] {
        return std::chrono::steady_clock::now().time_since_epoch().count();
    };

    std::atomic<bool> violation{false};
    std::atomic<bool> stop{false};
    std::vector<std::thread> readers;
    for (int t = 0; t < 2; ++t) {
        readers.emplace_back([&, t] {
            std::mt19937_64 rng(static_cast<std::uint64_t>(t) + 99);
            while (!stop.load(std::memory_order_relaxed)) {
                Key k = static_cast<Key>(rng() % kKeys) + 1;
                std::int64_t before = now();
                bool present = g.contains_vertex(k);
                std::int64_t cutoff = removed_at[static_cast<std::size_t>(k)].load();
                if (present && cutoff >= 0 && cutoff < before) violation.store(true);
            }
        });
    }
    std::thread remover([&] {
        std::mt19937_64 rng(7);
        for (Key k = 1; k <= kKeys; ++k) {
            g.remove_vertex(k, rng() % 2 == 0);
            removed_at[static_cast<std::size_t>(k)].store(now());
            std::this_thread::sleep_for(std::chrono::microseconds(200));
        }
    });
    remover.join();
    stop.store(true);
    for (auto& t : readers) t.join();
    EXPECT_FALSE(violation.load());
    EXPECT_TRUE(g.snapshot().vertices.empty());
}

TEST(DirectedGraphScripted, LocateRetriesAfterRacingInsert) {
    DirectedGraph g;
    g.add_vertex(5);
    g.add_vertex(9);

    ScriptedSchedule sched;
    int parked = sched.expect(1, hooks::Point::VertexLocateBeforeLock, 7);
    sched.install();

    std::thread t1([&] {
        ScriptedSchedule::Tag tag(1);
        EXPECT_TRUE(g.add_vertex(7));
    });
    sched.await_blocked(parked);      // t1 positioned between 5 and 9, unlocked
    EXPECT_TRUE(g.add_vertex(6));     // invalidate its window
    auto before = g.diagnostics().vertex_validation_retries;
    sched.release(parked);
    t1.join();
    sched.uninstall();

    EXPECT_GE(g.diagnostics().vertex_validation_retries, before + 1);
    EXPECT_EQ(g.snapshot().vertices, (std::vector<Key>{5, 6, 7, 9}));
}

TEST(DirectedGraphScripted, EdgeLocateRetriesAfterRacingUnlink) {
    DirectedGraph g;
    for (Key k : {1, 5, 7, 9}) g.add_vertex(k);
    g.add_edge(1, 5);
    g.add_edge(1, 9);

    ScriptedSchedule sched;
    int parked = sched.expect(1, hooks::Point::EdgeLocateBeforeLock, 7);
    sched.install();

    std::thread t1([&] {
        ScriptedSchedule::Tag tag(1);
        EXPECT_TRUE(g.add_edge(1, 7));
    });
    sched.await_blocked(parked);       // positioned (enode 5, enode 9), unlocked
    EXPECT_TRUE(g.remove_edge(1, 5));  // unlink its pred
    sched.release(parked);
    t1.join();
    sched.uninstall();

    EXPECT_GE(g.diagnostics().edge_validation_retries, 1u);
    EXPECT_TRUE(g.contains_edge(1, 7));
    EXPECT_FALSE(g.contains_edge(1, 5));
    EXPECT_TRUE(g.contains_edge(1, 9));
}

TEST(DirectedGraphScripted, ContainsCompletesWhileUpdatersHoldLocks) {
    DirectedGraph g;
    for (Key k = 1; k <= 40; ++k) g.add_vertex(k);
    g.add_edge(1, 20);

    ScriptedSchedule sched;
    int vlocked = sched.expect(1, hooks::Point::VertexLocateLocked, 25);
    int elocked = sched.expect(2, hooks::Point::AddEdgeLocked, 30);
    sched.install();

    std::thread u1([&] {
        ScriptedSchedule::Tag tag(1);
        g.add_vertex(25);  // parks holding vertex locks
    });
    std::thread u2([&] {
        ScriptedSchedule::Tag tag(2);
        g.add_edge(1, 30);  // parks holding edge locks in 1's list
    });
    sched.await_blocked(vlocked);
    sched.await_blocked(elocked);

    auto queries = std::async(std::launch::async, [&] {
        int hits = 0;
        for (int i = 0; i < 200; ++i) {
            if (g.contains_vertex(20)) ++hits;
            if (g.contains_edge(1, 20)) ++hits;
            g.contains_vertex(25);
            g.contains_edge(1, 30);
        }
        return hits;
    });
    ASSERT_EQ(queries.wait_for(std::chrono::seconds(5)), std::future_status::ready)
        << "a contains call blocked behind held locks";
    EXPECT_EQ(queries.get(), 400);

    sched.release(vlocked);
    sched.release(elocked);
    u1.join();
    u2.join();
    sched.uninstall();
}
