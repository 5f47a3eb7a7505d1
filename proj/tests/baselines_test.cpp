#include <gtest/gtest.h>

#include <thread>

#include "concgraph/acyclic.hpp"
#include "concgraph/bench/api.hpp"
#include "concgraph/oracle.hpp"
#include "concgraph/verify/checker.hpp"
#include "concgraph/verify/recorder.hpp"
#include "testutil.hpp"

using namespace concgraph;

TEST(CycleOracle, KnownShapes) {
    Snapshot chain;
    chain.vertices = {1, 2, 3};
    chain.edges = {{1, 2}, {2, 3}};
    EXPECT_FALSE(oracle_cycle_check(chain));

    Snapshot triangle;
    triangle.vertices = {1, 2, 3};
    triangle.edges = {{1, 2}, {2, 3}, {3, 1}};
    EXPECT_TRUE(oracle_cycle_check(triangle));

    Snapshot self_loop;
    self_loop.vertices = {1};
    self_loop.edges = {{1, 1}};
    EXPECT_TRUE(oracle_cycle_check(self_loop));
}

TEST(CycleOracle, InjectedBackEdgeIsCaught) {
    // harness self-test: corrupt a clean snapshot with one back-edge
    AcyclicDigraph g;
    for (Key k = 1; k <= 6; ++k) g.add_vertex(k);
    for (Key k = 1; k < 6; ++k) g.add_edge(k, k + 1);
    Snapshot s = g.snapshot();
    ASSERT_FALSE(oracle_cycle_check(s));
    s.edges.emplace_back(6, 2);  // 2 -> ... -> 6 -> 2
    EXPECT_TRUE(oracle_cycle_check(s));
}

TEST(CycleOracle, AscendingRandomDagIsAcyclic) {
    // key-ascending orientation guarantees a topological order
    std::mt19937_64 rng(5);
    Snapshot s;
    for (Key k = 1; k <= 200; ++k) s.vertices.push_back(k);
    for (int i = 0; i < 2000; ++i) {
        Key a = static_cast<Key>(rng() % 200) + 1;
        Key b = static_cast<Key>(rng() % 200) + 1;
        if (a < b) s.edges.emplace_back(a, b);
    }
    EXPECT_FALSE(oracle_cycle_check(s));
}

TEST(Baselines, SequentialScriptMatchesConcurrentReplay) {
    // any single-thread script behaves identically through both adapters
    auto seq = bench::make_graph(bench::Variant::Sequential, false);
    auto conc = bench::make_graph(bench::Variant::Die, false);
    testutil::AnyGraph a{seq.get()}, b{conc.get()};
    for (auto& op : testutil::random_ops(20000, 32, 41)) {
        ASSERT_EQ(a.apply(op.m, op.a, op.b, true), b.apply(op.m, op.a, op.b, true));
    }
    // and the acyclic flavour
    auto aseq = bench::make_graph(bench::Variant::Sequential, true);
    auto aconc = bench::make_graph(bench::Variant::Die, true);
    testutil::AnyGraph c{aseq.get()}, d{aconc.get()};
    for (auto& op : testutil::random_ops(8000, 16, 42)) {
        ASSERT_EQ(c.apply(op.m, op.a, op.b, true), d.apply(op.m, op.a, op.b, true));
    }
}

TEST(Baselines, SequentialAcyclicNeverFalsePositive) {
    // no concurrency: a rejected fresh edge always closes a real cycle
    SequentialGraph g(/*acyclic=*/true);
    std::mt19937_64 rng(9);
    for (Key k = 1; k <= 16; ++k) g.add_vertex(k);
    int aborts = 0;
    for (int i = 0; i < 3000; ++i) {
        Key a = static_cast<Key>(rng() % 16) + 1;
        Key b = static_cast<Key>(rng() % 16) + 1;
        bool had = g.contains_edge(a, b);
        bool ok = g.add_edge(a, b);
        if (!ok) {
            ++aborts;
            EXPECT_FALSE(had);
            EXPECT_TRUE(g.path_exists(b, a) || a == b);  // the cycle is real
        }
    }
    EXPECT_GT(aborts, 0);
}

TEST(Baselines, CoarseLockHistoriesLinearizeByConstruction) {
    using namespace concgraph::verify;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        CoarseGraph g;
        for (Key k = 1; k <= 4; ++k) g.add_vertex(k);
        SequentialGraph initial;
        for (Key k = 1; k <= 4; ++k) initial.add_vertex(k);

        Recorder rec(8);
        std::vector<std::thread> threads;
        for (int t = 0; t < 8; ++t) {
            threads.emplace_back([&, t] {
                std::mt19937_64 rng(seed * 100 + static_cast<std::uint64_t>(t));
                for (int i = 0; i < 2; ++i) {
                    Key a = static_cast<Key>(rng() % 8) + 1;
                    Key b = static_cast<Key>(rng() % 8) + 1;
                    switch (rng() % 5) {
                        case 0:
                            rec.invoke(t, Method::RemoveVertex, a);
                            rec.respond(t, Method::RemoveVertex, g.remove_vertex(a), a);
                            break;
                        case 1:
                            rec.invoke(t, Method::ContainsVertex, a);
                            rec.respond(t, Method::ContainsVertex, g.contains_vertex(a), a);
                            break;
                        case 2:
                            rec.invoke(t, Method::AddEdge, a, b);
                            rec.respond(t, Method::AddEdge, g.add_edge(a, b), a, b);
                            break;
                        case 3:
                            rec.invoke(t, Method::RemoveEdge, a, b);
                            rec.respond(t, Method::RemoveEdge, g.remove_edge(a, b), a, b);
                            break;
                        default:
                            rec.invoke(t, Method::ContainsEdge, a, b);
                            rec.respond(t, Method::ContainsEdge, g.contains_edge(a, b), a, b);
                            break;
                    }
                }
            });
        }
        for (auto& t : threads) t.join();
        History h = rec.take();
        ASSERT_TRUE(well_formed(h));
        CheckResult r = check_linearizable(h, initial);
        EXPECT_EQ(r.verdict, Verdict::Linearizable) << "seed " << seed;
    }
}
