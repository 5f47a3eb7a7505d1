#pragma once

#include "detail/graph_core.hpp"

namespace concgraph {

/// Concurrent directed graph: a sorted lazy list of vertices, each holding a
/// sorted lazy list of outgoing edges. Updates are deadlock-free (per-node
/// locks, taken in ascending key order); contains methods are wait-free and
/// never lock. Safe to share across any number of threads.
class DirectedGraph : public detail::GraphCore<detail::PlainEdgeTraits> {
    using Base = detail::GraphCore<detail::PlainEdgeTraits>;
    using ENode = Base::ENode;

public:
    explicit DirectedGraph(ReclaimPolicy policy = ReclaimPolicy::Deferred) : Base(policy) {}

    /// False iff either endpoint is absent or marked; a present edge is an
    /// idempotent success.
    bool add_edge(Key from, Key to) {
        require_user_key(from);
        require_user_key(to);
        epoch::Guard g;
        auto hs = help_search_edge(from, to);
        if (!hs.ok) return false;
        // Both endpoints may have changed since the search verified them.
        if (hs.v1->marked.load(std::memory_order_acquire) ||
            hs.v2->marked.load(std::memory_order_acquire)) {
            return false;
        }
        auto [e1, e2] = locate_edge_in(hs.v1, to, detail::PlainEdgeTraits::validate);
        hooks::pause(hooks::Point::AddEdgeLocked, to);
        if (e2->val != to) {
            ENode* e3 = new ENode(to);
            e3->enext.store(e2, std::memory_order_relaxed);
            e1->enext.store(e3, std::memory_order_release);
        }
        e1->lock.unlock();
        e2->lock.unlock();
        return true;
    }

    /// False iff either endpoint is absent or marked. Removing an absent edge
    /// between live endpoints still succeeds.
    bool remove_edge(Key from, Key to) {
        require_user_key(from);
        require_user_key(to);
        epoch::Guard g;
        auto hs = help_search_edge(from, to);
        if (!hs.ok) return false;
        if (hs.v1->marked.load(std::memory_order_acquire) ||
            hs.v2->marked.load(std::memory_order_acquire)) {
            return false;
        }
        auto [e1, e2] = locate_edge_in(hs.v1, to, detail::PlainEdgeTraits::validate);
        hooks::pause(hooks::Point::RemoveEdgeLocked, to);
        if (e2->val == to) {
            e2->marked.store(true, std::memory_order_release);  // logical removal
            e1->enext.store(e2->enext.load(std::memory_order_relaxed), std::memory_order_release);
            retire(e2);
        }
        e1->lock.unlock();
        e2->lock.unlock();
        return true;
    }

    /// Wait-free; never acquires locks.
    bool contains_edge(Key from, Key to) const {
        require_user_key(from);
        require_user_key(to);
        epoch::Guard g;
        auto hs = help_search_edge(from, to);
        if (!hs.ok) return false;
        const ENode* e = hs.v1->edge_head;
        for (;;) {
            hooks::pause(hooks::Point::ContainsEdgeStep, e->val);
            if (e->val >= to) break;
            e = e->enext.load(std::memory_order_acquire);
        }
        return e->val == to && !e->marked.load(std::memory_order_acquire);
    }
};

}  // namespace concgraph
