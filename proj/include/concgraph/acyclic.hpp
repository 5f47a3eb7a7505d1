#pragma once

#include <cassert>
#include <thread>
#include <unordered_set>
#include <vector>

#include "detail/graph_core.hpp"

namespace concgraph {

/// Operation-local reach set: FIFO over insertion order, no duplicates.
class ReachSet {
public:
    /// True if the key was new.
    bool insert(Key k) {
        if (seen_.insert(k).second) {
            order_.push_back(k);
            return true;
        }
        return false;
    }

    bool contains(Key k) const { return seen_.count(k) != 0; }
    bool has_unexplored() const { return cursor_ < order_.size(); }

    /// Pops the oldest unexplored key and marks it explored.
    Key take_unexplored() { return order_[cursor_++]; }

private:
    std::vector<Key> order_;
    std::unordered_set<Key> seen_;
    std::size_t cursor_ = 0;
};

/// Directed graph that keeps its confirmed edge set acyclic: an inserted edge
/// starts Transit, is promoted to Added only after a wait-free reachability
/// check finds no cycle, and is rolled back (Marked, unlinked) otherwise.
/// Vertex operations are shared with the base data structure unchanged.
class AcyclicDigraph : public detail::GraphCore<detail::StatusEdgeTraits> {
    using Base = detail::GraphCore<detail::StatusEdgeTraits>;
    using Traits = detail::StatusEdgeTraits;
    using ENode = Base::ENode;
    using VNode = Base::VNode;

public:
    explicit AcyclicDigraph(ReclaimPolicy policy = ReclaimPolicy::Deferred) : Base(policy) {}

    /// False iff an endpoint is absent/marked, or the provisional edge closed
    /// a cycle. May reject an edge whose competing provisional insert made a
    /// path appear (counted in diagnostics). A present non-Marked edge is an
    /// idempotent success once it resolves to Added.
    bool add_edge(Key from, Key to) {
        require_user_key(from);
        require_user_key(to);
        epoch::Guard g;
        auto hs = help_search_edge(from, to);
        if (!hs.ok) return false;
        if (hs.v1->marked.load(std::memory_order_acquire) ||
            hs.v2->marked.load(std::memory_order_acquire)) {
            return false;
        }

        ENode* e3 = nullptr;
        for (;;) {
            auto [e1, e2] = locate_edge_in(hs.v1, to, Traits::validate_unremoved);
            hooks::pause(hooks::Point::AddEdgeLocked, to);
            if (e2->val == to) {
                EdgeStatus st = Traits::status_of(e2);
                e1->lock.unlock();
                e2->lock.unlock();
                if (st == EdgeStatus::Added) return true;
                // Another thread's provisional insert; confirming now could be
                // a lost update if it rolls back, so wait for it to resolve.
                std::this_thread::yield();
                continue;
            }
            e3 = new ENode(to);  // Transit
            e3->enext.store(e2, std::memory_order_relaxed);
            e1->enext.store(e3, std::memory_order_release);
            e1->lock.unlock();
            e2->lock.unlock();
            break;
        }

        hooks::pause(hooks::Point::AcyclicAddInserted, to);
        cycle_checks_.fetch_add(1, std::memory_order_relaxed);
        const bool cycle = from == to || path_exists(to, from);
        if (!cycle) {
            // An endpoint removed mid-flight makes the reachability verdict
            // vacuous (the walk cannot start from a dead vertex), so a
            // confirmation here could commit a cycle. Report the missing
            // endpoint instead.
            if (hs.v1->marked.load(std::memory_order_acquire) ||
                hs.v2->marked.load(std::memory_order_acquire)) {
                rollback_provisional(hs.v1, e3, to);
                return false;
            }
            e3->set_status(EdgeStatus::Added);  // confirmed
            return true;
        }

        rollback_provisional(hs.v1, e3, to);
        cycle_aborts_.fetch_add(1, std::memory_order_relaxed);
        // Abort post-mortem: if the path is already gone it was plausibly a
        // transient conflict (reported as a suspected false positive). A
        // self-loop always was a genuine cycle.
        if (from != to && !path_exists(to, from)) {
            suspected_fp_.fetch_add(1, std::memory_order_relaxed);
        }
        return false;
    }

    /// As the base remove, but validation demands Added on both coupled nodes,
    /// so a Transit edge is never taken from under its inserter.
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
        auto [e1, e2] = locate_edge_in(hs.v1, to, Traits::validate);
        hooks::pause(hooks::Point::RemoveEdgeLocked, to);
        if (e2->val == to) {
            e2->set_status(EdgeStatus::Marked);  // logical removal
            e1->enext.store(e2->enext.load(std::memory_order_relaxed), std::memory_order_release);
            retire(e2);
        }
        e1->lock.unlock();
        e2->lock.unlock();
        return true;
    }

    /// Wait-free; true only for an edge whose status is exactly Added.
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
        return e->val == to && Traits::status_of(e) == EdgeStatus::Added;
    }

    /// Wait-free, lock-less reachability: expands keys breadth-first in
    /// insertion order, re-locating each vertex from the list head. Transit
    /// and Added edges are both visible. Keys whose vertex is absent or
    /// marked at expansion time are dropped without expansion.
    bool path_exists(Key from, Key to) const {
        require_user_key(from);
        require_user_key(to);
        epoch::Guard g;
        const VNode* v = head_;
        while (v->val < from) v = v->vnext.load(std::memory_order_acquire);
        if (v->val != from || v->marked.load(std::memory_order_acquire)) return false;

        ReachSet reach;
        if (scan_out_edges(v, to, reach)) return true;
        while (reach.has_unexplored()) {
            Key k = reach.take_unexplored();
            const VNode* w = head_;
            while (w->val < k) w = w->vnext.load(std::memory_order_acquire);
            if (w->val != k || w->marked.load(std::memory_order_acquire)) continue;
            if (scan_out_edges(w, to, reach)) return true;
        }
        return false;
    }

private:
    // Unlinks a provisional node. The source vertex may already be removed,
    // so this relocates directly in its edge list; the Transit node is still
    // there (no other thread may take it) and no same-key node can precede it.
    void rollback_provisional(VNode* v1, ENode* e3, Key to) {
        auto [n1, n2] = locate_edge_in(v1, to, Traits::validate_unremoved);
        assert(n2 == e3);
        e3->set_status(EdgeStatus::Marked);
        n1->enext.store(n2->enext.load(std::memory_order_relaxed), std::memory_order_release);
        retire(n2);
        n1->lock.unlock();
        n2->lock.unlock();
    }

    static bool scan_out_edges(const VNode* v, Key target, ReachSet& reach) {
        for (const ENode* e = v->edge_head->enext.load(std::memory_order_acquire);
             e->val != kSentinelMax; e = e->enext.load(std::memory_order_acquire)) {
            if (Traits::reachable_through(e)) {
                if (reach.insert(e->val) && e->val == target) return true;
            }
        }
        return false;
    }
};

}  // namespace concgraph
