#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <unordered_set>
#include <utility>
#include <vector>

#include "../common.hpp"
#include "../epoch.hpp"
#include "../hooks.hpp"

namespace concgraph::detail {

// Edge node with a boolean deletion mark (base data structure).
struct PlainEdgeNode {
    const Key val;
    std::atomic<bool> marked{false};
    std::atomic<PlainEdgeNode*> enext{nullptr};
    std::mutex lock;

    explicit PlainEdgeNode(Key k) : val(k) {}
};

// Edge node with the three-state lifecycle (acyclicity-preserving variant).
struct StatusEdgeNode {
    const Key val;
    std::atomic<EdgeStatus> status;
    std::atomic<StatusEdgeNode*> enext{nullptr};
    std::mutex lock;

    explicit StatusEdgeNode(Key k, EdgeStatus s = EdgeStatus::Transit) : val(k), status(s) {}

    void set_status(EdgeStatus next) {
        EdgeStatus old = status.exchange(next, std::memory_order_acq_rel);
        hooks::observe_status_write(static_cast<int>(old), static_cast<int>(next));
        (void)old;
    }
};

struct PlainEdgeTraits {
    using ENode = PlainEdgeNode;

    static ENode* make_confirmed(Key k) { return new ENode(k); }
    static ENode* make(Key k) { return new ENode(k); }

    static bool removed(const ENode* e) { return e->marked.load(std::memory_order_acquire); }
    // Edge membership in the abstract graph.
    static bool abstract(const ENode* e) { return !removed(e); }
    // Edges visible to a reachability scan (same as abstract here).
    static bool reachable_through(const ENode* e) { return abstract(e); }
    static void mark_removed(ENode* e) { e->marked.store(true, std::memory_order_release); }

    // validate held (pred,curr) for the update path: both present, adjacent
    static bool validate(const ENode* e1, const ENode* e2) {
        return !removed(e1) && !removed(e2) &&
               e1->enext.load(std::memory_order_acquire) == e2;
    }
    static bool die_validate(const ENode* e1, const ENode* e2) { return validate(e1, e2); }
    static bool die_removable(const ENode*) { return true; }
};

struct StatusEdgeTraits {
    using ENode = StatusEdgeNode;

    // Sentinels are never removed; construct them confirmed so validation of a
    // coupled pair that includes a sentinel can succeed.
    static ENode* make_confirmed(Key k) { return new ENode(k, EdgeStatus::Added); }
    static ENode* make(Key k) { return new ENode(k); }

    static EdgeStatus status_of(const ENode* e) { return e->status.load(std::memory_order_acquire); }
    static bool removed(const ENode* e) { return status_of(e) == EdgeStatus::Marked; }
    static bool abstract(const ENode* e) { return status_of(e) == EdgeStatus::Added; }
    // Transit edges are visible to reachability so in-flight inserts conflict.
    static bool reachable_through(const ENode* e) { return !removed(e); }
    static void mark_removed(ENode* e) { e->set_status(EdgeStatus::Marked); }

    // both confirmed and adjacent: used by the remove path
    static bool validate(const ENode* e1, const ENode* e2) {
        return status_of(e1) == EdgeStatus::Added && status_of(e2) == EdgeStatus::Added &&
               e1->enext.load(std::memory_order_acquire) == e2;
    }
    // neither removed, adjacent: used by the insert/rollback paths
    static bool validate_unremoved(const ENode* e1, const ENode* e2) {
        return !removed(e1) && !removed(e2) &&
               e1->enext.load(std::memory_order_acquire) == e2;
    }
    static bool die_validate(const ENode* e1, const ENode* e2) { return validate_unremoved(e1, e2); }
    // A Transit node belongs to its inserting thread; the sweep must not take it.
    static bool die_removable(const ENode* e) { return status_of(e) == EdgeStatus::Added; }
};

template <typename EdgeTraits>
class GraphCore {
public:
    using ENode = typename EdgeTraits::ENode;

    struct VNode {
        const Key val;
        std::atomic<bool> marked{false};
        std::atomic<VNode*> vnext{nullptr};
        ENode* const edge_head;
        ENode* const edge_tail;
        std::mutex lock;

        explicit VNode(Key k)
            : val(k),
              edge_head(EdgeTraits::make_confirmed(kSentinelMin)),
              edge_tail(EdgeTraits::make_confirmed(kSentinelMax)) {
            edge_head->enext.store(edge_tail, std::memory_order_relaxed);
        }

        ~VNode() {
            // Owns whatever is still linked between its sentinels; individually
            // unlinked edge nodes were retired separately.
            ENode* e = edge_head;
            while (e != nullptr) {
                ENode* next = (e == edge_tail) ? nullptr : e->enext.load(std::memory_order_relaxed);
                delete e;
                e = next;
            }
        }
    };

    explicit GraphCore(ReclaimPolicy policy = ReclaimPolicy::Deferred)
        : policy_(policy), head_(new VNode(kSentinelMin)), tail_(new VNode(kSentinelMax)) {
        head_->vnext.store(tail_, std::memory_order_relaxed);
    }

    ~GraphCore() {
        VNode* v = head_;
        while (v != nullptr) {
            VNode* next = (v == tail_) ? nullptr : v->vnext.load(std::memory_order_relaxed);
            delete v;
            v = next;
        }
        std::lock_guard<std::mutex> g(pool_mu_);
        for (auto& r : leak_pool_) r.second(r.first);
        leak_pool_.clear();
    }

    GraphCore(const GraphCore&) = delete;
    GraphCore& operator=(const GraphCore&) = delete;

    /// Always returns true: a present key is an idempotent success.
    bool add_vertex(Key key) {
        require_user_key(key);
        epoch::Guard g;
        auto [v1, v2] = locate_vertex(key);
        if (v2->val != key) {
            VNode* v3 = new VNode(key);
            v3->vnext.store(v2, std::memory_order_relaxed);
            v1->vnext.store(v3, std::memory_order_release);  // now reachable
        }
        v1->lock.unlock();
        v2->lock.unlock();
        return true;
    }

    /// Logical mark then physical unlink; optionally sweeps incoming edges.
    bool remove_vertex(Key key, bool remove_incoming = true) {
        require_user_key(key);
        epoch::Guard g;
        auto [v1, v2] = locate_vertex(key);
        if (v2->val == key) {
            v2->marked.store(true, std::memory_order_release);                    // logical removal
            v1->vnext.store(v2->vnext.load(std::memory_order_relaxed), std::memory_order_release);
            retire(v2);
            v1->lock.unlock();
            v2->lock.unlock();
            if (remove_incoming) remove_incoming_edges(key);
            return true;
        }
        v1->lock.unlock();
        v2->lock.unlock();
        return false;
    }

    /// Wait-free: one lock-less pass over the vertex list.
    bool contains_vertex(Key key) const {
        require_user_key(key);
        epoch::Guard g;
        const VNode* v = head_;
        for (;;) {
            hooks::pause(hooks::Point::ContainsVertexStep, v->val);
            if (v->val >= key) break;
            v = v->vnext.load(std::memory_order_acquire);
        }
        return v->val == key && !v->marked.load(std::memory_order_acquire);
    }

    /// Unlinks every edge node keyed `key` from every vertex the list walk
    /// yields. Best-effort cleanup; absent edges are not an error.
    void remove_incoming_edges(Key key) {
        epoch::Guard g;
        VNode* v = head_;
        while (v != nullptr) {
            // one validated scan-and-unlink pass per vertex; retry only if
            // validation fails
            for (;;) {
                ENode* e1 = v->edge_head;
                ENode* e2 = e1->enext.load(std::memory_order_acquire);
                while (e2->val < key) {
                    e1 = e2;
                    e2 = e2->enext.load(std::memory_order_acquire);
                }
                e1->lock.lock();
                e2->lock.lock();
                if (EdgeTraits::die_validate(e1, e2)) {
                    if (e2->val == key && EdgeTraits::die_removable(e2)) {
                        EdgeTraits::mark_removed(e2);
                        e1->enext.store(e2->enext.load(std::memory_order_relaxed),
                                        std::memory_order_release);
                        retire(e2);
                    }
                    e1->lock.unlock();
                    e2->lock.unlock();
                    break;
                }
                e1->lock.unlock();
                e2->lock.unlock();
                bump_edge_retry();
            }
            v = (v == tail_) ? nullptr : v->vnext.load(std::memory_order_acquire);
        }
    }

    /// Consistent listing per the abstract-graph definitions. Caller must be
    /// at quiescence (or hold the world stopped).
    Snapshot snapshot() const {
        epoch::Guard g;
        Snapshot s;
        std::unordered_set<Key> live;
        for (const VNode* v = head_->vnext.load(std::memory_order_acquire); v != tail_;
             v = v->vnext.load(std::memory_order_acquire)) {
            if (!v->marked.load(std::memory_order_acquire)) {
                s.vertices.push_back(v->val);
                live.insert(v->val);
            }
        }
        for (const VNode* v = head_->vnext.load(std::memory_order_acquire); v != tail_;
             v = v->vnext.load(std::memory_order_acquire)) {
            if (v->marked.load(std::memory_order_acquire)) continue;
            for (const ENode* e = v->edge_head->enext.load(std::memory_order_acquire);
                 e->val != kSentinelMax; e = e->enext.load(std::memory_order_acquire)) {
                if (EdgeTraits::abstract(e) && live.count(e->val) != 0) {
                    s.edges.emplace_back(v->val, e->val);
                }
            }
        }
        return s;
    }

    Diagnostics diagnostics() const {
        Diagnostics d;
        d.vertex_validation_retries = vertex_retries_.load(std::memory_order_relaxed);
        d.edge_validation_retries = edge_retries_.load(std::memory_order_relaxed);
        d.retry_budget_exceeded = budget_exceeded_.load(std::memory_order_relaxed);
        d.cycle_checks = cycle_checks_.load(std::memory_order_relaxed);
        d.cycle_aborts = cycle_aborts_.load(std::memory_order_relaxed);
        d.suspected_false_positives = suspected_fp_.load(std::memory_order_relaxed);
        return d;
    }

    /// Retries beyond this many locate attempts bump a diagnostic counter
    /// (they are never bounded). 0 disables the accounting.
    void set_retry_budget(std::uint64_t attempts) { retry_budget_ = attempts; }

    /// Quiescent bulk construction: sorted unique vertices, per-source sorted
    /// unique edge targets. Used to seed benchmark graphs.
    void bulk_load(const std::vector<Key>& vertices,
                   const std::vector<std::pair<Key, Key>>& edges) {
        VNode* prev = head_;
        std::vector<VNode*> nodes;
        nodes.reserve(vertices.size());
        for (Key k : vertices) {
            require_user_key(k);
            VNode* n = new VNode(k);
            prev->vnext.store(n, std::memory_order_relaxed);
            prev = n;
            nodes.push_back(n);
        }
        prev->vnext.store(tail_, std::memory_order_release);

        std::size_t i = 0;
        for (VNode* v : nodes) {
            ENode* eprev = v->edge_head;
            while (i < edges.size() && edges[i].first == v->val) {
                ENode* e = EdgeTraits::make_confirmed(edges[i].second);  // confirmed state
                eprev->enext.store(e, std::memory_order_relaxed);
                eprev = e;
                ++i;
            }
            eprev->enext.store(v->edge_tail, std::memory_order_release);
        }
    }

protected:
    struct LockedPair {
        VNode* v1;
        VNode* v2;
    };

    // Returns (pred, curr) with pred.val < key <= curr.val, both locked and
    // validated unmarked + adjacent. Loops until validation succeeds; locks
    // are taken in ascending key order.
    LockedPair locate_vertex(Key key) {
        std::uint64_t attempts = 0;
        for (;;) {
            VNode* v1 = head_;
            VNode* v2 = v1->vnext.load(std::memory_order_acquire);
            while (v2->val < key) {
                v1 = v2;
                v2 = v2->vnext.load(std::memory_order_acquire);
            }
            hooks::pause(hooks::Point::VertexLocateBeforeLock, key);
            v1->lock.lock();
            v2->lock.lock();
            if (!v1->marked.load(std::memory_order_acquire) &&
                !v2->marked.load(std::memory_order_acquire) &&
                v1->vnext.load(std::memory_order_acquire) == v2) {
                hooks::pause(hooks::Point::VertexLocateLocked, key);
                return {v1, v2};
            }
            v1->lock.unlock();
            v2->lock.unlock();
            vertex_retries_.fetch_add(1, std::memory_order_relaxed);
            note_retry(++attempts);
        }
    }

    struct SearchResult {
        VNode* v1 = nullptr;  // endpoint for the first key
        VNode* v2 = nullptr;  // endpoint for the second key
        bool ok = false;
    };

    // Lock-less endpoint search in ascending key order. Reports failure if
    // either vertex is absent or marked at its read.
    SearchResult help_search_edge(Key key1, Key key2) const {
        const Key lo = key1 < key2 ? key1 : key2;
        const Key hi = key1 < key2 ? key2 : key1;

        VNode* a = const_cast<VNode*>(head_);
        while (a->val < lo) a = a->vnext.load(std::memory_order_acquire);
        if (a->val != lo || a->marked.load(std::memory_order_acquire)) return {};
        hooks::pause(hooks::Point::HelpSearchFirstFound, lo);

        VNode* b = a;
        if (hi != lo) {
            b = a->vnext.load(std::memory_order_acquire);
            while (b->val < hi) b = b->vnext.load(std::memory_order_acquire);
            hooks::pause(hooks::Point::HelpSearchSecondBeforeCheck, hi);
            if (b->val != hi || b->marked.load(std::memory_order_acquire)) return {};
        }
        return key1 <= key2 ? SearchResult{a, b, true} : SearchResult{b, a, true};
    }

    struct LockedEdgePair {
        ENode* e1;
        ENode* e2;
    };

    // Lock-couples into v's edge list around key2, validating with the given
    // predicate after the locks are held.
    template <typename Validate>
    LockedEdgePair locate_edge_in(VNode* v, Key key2, Validate&& valid) {
        std::uint64_t attempts = 0;
        for (;;) {
            ENode* e1 = v->edge_head;
            ENode* e2 = e1->enext.load(std::memory_order_acquire);
            while (e2->val < key2) {
                e1 = e2;
                e2 = e2->enext.load(std::memory_order_acquire);
            }
            hooks::pause(hooks::Point::EdgeLocateBeforeLock, key2);
            e1->lock.lock();
            e2->lock.lock();
            if (valid(e1, e2)) return {e1, e2};
            e1->lock.unlock();
            e2->lock.unlock();
            bump_edge_retry();
            note_retry(++attempts);
        }
    }

    void retire(VNode* v) {
        if (policy_ == ReclaimPolicy::Deferred) {
            epoch::domain().retire(v);
        } else {
            pool_push(v, [](void* p) { delete static_cast<VNode*>(p); });
        }
    }

    void retire(ENode* e) {
        if (policy_ == ReclaimPolicy::Deferred) {
            epoch::domain().retire(e);
        } else {
            pool_push(e, [](void* p) { delete static_cast<ENode*>(p); });
        }
    }

    void bump_edge_retry() const { edge_retries_.fetch_add(1, std::memory_order_relaxed); }

    void note_retry(std::uint64_t attempts) const {
        if (retry_budget_ != 0 && attempts == retry_budget_) {
            budget_exceeded_.fetch_add(1, std::memory_order_relaxed);
        }
    }

    void pool_push(void* p, void (*del)(void*)) {
        std::lock_guard<std::mutex> g(pool_mu_);
        leak_pool_.emplace_back(p, del);
    }

    ReclaimPolicy policy_;
    VNode* const head_;
    VNode* const tail_;

    std::uint64_t retry_budget_ = 0;
    mutable std::atomic<std::uint64_t> vertex_retries_{0};
    mutable std::atomic<std::uint64_t> edge_retries_{0};
    mutable std::atomic<std::uint64_t> budget_exceeded_{0};
    mutable std::atomic<std::uint64_t> cycle_checks_{0};
    mutable std::atomic<std::uint64_t> cycle_aborts_{0};
    mutable std::atomic<std::uint64_t> suspected_fp_{0};

    std::mutex pool_mu_;
    std::vector<std::pair<void*, void (*)(void*)>> leak_pool_;
};

}  // namespace concgraph::detail
