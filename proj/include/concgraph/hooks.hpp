#pragma once

#include <atomic>
#include <cstdint>

// Instrumented pause points for deterministic interleaving tests. Compiled in
// only when CONCGRAPH_TEST_HOOKS is defined (test builds); release builds see
// empty inline functions.

namespace concgraph::hooks {

enum class Point : int {
    VertexLocateBeforeLock,   // locate loop positioned (pred,curr), locks not yet taken
    VertexLocateLocked,       // validation succeeded, both vertex locks held
    HelpSearchFirstFound,     // first endpoint verified present+unmarked
    HelpSearchSecondBeforeCheck,  // second endpoint positioned, not yet verified
    EdgeLocateBeforeLock,     // edge loop positioned (pred,curr), locks not yet taken
    AddEdgeLocked,            // add path: edge locks held, before insert/verdict
    RemoveEdgeLocked,         // remove path: edge locks held, before unlink/verdict
    ContainsVertexStep,       // contains traversal standing on a vertex node
    ContainsEdgeStep,         // contains traversal standing on an edge node
    AcyclicAddInserted,       // provisional edge published, before reachability check
};

#ifdef CONCGRAPH_TEST_HOOKS

using Handler = void (*)(Point, std::int64_t key, void* ctx);

inline std::atomic<Handler>& handler_slot() {
    static std::atomic<Handler> h{nullptr};
    return h;
}

inline std::atomic<void*>& ctx_slot() {
    static std::atomic<void*> c{nullptr};
    return c;
}

// Tag workers so a handler can tell scripted threads apart. -1 = unscripted.
inline thread_local int t_thread_tag = -1;

inline void set_handler(Handler h, void* ctx) {
    ctx_slot().store(ctx, std::memory_order_release);
    handler_slot().store(h, std::memory_order_release);
}

inline void clear_handler() {
    handler_slot().store(nullptr, std::memory_order_release);
    ctx_slot().store(nullptr, std::memory_order_release);
}

inline void pause(Point p, std::int64_t key) {
    if (Handler h = handler_slot().load(std::memory_order_acquire)) {
        h(p, key, ctx_slot().load(std::memory_order_acquire));
    }
}

// Every edge-status transition funnels through here in test builds so a
// monitor can assert only Transit->Added, Transit->Marked, Added->Marked occur.
inline std::atomic<std::uint64_t>& illegal_status_transitions() {
    static std::atomic<std::uint64_t> n{0};
    return n;
}

inline void observe_status_write(int old_status, int new_status) {
    // EdgeStatus: Transit=0, Marked=1, Added=2
    const bool legal = (old_status == 0 && new_status == 2) ||
                       (old_status == 0 && new_status == 1) ||
                       (old_status == 2 && new_status == 1);
    if (!legal) illegal_status_transitions().fetch_add(1, std::memory_order_relaxed);
}

#else

inline void pause(Point, std::int64_t) {}
inline void observe_status_write(int, int) {}

#endif

}  // namespace concgraph::hooks
