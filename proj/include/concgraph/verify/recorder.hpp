#pragma once

#include <chrono>
#include <stdexcept>
#include <vector>

#include "history.hpp"

namespace concgraph::verify {

/// Multi-producer history capture: one buffer per thread, merged by timestamp
/// afterwards, so recording never contends. Buffers are bounded; an overflow
/// rejects the run.
class Recorder {
public:
    explicit Recorder(int threads, bool acyclic = false, std::size_t cap_per_thread = 1 << 16)
        : cap_(cap_per_thread), acyclic_(acyclic), buffers_(threads) {}

    static std::int64_t now() {
        return std::chrono::steady_clock::now().time_since_epoch().count();
    }

    void invoke(int tid, Method m, Key a, Key b = 0, bool die = true) {
        HistoryEvent e;
        e.thread = tid;
        e.method = m;
        e.a = a;
        e.b = b;
        e.die = die;
        e.ts = now();
        push(tid, e);
    }

    void respond(int tid, Method m, bool ret, Key a, Key b = 0, bool die = true) {
        HistoryEvent e;
        e.thread = tid;
        e.method = m;
        e.a = a;
        e.b = b;
        e.die = die;
        e.is_response = true;
        e.ret = ret;
        e.ts = now();
        push(tid, e);
    }

    /// Merge per-thread buffers into one time-ordered history. Call after all
    /// recording threads have been joined.
    History take() {
        History h;
        h.acyclic = acyclic_;
        for (auto& buf : buffers_) {
            h.events.insert(h.events.end(), buf.begin(), buf.end());
            buf.clear();
        }
        h.sort_by_time();
        return h;
    }

private:
    void push(int tid, const HistoryEvent& e) {
        auto& buf = buffers_.at(static_cast<std::size_t>(tid));
        if (buf.size() >= cap_) throw std::runtime_error("recorder: buffer overflow, run rejected");
        buf.push_back(e);
    }

    std::size_t cap_;
    bool acyclic_;
    std::vector<std::vector<HistoryEvent>> buffers_;
};

}  // namespace concgraph::verify
