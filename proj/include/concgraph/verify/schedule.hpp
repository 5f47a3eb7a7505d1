#pragma once

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <thread>
#include <vector>

#include "../common.hpp"
#include "../hooks.hpp"

#ifndef CONCGRAPH_TEST_HOOKS
#error "schedule.hpp drives instrumented pause points; build with CONCGRAPH_TEST_HOOKS"
#endif

namespace concgraph::verify {

/// Deterministic interleaving driver. A test declares the pause points each
/// tagged thread must hit; worker threads park there until the test releases
/// them, giving a scripted schedule over the library's instrumented points.
class ScriptedSchedule {
public:
    ScriptedSchedule() = default;
    ~ScriptedSchedule() { uninstall(); }
    ScriptedSchedule(const ScriptedSchedule&) = delete;
    ScriptedSchedule& operator=(const ScriptedSchedule&) = delete;

    /// Declares that the thread tagged `tag` parks at (`point`, `key`).
    /// Returns the step handle used with await_blocked/release.
    int expect(int tag, hooks::Point point, Key key) {
        std::lock_guard<std::mutex> g(mu_);
        steps_.push_back(Step{tag, point, key, State::Armed});
        return static_cast<int>(steps_.size()) - 1;
    }

    void install() { hooks::set_handler(&ScriptedSchedule::trampoline, this); }

    void uninstall() { hooks::clear_handler(); }

    /// Blocks until the tagged thread is parked at the step. False on timeout
    /// (the expected interleaving did not happen). Polls rather than waiting
    /// on the condition variable: timed waits go through
    /// pthread_cond_clockwait, which this toolchain's TSan does not intercept.
    bool await_blocked(int step, std::chrono::milliseconds timeout = std::chrono::seconds(10)) {
        const auto deadline = std::chrono::steady_clock::now() + timeout;
        for (;;) {
            {
                std::lock_guard<std::mutex> g(mu_);
                if (steps_[static_cast<std::size_t>(step)].state != State::Armed) return true;
            }
            if (std::chrono::steady_clock::now() >= deadline) return false;
            std::this_thread::sleep_for(std::chrono::milliseconds(1));
        }
    }

    void release(int step) {
        std::lock_guard<std::mutex> g(mu_);
        steps_[static_cast<std::size_t>(step)].state = State::Released;
        cv_.notify_all();
    }

    /// Scopes a worker's tag so the handler can tell scripted threads apart.
    struct Tag {
        explicit Tag(int t) { hooks::t_thread_tag = t; }
        ~Tag() { hooks::t_thread_tag = -1; }
    };

private:
    enum class State { Armed, Blocked, Released };

    struct Step {
        int tag;
        hooks::Point point;
        Key key;
        State state;
    };

    static void trampoline(hooks::Point p, std::int64_t key, void* ctx) {
        static_cast<ScriptedSchedule*>(ctx)->on_pause(p, key);
    }

    void on_pause(hooks::Point p, Key key) {
        std::unique_lock<std::mutex> g(mu_);
        for (auto& s : steps_) {
            if (s.state == State::Armed && s.tag == hooks::t_thread_tag && s.point == p &&
                s.key == key) {
                s.state = State::Blocked;
                cv_.notify_all();
                cv_.wait(g, [&] { return s.state == State::Released; });
                return;
            }
        }
    }

    std::mutex mu_;
    std::condition_variable cv_;
    std::vector<Step> steps_;
};

}  // namespace concgraph::verify
