#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace concgraph::epoch {

// Epoch-based deferred reclamation. Readers traverse unlinked nodes, so a
// physically removed node may only be freed once every thread that could hold
// a stale reference has moved past the retirement epoch. One process-wide
// domain is shared by all graph instances; tests may build their own.
class Domain {
    static constexpr int kMaxSlots = 256;
    static constexpr std::uint64_t kIdle = 0;
    static constexpr std::size_t kCollectEvery = 128;

    struct alignas(64) Slot {
        std::atomic<std::uint64_t> pinned{kIdle};
        std::atomic<bool> owned{false};
    };

    struct Retired {
        void* ptr;
        void (*deleter)(void*);
        std::uint64_t epoch;
    };

public:
    ~Domain() {
        for (auto& r : limbo_) r.deleter(r.ptr);
    }

    void pin() {
        Lease& l = my_lease();
        if (++l.depth > 1) return;
        Slot& s = slots_[l.slot];
        // Publish, then re-check the global epoch: once the published value is
        // confirmed current, no collection can advance past it.
        std::uint64_t e = epoch_.load(std::memory_order_seq_cst);
        for (;;) {
            s.pinned.exchange(e, std::memory_order_seq_cst);
            std::uint64_t now = epoch_.load(std::memory_order_seq_cst);
            if (now == e) break;
            e = now;
        }
    }

    void unpin() {
        Lease& l = my_lease();
        if (--l.depth > 0) return;
        slots_[l.slot].pinned.store(kIdle, std::memory_order_release);
    }

    template <typename T>
    void retire(T* p) {
        retire_raw(p, [](void* q) { delete static_cast<T*>(q); });
    }

    void retire_raw(void* p, void (*deleter)(void*)) {
        std::lock_guard<std::mutex> g(mu_);
        limbo_.push_back(Retired{p, deleter, epoch_.load(std::memory_order_acquire)});
        if (limbo_.size() % kCollectEvery == 0) collect_locked();
    }

    /// Frees whatever has become safe; returns how many nodes were freed.
    std::size_t collect() {
        std::lock_guard<std::mutex> g(mu_);
        return collect_locked();
    }

    std::size_t limbo_size() {
        std::lock_guard<std::mutex> g(mu_);
        return limbo_.size();
    }

private:
    std::size_t collect_locked() {
        std::uint64_t e = epoch_.load(std::memory_order_seq_cst);
        bool can_advance = true;
        for (const Slot& s : slots_) {
            std::uint64_t p = s.pinned.load(std::memory_order_seq_cst);
            if (p != kIdle && p < e) {
                can_advance = false;
                break;
            }
        }
        if (can_advance) {
            epoch_.compare_exchange_strong(e, e + 1, std::memory_order_seq_cst);
            e = epoch_.load(std::memory_order_seq_cst);
        }
        // A node retired at epoch r is safe once every pin is at >= r + 1,
        // i.e. the global epoch has reached r + 2.
        std::size_t freed = 0;
        std::size_t w = 0;
        for (std::size_t i = 0; i < limbo_.size(); ++i) {
            if (limbo_[i].epoch + 2 <= e) {
                limbo_[i].deleter(limbo_[i].ptr);
                ++freed;
            } else {
                limbo_[w++] = limbo_[i];
            }
        }
        limbo_.resize(w);
        return freed;
    }

    // Per-thread, per-domain slot lease; released on thread exit so slots
    // survive heavy thread churn.
    struct Lease {
        Domain* dom = nullptr;
        int slot = -1;
        int depth = 0;
    };

    struct LeaseTable {
        static constexpr int kCap = 8;
        std::array<Lease, kCap> leases{};

        ~LeaseTable() {
            for (Lease& l : leases) {
                if (l.dom != nullptr) {
                    l.dom->slots_[l.slot].pinned.store(kIdle, std::memory_order_release);
                    l.dom->slots_[l.slot].owned.store(false, std::memory_order_release);
                }
            }
        }
    };

    Lease& my_lease() {
        thread_local LeaseTable table;
        for (Lease& l : table.leases) {
            if (l.dom == this) return l;
        }
        for (Lease& l : table.leases) {
            if (l.dom == nullptr) {
                l.slot = claim_slot();
                l.dom = this;
                l.depth = 0;
                return l;
            }
        }
        throw std::runtime_error("concgraph: thread participates in too many epoch domains");
    }

    int claim_slot() {
        for (int i = 0; i < kMaxSlots; ++i) {
            bool expected = false;
            if (slots_[i].owned.compare_exchange_strong(expected, true)) return i;
        }
        throw std::runtime_error("concgraph: epoch domain slot capacity exhausted");
    }

    std::atomic<std::uint64_t> epoch_{1};
    std::array<Slot, kMaxSlots> slots_{};
    std::mutex mu_;
    std::vector<Retired> limbo_;
};

inline Domain& domain() {
    static Domain d;
    return d;
}

/// Pins the calling thread in a domain for the guard's lifetime. Nestable.
class Guard {
public:
    explicit Guard(Domain& d = domain()) : d_(d) { d_.pin(); }
    ~Guard() { d_.unpin(); }
    Guard(const Guard&) = delete;
    Guard& operator=(const Guard&) = delete;

private:
    Domain& d_;
};

}  // namespace concgraph::epoch
