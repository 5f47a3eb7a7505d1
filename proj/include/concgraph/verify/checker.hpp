#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "../sequential.hpp"
#include "history.hpp"

namespace concgraph::verify {

/// A matched invocation/response pair (or a completed pending invocation).
struct Op {
    Method method = Method::AddVertex;
    Key a = 0;
    Key b = 0;
    bool die = true;
    bool ret = false;
    std::int64_t inv_ts = 0;
    std::int64_t resp_ts = std::numeric_limits<std::int64_t>::max();
    int thread = 0;
};

enum class Verdict { Linearizable, NonLinearizable, Inconclusive };

struct CheckResult {
    Verdict verdict = Verdict::NonLinearizable;
    std::vector<std::size_t> witness;  // op indices in linearization order
    std::uint64_t explored = 0;
};

inline std::vector<bool> legal_returns(Method m) {
    if (m == Method::AddVertex) return {true};  // never false
    return {true, false};
}

/// Applies one operation to the oracle, accepting iff the recorded return is
/// legal in that state. A false acyclic add of a fresh, insertable edge is
/// accepted as an abort (no state change): the relaxed specification allows
/// rejecting an edge whose insertion would not have closed a cycle.
inline bool replay_op(SequentialGraph& g, const Op& op, bool relaxed_acyclic = true) {
    switch (op.method) {
        case Method::AddVertex:
            return g.add_vertex(op.a) == op.ret;
        case Method::RemoveVertex:
            return g.remove_vertex(op.a, op.die) == op.ret;
        case Method::ContainsVertex:
            return g.contains_vertex(op.a) == op.ret;
        case Method::AddEdge: {
            if (g.acyclic_mode() && relaxed_acyclic && !op.ret && g.freshly_insertable(op.a, op.b)) {
                return true;  // abort: state unchanged
            }
            return g.add_edge(op.a, op.b) == op.ret;
        }
        case Method::RemoveEdge:
            return g.remove_edge(op.a, op.b) == op.ret;
        case Method::ContainsEdge:
            return g.contains_edge(op.a, op.b) == op.ret;
        case Method::PathExists:
            return g.path_exists(op.a, op.b) == op.ret;
    }
    return false;
}

/// Replays ops in the given order against the oracle; true iff every recorded
/// return is legal. Used to confirm a specific sequential order directly.
inline bool replay_order(SequentialGraph g, const std::vector<Op>& ops,
                         const std::vector<std::size_t>& order) {
    for (std::size_t i : order) {
        if (!replay_op(g, ops[i])) return false;
    }
    return true;
}

/// Splits a history into completed ops and pending invocations.
inline std::pair<std::vector<Op>, std::vector<Op>> pair_events(const History& h) {
    std::map<int, Op> open;
    std::vector<Op> done;
    for (const auto& e : h.events) {
        if (!e.is_response) {
            Op op;
            op.method = e.method;
            op.a = e.a;
            op.b = e.b;
            op.die = e.die;
            op.inv_ts = e.ts;
            op.thread = e.thread;
            open[e.thread] = op;
        } else {
            auto it = open.find(e.thread);
            if (it == open.end()) throw std::runtime_error("checker: response without invocation");
            it->second.ret = e.ret;
            it->second.resp_ts = e.ts;
            done.push_back(it->second);
            open.erase(it);
        }
    }
    std::vector<Op> pending;
    for (auto& [tid, op] : open) pending.push_back(op);
    return {done, pending};
}

/// Completion construction: every pending invocation either is discarded or
/// completed with each return its specification allows. Returns one candidate
/// history (as an op list) per combination.
inline std::vector<std::vector<Op>> complete_ops(const History& h) {
    auto [done, pending] = pair_events(h);
    std::vector<std::vector<Op>> out{done};
    for (const Op& p : pending) {
        std::vector<std::vector<Op>> next;
        for (auto& cand : out) {
            next.push_back(cand);  // discarded
            for (bool r : legal_returns(p.method)) {
                auto with = cand;
                Op completed = p;
                completed.ret = r;  // response pending: unconstrained in real time
                with.push_back(completed);
                next.push_back(std::move(with));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// Same construction at history level (candidates with appended responses).
inline std::vector<History> complete_history(const History& h) {
    auto [done, pending] = pair_events(h);
    (void)done;
    std::int64_t last_ts = h.events.empty() ? 0 : h.events.back().ts;

    // a pending invocation is an invocation with no later response from its
    // thread; identify them positionally
    std::vector<bool> is_pending_inv(h.events.size(), false);
    std::map<int, std::size_t> open;
    for (std::size_t i = 0; i < h.events.size(); ++i) {
        const auto& e = h.events[i];
        if (!e.is_response) {
            open[e.thread] = i;
        } else {
            open.erase(e.thread);
        }
    }
    for (auto& [tid, idx] : open) is_pending_inv[idx] = true;

    std::vector<History> out{h};
    // drop the pending invocation events from the base candidate
    out[0].events.clear();
    for (std::size_t i = 0; i < h.events.size(); ++i) {
        if (!is_pending_inv[i]) out[0].events.push_back(h.events[i]);
    }
    for (const Op& p : pending) {
        std::vector<History> next;
        for (auto& cand : out) {
            next.push_back(cand);  // discarded
            for (bool r : legal_returns(p.method)) {
                History with = cand;
                HistoryEvent inv;
                inv.ts = p.inv_ts;
                inv.thread = p.thread;
                inv.method = p.method;
                inv.a = p.a;
                inv.b = p.b;
                inv.die = p.die;
                HistoryEvent resp = inv;
                resp.ts = ++last_ts;
                resp.is_response = true;
                resp.ret = r;
                with.events.push_back(inv);
                with.events.push_back(resp);
                with.sort_by_time();
                next.push_back(std::move(with));
            }
        }
        out = std::move(next);
    }
    return out;
}

namespace detail {

class Search {
public:
    Search(const std::vector<Op>& ops, const SequentialGraph& initial, std::uint64_t budget)
        : ops_(ops), budget_(budget) {
        states_.push_back(initial);
    }

    bool run(CheckResult& result) {
        bool found = dfs(0);
        result.explored = explored_;
        if (found) {
            result.verdict = Verdict::Linearizable;
            result.witness = path_;
            return true;
        }
        result.verdict = exhausted_ ? Verdict::Inconclusive : Verdict::NonLinearizable;
        return false;
    }

private:
    bool dfs(std::uint64_t mask) {
        if (path_.size() == ops_.size()) return true;
        if (++explored_ > budget_) {
            exhausted_ = true;
            return false;
        }
        std::string memo_key = std::to_string(mask) + '|' + states_.back().state_key();
        if (!memo_.insert(memo_key).second) return false;

        for (std::size_t i = 0; i < ops_.size(); ++i) {
            if (mask & (std::uint64_t{1} << i)) continue;
            if (!minimal(mask, i)) continue;
            SequentialGraph next = states_.back();
            if (!replay_op(next, ops_[i])) continue;
            path_.push_back(i);
            states_.push_back(std::move(next));
            if (dfs(mask | (std::uint64_t{1} << i))) return true;
            states_.pop_back();
            path_.pop_back();
            if (exhausted_) return false;
        }
        return false;
    }

    // an op may linearize next only if no other unlinearized op finished
    // before it started (real-time order is preserved)
    bool minimal(std::uint64_t mask, std::size_t i) const {
        for (std::size_t j = 0; j < ops_.size(); ++j) {
            if (j == i || (mask & (std::uint64_t{1} << j))) continue;
            if (ops_[j].resp_ts < ops_[i].inv_ts) return false;
        }
        return true;
    }

    const std::vector<Op>& ops_;
    std::uint64_t budget_;
    std::uint64_t explored_ = 0;
    bool exhausted_ = false;
    std::vector<std::size_t> path_;
    std::vector<SequentialGraph> states_;
    std::unordered_set<std::string> memo_;
};

}  // namespace detail

/// Exhaustive search for a legal sequential witness that respects real-time
/// precedence. `initial` is the oracle seeded with the pre-recorded state.
inline CheckResult check_linearizable(const History& h, const SequentialGraph& initial,
                                      std::uint64_t budget = 4'000'000) {
    CheckResult best;
    auto candidates = complete_ops(h);
    bool any_inconclusive = false;
    for (auto& ops : candidates) {
        if (ops.size() > 64) throw std::runtime_error("checker: history too large (max 64 ops)");
        detail::Search s(ops, initial, budget);
        CheckResult r;
        if (s.run(r)) return r;
        if (r.verdict == Verdict::Inconclusive) any_inconclusive = true;
        best.explored += r.explored;
    }
    best.verdict = any_inconclusive ? Verdict::Inconclusive : Verdict::NonLinearizable;
    return best;
}

inline CheckResult check_linearizable(const History& h, std::uint64_t budget = 4'000'000) {
    return check_linearizable(h, SequentialGraph(h.acyclic), budget);
}

}  // namespace concgraph::verify
