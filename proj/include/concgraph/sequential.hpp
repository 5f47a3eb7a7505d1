#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "common.hpp"

namespace concgraph {

/// Single-threaded reference graph implementing the sequential specification
/// exactly. Serves as ground truth for every differential test and for the
/// linearizability checker's replay. Plain or acyclic flavour.
///
/// remove_vertex models both sweep variants: with die=true the incoming edge
/// entries are erased; with die=false they are kept but hidden (every edge
/// query checks endpoint liveness first), which matches what a re-added key
/// observes on the concurrent structure.
class SequentialGraph {
public:
    explicit SequentialGraph(bool acyclic = false) : acyclic_(acyclic) {}

    bool add_vertex(Key k) {
        require_user_key(k);
        adj_.try_emplace(k);  // re-added key starts with no outgoing edges
        return true;
    }

    bool remove_vertex(Key k, bool die = true) {
        require_user_key(k);
        auto it = adj_.find(k);
        if (it == adj_.end()) return false;
        adj_.erase(it);
        if (die) {
            for (auto& [v, out] : adj_) out.erase(k);
        }
        return true;
    }

    bool contains_vertex(Key k) const {
        require_user_key(k);
        return adj_.count(k) != 0;
    }

    bool add_edge(Key from, Key to) {
        require_user_key(from);
        require_user_key(to);
        auto it = adj_.find(from);
        if (it == adj_.end() || adj_.count(to) == 0) return false;
        if (it->second.count(to) != 0) return true;  // already present
        if (acyclic_ && closes_cycle(from, to)) return false;
        it->second.insert(to);
        return true;
    }

    bool remove_edge(Key from, Key to) {
        require_user_key(from);
        require_user_key(to);
        auto it = adj_.find(from);
        if (it == adj_.end() || adj_.count(to) == 0) return false;
        it->second.erase(to);  // absent edge between live endpoints: still true
        return true;
    }

    bool contains_edge(Key from, Key to) const {
        require_user_key(from);
        require_user_key(to);
        auto it = adj_.find(from);
        if (it == adj_.end() || adj_.count(to) == 0) return false;
        return it->second.count(to) != 0;
    }

    bool path_exists(Key from, Key to) const {
        require_user_key(from);
        require_user_key(to);
        if (adj_.count(from) == 0) return false;
        return reaches(from, to);
    }

    /// Would inserting (from,to) as a fresh edge be accepted without a cycle?
    /// Exposed so the checker can model an abort distinctly from a reject.
    bool freshly_insertable(Key from, Key to) const {
        auto it = adj_.find(from);
        if (it == adj_.end() || adj_.count(to) == 0) return false;
        if (it->second.count(to) != 0) return false;
        return !(acyclic_ && closes_cycle(from, to));
    }

    bool acyclic_mode() const { return acyclic_; }

    Snapshot snapshot() const {
        Snapshot s;
        for (const auto& [v, out] : adj_) {
            s.vertices.push_back(v);
            for (Key w : out) {
                if (adj_.count(w) != 0) s.edges.emplace_back(v, w);
            }
        }
        return s;
    }

    void bulk_load(const std::vector<Key>& vertices,
                   const std::vector<std::pair<Key, Key>>& edges) {
        for (Key v : vertices) adj_.try_emplace(v);
        for (auto& [u, v] : edges) adj_[u].insert(v);
    }

    /// Canonical state token for memoisation. Hidden (dead-endpoint) entries
    /// are included: they are part of the state a re-added key would observe.
    std::string state_key() const {
        std::string s;
        for (const auto& [v, out] : adj_) {
            s += std::to_string(v);
            s += ':';
            for (Key w : out) {
                s += std::to_string(w);
                s += ',';
            }
            s += ';';
        }
        return s;
    }

private:
    bool closes_cycle(Key from, Key to) const {
        // the new edge (from,to) closes a cycle iff to already reaches from
        return from == to || reaches(to, from);
    }

    // DFS over live vertices only; hidden entries do not conduct.
    bool reaches(Key src, Key dst) const {
        std::set<Key> seen;
        std::vector<Key> stack{src};
        while (!stack.empty()) {
            Key v = stack.back();
            stack.pop_back();
            auto it = adj_.find(v);
            if (it == adj_.end()) continue;
            for (Key w : it->second) {
                if (adj_.count(w) == 0) continue;
                if (w == dst) return true;
                if (seen.insert(w).second) stack.push_back(w);
            }
        }
        return false;
    }

    bool acyclic_;
    std::map<Key, std::set<Key>> adj_;
};

}  // namespace concgraph
