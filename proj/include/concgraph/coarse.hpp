#pragma once

#include <mutex>

#include "sequential.hpp"

namespace concgraph {

/// One global lock around every operation; thread-safe by construction. The
/// traditional baseline the fine-grained structure is measured against.
class CoarseGraph {
public:
    explicit CoarseGraph(bool acyclic = false) : g_(acyclic) {}

    bool add_vertex(Key k) {
        std::lock_guard<std::mutex> l(mu_);
        return g_.add_vertex(k);
    }

    bool remove_vertex(Key k, bool die = true) {
        std::lock_guard<std::mutex> l(mu_);
        return g_.remove_vertex(k, die);
    }

    bool contains_vertex(Key k) const {
        std::lock_guard<std::mutex> l(mu_);
        return g_.contains_vertex(k);
    }

    bool add_edge(Key from, Key to) {
        std::lock_guard<std::mutex> l(mu_);
        return g_.add_edge(from, to);
    }

    bool remove_edge(Key from, Key to) {
        std::lock_guard<std::mutex> l(mu_);
        return g_.remove_edge(from, to);
    }

    bool contains_edge(Key from, Key to) const {
        std::lock_guard<std::mutex> l(mu_);
        return g_.contains_edge(from, to);
    }

    bool path_exists(Key from, Key to) const {
        std::lock_guard<std::mutex> l(mu_);
        return g_.path_exists(from, to);
    }

    Snapshot snapshot() const {
        std::lock_guard<std::mutex> l(mu_);
        return g_.snapshot();
    }

    void bulk_load(const std::vector<Key>& vertices,
                   const std::vector<std::pair<Key, Key>>& edges) {
        std::lock_guard<std::mutex> l(mu_);
        g_.bulk_load(vertices, edges);
    }

private:
    mutable std::mutex mu_;
    SequentialGraph g_;
};

}  // namespace concgraph
