#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "../acyclic.hpp"
#include "../coarse.hpp"
#include "../digraph.hpp"
#include "../sequential.hpp"

namespace concgraph::bench {

/// The implementations under measurement.
enum class Variant { Sequential, Coarse, NoDie, Die };

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::Sequential: return "seq";
        case Variant::Coarse: return "coarse";
        case Variant::NoDie: return "nodie";
        case Variant::Die: return "die";
    }
    return "?";
}

inline std::optional<Variant> variant_from_string(const std::string& s) {
    if (s == "seq") return Variant::Sequential;
    if (s == "coarse") return Variant::Coarse;
    if (s == "nodie") return Variant::NoDie;
    if (s == "die") return Variant::Die;
    return std::nullopt;
}

/// Uniform handle over the four implementations so the harness, the recorder
/// and the CLI can drive any of them. The incoming-edge sweep policy of the
/// concurrent variants is bound at construction.
class GraphApi {
public:
    virtual ~GraphApi() = default;
    virtual bool add_vertex(Key k) = 0;
    virtual bool remove_vertex(Key k) = 0;
    virtual bool contains_vertex(Key k) const = 0;
    virtual bool add_edge(Key from, Key to) = 0;
    virtual bool remove_edge(Key from, Key to) = 0;
    virtual bool contains_edge(Key from, Key to) const = 0;
    virtual bool path_exists(Key from, Key to) const = 0;
    virtual Snapshot snapshot() const = 0;
    virtual Diagnostics diagnostics() const { return {}; }
    virtual void bulk_load(const std::vector<Key>& vs,
                           const std::vector<std::pair<Key, Key>>& es) = 0;
    virtual bool thread_safe() const = 0;
};

namespace detail_api {

class SequentialApi final : public GraphApi {
public:
    SequentialApi(bool acyclic, bool die) : g_(acyclic), die_(die) {}
    bool add_vertex(Key k) override { return g_.add_vertex(k); }
    bool remove_vertex(Key k) override { return g_.remove_vertex(k, die_); }
    bool contains_vertex(Key k) const override { return g_.contains_vertex(k); }
    bool add_edge(Key a, Key b) override { return g_.add_edge(a, b); }
    bool remove_edge(Key a, Key b) override { return g_.remove_edge(a, b); }
    bool contains_edge(Key a, Key b) const override { return g_.contains_edge(a, b); }
    bool path_exists(Key a, Key b) const override { return g_.path_exists(a, b); }
    Snapshot snapshot() const override { return g_.snapshot(); }
    void bulk_load(const std::vector<Key>& vs,
                   const std::vector<std::pair<Key, Key>>& es) override {
        g_.bulk_load(vs, es);
    }
    bool thread_safe() const override { return false; }

private:
    SequentialGraph g_;
    bool die_;
};

class CoarseApi final : public GraphApi {
public:
    CoarseApi(bool acyclic, bool die) : g_(acyclic), die_(die) {}
    bool add_vertex(Key k) override { return g_.add_vertex(k); }
    bool remove_vertex(Key k) override { return g_.remove_vertex(k, die_); }
    bool contains_vertex(Key k) const override { return g_.contains_vertex(k); }
    bool add_edge(Key a, Key b) override { return g_.add_edge(a, b); }
    bool remove_edge(Key a, Key b) override { return g_.remove_edge(a, b); }
    bool contains_edge(Key a, Key b) const override { return g_.contains_edge(a, b); }
    bool path_exists(Key a, Key b) const override { return g_.path_exists(a, b); }
    Snapshot snapshot() const override { return g_.snapshot(); }
    void bulk_load(const std::vector<Key>& vs,
                   const std::vector<std::pair<Key, Key>>& es) override {
        g_.bulk_load(vs, es);
    }
    bool thread_safe() const override { return true; }

private:
    CoarseGraph g_;
    bool die_;
};

class PlainConcApi final : public GraphApi {
public:
    PlainConcApi(bool die, ReclaimPolicy policy) : g_(policy), die_(die) {}
    bool add_vertex(Key k) override { return g_.add_vertex(k); }
    bool remove_vertex(Key k) override { return g_.remove_vertex(k, die_); }
    bool contains_vertex(Key k) const override { return g_.contains_vertex(k); }
    bool add_edge(Key a, Key b) override { return g_.add_edge(a, b); }
    bool remove_edge(Key a, Key b) override { return g_.remove_edge(a, b); }
    bool contains_edge(Key a, Key b) const override { return g_.contains_edge(a, b); }
    bool path_exists(Key, Key) const override {
        throw std::logic_error("path_exists: acyclic variant only");
    }
    Snapshot snapshot() const override { return g_.snapshot(); }
    Diagnostics diagnostics() const override { return g_.diagnostics(); }
    void bulk_load(const std::vector<Key>& vs,
                   const std::vector<std::pair<Key, Key>>& es) override {
        g_.bulk_load(vs, es);
    }
    bool thread_safe() const override { return true; }

private:
    DirectedGraph g_;
    bool die_;
};

class AcyclicConcApi final : public GraphApi {
public:
    AcyclicConcApi(bool die, ReclaimPolicy policy) : g_(policy), die_(die) {}
    bool add_vertex(Key k) override { return g_.add_vertex(k); }
    bool remove_vertex(Key k) override { return g_.remove_vertex(k, die_); }
    bool contains_vertex(Key k) const override { return g_.contains_vertex(k); }
    bool add_edge(Key a, Key b) override { return g_.add_edge(a, b); }
    bool remove_edge(Key a, Key b) override { return g_.remove_edge(a, b); }
    bool contains_edge(Key a, Key b) const override { return g_.contains_edge(a, b); }
    bool path_exists(Key a, Key b) const override { return g_.path_exists(a, b); }
    Snapshot snapshot() const override { return g_.snapshot(); }
    Diagnostics diagnostics() const override { return g_.diagnostics(); }
    void bulk_load(const std::vector<Key>& vs,
                   const std::vector<std::pair<Key, Key>>& es) override {
        g_.bulk_load(vs, es);
    }
    bool thread_safe() const override { return true; }

private:
    AcyclicDigraph g_;
    bool die_;
};

}  // namespace detail_api

inline std::unique_ptr<GraphApi> make_graph(Variant v, bool acyclic,
                                            ReclaimPolicy policy = ReclaimPolicy::Deferred) {
    switch (v) {
        case Variant::Sequential:
            // the reference removal deletes a vertex together with its edges
            return std::make_unique<detail_api::SequentialApi>(acyclic, /*die=*/true);
        case Variant::Coarse:
            return std::make_unique<detail_api::CoarseApi>(acyclic, /*die=*/true);
        case Variant::NoDie:
            if (acyclic) return std::make_unique<detail_api::AcyclicConcApi>(false, policy);
            return std::make_unique<detail_api::PlainConcApi>(false, policy);
        case Variant::Die:
            if (acyclic) return std::make_unique<detail_api::AcyclicConcApi>(true, policy);
            return std::make_unique<detail_api::PlainConcApi>(true, policy);
    }
    throw std::logic_error("make_graph: bad variant");
}

}  // namespace concgraph::bench
