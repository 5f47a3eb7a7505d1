#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "../common.hpp"

namespace concgraph::verify {

enum class Method : int {
    AddVertex,
    RemoveVertex,
    ContainsVertex,
    AddEdge,
    RemoveEdge,
    ContainsEdge,
    PathExists,
};

inline const char* to_string(Method m) {
    switch (m) {
        case Method::AddVertex: return "add_vertex";
        case Method::RemoveVertex: return "remove_vertex";
        case Method::ContainsVertex: return "contains_vertex";
        case Method::AddEdge: return "add_edge";
        case Method::RemoveEdge: return "remove_edge";
        case Method::ContainsEdge: return "contains_edge";
        case Method::PathExists: return "path_exists";
    }
    return "?";
}

inline std::optional<Method> method_from_string(const std::string& s) {
    static const std::pair<const char*, Method> table[] = {
        {"add_vertex", Method::AddVertex},       {"remove_vertex", Method::RemoveVertex},
        {"contains_vertex", Method::ContainsVertex}, {"add_edge", Method::AddEdge},
        {"remove_edge", Method::RemoveEdge},     {"contains_edge", Method::ContainsEdge},
        {"path_exists", Method::PathExists},
    };
    for (auto& [name, m] : table) {
        if (s == name) return m;
    }
    return std::nullopt;
}

inline bool is_binary(Method m) {
    return m == Method::AddEdge || m == Method::RemoveEdge || m == Method::ContainsEdge ||
           m == Method::PathExists;
}

/// One invocation or response record.
struct HistoryEvent {
    std::int64_t ts = 0;  // monotonic nanoseconds
    int thread = 0;
    Method method = Method::AddVertex;
    Key a = 0;
    Key b = 0;        // binary methods only
    bool die = true;  // remove_vertex only
    bool is_response = false;
    bool ret = false;  // responses only

    std::string args_token() const {
        std::string s = std::to_string(a);
        if (is_binary(method)) s += "," + std::to_string(b);
        if (method == Method::RemoveVertex) s += die ? ",die" : ",nodie";
        return s;
    }
};

/// Ordered event list; timestamps nondecreasing after merge.
struct History {
    std::vector<HistoryEvent> events;
    bool acyclic = false;  // which sequential specification applies

    void sort_by_time() {
        std::stable_sort(events.begin(), events.end(),
                         [](const HistoryEvent& x, const HistoryEvent& y) { return x.ts < y.ts; });
    }
};

/// Per-thread events must alternate invocation/response on the same method.
inline bool well_formed(const History& h) {
    std::map<int, const HistoryEvent*> pending;
    for (const auto& e : h.events) {
        auto it = pending.find(e.thread);
        if (!e.is_response) {
            if (it != pending.end() && it->second != nullptr) return false;
            pending[e.thread] = &e;
        } else {
            if (it == pending.end() || it->second == nullptr) return false;
            const HistoryEvent* inv = it->second;
            if (inv->method != e.method || inv->a != e.a || inv->b != e.b) return false;
            it->second = nullptr;
        }
    }
    return true;
}

// ---- line-delimited text serialization: `ts thread op args kind ret` ----

inline std::string to_line(const HistoryEvent& e) {
    std::ostringstream os;
    os << e.ts << ' ' << e.thread << ' ' << to_string(e.method) << ' ' << e.args_token() << ' '
       << (e.is_response ? "resp" : "inv") << ' '
       << (e.is_response ? (e.ret ? "true" : "false") : "-");
    return os.str();
}

inline HistoryEvent event_from_line(const std::string& line) {
    std::istringstream is(line);
    std::string op, args, kind, ret;
    HistoryEvent e;
    if (!(is >> e.ts >> e.thread >> op >> args >> kind >> ret)) {
        throw std::runtime_error("history: malformed line: " + line);
    }
    auto m = method_from_string(op);
    if (!m) throw std::runtime_error("history: unknown method: " + op);
    e.method = *m;

    std::vector<std::string> parts;
    std::istringstream as(args);
    for (std::string tok; std::getline(as, tok, ',');) parts.push_back(tok);
    if (parts.empty()) throw std::runtime_error("history: empty args: " + line);
    e.a = std::stoll(parts[0]);
    std::size_t next = 1;
    if (is_binary(e.method)) {
        if (parts.size() < 2) throw std::runtime_error("history: missing second key: " + line);
        e.b = std::stoll(parts[1]);
        next = 2;
    }
    if (e.method == Method::RemoveVertex && parts.size() > next) {
        e.die = parts[next] != "nodie";
    }
    if (kind == "resp") {
        e.is_response = true;
        e.ret = ret == "true";
    } else if (kind != "inv") {
        throw std::runtime_error("history: bad kind: " + line);
    }
    return e;
}

inline void write_history(const History& h, std::ostream& os) {
    os << "# concgraph history v1 mode=" << (h.acyclic ? "acyclic" : "plain") << '\n';
    for (const auto& e : h.events) os << to_line(e) << '\n';
}

inline void write_history_file(const History& h, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("history: cannot open for write: " + path);
    write_history(h, f);
}

inline History read_history(std::istream& is) {
    History h;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("mode=acyclic") != std::string::npos) h.acyclic = true;
            continue;
        }
        h.events.push_back(event_from_line(line));
    }
    return h;
}

inline History read_history_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("history: cannot open: " + path);
    return read_history(f);
}

}  // namespace concgraph::verify
