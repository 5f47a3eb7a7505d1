#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "runner.hpp"

namespace concgraph::bench {

inline constexpr const char* kCsvHeader =
    "workload,variant,threads,ops_per_sec,failed_addedge,false_positives";

struct CsvRow {
    std::string workload;
    std::string variant;
    int threads = 0;
    double ops_per_sec = 0.0;
    std::uint64_t failed_addedge = 0;
    std::uint64_t false_positives = 0;
};

inline std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip
    (void)ec;
    return std::string(buf, p);
}

inline std::string to_csv_line(const BenchResult& r) {
    std::ostringstream os;
    os << r.workload << ',' << r.variant_label << ',' << r.threads << ','
       << format_double(r.ops_per_sec) << ',' << r.failed_add_edge << ',' << r.false_positives;
    return os.str();
}

inline void emit_csv(const std::vector<BenchResult>& results, std::ostream& os) {
    os << kCsvHeader << '\n';
    for (const auto& r : results) os << to_csv_line(r) << '\n';
}

/// Appends one row, writing the header first if the file is new or empty.
inline void append_csv(const BenchResult& r, const std::string& path) {
    bool need_header = true;
    {
        std::ifstream probe(path);
        if (probe && probe.peek() != std::ifstream::traits_type::eof()) need_header = false;
    }
    std::ofstream f(path, std::ios::app);
    if (!f) throw std::runtime_error("csv: cannot open for append: " + path);
    if (need_header) f << kCsvHeader << '\n';
    f << to_csv_line(r) << '\n';
}

inline std::vector<CsvRow> parse_csv(std::istream& is) {
    std::vector<CsvRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line == kCsvHeader) continue;  // header row
        }
        std::vector<std::string> f;
        std::istringstream ls(line);
        for (std::string tok; std::getline(ls, tok, ',');) f.push_back(tok);
        if (f.size() != 6) throw std::runtime_error("csv: malformed row: " + line);
        CsvRow r;
        r.workload = f[0];
        r.variant = f[1];
        r.threads = std::stoi(f[2]);
        r.ops_per_sec = std::stod(f[3]);
        r.failed_addedge = std::stoull(f[4]);
        r.false_positives = std::stoull(f[5]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace concgraph::bench
