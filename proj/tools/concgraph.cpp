// Command-line harness: workload benchmark, history verification, and an
// acyclicity stress audit.

#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "concgraph/bench/csv.hpp"
#include "concgraph/bench/stress.hpp"
#include "concgraph/verify/checker.hpp"
#include "concgraph/verify/recorder.hpp"

namespace {

// key=value config text; `#` starts a comment. Flags given on the command
// line take precedence over file values.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            s.erase(0, s.find_first_not_of(ws));
            auto last = s.find_last_not_of(ws);
            s.erase(last == std::string::npos ? 0 : last + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

int run_bench(const concgraph::bench::WorkloadSpec& spec, const std::string& out) {
    using namespace concgraph::bench;
    BenchResult r = run_benchmark(spec);
    std::cout << kCsvHeader << '\n' << to_csv_line(r) << '\n';
    std::cout << "# total_ops=" << r.total_ops << " resurrect_fallbacks=" << r.resurrect_fallbacks;
    if (spec.acyclic) {
        std::cout << " acyclic_audit=" << (r.acyclic_audit_pass ? "pass" : "FAIL");
    }
    std::cout << '\n';
    if (!out.empty()) append_csv(r, out);
    return spec.acyclic && !r.acyclic_audit_pass ? 1 : 0;
}

int run_verify(const std::string& path, const std::string& mode, std::uint64_t budget) {
    using namespace concgraph::verify;
    History h = read_history_file(path);
    if (mode == "plain") h.acyclic = false;
    if (mode == "acyclic") h.acyclic = true;
    if (!well_formed(h)) {
        std::cout << "malformed: per-thread events do not alternate inv/resp\n";
        return 2;
    }
    CheckResult r = check_linearizable(h, budget);
    switch (r.verdict) {
        case Verdict::Linearizable: {
            std::cout << "linearizable (" << (h.acyclic ? "acyclic" : "plain")
                      << " specification), witness:";
            for (std::size_t i : r.witness) std::cout << ' ' << i;
            std::cout << '\n';
            return 0;
        }
        case Verdict::NonLinearizable:
            std::cout << "NOT linearizable (explored " << r.explored << " states)\n";
            return 1;
        case Verdict::Inconclusive:
            std::cout << "inconclusive: state-space budget exceeded (" << r.explored << ")\n";
            return 3;
    }
    return 3;
}

// Records a small concurrent run and writes it in the history line format,
// giving `verify` something to consume.
int run_record(int threads, int ops, int keys, bool acyclic, std::uint64_t seed,
               const std::string& out) {
    using namespace concgraph::verify;
    auto g = concgraph::bench::make_graph(concgraph::bench::Variant::NoDie, acyclic);
    std::mt19937_64 seeder(seed);
    std::vector<concgraph::Key> fresh;
    Recorder rec(threads, acyclic);
    // seeding is part of the recorded history so the file replays from empty
    for (concgraph::Key k = 1; k <= keys; ++k) {
        if (seeder() % 2 == 0) {
            rec.invoke(0, Method::AddVertex, k);
            rec.respond(0, Method::AddVertex, g->add_vertex(k), k);
        } else {
            fresh.push_back(k);
        }
    }
    std::shuffle(fresh.begin(), fresh.end(), seeder);
    std::mutex fresh_mu;
    std::vector<std::thread> workers;
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            std::mt19937_64 rng(seed * 131 + static_cast<std::uint64_t>(t));
            auto key = [&] { return static_cast<concgraph::Key>(rng() % keys) + 1; };
            for (int i = 0; i < ops; ++i) {
                const int r = static_cast<int>(rng() % 100);
                if (r < 15) {
                    concgraph::Key k = 0;
                    {
                        std::lock_guard<std::mutex> lk(fresh_mu);
                        if (!fresh.empty()) {
                            k = fresh.back();  // a key is only ever added once
                            fresh.pop_back();
                        }
                    }
                    if (k == 0) continue;
                    rec.invoke(t, Method::AddVertex, k);
                    rec.respond(t, Method::AddVertex, g->add_vertex(k), k);
                } else if (r < 30) {
                    concgraph::Key k = key();
                    rec.invoke(t, Method::RemoveVertex, k);
                    rec.respond(t, Method::RemoveVertex, g->remove_vertex(k), k);
                } else if (r < 45) {
                    concgraph::Key k = key();
                    rec.invoke(t, Method::ContainsVertex, k);
                    rec.respond(t, Method::ContainsVertex, g->contains_vertex(k), k);
                } else if (r < 65) {
                    concgraph::Key a = key(), b = key();
                    rec.invoke(t, Method::AddEdge, a, b);
                    rec.respond(t, Method::AddEdge, g->add_edge(a, b), a, b);
                } else if (r < 80) {
                    concgraph::Key a = key(), b = key();
                    rec.invoke(t, Method::RemoveEdge, a, b);
                    rec.respond(t, Method::RemoveEdge, g->remove_edge(a, b), a, b);
                } else {
                    concgraph::Key a = key(), b = key();
                    rec.invoke(t, Method::ContainsEdge, a, b);
                    rec.respond(t, Method::ContainsEdge, g->contains_edge(a, b), a, b);
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    History h = rec.take();
    write_history_file(h, out);
    std::cout << "wrote " << h.events.size() << " events to " << out << '\n';
    return 0;
}

int run_audit(std::uint64_t ops, int threads, int keys, std::uint64_t seed) {
    using namespace concgraph::bench;
    WorkloadSpec spec = audit_workload();
    spec.threads = threads;
    spec.key_range = keys;
    spec.initial_vertices = keys;
    spec.density = keys > 200 ? 0.02 : 0.2;
    spec.seed = seed;
    spec.secs = 3600;  // op-count bound governs

    auto g = make_graph(Variant::NoDie, /*acyclic=*/true);
    seed_initial_graph(*g, spec);
    StressReport rep = run_stress_audit(*g, spec, ops, 20);
    std::cout << "ops=" << rep.ops << " probes=" << rep.probes
              << " probe_failures=" << rep.probes_failed
              << " sorted_unique=" << (rep.sorted_unique_pass ? "pass" : "FAIL")
              << " final_audit=" << (rep.final_audit_pass ? "pass" : "FAIL") << '\n';
    const bool ok = rep.probes_failed == 0 && rep.final_audit_pass && rep.sorted_unique_pass;
    std::cout << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"concgraph: concurrent directed-graph workload & verification harness"};
    app.require_subcommand(1);

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "run a workload benchmark, emit CSV");
    std::string workload = "update";
    std::string variant = "nodie";
    std::string reclaim = "epoch";
    std::string out;
    concgraph::bench::WorkloadSpec spec;
    bench->add_option("--workload", workload, "update|contains|edges")->capture_default_str();
    bench->add_option("--variant", variant, "nodie|die|coarse|seq")->capture_default_str();
    bench->add_flag("--acyclic", spec.acyclic, "use the acyclicity-preserving flavour");
    bench->add_option("--threads", spec.threads)->capture_default_str();
    bench->add_option("--secs", spec.secs)->capture_default_str();
    bench->add_option("--keys", spec.key_range)->capture_default_str();
    bench->add_option("--seed", spec.seed)->capture_default_str();
    bench->add_option("--iters", spec.iters)->capture_default_str();
    bench->add_option("--initial", spec.initial_vertices, "initial vertex count")
        ->capture_default_str();
    bench->add_option("--density", spec.density, "initial edge density (1 = complete)")
        ->capture_default_str();
    bench->add_option("--reclaim", reclaim, "epoch|leak")->capture_default_str();
    bench->add_option("--out", out, "CSV file to append the result row to");
    std::string config_path;
    bench->add_option("--config", config_path, "key=value file; command-line flags override");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check a recorded history for linearizability");
    std::string history_path;
    std::string mode = "auto";
    std::uint64_t budget = 4'000'000;
    verify->add_option("--history", history_path, "history file (ts thread op args kind ret)")
        ->required();
    verify->add_option("--mode", mode, "plain|acyclic|auto (auto: file header)")
        ->capture_default_str();
    verify->add_option("--budget", budget, "state-space budget")->capture_default_str();

    // ---- record ----
    auto* record = app.add_subcommand("record", "record a small concurrent history to a file");
    int rec_threads = 3;
    int rec_ops = 5;
    int rec_keys = 8;
    bool rec_acyclic = false;
    std::uint64_t rec_seed = 1;
    std::string rec_out = "history.txt";
    record->add_option("--threads", rec_threads)->capture_default_str();
    record->add_option("--ops", rec_ops, "operations per thread")->capture_default_str();
    record->add_option("--keys", rec_keys)->capture_default_str();
    record->add_flag("--acyclic", rec_acyclic);
    record->add_option("--seed", rec_seed)->capture_default_str();
    record->add_option("--out", rec_out)->capture_default_str();

    // ---- audit ----
    auto* audit = app.add_subcommand("audit", "acyclicity stress run with pause probes");
    std::uint64_t audit_ops = 200000;
    int audit_threads = 8;
    int audit_keys = 200;
    std::uint64_t audit_seed = 1;
    audit->add_option("--ops", audit_ops)->capture_default_str();
    audit->add_option("--threads", audit_threads)->capture_default_str();
    audit->add_option("--keys", audit_keys)->capture_default_str();
    audit->add_option("--seed", audit_seed)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench->parsed()) {
            if (!config_path.empty()) {
                auto kv = parse_config_file(config_path);
                auto take = [&](const char* flag, const char* key, auto&& apply) {
                    auto it = kv.find(key);
                    if (it != kv.end() && bench->count(flag) == 0) apply(it->second);
                };
                take("--workload", "workload", [&](const std::string& v) { workload = v; });
                take("--variant", "variant", [&](const std::string& v) { variant = v; });
                take("--acyclic", "acyclic",
                     [&](const std::string& v) { spec.acyclic = v == "true" || v == "1"; });
                take("--threads", "threads", [&](const std::string& v) { spec.threads = std::stoi(v); });
                take("--secs", "secs", [&](const std::string& v) { spec.secs = std::stod(v); });
                take("--keys", "keys", [&](const std::string& v) { spec.key_range = std::stoi(v); });
                take("--seed", "seed", [&](const std::string& v) { spec.seed = std::stoull(v); });
                take("--iters", "iters", [&](const std::string& v) { spec.iters = std::stoi(v); });
                take("--initial", "initial",
                     [&](const std::string& v) { spec.initial_vertices = std::stoi(v); });
                take("--density", "density",
                     [&](const std::string& v) { spec.density = std::stod(v); });
                take("--reclaim", "reclaim", [&](const std::string& v) { reclaim = v; });
                take("--out", "out", [&](const std::string& v) { out = v; });
            }
            auto preset = concgraph::bench::builtin_workload(workload);
            spec.name = preset.name;
            spec.mix = preset.mix;
            auto v = concgraph::bench::variant_from_string(variant);
            if (!v) throw CLI::ValidationError("--variant", "unknown variant: " + variant);
            spec.variant = *v;
            spec.reclaim = reclaim == "leak" ? concgraph::ReclaimPolicy::Leak
                                             : concgraph::ReclaimPolicy::Deferred;
            if (spec.initial_vertices > spec.key_range) spec.initial_vertices = spec.key_range;
            return run_bench(spec, out);
        }
        if (verify->parsed()) return run_verify(history_path, mode, budget);
        if (record->parsed()) {
            return run_record(rec_threads, rec_ops, rec_keys, rec_acyclic, rec_seed, rec_out);
        }
        if (audit->parsed()) return run_audit(audit_ops, audit_threads, audit_keys, audit_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
