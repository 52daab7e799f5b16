// tuza-sim: reproducible experiments for the triangle packing and
// triangle-free processes, their ODE limits, the ratio bounds and the exact
// small-graph oracles.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "tuza/bounds.hpp"
#include "tuza/exact.hpp"
#include "tuza/ode.hpp"
#include "tuza/packing.hpp"
#include "tuza/rng.hpp"
#include "tuza/tfp.hpp"
#include "tuza/tracker.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string subcommand;
    tuza::Vertex n = 1000;
    double k = 1.0;
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    std::size_t checkpoints = 50;
    std::string out = ".";
    std::size_t samples = 64;
    double grid_step = 1e-3;
    double band = 0.05;
    unsigned workers = 1;
    double h = 1e-4;
    double t_end = 5.0;
    tuza::Vertex open_pairs_max_n = 3000;
    // verify-small
    std::vector<std::string> graph6;
    std::string graph6_file;
    std::string edge_list;
    tuza::Vertex small_n = 12;
    tuza::Vertex exhaustive = 0;
    std::uint64_t edges = 24;
};

json config_json(const RunConfig& cfg) {
    json j;
    j["tool"] = "tuza-sim";
    j["version"] = TUZA_VERSION;
    j["subcommand"] = cfg.subcommand;
    j["seed"] = cfg.seed;
    if (cfg.subcommand == "simulate-packing" || cfg.subcommand == "simulate-tfp") {
        j["n"] = cfg.n;
        j["k"] = cfg.k;
        j["trials"] = cfg.trials;
        j["checkpoints"] = cfg.checkpoints;
        j["samples"] = cfg.samples;
        j["band"] = cfg.band;
        j["h"] = cfg.h;
    } else if (cfg.subcommand == "ode") {
        j["t_end"] = cfg.t_end;
        j["h"] = cfg.h;
    } else if (cfg.subcommand == "bounds") {
        j["grid_step"] = cfg.grid_step;
        j["h"] = cfg.h;
    } else {
        j["n"] = cfg.small_n;
        j["edges"] = cfg.edges;
        j["trials"] = cfg.trials;
        j["exhaustive"] = cfg.exhaustive;
    }
    return j;
}

/// "# {...}" first line of every CSV artifact.
std::string csv_header(const RunConfig& cfg) { return "# " + config_json(cfg).dump() + "\n"; }

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out);
    const fs::path path = fs::path(cfg.out) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::uint64_t edges_for(const RunConfig& cfg) {
    if (!(cfg.k >= 0.0)) throw std::invalid_argument("--k must be >= 0");
    if (cfg.n < 3) throw std::invalid_argument("--n must be >= 3");
    // The small slack keeps k n^{3/2} integral values from rounding down.
    const double raw = cfg.k * std::pow(static_cast<double>(cfg.n), 1.5);
    const auto m = static_cast<std::uint64_t>(std::floor(raw * (1.0 + 1e-12)));
    if (m > tuza::pair_count(cfg.n)) {
        throw std::invalid_argument("k n^{3/2} = " + std::to_string(m) + " exceeds n(n-1)/2 = " +
                                    std::to_string(tuza::pair_count(cfg.n)));
    }
    return m;
}

/// Runs body(i) for i < count on up to `workers` threads; results land by index.
template <class Body>
void parallel_trials(std::size_t count, unsigned workers, Body body) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i; (i = next++) < count;) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

json verdicts_json(const std::vector<tuza::FamilyVerdict>& verdicts) {
    json out = json::array();
    for (const auto& v : verdicts) {
        out.push_back({{"family", v.family},
                       {"pass", v.pass},
                       {"worst_mean_dev", v.worst_mean_dev},
                       {"worst_max_dev", v.worst_max_dev},
                       {"worst_step", v.worst_step}});
    }
    return out;
}

void write_json(const RunConfig& cfg, const std::string& name, json body) {
    json doc;
    doc["config"] = config_json(cfg);
    for (auto& [key, value] : body.items()) doc[key] = value;
    auto out = open_out(cfg, name);
    out << doc.dump(2) << '\n';
}

int cmd_simulate_packing(const RunConfig& cfg) {
    const std::uint64_t m = edges_for(cfg);
    const double scale = std::pow(static_cast<double>(cfg.n), 1.5);
    const double t_end = std::max(cfg.k, 1e-3);
    const tuza::OdeSolution y = tuza::integrate(tuza::System::Y, t_end, cfg.h);
    tuza::TrackerConfig tracker;
    tracker.vertex_samples = tracker.pair_samples = tracker.edge_samples = cfg.samples;
    const auto checkpoints = tuza::even_checkpoints(m, cfg.checkpoints);

    struct Result {
        std::uint64_t seed = 0;
        std::size_t packing = 0;
        std::uint64_t unmatched = 0;
        tuza::Trajectory trajectory;
    };
    std::vector<Result> results(cfg.trials);
    parallel_trials(cfg.trials, cfg.workers, [&](std::size_t i) {
        const std::uint64_t seed = tuza::derive_seed(cfg.seed, i);
        tuza::PackingRun run = tuza::run_packing(cfg.n, m, seed, checkpoints, y, tracker);
        results[i] = {seed, run.packing.triangles.size(), run.state.unmatched_edge_count(),
                      std::move(run.trajectory)};
    });

    auto csv = open_out(cfg, "packing_trajectory.csv");
    csv << csv_header(cfg);
    json trials = json::array();
    std::vector<double> scaled;
    for (std::size_t i = 0; i < results.size(); ++i) {
        std::ostringstream body;
        tuza::write_trajectory_csv(body, results[i].trajectory);
        std::istringstream lines(body.str());
        std::string line;
        for (bool first = true; std::getline(lines, line); first = false) {
            if (first) {
                if (i == 0) csv << "trial," << line << '\n';
                continue;
            }
            csv << i << ',' << line << '\n';
        }
        const double s = static_cast<double>(results[i].packing) / scale;
        scaled.push_back(s);
        json trial{{"trial", i},
                   {"seed", results[i].seed},
                   {"packing_size", results[i].packing},
                   {"unmatched_edges", results[i].unmatched},
                   {"packing_scaled", s}};
        if (!results[i].trajectory.snapshots.empty()) {
            trial["concentration"] = verdicts_json(tuza::concentration_report(results[i].trajectory, cfg.band));
        }
        trials.push_back(std::move(trial));
    }
    const double predicted = cfg.k > 0.0 ? tuza::l_nu_star(cfg.k, y) : 0.0;
    const double mean = mean_of(scaled);
    json summary;
    summary["m"] = m;
    summary["trials"] = trials;
    summary["mean_packing_size"] = mean * scale;
    summary["mean_packing_scaled"] = mean;
    summary["predicted_scaled"] = predicted;
    summary["predicted_size"] = predicted * scale;
    summary["relative_error"] = predicted > 0.0 ? std::abs(mean - predicted) / predicted : 0.0;
    write_json(cfg, "packing_summary.json", summary);
    std::cout << std::setprecision(6) << "mean packing size " << mean * scale << " (scaled " << mean
              << ", predicted " << predicted << ")\n";
    return 0;
}

int cmd_simulate_tfp(const RunConfig& cfg) {
    const std::uint64_t m = edges_for(cfg);
    const double scale = std::pow(static_cast<double>(cfg.n), 1.5);
    const tuza::OdeSolution a = tuza::integrate(tuza::System::A, std::max(cfg.k, 1e-3), cfg.h);
    tuza::TfpTrackingConfig tracking{cfg.open_pairs_max_n};
    if (cfg.n > cfg.open_pairs_max_n) {
        std::cerr << "note: open-pair counting skipped for n = " << cfg.n << " (limit " << cfg.open_pairs_max_n
                  << "); each snapshot would cost about " << std::setprecision(3)
                  << static_cast<double>(cfg.n) * cfg.n << " pair visits plus n deg^2\n";
    }
    const auto checkpoints = tuza::even_checkpoints(m, cfg.checkpoints);

    struct Result {
        std::uint64_t seed = 0;
        std::uint64_t accepted = 0;
        std::uint64_t cover = 0;
        tuza::Trajectory trajectory;
    };
    std::vector<Result> results(cfg.trials);
    parallel_trials(cfg.trials, cfg.workers, [&](std::size_t i) {
        const std::uint64_t seed = tuza::derive_seed(cfg.seed, i);
        tuza::TfpRun run = tuza::run_tfp(cfg.n, m, seed, checkpoints, a, tracking);
        results[i] = {seed, run.state.accepted_count(), run.cover.edges.size(), std::move(run.trajectory)};
    });

    auto csv = open_out(cfg, "tfp_trajectory.csv");
    csv << csv_header(cfg);
    json trials = json::array();
    std::vector<double> scaled;
    for (std::size_t i = 0; i < results.size(); ++i) {
        std::ostringstream body;
        tuza::write_trajectory_csv(body, results[i].trajectory);
        std::istringstream lines(body.str());
        std::string line;
        for (bool first = true; std::getline(lines, line); first = false) {
            if (first) {
                if (i == 0) csv << "trial," << line << '\n';
                continue;
            }
            csv << i << ',' << line << '\n';
        }
        const double s = static_cast<double>(results[i].accepted) / scale;
        scaled.push_back(s);
        trials.push_back({{"trial", i},
                          {"seed", results[i].seed},
                          {"accepted_edges", results[i].accepted},
                          {"accepted_scaled", s},
                          {"cover_size", results[i].cover},
                          {"cover_scaled", static_cast<double>(results[i].cover) / scale}});
    }
    const double predicted = cfg.k > 0.0 ? a(cfg.k) : 0.0;
    const double mean = mean_of(scaled);
    json summary;
    summary["m"] = m;
    summary["trials"] = trials;
    summary["mean_accepted_scaled"] = mean;
    summary["predicted_accepted_scaled"] = predicted;
    summary["relative_error"] = predicted > 0.0 ? std::abs(mean - predicted) / predicted : 0.0;
    summary["predicted_cover_scaled"] = cfg.k - predicted;
    write_json(cfg, "tfp_summary.json", summary);
    std::cout << std::setprecision(6) << "mean accepted/n^1.5 " << mean << " (predicted " << predicted << ")\n";
    return 0;
}

int cmd_ode(const RunConfig& cfg) {
    if (!(cfg.t_end >= 3.0)) throw std::invalid_argument("--t-end must be >= 3 for the residual report");
    const std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1e-3 / cfg.h)));
    json solutions = json::object();
    for (auto which : {tuza::System::Y, tuza::System::A, tuza::System::Z}) {
        const tuza::OdeSolution sol = tuza::integrate(which, cfg.t_end, cfg.h);
        const std::string name(tuza::system_name(which));
        auto out = open_out(cfg, "ode_" + name + ".csv");
        out << csv_header(cfg);
        sol.write_csv(out, stride);
        solutions[name] = {{"value_at_1", sol(1.0)}, {"value_at_end", sol(cfg.t_end)}};
    }
    const tuza::OdeSolution y = tuza::integrate(tuza::System::Y, cfg.t_end, cfg.h);
    json residuals = json::array();
    double worst = 0.0;
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        for (std::size_t b = 0; b <= 3; ++b) {
            for (std::size_t c = 0; c <= 3; ++c) {
                const auto r = tuza::master_equation_residual(y, t, b, c);
                worst = std::max({worst, r.q, r.r, r.s});
                residuals.push_back({{"t", t}, {"b", b}, {"c", c}, {"q", r.q}, {"r", r.r}, {"s", r.s}});
            }
        }
    }
    // Order estimate from three coarse steps.
    const double y1 = tuza::integrate(tuza::System::Y, 3.0, 0.04)(3.0);
    const double y2 = tuza::integrate(tuza::System::Y, 3.0, 0.02)(3.0);
    const double y3 = tuza::integrate(tuza::System::Y, 3.0, 0.01)(3.0);
    const double order = std::log2(std::abs(y1 - y2) / std::abs(y2 - y3));
    json report;
    report["zeta"] = tuza::zeta();
    report["y_at_5"] = cfg.t_end >= 5.0 ? json(y(5.0)) : json(nullptr);
    report["solutions"] = solutions;
    report["max_residual"] = worst;
    report["residuals_below_1e-6"] = worst < 1e-6;
    report["richardson_order"] = order;
    report["residuals"] = residuals;
    write_json(cfg, "ode_report.json", report);
    std::cout << std::setprecision(10) << "zeta " << tuza::zeta() << "  max master residual " << worst
              << "  observed order " << order << '\n';
    return worst < 1e-6 ? 0 : 1;
}

int cmd_bounds(const RunConfig& cfg) {
    const tuza::AppendixReport report = tuza::appendix_report(cfg.grid_step, cfg.h);
    {
        auto out = open_out(cfg, "bounds.csv");
        out << csv_header(cfg);
        tuza::write_bounds_csv(out, report.table);
    }
    json verdict = json::parse(tuza::appendix_json(report));
    write_json(cfg, "ratio_checks.json", verdict);
    std::cout << tuza::appendix_text(report);
    return report.all_pass() ? 0 : 1;
}

struct GraphRow {
    std::string source;
    tuza::EdgeList graph;
};

int cmd_verify_small(const RunConfig& cfg) {
    constexpr tuza::Vertex exhaustive_limit = 8;
    if (cfg.exhaustive > 0) {
        if (cfg.exhaustive > exhaustive_limit) {
            std::cerr << "refusing exhaustive check on n = " << cfg.exhaustive << ": 2^"
                      << tuza::pair_count(cfg.exhaustive) << " labeled graphs (limit n = " << exhaustive_limit
                      << ")\n";
            return 2;
        }
        const tuza::ExhaustiveSummary s = tuza::verify_all_graphs(cfg.exhaustive, cfg.workers);
        auto csv = open_out(cfg, "verify_small.csv");
        csv << csv_header(cfg) << "nu,tau,count\n";
        for (const auto& [key, count] : s.histogram) csv << key.first << ',' << key.second << ',' << count << '\n';
        json body;
        body["graphs"] = s.graphs;
        body["violations"] = s.violations;
        body["trivial_bound_breaks"] = s.trivial_bound_breaks;
        body["counterexamples"] = s.counterexamples;
        write_json(cfg, "verify_small.json", body);
        std::cout << "checked " << s.graphs << " labeled graphs on " << cfg.exhaustive << " vertices: "
                  << s.violations << " violations\n";
        return s.violations == 0 && s.trivial_bound_breaks == 0 ? 0 : 1;
    }

    std::vector<GraphRow> graphs;
    for (const auto& g6 : cfg.graph6) graphs.push_back({"graph6", tuza::parse_graph6(g6)});
    if (!cfg.graph6_file.empty()) {
        std::ifstream in(cfg.graph6_file);
        if (!in) throw std::runtime_error("cannot read " + cfg.graph6_file);
        for (std::string line; std::getline(in, line);) {
            if (!line.empty() && line[0] != '#') graphs.push_back({"graph6", tuza::parse_graph6(line)});
        }
    }
    if (!cfg.edge_list.empty()) {
        std::ifstream in(cfg.edge_list);
        if (!in) throw std::runtime_error("cannot read " + cfg.edge_list);
        graphs.push_back({"edge-list", tuza::read_edge_list(in)});
    }
    if (graphs.empty()) {
        if (cfg.edges > tuza::pair_count(cfg.small_n)) throw std::invalid_argument("--edges exceeds n(n-1)/2");
        for (std::size_t i = 0; i < cfg.trials; ++i) {
            graphs.push_back({"random",
                              {cfg.small_n, tuza::random_edge_sequence(cfg.small_n, cfg.edges, tuza::derive_seed(cfg.seed, i))}});
        }
    }

    auto csv = open_out(cfg, "verify_small.csv");
    csv << csv_header(cfg) << "index,source,n,m,nu,tau,holds,graph6\n";
    std::uint64_t violations = 0;
    std::uint64_t refused = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto& [source, g] = graphs[i];
        const std::string g6 = g.n <= 258047 ? tuza::to_graph6(g) : std::string();
        try {
            const tuza::SmallGraph small(g);
            const tuza::TuzaCheck check = tuza::verify_tuza(small);
            violations += !check.holds;
            csv << i << ',' << source << ',' << g.n << ',' << g.edges.size() << ',' << check.nu << ','
                << check.tau << ',' << (check.holds ? "true" : "false") << ',' << g6 << '\n';
        } catch (const std::exception& e) {
            ++refused;
            std::cerr << "graph " << i << " refused (n = " << g.n << ", m = " << g.edges.size()
                      << ", up to " << std::setprecision(3)
                      << static_cast<double>(g.edges.size()) * std::sqrt(2.0 * g.edges.size()) / 3.0
                      << " triangles): " << e.what() << '\n';
            csv << i << ',' << source << ',' << g.n << ',' << g.edges.size() << ",,,refused," << g6 << '\n';
        }
    }
    std::cout << "verified " << graphs.size() - refused << " graphs, " << violations << " violations, "
              << refused << " refused\n";
    return violations == 0 ? (refused == 0 ? 0 : 2) : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Triangle packing / covering process experiments"};
    app.set_version_flag("--version", TUZA_VERSION);
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "Master seed; trial i uses derive_seed(seed, i)")->capture_default_str();
        sub->add_option("--out", cfg.out, "Output directory")->capture_default_str();
        sub->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--ode-step", cfg.h, "ODE step")->capture_default_str()->check(CLI::PositiveNumber);
    };
    auto add_process = [&](CLI::App* sub) {
        add_common(sub);
        sub->add_option("--n", cfg.n, "Vertices")->capture_default_str();
        sub->add_option("--k", cfg.k, "Edges as k n^{3/2}")->capture_default_str()->check(CLI::NonNegativeNumber);
        sub->add_option("--trials", cfg.trials, "Independent runs")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--checkpoints", cfg.checkpoints, "Evenly spaced snapshots")->capture_default_str();
        sub->add_option("--samples", cfg.samples, "Sampled vertices, pairs and edges per snapshot")
            ->capture_default_str();
        sub->add_option("--band", cfg.band, "Tolerance band for concentration verdicts")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };

    auto* packing = app.add_subcommand("simulate-packing", "Online triangle packing process");
    add_process(packing);
    auto* tfp = app.add_subcommand("simulate-tfp", "Triangle-free process");
    add_process(tfp);
    tfp->add_option("--open-pairs-max-n", cfg.open_pairs_max_n, "Largest n for open-pair counting")
        ->capture_default_str();
    auto* ode = app.add_subcommand("ode", "Solve the ODEs and check the master equations");
    add_common(ode);
    ode->add_option("--t-end", cfg.t_end, "Integration horizon")->capture_default_str();
    auto* bounds = app.add_subcommand("bounds", "Bounds table and ratio verification");
    add_common(bounds);
    bounds->add_option("--grid-step", cfg.grid_step, "Grid step (at most 1e-3)")->capture_default_str();
    auto* verify = app.add_subcommand("verify-small", "Exact nu and tau on small graphs");
    add_common(verify);
    verify->add_option("--n", cfg.small_n, "Vertices of random graphs")->capture_default_str();
    verify->add_option("--edges", cfg.edges, "Edges of random graphs")->capture_default_str();
    verify->add_option("--trials", cfg.trials, "Random graphs")->capture_default_str();
    verify->add_option("--graph6", cfg.graph6, "graph6 strings");
    verify->add_option("--graph6-file", cfg.graph6_file, "File of graph6 lines");
    verify->add_option("--edge-list", cfg.edge_list, "Edge-list file (one 'u v' per line)");
    verify->add_option("--exhaustive", cfg.exhaustive, "Check every labeled graph on this many vertices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (packing->parsed()) {
            cfg.subcommand = "simulate-packing";
            return cmd_simulate_packing(cfg);
        }
        if (tfp->parsed()) {
            cfg.subcommand = "simulate-tfp";
            return cmd_simulate_tfp(cfg);
        }
        if (ode->parsed()) {
            cfg.subcommand = "ode";
            return cmd_ode(cfg);
        }
        if (bounds->parsed()) {
            cfg.subcommand = "bounds";
            return cmd_bounds(cfg);
        }
        cfg.subcommand = "verify-small";
        return cmd_verify_small(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
