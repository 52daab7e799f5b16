#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "tuza/bounds.hpp"
#include "tuza/exact.hpp"
#include "tuza/graph_core.hpp"
#include "tuza/ode.hpp"
#include "tuza/packing.hpp"
#include "tuza/rng.hpp"
#include "tuza/tfp.hpp"
#include "tuza/tracker.hpp"

namespace py = pybind11;
using namespace tuza;

namespace {

using Pair = std::pair<Vertex, Vertex>;

EdgeList to_edge_list(Vertex n, const std::vector<Pair>& edges) {
    EdgeList g{n, {}};
    for (auto [u, v] : edges) g.edges.push_back(make_edge(u, v, n));
    return g;
}

std::vector<Pair> to_pairs(const std::vector<EdgeId>& edges) {
    std::vector<Pair> out;
    out.reserve(edges.size());
    for (const EdgeId e : edges) out.emplace_back(e.u, e.v);
    return out;
}

std::vector<std::tuple<Vertex, Vertex, Vertex>> to_tuples(const std::vector<Triangle>& ts) {
    std::vector<std::tuple<Vertex, Vertex, Vertex>> out;
    for (const Triangle& t : ts) out.emplace_back(t.a, t.b, t.c);
    return out;
}

System parse_system(const std::string& name) {
    if (name == "y") return System::Y;
    if (name == "a") return System::A;
    if (name == "z") return System::Z;
    throw py::value_error("system must be 'y', 'a' or 'z'");
}

py::dict snapshot_dict(const Snapshot& s) {
    py::list stats;
    for (const FamilyStat& f : s.stats) {
        py::dict d;
        d["family"] = f.family;
        d["b"] = f.b;
        d["c"] = f.c;
        d["expected"] = f.expected;
        d["mean_value"] = f.mean_value;
        d["mean_dev"] = f.mean_dev;
        d["max_dev"] = f.max_dev;
        d["samples"] = f.samples;
        stats.append(d);
    }
    py::dict out;
    out["step"] = s.step;
    out["t"] = s.t;
    out["max_codegree"] = s.max_codegree;
    out["stats"] = stats;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Triangle packing and covering processes, their ODE limits and exact small-graph oracles";
    m.attr("__version__") = TUZA_VERSION;

    m.def("derive_seed", &derive_seed, py::arg("seed"), py::arg("index"));
    m.def(
        "random_edges",
        [](Vertex n, std::uint64_t count, std::uint64_t seed) { return to_pairs(random_edge_sequence(n, count, seed)); },
        py::arg("n"), py::arg("m"), py::arg("seed"), "First m pairs of the seeded uniform edge stream");

    py::class_<OdeSolution>(m, "OdeSolution")
        .def("__call__", &OdeSolution::operator(), py::arg("t"))
        .def("derivative", &OdeSolution::derivative, py::arg("t"))
        .def_property_readonly("t_end", &OdeSolution::t_end)
        .def_property_readonly("step", &OdeSolution::step)
        .def_property_readonly("values", &OdeSolution::values);
    m.def(
        "integrate", [](const std::string& which, double t_end, double h) { return integrate(parse_system(which), t_end, h); },
        py::arg("system"), py::arg("t_end"), py::arg("h") = 1e-4, "RK4 solution of system 'y', 'a' or 'z'");
    m.def("zeta", &zeta);
    m.def(
        "closed_forms",
        [](double y, int cap) {
            const ClosedForms f(y);
            py::dict d;
            std::vector<double> r, s;
            for (int c = 0; c <= cap; ++c) {
                r.push_back(f.r(c));
                s.push_back(f.s(c));
            }
            d["r"] = r;
            d["s"] = s;
            d["alpha"] = f.alpha();
            d["kappa"] = f.kappa();
            d["q00"] = f.q(0, 0);
            return d;
        },
        py::arg("y"), py::arg("cap") = 3);
    m.def(
        "master_equation_residual",
        [](const OdeSolution& y, double t, std::size_t b, std::size_t c) {
            const MasterResidual r = master_equation_residual(y, t, b, c);
            return std::make_tuple(r.q, r.r, r.s);
        },
        py::arg("y"), py::arg("t"), py::arg("b"), py::arg("c"));

    m.def(
        "simulate_packing",
        [](Vertex n, std::uint64_t count, std::uint64_t seed) {
            py::gil_scoped_release release;
            const PackingRun run = run_packing(n, count, seed);
            py::gil_scoped_acquire acquire;
            py::dict d;
            d["triangles"] = to_tuples(run.packing.triangles);
            d["unmatched_edges"] = run.state.unmatched_edge_count();
            d["unmatched_triangles"] = count_unmatched_triangles(run.state);
            d["revealed"] = to_pairs(run.state.revealed_edges().edges);
            return d;
        },
        py::arg("n"), py::arg("m"), py::arg("seed"));
    m.def(
        "packing_trajectory",
        [](Vertex n, std::uint64_t count, std::uint64_t seed, std::size_t checkpoints, std::size_t samples) {
            const double t_end = std::max(static_cast<double>(count) / std::pow(static_cast<double>(n), 1.5), 1e-3);
            const OdeSolution y = integrate(System::Y, t_end);
            TrackerConfig cfg;
            cfg.vertex_samples = cfg.pair_samples = cfg.edge_samples = samples;
            const PackingRun run = run_packing(n, count, seed, even_checkpoints(count, checkpoints), y, cfg);
            py::list out;
            for (const Snapshot& s : run.trajectory.snapshots) out.append(snapshot_dict(s));
            return out;
        },
        py::arg("n"), py::arg("m"), py::arg("seed"), py::arg("checkpoints") = 50, py::arg("samples") = 64);
    m.def(
        "greedy_packing",
        [](Vertex n, const std::vector<Pair>& edges, std::uint64_t seed) {
            return to_tuples(greedy_packing(to_edge_list(n, edges), seed).triangles);
        },
        py::arg("n"), py::arg("edges"), py::arg("seed") = 0, "Packing process over the given edge order");

    m.def(
        "simulate_tfp",
        [](Vertex n, std::uint64_t count, std::uint64_t seed) {
            const TfpRun run = run_tfp(n, count, seed);
            py::dict d;
            d["accepted"] = run.state.accepted_count();
            d["cover"] = to_pairs(run.cover.edges);
            return d;
        },
        py::arg("n"), py::arg("m"), py::arg("seed"));
    m.def(
        "open_pairs_after",
        [](Vertex n, std::uint64_t accepted, std::uint64_t seed) {
            return count_open_pairs(run_tfp_until_accepted(n, accepted, seed));
        },
        py::arg("n"), py::arg("accepted"), py::arg("seed"),
        "Open pairs once the triangle-free process has accepted this many edges");
    m.def(
        "triangle_free_cover",
        [](Vertex n, const std::vector<Pair>& edges) { return to_pairs(triangle_free_cover(to_edge_list(n, edges)).edges); },
        py::arg("n"), py::arg("edges"));

    m.def(
        "l_nu_star", [](double k) { return l_nu_star(k, integrate(System::Y, std::max(k, 1e-3))); }, py::arg("k"));
    m.def(
        "u_tau",
        [](double k) {
            const TauBound b = u_tau(k, integrate(System::A, std::max(k, 1e-3)));
            return std::make_pair(b.value, std::string(b.branch == TauBranch::TriangleFree ? "tfp" : "maxcut"));
        },
        py::arg("k"));
    m.def(
        "appendix_report",
        [](double grid_step) {
            const AppendixReport r = appendix_report(grid_step);
            py::dict d;
            d["g_1.28"] = r.g_at_128;
            d["h_1.29"] = r.h_at_129;
            d["max_min_gh"] = r.max_min_gh;
            d["argmax_min_gh"] = r.argmax_min_gh;
            d["all_pass"] = r.all_pass();
            py::dict checks;
            for (const Check& c : r.checks) checks[py::str(c.name)] = c.pass;
            d["checks"] = checks;
            return d;
        },
        py::arg("grid_step") = 1e-3);

    m.def(
        "exact_nu",
        [](Vertex n, const std::vector<Pair>& edges) {
            const NuResult r = exact_nu(SmallGraph(to_edge_list(n, edges)));
            return std::make_pair(r.size, to_tuples(r.packing.triangles));
        },
        py::arg("n"), py::arg("edges"));
    m.def(
        "exact_tau",
        [](Vertex n, const std::vector<Pair>& edges) {
            const TauResult r = exact_tau(SmallGraph(to_edge_list(n, edges)));
            return std::make_pair(r.size, to_pairs(r.cover.edges));
        },
        py::arg("n"), py::arg("edges"));
    m.def(
        "fractional_nu", [](Vertex n, const std::vector<Pair>& edges) { return fractional_nu(SmallGraph(to_edge_list(n, edges))); },
        py::arg("n"), py::arg("edges"));
    m.def(
        "max_cut_cover",
        [](Vertex n, const std::vector<Pair>& edges) { return to_pairs(max_cut_cover(to_edge_list(n, edges)).edges); },
        py::arg("n"), py::arg("edges"));
    m.def(
        "verify_tuza",
        [](Vertex n, const std::vector<Pair>& edges) {
            const TuzaCheck c = verify_tuza(SmallGraph(to_edge_list(n, edges)));
            return std::make_tuple(c.nu, c.tau, c.holds);
        },
        py::arg("n"), py::arg("edges"));
    m.def(
        "verify_all_graphs",
        [](Vertex n, unsigned workers) {
            ExhaustiveSummary s;
            {
                py::gil_scoped_release release;
                s = verify_all_graphs(n, workers);
            }
            py::dict d;
            d["graphs"] = s.graphs;
            d["violations"] = s.violations;
            d["histogram"] = s.histogram;
            return d;
        },
        py::arg("n"), py::arg("workers") = 1);
    m.def(
        "to_graph6", [](Vertex n, const std::vector<Pair>& edges) { return to_graph6(to_edge_list(n, edges)); },
        py::arg("n"), py::arg("edges"));
    m.def(
        "parse_graph6",
        [](const std::string& text) {
            const EdgeList g = parse_graph6(text);
            return std::make_pair(g.n, to_pairs(g.edges));
        },
        py::arg("text"));

    py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);
}
