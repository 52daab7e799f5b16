#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "tuza/graph_core.hpp"
#include "tuza/packing.hpp"

using namespace tuza;

TEST_CASE("packing_step outcomes by codegree") {
    ProcessState s(6);
    Rng rng(1, Stream::Choice);
    auto first = packing_step(s, {0, 1}, rng);
    CHECK(first.kind == StepOutcome::Kind::StayedUnmatched);
    CHECK(first.candidates == 0);
    CHECK_FALSE(first.triangle.has_value());

    packing_step(s, {1, 2}, rng);
    auto closing = packing_step(s, {0, 2}, rng);
    CHECK(closing.kind == StepOutcome::Kind::TriangleMatched);
    CHECK(closing.candidates == 1);
    REQUIRE(closing.triangle.has_value());
    CHECK(*closing.triangle == Triangle{0, 1, 2});
    CHECK(s.unmatched_edge_count() == 0);
    CHECK(s.matched_edge_count() == 3);
    CHECK(s.step() == 3);
    CHECK_THROWS_AS(packing_step(s, {1, 0}, rng), std::invalid_argument);
}

TEST_CASE("codegree-3 choice is uniform over 1e5 seeded trials") {
    // U = K_{2,3} between {0, 1} and {2, 3, 4}; revealing 01 closes three triangles.
    std::map<Vertex, int> counts;
    const int trials = 100000;
    for (int t = 0; t < trials; ++t) {
        ProcessState s(5);
        for (Vertex w : {2u, 3u, 4u}) {
            s.add_unmatched({0, w});
            s.add_unmatched({1, w});
        }
        Rng rng(derive_seed(77, t), Stream::Choice);
        const auto out = packing_step(s, {0, 1}, rng);
        REQUIRE(out.candidates == 3);
        REQUIRE(out.triangle.has_value());
        ++counts[out.triangle->c];
    }
    const double expect = trials / 3.0;
    const double sigma = std::sqrt(trials * (1.0 / 3.0) * (2.0 / 3.0));
    double chi2 = 0.0;
    for (auto [w, c] : counts) {
        CHECK(std::abs(c - expect) <= 3.0 * sigma);
        chi2 += (c - expect) * (c - expect) / expect;
    }
    CHECK(counts.size() == 3);
    CHECK(chi2 < 13.8);  // 2 degrees of freedom, p = 0.001
}

TEST_CASE("run_packing small cases") {
    const PackingRun empty = run_packing(100, 0, 3);
    CHECK(empty.packing.triangles.empty());
    CHECK(empty.state.unmatched_edge_count() == 0);

    const PackingRun tri = run_packing(3, 3, 3);
    CHECK(tri.packing.triangles.size() == 1);
    CHECK(tri.state.unmatched_edge_count() == 0);

    CHECK_THROWS_AS(run_packing(4, 7, 1), std::invalid_argument);
}

TEST_CASE("run_packing invariants and validity") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Vertex n = 60;
        const std::uint64_t m = 700;
        const PackingRun run = run_packing(n, m, seed);
        const EdgeList revealed = run.state.revealed_edges();
        CHECK(revealed.edges.size() == m);
        CHECK(packing_is_valid(run.packing, revealed));
        CHECK(count_unmatched_triangles(run.state) == 0);
        CHECK(run.state.unmatched_edge_count() + 3 * run.packing.triangles.size() == m);
        for (Vertex v = 0; v < n; ++v) CHECK(run.state.matched_degree(v) % 2 == 0);
    }
}

TEST_CASE("tracking does not change the packing") {
    const OdeSolution y = integrate(System::Y, 1.0);
    const Vertex n = 400;
    const auto m = static_cast<std::uint64_t>(std::pow(n, 1.5));
    const auto plain = run_packing(n, m, 11);
    const auto tracked = run_packing(n, m, 11, even_checkpoints(m, 10), y);
    CHECK(plain.packing.triangles == tracked.packing.triangles);
    CHECK(tracked.trajectory.snapshots.size() == 11);
    const std::vector<std::uint64_t> bad{5, 5};
    CHECK_THROWS_AS(run_packing(n, m, 11, bad, y), std::invalid_argument);
}

TEST_CASE("packing_is_valid rejects shared edges and unknown edges") {
    const EdgeList k4{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    CHECK(packing_is_valid({4, {}}, k4));
    CHECK(packing_is_valid({4, {{0, 1, 2}}}, k4));
    CHECK_FALSE(packing_is_valid({4, {{0, 1, 2}, {0, 1, 3}}}, k4));
    const EdgeList path{4, {{0, 1}, {1, 2}}};
    CHECK_FALSE(packing_is_valid({4, {{0, 1, 2}}}, path));
}

TEST_CASE("greedy_packing over a fixed order") {
    const EdgeList k4{4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}};
    const TrianglePacking p = greedy_packing(k4, 1);
    CHECK(p.triangles.size() == 1);
    CHECK(packing_is_valid(p, k4));
}
