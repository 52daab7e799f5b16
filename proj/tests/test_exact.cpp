#include <doctest.h>

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "tuza/exact.hpp"
#include "tuza/packing.hpp"

using namespace tuza;

namespace {

EdgeList complete(Vertex n) {
    EdgeList g{n, {}};
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) g.edges.push_back({u, v});
    }
    return g;
}

// Exhaustive subset search; only for tiny inputs.
std::size_t brute_nu(const SmallGraph& g) {
    const auto& t = g.triangles();
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t.size()); ++mask) {
        std::vector<char> used(g.edges().size(), 0);
        bool ok = true;
        for (std::size_t i = 0; i < t.size() && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            for (auto e : t[i].edges) ok = ok && !used[e]++;
        }
        if (ok) best = std::max<std::size_t>(best, std::popcount(mask));
    }
    return best;
}

std::size_t brute_tau(const SmallGraph& g) {
    const std::size_t m = g.edges().size();
    std::size_t best = m;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size >= best) continue;
        bool ok = true;
        for (const auto& t : g.triangles()) {
            ok = ok && ((mask >> t.edges[0] & 1) || (mask >> t.edges[1] & 1) || (mask >> t.edges[2] & 1));
        }
        if (ok) best = size;
    }
    return best;
}

}  // namespace

TEST_CASE("complete graphs") {
    const std::size_t nu[] = {0, 0, 0, 1, 1, 2, 4, 7, 8};
    const std::size_t tau[] = {0, 0, 0, 1, 2, 4, 6, 9, 12};
    for (Vertex n = 3; n <= 8; ++n) {
        const SmallGraph g(complete(n));
        CHECK(g.triangles().size() == n * (n - 1) * (n - 2) / 6);
        CHECK(exact_nu(g).size == nu[n]);
        CHECK(exact_tau(g).size == tau[n]);
    }
    const TuzaCheck k4 = verify_tuza(SmallGraph(complete(4)));
    CHECK(k4.nu == 1);
    CHECK(k4.tau == 2);
    CHECK(k4.holds);
}

TEST_CASE("triangle-free and bipartite graphs") {
    const EdgeList c5{5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}};
    const SmallGraph g(c5);
    CHECK(exact_nu(g).size == 0);
    CHECK(exact_tau(g).size == 0);
    const TuzaCheck check = verify_tuza(g);
    CHECK(check.nu == 0);
    CHECK(check.tau == 0);
    CHECK(check.holds);
    const EdgeList k33{6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}};
    CHECK(max_cut_cover(k33).edges.empty());
}

TEST_CASE("max_cut_cover") {
    CHECK(max_cut_cover(complete(3)).edges.size() == 1);
    CHECK(max_cut_cover(complete(4)).edges.size() == 2);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const EdgeList g{14, random_edge_sequence(14, 40, seed)};
        const TriangleCover c = max_cut_cover(g);
        CHECK(2 * c.edges.size() <= g.edges.size());
        CHECK(cover_is_valid(c, g));
    }
}

TEST_CASE("branch and bound matches subset search") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const EdgeList e{8, random_edge_sequence(8, 14, seed)};
        const SmallGraph g(e);
        if (g.triangles().size() > 20) continue;
        const NuResult nu = exact_nu(g);
        const TauResult tau = exact_tau(g);
        CHECK(nu.size == brute_nu(g));
        CHECK(tau.size == brute_tau(g));
        CHECK(packing_is_valid(nu.packing, e));
        CHECK(cover_is_valid(tau.cover, e));
        const double frac = fractional_nu(g);
        CHECK(frac >= static_cast<double>(nu.size) - 1e-9);
        CHECK(frac <= static_cast<double>(tau.size) + 1e-9);
    }
}

TEST_CASE("fractional packing value") {
    CHECK(fractional_nu(SmallGraph(complete(4))) == doctest::Approx(2.0));
    CHECK(fractional_nu(SmallGraph(complete(5))) == doctest::Approx(10.0 / 3.0));
    CHECK(fractional_nu(SmallGraph(EdgeList{4, {{0, 1}}})) == 0.0);
}

TEST_CASE("random graphs on 12 vertices satisfy tau <= 2 nu") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const SmallGraph g(EdgeList{12, random_edge_sequence(12, 30, seed)});
        const TuzaCheck c = verify_tuza(g);
        CHECK(c.holds);
        CHECK(c.nu <= c.tau);
        CHECK(c.tau <= 3 * c.nu);
    }
}

TEST_CASE("exhaustive small n") {
    const ExhaustiveSummary s5 = verify_all_graphs(5);
    CHECK(s5.graphs == 1024);
    CHECK(s5.violations == 0);
    CHECK(s5.trivial_bound_breaks == 0);
    std::uint64_t total = 0;
    for (const auto& [key, count] : s5.histogram) total += count;
    CHECK(total == 1024);
    CHECK(s5.histogram.at({2, 4}) == 1);  // only K5
    const ExhaustiveSummary threaded = verify_all_graphs(5, 3);
    CHECK(threaded.histogram == s5.histogram);
    CHECK_THROWS_AS(verify_all_graphs(9), std::invalid_argument);
}

TEST_CASE("SmallGraph validation") {
    CHECK_THROWS_AS(SmallGraph(EdgeList{65, {}}), std::invalid_argument);
    CHECK_THROWS_AS(SmallGraph(EdgeList{4, {{0, 1}, {1, 0}}}), std::invalid_argument);
    CHECK_THROWS_AS(SmallGraph(EdgeList{4, {{2, 2}}}), std::invalid_argument);
    CHECK_THROWS_AS(SmallGraph::from_masks(2, {0b10, 0b00}), std::invalid_argument);
    const SmallGraph g(complete(4));
    CHECK(g.edge_index_of(2, 1) >= 0);
    CHECK(g.edge_index_of(1, 1) == -1);
    CHECK(SmallGraph(complete(64)).triangles().size() == 41664);
    CHECK_THROWS_AS(exact_tau(SmallGraph(complete(30)), 1000), std::length_error);
}

TEST_CASE("graph6 round trip and known strings") {
    CHECK(to_graph6(complete(4)) == "C~");
    CHECK(to_graph6(EdgeList{5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}}) == "Dhc");
    const EdgeList k4 = parse_graph6(">>graph6<<C~\n");
    CHECK(k4.n == 4);
    CHECK(k4.edges.size() == 6);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Vertex n = static_cast<Vertex>(5 + seed * 9);
        EdgeList g{n, random_edge_sequence(n, n, seed)};
        std::sort(g.edges.begin(), g.edges.end());
        const EdgeList back = parse_graph6(to_graph6(g));
        CHECK(back.n == n);
        CHECK(back.edges == g.edges);
    }
    CHECK_THROWS_AS(parse_graph6(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph6("C"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph6("C~~"), std::invalid_argument);
    CHECK_THROWS_AS(parse_graph6("C\x20"), std::invalid_argument);
}

TEST_CASE("edge list text format") {
    std::istringstream in("# comment\n0 1\n\n1 2\n2 0\n");
    const EdgeList g = read_edge_list(in);
    CHECK(g.n == 3);
    CHECK(g.edges.size() == 3);
    std::ostringstream out;
    write_edge_list(out, g);
    CHECK(out.str() == "0 1\n1 2\n0 2\n");
    std::istringstream hinted("0 1\n");
    CHECK(read_edge_list(hinted, 10).n == 10);
    std::istringstream bad("0 x\n");
    CHECK_THROWS_AS(read_edge_list(bad), std::invalid_argument);
    std::istringstream dup("0 1\n1 0\n");
    CHECK_THROWS_AS(read_edge_list(dup), std::invalid_argument);
    std::istringstream loop("3 3\n");
    CHECK_THROWS_AS(read_edge_list(loop), std::invalid_argument);
}
