#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "tuza/edge.hpp"
#include "tuza/rng.hpp"

using namespace tuza;

TEST_CASE("rng is deterministic and streams differ") {
    Rng a(42), b(42), c(42, Stream::Choice);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        CHECK(x == b.next());
        CHECK(x != c.next());
    }
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("bounded draws stay in range and look uniform") {
    Rng rng(9);
    std::vector<int> counts(7, 0);
    const int draws = 70000;
    for (int i = 0; i < draws; ++i) {
        const auto x = rng.below(7);
        REQUIRE(x < 7);
        ++counts[x];
    }
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - draws / 7.0) * (c - draws / 7.0) / (draws / 7.0);
    CHECK(chi2 < 22.5);  // 6 degrees of freedom, p = 0.001
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(rng.below(1) == 0);
}

TEST_CASE("edge indexing round-trips") {
    for (Vertex n : {2u, 3u, 7u, 50u, 1000u}) {
        std::uint64_t index = 0;
        for (Vertex u = 0; u < std::min<Vertex>(n, 60); ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                const EdgeId e{u, v};
                if (n <= 60) CHECK(edge_index(n, e) == index++);
                CHECK(edge_from_index(n, edge_index(n, e)) == e);
            }
        }
    }
    const Vertex big = 100000;
    const EdgeId last{big - 2, big - 1};
    CHECK(edge_index(big, last) == pair_count(big) - 1);
    CHECK(edge_from_index(big, pair_count(big) - 1) == last);
}

TEST_CASE("make_edge and make_triangle validate") {
    CHECK(make_edge(5, 2, 10) == EdgeId{2, 5});
    CHECK_THROWS_AS(make_edge(3, 3, 10), std::invalid_argument);
    CHECK_THROWS_AS(make_edge(3, 10, 10), std::invalid_argument);
    const Triangle t = make_triangle(4, 1, 2);
    CHECK(t.a == 1);
    CHECK(t.b == 2);
    CHECK(t.c == 4);
}

TEST_CASE("edge stream draws every pair exactly once") {
    const Vertex n = 23;
    EdgeStream stream(n, 5);
    std::set<EdgeId> seen;
    for (std::uint64_t i = 0; i < pair_count(n); ++i) {
        const EdgeId e = stream.next();
        CHECK(e.u < e.v);
        CHECK(e.v < n);
        CHECK(seen.insert(e).second);
    }
    CHECK(stream.drawn() == pair_count(n));
    CHECK_THROWS_AS(stream.next(), std::out_of_range);
    CHECK(random_edge_sequence(n, 10, 3) == random_edge_sequence(n, 10, 3));
    CHECK(random_edge_sequence(n, 10, 3) != random_edge_sequence(n, 10, 4));
    CHECK_THROWS_AS(random_edge_sequence(n, pair_count(n) + 1, 3), std::invalid_argument);
}

TEST_CASE("first edge of the stream is uniform over pairs") {
    const Vertex n = 6;
    std::vector<int> counts(pair_count(n), 0);
    const int trials = 30000;
    for (int s = 0; s < trials; ++s) ++counts[edge_index(n, EdgeStream(n, s).next())];
    double chi2 = 0.0;
    const double expect = static_cast<double>(trials) / counts.size();
    for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
    CHECK(chi2 < 36.1);  // 14 degrees of freedom, p = 0.001
}
