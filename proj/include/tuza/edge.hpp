#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tuza/rng.hpp"

namespace tuza {

using Vertex = std::uint32_t;

/// Undirected edge with u < v.
struct EdgeId {
    Vertex u = 0;
    Vertex v = 0;

    friend constexpr bool operator==(const EdgeId&, const EdgeId&) = default;
    friend constexpr auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

/// Normalizes (a, b) into an EdgeId; throws std::invalid_argument on a loop
/// or an endpoint outside [0, n).
EdgeId make_edge(Vertex a, Vertex b, Vertex n);

/// Vertex triple sorted ascending.
struct Triangle {
    Vertex a = 0;
    Vertex b = 0;
    Vertex c = 0;

    friend constexpr bool operator==(const Triangle&, const Triangle&) = default;
    friend constexpr auto operator<=>(const Triangle&, const Triangle&) = default;
};

Triangle make_triangle(Vertex x, Vertex y, Vertex z);

constexpr std::uint64_t pair_count(std::uint64_t n) noexcept { return n * (n - 1) / 2; }

/// Lexicographic rank of {u < v} among all pairs of [0, n).
constexpr std::uint64_t edge_index(Vertex n, EdgeId e) noexcept {
    const std::uint64_t u = e.u;
    return u * (2 * static_cast<std::uint64_t>(n) - u - 1) / 2 + (e.v - e.u - 1);
}

/// Inverse of edge_index.
EdgeId edge_from_index(Vertex n, std::uint64_t index);

/// Plain edge list over n vertices. Used for revealed graphs and for the
/// small-graph oracles.
struct EdgeList {
    Vertex n = 0;
    std::vector<EdgeId> edges;
};

/// Uniformly random sequence of distinct pairs: a partial Fisher-Yates
/// shuffle over the implicit lexicographic pair indexing. Only displaced
/// positions are stored, so memory is O(drawn) rather than O(n^2).
class EdgeStream {
public:
    EdgeStream(Vertex n, std::uint64_t seed);

    /// Throws std::out_of_range once all pairs are drawn.
    EdgeId next();

    std::uint64_t drawn() const noexcept { return position_; }
    std::uint64_t universe() const noexcept { return universe_; }

private:
    std::uint64_t value_at(std::uint64_t position) const;

    Vertex n_;
    std::uint64_t universe_;
    std::uint64_t position_ = 0;
    Rng rng_;
    std::unordered_map<std::uint64_t, std::uint64_t> displaced_;
};

/// First m edges of an EdgeStream: a sample of G(n, m) in reveal order.
/// Throws std::invalid_argument when m > n(n-1)/2.
std::vector<EdgeId> random_edge_sequence(Vertex n, std::uint64_t m, std::uint64_t seed);

std::string to_string(const EdgeId& e);

}  // namespace tuza
