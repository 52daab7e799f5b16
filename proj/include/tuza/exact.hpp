#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tuza/edge.hpp"
#include "tuza/packing.hpp"
#include "tuza/tfp.hpp"

namespace tuza {

/// Graph on at most 64 vertices with its complete triangle list.
class SmallGraph {
public:
    static constexpr Vertex max_vertices = 64;

    struct TriangleRef {
        Triangle vertices;
        std::array<std::uint32_t, 3> edges;  // indices into edges()
    };

    /// Throws std::invalid_argument for n > 64, loops, out-of-range or
    /// repeated edges.
    explicit SmallGraph(const EdgeList& graph);

    /// From adjacency bitmasks (bit w of masks[v] set iff vw is an edge).
    static SmallGraph from_masks(Vertex n, const std::vector<std::uint64_t>& masks);

    Vertex n() const noexcept { return n_; }
    const std::vector<EdgeId>& edges() const noexcept { return edges_; }
    const std::vector<TriangleRef>& triangles() const noexcept { return triangles_; }
    std::uint64_t neighbors(Vertex v) const { return adjacency_.at(v); }
    EdgeList edge_list() const { return {n_, edges_}; }

    /// Index of edge {u, v} in edges(), or -1.
    int edge_index_of(Vertex u, Vertex v) const;

private:
    SmallGraph() = default;
    void finish();

    Vertex n_ = 0;
    std::vector<EdgeId> edges_;
    std::vector<std::uint64_t> adjacency_;
    std::vector<int> index_;  // n*n -> edge index or -1
    std::vector<TriangleRef> triangles_;
};

/// Search budget of the exact oracles (roughly a minute of work).
inline constexpr std::uint64_t default_node_limit = 200'000'000;

struct NuResult {
    std::size_t size = 0;
    TrianglePacking packing;
    std::uint64_t nodes = 0;  // branch-and-bound nodes visited
};

struct TauResult {
    std::size_t size = 0;
    TriangleCover cover;
    std::uint64_t nodes = 0;
};

/// Maximum edge-disjoint triangle packing by branch and bound over the
/// triangle list (degree-sum order), pruning with min(#available triangles,
/// #free edges they span / 3). Witness is validated before returning.
/// Throws std::length_error once more than `node_limit` nodes are visited.
NuResult exact_nu(const SmallGraph& g, std::uint64_t node_limit = default_node_limit);

/// Minimum set of edges meeting every triangle. Branches on the three edges
/// of the first unhit triangle; a greedy disjoint packing of the unhit
/// triangles is the lower bound and the max-cut cover the first incumbent.
TauResult exact_tau(const SmallGraph& g, std::uint64_t node_limit = default_node_limit);

/// Value of the fractional packing LP: max sum x_T subject to, for each edge,
/// the x_T of triangles through it summing to at most 1. By LP duality this
/// also equals the fractional cover number, so nu <= value <= tau.
/// Dense simplex with Bland's rule; throws std::length_error on huge inputs.
double fractional_nu(const SmallGraph& g);

/// Local-search max cut (first-improvement single flips from the all-zero
/// side assignment); the uncut edges cover every triangle and number at most
/// half the edges.
TriangleCover max_cut_cover(const EdgeList& graph);
TriangleCover max_cut_cover(const SmallGraph& g);

struct TuzaCheck {
    std::size_t nu = 0;
    std::size_t tau = 0;
    bool holds = false;  // tau <= 2 nu
};

TuzaCheck verify_tuza(const SmallGraph& g, std::uint64_t node_limit = default_node_limit);

struct ExhaustiveSummary {
    Vertex n = 0;
    std::uint64_t graphs = 0;
    std::uint64_t violations = 0;            // tau > 2 nu
    std::uint64_t trivial_bound_breaks = 0;  // nu > tau or tau > 3 nu
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> histogram;  // (nu, tau) -> count
    std::vector<std::string> counterexamples;  // graph6
};

/// Checks every labeled graph on n vertices (2^{n(n-1)/2} of them; n <= 8).
/// Work is split over `workers` threads; results do not depend on it.
ExhaustiveSummary verify_all_graphs(Vertex n, unsigned workers = 1);

/// graph6 encoding (n up to 258047).
std::string to_graph6(const EdgeList& graph);
/// Accepts an optional ">>graph6<<" prefix; throws std::invalid_argument on malformed input.
EdgeList parse_graph6(std::string_view text);

/// One "u v" pair per line; blank lines and lines starting with '#' are
/// skipped. n is one more than the largest vertex unless `n_hint` is larger.
/// Throws std::invalid_argument on malformed lines, loops or repeated edges.
EdgeList read_edge_list(std::istream& in, Vertex n_hint = 0);
void write_edge_list(std::ostream& out, const EdgeList& graph);

}  // namespace tuza
