#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tuza/edge.hpp"

namespace tuza {

/// Revealed edges of one running process, split into the triangle-free
/// unmatched graph U and the matched graph M (an edge-disjoint union of
/// triangles). Neighbor lists are kept sorted so codegrees are merges.
///
/// Single writer. Const queries are safe to run concurrently on a state
/// nobody is mutating.
class ProcessState {
public:
    explicit ProcessState(Vertex n);

    Vertex n() const noexcept { return n_; }
    std::uint64_t step() const noexcept { return step_; }

    std::span<const Vertex> unmatched_neighbors(Vertex v) const { return unmatched_[v]; }
    std::span<const Vertex> matched_neighbors(Vertex v) const { return matched_[v]; }
    const std::vector<Triangle>& matched_triangles() const noexcept { return triangles_; }
    const std::vector<std::vector<Vertex>>& unmatched_adjacency() const noexcept { return unmatched_; }
    const std::vector<std::vector<Vertex>>& matched_adjacency() const noexcept { return matched_; }

    std::size_t unmatched_degree(Vertex v) const { return unmatched_[v].size(); }
    std::size_t matched_degree(Vertex v) const { return matched_[v].size(); }
    std::size_t degree(Vertex v) const { return unmatched_[v].size() + matched_[v].size(); }

    std::uint64_t unmatched_edge_count() const noexcept { return unmatched_edges_; }
    std::uint64_t matched_edge_count() const noexcept { return 3 * triangles_.size(); }

    bool in_unmatched(Vertex u, Vertex v) const;
    bool in_matched(Vertex u, Vertex v) const;
    bool is_revealed(Vertex u, Vertex v) const { return in_unmatched(u, v) || in_matched(u, v); }

    /// Every revealed edge, sorted.
    EdgeList revealed_edges() const;

    // Mutators used by the packing process. They do not re-check the U/M
    // invariants; packing_step is the only intended caller.
    void add_unmatched(EdgeId e);
    /// Moves triangle {u, v, w} into M: uv must be new, uw and vw in U.
    void match_triangle(EdgeId new_edge, Vertex w);

private:
    Vertex n_;
    std::uint64_t step_ = 0;
    std::uint64_t unmatched_edges_ = 0;
    std::vector<std::vector<Vertex>> unmatched_;
    std::vector<std::vector<Vertex>> matched_;
    std::vector<Triangle> triangles_;
};

struct Codegree {
    std::size_t count = 0;
    std::vector<Vertex> witnesses;  // sorted
};

/// Common neighbors of u and v in U. Throws std::invalid_argument when
/// u == v or either is out of range.
Codegree codeg_unmatched(const ProcessState& state, Vertex u, Vertex v);

/// Count-only variant of codeg_unmatched, no allocation.
std::size_t codeg_unmatched_count(const ProcessState& state, Vertex u, Vertex v);

/// Codegree of v with every vertex in U, by two-hop counting. Entry v itself
/// holds d_U(v) (the walk v-x-v) and is ignored by callers.
class CodegreeRow {
public:
    explicit CodegreeRow(Vertex n) : count_(n, 0) {}

    void build(const ProcessState& state, Vertex v);
    void build(std::span<const std::vector<Vertex>> adjacency, Vertex v);

    std::uint32_t operator[](Vertex w) const { return count_[w]; }
    /// Vertices with a nonzero entry, in first-touch order.
    std::span<const Vertex> touched() const { return touched_; }

private:
    void clear();

    std::vector<std::uint32_t> count_;
    std::vector<Vertex> touched_;
};

/// |R_c(v)| for c = 0..c_max; the last element is the overflow bucket c > c_max.
/// Sums to n - 1.
std::vector<std::uint64_t> r_histogram(const ProcessState& state, Vertex v, std::size_t c_max);

/// |S_c(u, v)|: w in N_U(v), w != u, whose U-codegree with u not counting v is c.
std::uint64_t s_count(const ProcessState& state, Vertex u, Vertex v, std::size_t c);

/// |Q_{b,c}(u, v)| over w outside {u, v}.
std::uint64_t q_count(const ProcessState& state, Vertex u, Vertex v, std::size_t b, std::size_t c);

/// Exact number of unrevealed edges whose insertion into U would stay in U
/// (closes no triangle) and raise codeg_U(u, v) by one.
std::uint64_t a_count(const ProcessState& state, Vertex u, Vertex v);

/// c_max for k_count that keeps every term.
inline constexpr std::size_t unbounded_cap = std::numeric_limits<std::size_t>::max() - 1;

/// Weighted count for an unmatched edge uv: each unrevealed edge uw (w in
/// N_U(v)) or vw (w in N_U(u)) contributes 1/(number of triangles it would
/// close), i.e. the chance that revealing it moves uv into M. Terms whose
/// triangle count exceeds c_max + 1 are dropped. Throws std::domain_error
/// when uv is not in U.
double k_count(const ProcessState& state, Vertex u, Vertex v, std::size_t c_max);

/// Triangles of U (should be zero at all times).
std::uint64_t count_unmatched_triangles(const ProcessState& state);

/// Triangles of an arbitrary sorted adjacency structure.
std::uint64_t count_triangles(std::span<const std::vector<Vertex>> adjacency);

}  // namespace tuza
