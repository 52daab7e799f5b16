#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tuza/edge.hpp"
#include "tuza/ode.hpp"
#include "tuza/tracker.hpp"

namespace tuza {

/// Triangle-free process state: the accepted (triangle-free) graph and the
/// rejected edges, which together are every revealed edge.
class TfpState {
public:
    explicit TfpState(Vertex n);

    Vertex n() const noexcept { return n_; }
    std::uint64_t step() const noexcept { return step_; }
    std::uint64_t accepted_count() const noexcept { return accepted_; }
    const std::vector<EdgeId>& rejected() const noexcept { return rejected_; }
    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
    const std::vector<std::vector<Vertex>>& adjacency() const noexcept { return adjacency_; }

    bool is_accepted(Vertex u, Vertex v) const;
    bool is_revealed(Vertex u, Vertex v) const;

    /// Accepts e iff its endpoints have no common accepted neighbor.
    /// Throws std::invalid_argument when e was revealed before.
    bool step(EdgeId e);

private:
    Vertex n_;
    std::uint64_t step_ = 0;
    std::uint64_t accepted_ = 0;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::vector<Vertex>> rejected_adjacency_;
    std::vector<EdgeId> rejected_;
};

struct TriangleCover {
    Vertex n = 0;
    std::vector<EdgeId> edges;
};

bool tfp_step(TfpState& state, EdgeId e);

struct TfpRun {
    TfpState state;
    TriangleCover cover;
    Trajectory trajectory;
};

struct TfpTrackingConfig {
    /// Snapshots also count open pairs when n is at most this.
    Vertex open_pairs_max_n = 3000;
};

/// Runs the triangle-free process on the first m edges of EdgeStream(n, seed).
/// Snapshots record A(i)/n^{3/2} against a(t) (family "A") and, for small n,
/// the open-pair fraction against exp(-4 that^2) with that = A(i)/n^{3/2}
/// (family "open").
TfpRun run_tfp(Vertex n, std::uint64_t m, std::uint64_t seed, std::span<const std::uint64_t> checkpoints,
               const OdeSolution& a, const TfpTrackingConfig& config = {});

TfpRun run_tfp(Vertex n, std::uint64_t m, std::uint64_t seed);

/// Reveals edges of EdgeStream(n, seed) until `accepted` edges are accepted.
TfpState run_tfp_until_accepted(Vertex n, std::uint64_t accepted, std::uint64_t seed);

/// Triangle-free process over a given edge order; the rejected edges.
TriangleCover triangle_free_cover(const EdgeList& graph);

/// Pairs outside the accepted graph whose endpoints have no common accepted
/// neighbor. Rejected pairs always have one, so this equals the number of
/// unrevealed pairs that would be accepted. O(n * maxdeg^2 + n^2).
std::uint64_t count_open_pairs(const TfpState& state);

/// True iff `revealed` minus `cover` is triangle-free (cover edges must be in revealed).
bool cover_is_valid(const TriangleCover& cover, const EdgeList& revealed);

}  // namespace tuza
