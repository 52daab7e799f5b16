#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tuza/graph_core.hpp"
#include "tuza/ode.hpp"
#include "tuza/rng.hpp"
#include "tuza/tracker.hpp"

namespace tuza {

struct StepOutcome {
    enum class Kind { StayedUnmatched, TriangleMatched };

    Kind kind = Kind::StayedUnmatched;
    std::optional<Triangle> triangle;
    std::size_t candidates = 0;  // triangles the new edge closed in U
};

/// Edge-disjoint triangles over n vertices.
struct TrianglePacking {
    Vertex n = 0;
    std::vector<Triangle> triangles;
};

/// Reveals e. With no common U-neighbor it joins U; otherwise one witness is
/// picked uniformly (index into the sorted witness list, one rng draw) and
/// that triangle moves to M. Throws std::invalid_argument if e was already
/// revealed.
StepOutcome packing_step(ProcessState& state, EdgeId e, Rng& rng);

struct PackingRun {
    ProcessState state;
    TrianglePacking packing;
    Trajectory trajectory;
};

/// Runs the packing process on the first m edges of EdgeStream(n, seed).
/// The witness choice and the tracker sampling use their own sub-streams of
/// `seed`, so the packing does not depend on the checkpoints. A snapshot is
/// taken after each listed step (sorted, <= m). Throws std::invalid_argument
/// when m > n(n-1)/2 or a checkpoint exceeds m.
PackingRun run_packing(Vertex n, std::uint64_t m, std::uint64_t seed, std::span<const std::uint64_t> checkpoints,
                       const OdeSolution& y, const TrackerConfig& config = {});

/// Same process without tracking.
PackingRun run_packing(Vertex n, std::uint64_t m, std::uint64_t seed);

/// Packing process over a given edge order (used against the exact oracles).
TrianglePacking greedy_packing(const EdgeList& graph, std::uint64_t seed);

/// True iff the triangles are pairwise edge-disjoint and all their edges are in `revealed`.
bool packing_is_valid(const TrianglePacking& packing, const EdgeList& revealed);

}  // namespace tuza
