#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tuza/graph_core.hpp"
#include "tuza/ode.hpp"
#include "tuza/rng.hpp"

namespace tuza {

/// One tracked statistic at one checkpoint: the empirical scaled count
/// against its deterministic value, aggregated over the sampled vertices,
/// pairs or edges. `b` and `c` are -1 where the family has no such index.
struct FamilyStat {
    std::string family;
    int b = -1;
    int c = -1;
    double expected = 0.0;
    double mean_value = 0.0;
    double mean_dev = 0.0;  // mean of |scaled count - expected|
    double max_dev = 0.0;
    std::uint64_t samples = 0;
};

struct Snapshot {
    std::uint64_t step = 0;
    double t = 0.0;
    /// Largest codeg_G seen from the sampled vertices.
    std::uint32_t max_codegree = 0;
    std::vector<FamilyStat> stats;

    const FamilyStat* find(const std::string& family, int b = -1, int c = -1) const;
};

enum class ProcessKind { Packing, TriangleFree };

std::string to_string(ProcessKind kind);

struct Trajectory {
    Vertex n = 0;
    std::uint64_t m = 0;
    std::uint64_t seed = 0;
    ProcessKind kind = ProcessKind::Packing;
    std::vector<Snapshot> snapshots;  // strictly increasing steps
};

struct TrackerConfig {
    std::size_t vertex_samples = 64;
    std::size_t pair_samples = 64;
    std::size_t edge_samples = 64;
    std::size_t c_cap = 3;  // R_c and S_c for c <= c_cap
    std::size_t q_cap = 2;  // Q_{b,c} for b, c <= q_cap
    bool track_k = true;    // K(u, v) over sampled unmatched edges
    bool track_a = true;    // exact A(u, v) over sampled non-edges of U
};

/// Collects one packing-process snapshot. Sample sizes above what the state
/// offers are clipped (a warning goes to `warnings` when given).
/// Throws std::out_of_range when t = step / n^{3/2} is beyond the solution.
Snapshot record_checkpoint(const ProcessState& state, const OdeSolution& y, const TrackerConfig& config,
                           Rng& rng, std::vector<std::string>* warnings = nullptr);

struct FamilyVerdict {
    std::string family;
    bool pass = false;
    double worst_mean_dev = 0.0;  // largest mean deviation across snapshots and indices
    double worst_max_dev = 0.0;
    std::uint64_t worst_step = 0;
};

/// Pass iff every snapshot's mean deviation in the family is <= band.
/// Families in order of first appearance. Throws std::invalid_argument for
/// an empty trajectory or a nonpositive band.
std::vector<FamilyVerdict> concentration_report(const Trajectory& trajectory, double band);

/// Header "step,t,family,b,c,expected,mean_value,mean_dev,max_dev,samples"
/// then one row per (snapshot, statistic), 12 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// Evenly spaced checkpoints 0 = i_0 < ... < i_{count} = m (deduplicated).
std::vector<std::uint64_t> even_checkpoints(std::uint64_t m, std::size_t count);

}  // namespace tuza
