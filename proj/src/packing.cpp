#include "tuza/packing.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tuza/edge.hpp"

namespace tuza {

StepOutcome packing_step(ProcessState& state, EdgeId e, Rng& rng) {
    e = make_edge(e.u, e.v, state.n());
    if (state.is_revealed(e.u, e.v)) {
        throw std::invalid_argument("edge " + to_string(e) + " already revealed");
    }
    const Codegree common = codeg_unmatched(state, e.u, e.v);
    StepOutcome out;
    out.candidates = common.count;
    if (common.count == 0) {
        state.add_unmatched(e);
        return out;
    }
    const Vertex w = common.witnesses[rng.below(common.count)];
    state.match_triangle(e, w);
    out.kind = StepOutcome::Kind::TriangleMatched;
    out.triangle = make_triangle(e.u, e.v, w);
    return out;
}

namespace {

void check_checkpoints(std::span<const std::uint64_t> checkpoints, std::uint64_t m) {
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] > m) throw std::invalid_argument("checkpoint beyond the last step");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
            throw std::invalid_argument("checkpoints must be strictly increasing");
        }
    }
}

PackingRun run_impl(Vertex n, std::uint64_t m, std::uint64_t seed, std::span<const std::uint64_t> checkpoints,
                    const OdeSolution* y, const TrackerConfig& config) {
    if (m > pair_count(n)) {
        throw std::invalid_argument("m = " + std::to_string(m) + " exceeds n(n-1)/2 = " +
                                    std::to_string(pair_count(n)));
    }
    check_checkpoints(checkpoints, m);
    PackingRun run{ProcessState(n), TrianglePacking{n, {}}, Trajectory{n, m, seed, ProcessKind::Packing, {}}};
    EdgeStream stream(n, seed);
    Rng choice(seed, Stream::Choice);
    Rng sampling(seed, Stream::Sampling);
    auto next_checkpoint = checkpoints.begin();
    auto maybe_record = [&] {
        if (y && next_checkpoint != checkpoints.end() && *next_checkpoint == run.state.step()) {
            run.trajectory.snapshots.push_back(record_checkpoint(run.state, *y, config, sampling));
            ++next_checkpoint;
        }
    };
    maybe_record();
    for (std::uint64_t i = 0; i < m; ++i) {
        packing_step(run.state, stream.next(), choice);
        maybe_record();
    }
    run.packing.triangles = run.state.matched_triangles();
    return run;
}

}  // namespace

PackingRun run_packing(Vertex n, std::uint64_t m, std::uint64_t seed, std::span<const std::uint64_t> checkpoints,
                       const OdeSolution& y, const TrackerConfig& config) {
    return run_impl(n, m, seed, checkpoints, &y, config);
}

PackingRun run_packing(Vertex n, std::uint64_t m, std::uint64_t seed) { return run_impl(n, m, seed, {}, nullptr, {}); }

TrianglePacking greedy_packing(const EdgeList& graph, std::uint64_t seed) {
    ProcessState state(graph.n);
    Rng choice(seed, Stream::Choice);
    for (const EdgeId e : graph.edges) packing_step(state, e, choice);
    return {graph.n, state.matched_triangles()};
}

bool packing_is_valid(const TrianglePacking& packing, const EdgeList& revealed) {
    std::set<EdgeId> present;
    for (const EdgeId e : revealed.edges) {
        if (e.u == e.v) return false;
        present.insert(e.u < e.v ? e : EdgeId{e.v, e.u});
    }
    std::set<EdgeId> used;
    for (const Triangle& t : packing.triangles) {
        if (t.a == t.b || t.b == t.c || t.a == t.c) return false;
        const Triangle s = make_triangle(t.a, t.b, t.c);
        for (const EdgeId e : {EdgeId{s.a, s.b}, EdgeId{s.a, s.c}, EdgeId{s.b, s.c}}) {
            if (!present.contains(e) || !used.insert(e).second) return false;
        }
    }
    return true;
}

}  // namespace tuza
