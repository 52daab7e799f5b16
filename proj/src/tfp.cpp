#include "tuza/tfp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "tuza/graph_core.hpp"

namespace tuza {
namespace {

bool has_common(std::span<const Vertex> a, std::span<const Vertex> b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            return true;
        }
    }
    return false;
}

void sorted_insert(std::vector<Vertex>& list, Vertex x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
}

}  // namespace

TfpState::TfpState(Vertex n) : n_(n), adjacency_(n), rejected_adjacency_(n) {}

bool TfpState::is_accepted(Vertex u, Vertex v) const {
    return u < n_ && v < n_ && std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

bool TfpState::is_revealed(Vertex u, Vertex v) const {
    if (is_accepted(u, v)) return true;
    return u < n_ && v < n_ &&
           std::binary_search(rejected_adjacency_[u].begin(), rejected_adjacency_[u].end(), v);
}

bool TfpState::step(EdgeId e) {
    e = make_edge(e.u, e.v, n_);
    if (is_revealed(e.u, e.v)) throw std::invalid_argument("edge " + to_string(e) + " already revealed");
    ++step_;
    if (has_common(adjacency_[e.u], adjacency_[e.v])) {
        sorted_insert(rejected_adjacency_[e.u], e.v);
        sorted_insert(rejected_adjacency_[e.v], e.u);
        rejected_.push_back(e);
        return false;
    }
    sorted_insert(adjacency_[e.u], e.v);
    sorted_insert(adjacency_[e.v], e.u);
    ++accepted_;
    return true;
}

bool tfp_step(TfpState& state, EdgeId e) { return state.step(e); }

namespace {

TfpRun run_impl(Vertex n, std::uint64_t m, std::uint64_t seed, std::span<const std::uint64_t> checkpoints,
                const OdeSolution* a, const TfpTrackingConfig& config) {
    if (m > pair_count(n)) {
        throw std::invalid_argument("m = " + std::to_string(m) + " exceeds n(n-1)/2 = " +
                                    std::to_string(pair_count(n)));
    }
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] > m || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
            throw std::invalid_argument("checkpoints must be strictly increasing and <= m");
        }
    }
    TfpRun run{TfpState(n), TriangleCover{n, {}}, Trajectory{n, m, seed, ProcessKind::TriangleFree, {}}};
    EdgeStream stream(n, seed);
    const double scale = std::pow(static_cast<double>(n), 1.5);
    auto next_checkpoint = checkpoints.begin();
    auto maybe_record = [&] {
        if (!a || next_checkpoint == checkpoints.end() || *next_checkpoint != run.state.step()) return;
        ++next_checkpoint;
        Snapshot snap;
        snap.step = run.state.step();
        snap.t = static_cast<double>(snap.step) / scale;
        const double value = static_cast<double>(run.state.accepted_count()) / scale;
        const double expected = (*a)(snap.t);
        FamilyStat stat{"A", -1, -1, expected, value, std::abs(value - expected), std::abs(value - expected), 1};
        snap.stats.push_back(stat);
        if (n <= config.open_pairs_max_n) {
            const double fraction =
                static_cast<double>(count_open_pairs(run.state)) / static_cast<double>(pair_count(n));
            const double expect = std::exp(-4.0 * value * value);
            snap.stats.push_back({"open", -1, -1, expect, fraction, std::abs(fraction - expect),
                                  std::abs(fraction - expect), 1});
        }
        run.trajectory.snapshots.push_back(std::move(snap));
    };
    maybe_record();
    for (std::uint64_t i = 0; i < m; ++i) {
        run.state.step(stream.next());
        maybe_record();
    }
    run.cover.edges = run.state.rejected();
    return run;
}

}  // namespace

TfpRun run_tfp(Vertex n, std::uint64_t m, std::uint64_t seed, std::span<const std::uint64_t> checkpoints,
               const OdeSolution& a, const TfpTrackingConfig& config) {
    return run_impl(n, m, seed, checkpoints, &a, config);
}

TfpRun run_tfp(Vertex n, std::uint64_t m, std::uint64_t seed) { return run_impl(n, m, seed, {}, nullptr, {}); }

TfpState run_tfp_until_accepted(Vertex n, std::uint64_t accepted, std::uint64_t seed) {
    TfpState state(n);
    EdgeStream stream(n, seed);
    while (state.accepted_count() < accepted) state.step(stream.next());
    return state;
}

TriangleCover triangle_free_cover(const EdgeList& graph) {
    TfpState state(graph.n);
    for (const EdgeId e : graph.edges) state.step(e);
    return {graph.n, state.rejected()};
}

std::uint64_t count_open_pairs(const TfpState& state) {
    const Vertex n = state.n();
    std::vector<std::uint32_t> mark(n, std::numeric_limits<std::uint32_t>::max());
    std::uint64_t closed = 0;  // pairs u < w at distance <= 2 or adjacent
    for (Vertex u = 0; u < n; ++u) {
        std::uint64_t here = 0;
        for (Vertex x : state.neighbors(u)) {
            if (x > u && mark[x] != u) {
                mark[x] = u;
                ++here;
            }
            for (Vertex w : state.neighbors(x)) {
                if (w > u && mark[w] != u) {
                    mark[w] = u;
                    ++here;
                }
            }
        }
        closed += here;
    }
    return pair_count(n) - closed;
}

bool cover_is_valid(const TriangleCover& cover, const EdgeList& revealed) {
    std::set<EdgeId> removed;
    for (const EdgeId e : cover.edges) removed.insert(e.u < e.v ? e : EdgeId{e.v, e.u});
    std::vector<std::vector<Vertex>> adjacency(revealed.n);
    std::size_t kept_from_cover = 0;
    for (const EdgeId raw : revealed.edges) {
        const EdgeId e = raw.u < raw.v ? raw : EdgeId{raw.v, raw.u};
        if (removed.contains(e)) {
            ++kept_from_cover;
            continue;
        }
        adjacency[e.u].push_back(e.v);
        adjacency[e.v].push_back(e.u);
    }
    if (kept_from_cover != removed.size()) return false;  // cover edge not in the graph
    for (auto& list : adjacency) std::sort(list.begin(), list.end());
    return count_triangles(adjacency) == 0;
}

}  // namespace tuza
