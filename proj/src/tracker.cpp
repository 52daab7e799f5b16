#include "tuza/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace tuza {
namespace {

class Accumulator {
public:
    void add(double value, double expected) {
        const double dev = std::abs(value - expected);
        sum_value_ += value;
        sum_dev_ += dev;
        max_dev_ = std::max(max_dev_, dev);
        ++count_;
    }

    FamilyStat finish(std::string family, int b, int c, double expected) const {
        FamilyStat out;
        out.family = std::move(family);
        out.b = b;
        out.c = c;
        out.expected = expected;
        out.samples = count_;
        if (count_ > 0) {
            out.mean_value = sum_value_ / static_cast<double>(count_);
            out.mean_dev = sum_dev_ / static_cast<double>(count_);
            out.max_dev = max_dev_;
        }
        return out;
    }

private:
    double sum_value_ = 0.0;
    double sum_dev_ = 0.0;
    double max_dev_ = 0.0;
    std::uint64_t count_ = 0;
};

std::vector<Vertex> sample_vertices(Vertex n, std::size_t k, Rng& rng) {
    std::vector<Vertex> out;
    std::unordered_set<Vertex> seen;
    out.reserve(k);
    while (out.size() < k) {
        const auto v = static_cast<Vertex>(rng.below(n));
        if (seen.insert(v).second) out.push_back(v);
    }
    return out;
}

std::vector<EdgeId> sample_pairs(Vertex n, std::size_t k, Rng& rng) {
    std::vector<EdgeId> out;
    std::unordered_set<std::uint64_t> seen;
    out.reserve(k);
    while (out.size() < k) {
        const auto idx = rng.below(pair_count(n));
        if (seen.insert(idx).second) out.push_back(edge_from_index(n, idx));
    }
    return out;
}

}  // namespace

const FamilyStat* Snapshot::find(const std::string& family, int b, int c) const {
    for (const auto& s : stats) {
        if (s.family == family && s.b == b && s.c == c) return &s;
    }
    return nullptr;
}

std::string to_string(ProcessKind kind) { return kind == ProcessKind::Packing ? "packing" : "triangle-free"; }

Snapshot record_checkpoint(const ProcessState& state, const OdeSolution& y, const TrackerConfig& config, Rng& rng,
                           std::vector<std::string>* warnings) {
    const Vertex n = state.n();
    if (n < 3) throw std::invalid_argument("tracking needs n >= 3");
    const double nd = static_cast<double>(n);
    const double sqrt_n = std::sqrt(nd);
    Snapshot snap;
    snap.step = state.step();
    snap.t = static_cast<double>(state.step()) / (nd * sqrt_n);
    const double y_t = std::clamp(y(snap.t), 0.0, 1.0);
    const ClosedForms forms(y_t, std::max(config.c_cap, config.q_cap) + 2);

    auto clip = [&](std::size_t wanted, std::uint64_t available, const char* what) {
        if (wanted <= available) return wanted;
        if (warnings) {
            warnings->push_back(std::string(what) + " samples clipped from " + std::to_string(wanted) + " to " +
                                std::to_string(available));
        }
        return static_cast<std::size_t>(available);
    };
    const std::size_t vertex_k = clip(config.vertex_samples, n, "vertex");
    const std::size_t pair_k = clip(config.pair_samples, pair_count(n), "pair");

    CodegreeRow row_u(n);
    CodegreeRow row_v(n);
    std::vector<std::uint32_t> g_count(n, 0);
    std::vector<Vertex> g_touched;

    // Vertex statistics.
    Accumulator acc_dg;
    Accumulator acc_du;
    std::vector<Accumulator> acc_r(config.c_cap + 1);
    std::vector<std::uint64_t> hist(config.c_cap + 1);
    for (Vertex v : sample_vertices(n, vertex_k, rng)) {
        acc_dg.add(static_cast<double>(state.degree(v)) / sqrt_n, 2.0 * snap.t);
        acc_du.add(static_cast<double>(state.unmatched_degree(v)) / sqrt_n, y_t);

        row_u.build(state, v);
        std::fill(hist.begin(), hist.end(), 0);
        std::uint64_t positive = 0;
        for (Vertex w : row_u.touched()) {
            if (w == v) continue;
            ++positive;
            if (row_u[w] <= config.c_cap) ++hist[row_u[w]];
        }
        hist[0] = (n - 1) - positive;
        for (std::size_t c = 0; c <= config.c_cap; ++c) {
            acc_r[c].add(static_cast<double>(hist[c]) / nd, forms.r(static_cast<long>(c)));
        }

        // codeg_G from v, walking U and M together.
        for (Vertex w : g_touched) g_count[w] = 0;
        g_touched.clear();
        const auto& adj_u = state.unmatched_adjacency();
        const auto& adj_m = state.matched_adjacency();
        auto walk = [&](Vertex x) {
            for (const auto* list : {&adj_u[x], &adj_m[x]}) {
                for (Vertex w : *list) {
                    if (w == v) continue;
                    if (g_count[w]++ == 0) g_touched.push_back(w);
                    snap.max_codegree = std::max(snap.max_codegree, g_count[w]);
                }
            }
        };
        for (Vertex x : adj_u[v]) walk(x);
        for (Vertex x : adj_m[v]) walk(x);
    }

    // Pair statistics.
    const std::size_t qn = config.q_cap + 1;
    std::vector<Accumulator> acc_q(qn * qn);
    std::vector<std::uint64_t> qhist(qn * qn);
    std::vector<Accumulator> acc_s(config.c_cap + 1);
    std::vector<std::uint64_t> shist(config.c_cap + 1);
    Accumulator acc_a;
    std::vector<char> seen(n, 0);
    for (const EdgeId p : sample_pairs(n, pair_k, rng)) {
        const Vertex u = p.u;
        const Vertex v = p.v;
        row_u.build(state, u);
        row_v.build(state, v);

        std::fill(qhist.begin(), qhist.end(), 0);
        std::uint64_t nonzero = 0;
        std::vector<Vertex> visited;
        auto visit = [&](Vertex w) {
            if (w == u || w == v || seen[w]) return;
            seen[w] = 1;
            visited.push_back(w);
            const std::uint32_t b = row_u[w];
            const std::uint32_t c = row_v[w];
            if (b == 0 && c == 0) return;
            ++nonzero;
            if (b <= config.q_cap && c <= config.q_cap) ++qhist[b * qn + c];
        };
        for (Vertex w : row_u.touched()) visit(w);
        for (Vertex w : row_v.touched()) visit(w);
        for (Vertex w : visited) seen[w] = 0;
        qhist[0] = (n - 2) - nonzero;
        for (std::size_t b = 0; b < qn; ++b) {
            for (std::size_t c = 0; c < qn; ++c) {
                acc_q[b * qn + c].add(static_cast<double>(qhist[b * qn + c]) / nd,
                                      forms.q(static_cast<long>(b), static_cast<long>(c)));
            }
        }

        // S_c(u, v) and S_c(v, u).
        const std::uint32_t through = state.in_unmatched(u, v) ? 1 : 0;
        auto s_side = [&](Vertex from, Vertex to, const CodegreeRow& row_from) {
            std::fill(shist.begin(), shist.end(), 0);
            for (Vertex w : state.unmatched_neighbors(to)) {
                if (w == from) continue;
                const std::uint32_t c = row_from[w] - through;
                if (c <= config.c_cap) ++shist[c];
            }
            for (std::size_t c = 0; c <= config.c_cap; ++c) {
                acc_s[c].add(static_cast<double>(shist[c]) / sqrt_n, forms.s(static_cast<long>(c)));
            }
        };
        s_side(u, v, row_u);
        s_side(v, u, row_v);

        if (config.track_a && !through) {
            acc_a.add(static_cast<double>(a_count(state, u, v)) / sqrt_n, forms.alpha());
        }
    }

    snap.stats.push_back(acc_dg.finish("dG", -1, -1, 2.0 * snap.t));
    snap.stats.push_back(acc_du.finish("dU", -1, -1, y_t));
    for (std::size_t c = 0; c <= config.c_cap; ++c) {
        snap.stats.push_back(acc_r[c].finish("R", -1, static_cast<int>(c), forms.r(static_cast<long>(c))));
    }
    for (std::size_t b = 0; b < qn; ++b) {
        for (std::size_t c = 0; c < qn; ++c) {
            snap.stats.push_back(acc_q[b * qn + c].finish("Q", static_cast<int>(b), static_cast<int>(c),
                                                          forms.q(static_cast<long>(b), static_cast<long>(c))));
        }
    }
    for (std::size_t c = 0; c <= config.c_cap; ++c) {
        snap.stats.push_back(acc_s[c].finish("S", -1, static_cast<int>(c), forms.s(static_cast<long>(c))));
    }
    if (config.track_a) snap.stats.push_back(acc_a.finish("A", -1, -1, forms.alpha()));

    if (config.track_k && state.unmatched_edge_count() > 0) {
        // Uniform unmatched edge: endpoint slot chosen proportionally to d_U.
        std::vector<std::uint64_t> prefix(n + 1, 0);
        for (Vertex v = 0; v < n; ++v) prefix[v + 1] = prefix[v] + state.unmatched_degree(v);
        const std::size_t edge_k = clip(config.edge_samples, state.unmatched_edge_count(), "edge");
        Accumulator acc_k;
        for (std::size_t i = 0; i < edge_k; ++i) {
            const std::uint64_t slot = rng.below(prefix[n]);
            const auto v = static_cast<Vertex>(std::upper_bound(prefix.begin(), prefix.end(), slot) - prefix.begin() - 1);
            const Vertex u = state.unmatched_neighbors(v)[slot - prefix[v]];
            const double k = k_count(state, u, v, unbounded_cap);
            acc_k.add(k / sqrt_n, forms.kappa());
        }
        snap.stats.push_back(acc_k.finish("K", -1, -1, forms.kappa()));
    }
    return snap;
}

std::vector<FamilyVerdict> concentration_report(const Trajectory& trajectory, double band) {
    if (trajectory.snapshots.empty()) throw std::invalid_argument("concentration_report: empty trajectory");
    if (!(band > 0.0)) throw std::invalid_argument("concentration_report: band must be positive");
    std::vector<FamilyVerdict> out;
    for (const auto& snap : trajectory.snapshots) {
        for (const auto& stat : snap.stats) {
            auto it = std::find_if(out.begin(), out.end(), [&](const auto& v) { return v.family == stat.family; });
            if (it == out.end()) {
                out.push_back({stat.family, true, 0.0, 0.0, snap.step});
                it = out.end() - 1;
            }
            if (stat.mean_dev > it->worst_mean_dev) {
                it->worst_mean_dev = stat.mean_dev;
                it->worst_step = snap.step;
            }
            it->worst_max_dev = std::max(it->worst_max_dev, stat.max_dev);
            if (stat.mean_dev > band) it->pass = false;
        }
    }
    return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    const auto old_precision = out.precision(12);
    out << "step,t,family,b,c,expected,mean_value,mean_dev,max_dev,samples\n";
    for (const auto& snap : trajectory.snapshots) {
        for (const auto& s : snap.stats) {
            out << snap.step << ',' << snap.t << ',' << s.family << ',' << s.b << ',' << s.c << ',' << s.expected
                << ',' << s.mean_value << ',' << s.mean_dev << ',' << s.max_dev << ',' << s.samples << '\n';
        }
        if (trajectory.kind == ProcessKind::Packing) {
            out << snap.step << ',' << snap.t << ",max_codeg,-1,-1,0," << snap.max_codegree << ",0,0,1\n";
        }
    }
    out.precision(old_precision);
}

std::vector<std::uint64_t> even_checkpoints(std::uint64_t m, std::size_t count) {
    std::vector<std::uint64_t> out;
    count = std::max<std::size_t>(count, 1);
    for (std::size_t j = 0; j <= count; ++j) {
        const auto i = static_cast<std::uint64_t>(
            std::llround(static_cast<long double>(m) * static_cast<long double>(j) / static_cast<long double>(count)));
        if (out.empty() || out.back() != i) out.push_back(i);
    }
    return out;
}

}  // namespace tuza
