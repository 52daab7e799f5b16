#include "tuza/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tuza {

// ---------------------------------------------------------------- SmallGraph

SmallGraph::SmallGraph(const EdgeList& graph) {
    if (graph.n > max_vertices) {
        throw std::invalid_argument("SmallGraph supports at most 64 vertices, got " + std::to_string(graph.n));
    }
    n_ = graph.n;
    adjacency_.assign(n_, 0);
    for (const EdgeId raw : graph.edges) {
        const EdgeId e = make_edge(raw.u, raw.v, n_);
        if (adjacency_[e.u] >> e.v & 1) throw std::invalid_argument("repeated edge " + to_string(e));
        adjacency_[e.u] |= std::uint64_t{1} << e.v;
        adjacency_[e.v] |= std::uint64_t{1} << e.u;
    }
    finish();
}

SmallGraph SmallGraph::from_masks(Vertex n, const std::vector<std::uint64_t>& masks) {
    if (n > max_vertices || masks.size() != n) throw std::invalid_argument("from_masks: bad size");
    SmallGraph g;
    g.n_ = n;
    g.adjacency_ = masks;
    for (Vertex v = 0; v < n; ++v) {
        if (masks[v] >> v & 1) throw std::invalid_argument("from_masks: loop");
        for (Vertex w = 0; w < n; ++w) {
            if ((masks[v] >> w & 1) != (masks[w] >> v & 1)) throw std::invalid_argument("from_masks: asymmetric");
        }
        if (n < 64 && (masks[v] >> n) != 0) throw std::invalid_argument("from_masks: bit beyond n");
    }
    g.finish();
    return g;
}

void SmallGraph::finish() {
    edges_.clear();
    index_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (Vertex u = 0; u < n_; ++u) {
        for (std::uint64_t rest = u + 1 < 64 ? adjacency_[u] >> (u + 1) << (u + 1) : 0; rest; rest &= rest - 1) {
            const auto v = static_cast<Vertex>(std::countr_zero(rest));
            const int id = static_cast<int>(edges_.size());
            index_[u * n_ + v] = id;
            index_[v * n_ + u] = id;
            edges_.push_back({u, v});
        }
    }
    triangles_.clear();
    for (const EdgeId e : edges_) {
        std::uint64_t common = adjacency_[e.u] & adjacency_[e.v];
        common = e.v + 1 < 64 ? common >> (e.v + 1) << (e.v + 1) : 0;
        for (; common; common &= common - 1) {
            const auto w = static_cast<Vertex>(std::countr_zero(common));
            triangles_.push_back({{e.u, e.v, w},
                                  {static_cast<std::uint32_t>(index_[e.u * n_ + e.v]),
                                   static_cast<std::uint32_t>(index_[e.u * n_ + w]),
                                   static_cast<std::uint32_t>(index_[e.v * n_ + w])}});
        }
    }
    auto degree_sum = [this](const TriangleRef& t) {
        return std::popcount(adjacency_[t.vertices.a]) + std::popcount(adjacency_[t.vertices.b]) +
               std::popcount(adjacency_[t.vertices.c]);
    };
    std::stable_sort(triangles_.begin(), triangles_.end(),
                     [&](const TriangleRef& x, const TriangleRef& y) { return degree_sum(x) > degree_sum(y); });
}

int SmallGraph::edge_index_of(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return -1;
    return index_[u * n_ + v];
}

// ----------------------------------------------------------------- exact nu

namespace {

[[noreturn]] void throw_budget(const char* what, std::uint64_t nodes, std::size_t triangles) {
    throw std::length_error(std::string(what) + ": search stopped after " + std::to_string(nodes - 1) +
                            " nodes on " + std::to_string(triangles) +
                            " triangles; the search is exponential in the triangle count");
}

class NuSearch {
public:
    NuSearch(const SmallGraph& g, std::uint64_t limit)
        : g_(g), tris_(g.triangles()), used_(g.edges().size(), 0), stamp_(g.edges().size(), 0), limit_(limit) {}

    NuResult run() {
        root_bound_ = bound(0);
        search(0);
        NuResult out;
        out.size = best_.size();
        out.nodes = nodes_;
        out.packing.n = g_.n();
        for (std::size_t i : best_) out.packing.triangles.push_back(tris_[i].vertices);
        std::sort(out.packing.triangles.begin(), out.packing.triangles.end());
        return out;
    }

private:
    bool available(std::size_t i) const {
        const auto& e = tris_[i].edges;
        return !used_[e[0]] && !used_[e[1]] && !used_[e[2]];
    }

    std::size_t bound(std::size_t from) {
        ++clock_;
        std::size_t tri = 0;
        std::size_t edges = 0;
        for (std::size_t j = from; j < tris_.size(); ++j) {
            if (!available(j)) continue;
            ++tri;
            for (auto e : tris_[j].edges) {
                if (stamp_[e] != clock_) {
                    stamp_[e] = clock_;
                    ++edges;
                }
            }
        }
        return std::min(tri, edges / 3);
    }

    void set(std::size_t i, char value) {
        for (auto e : tris_[i].edges) used_[e] = value;
    }

    void search(std::size_t from) {
        if (done_) return;
        if (++nodes_ > limit_) throw_budget("exact_nu", nodes_, tris_.size());
        std::size_t i = from;
        while (i < tris_.size() && !available(i)) ++i;
        if (i == tris_.size()) {
            if (chosen_.size() > best_.size() || best_.empty()) best_ = chosen_;
            if (best_.size() >= root_bound_) done_ = true;
            return;
        }
        if (chosen_.size() + bound(i) <= best_.size()) return;
        chosen_.push_back(i);
        set(i, 1);
        search(i + 1);
        set(i, 0);
        chosen_.pop_back();
        search(i + 1);
    }

    const SmallGraph& g_;
    const std::vector<SmallGraph::TriangleRef>& tris_;
    std::vector<char> used_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t clock_ = 0;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> best_;
    std::size_t root_bound_ = 0;
    bool done_ = false;
    std::uint64_t limit_;
    std::uint64_t nodes_ = 0;
};

class TauSearch {
public:
    TauSearch(const SmallGraph& g, const TriangleCover& incumbent, std::uint64_t limit)
        : g_(g), tris_(g.triangles()), chosen_(g.edges().size(), 0), stamp_(g.edges().size(), 0), limit_(limit) {
        for (const EdgeId e : incumbent.edges) best_.push_back(static_cast<std::uint32_t>(g.edge_index_of(e.u, e.v)));
    }

    TauResult run() {
        search(0);
        TauResult out;
        out.size = best_.size();
        out.nodes = nodes_;
        out.cover.n = g_.n();
        for (auto e : best_) out.cover.edges.push_back(g_.edges()[e]);
        std::sort(out.cover.edges.begin(), out.cover.edges.end());
        return out;
    }

private:
    bool hit(std::size_t i) const {
        const auto& e = tris_[i].edges;
        return chosen_[e[0]] || chosen_[e[1]] || chosen_[e[2]];
    }

    // Disjoint unhit triangles each need their own edge.
    std::size_t lower_bound(std::size_t from) {
        ++clock_;
        std::size_t count = 0;
        for (std::size_t j = from; j < tris_.size(); ++j) {
            if (hit(j)) continue;
            const auto& e = tris_[j].edges;
            if (stamp_[e[0]] == clock_ || stamp_[e[1]] == clock_ || stamp_[e[2]] == clock_) continue;
            stamp_[e[0]] = stamp_[e[1]] = stamp_[e[2]] = clock_;
            ++count;
        }
        return count;
    }

    void search(std::size_t from) {
        if (++nodes_ > limit_) throw_budget("exact_tau", nodes_, tris_.size());
        std::size_t i = from;
        while (i < tris_.size() && hit(i)) ++i;
        if (i == tris_.size()) {
            if (stack_.size() < best_.size()) best_ = stack_;
            return;
        }
        if (stack_.size() + lower_bound(i) >= best_.size()) return;
        for (auto e : tris_[i].edges) {
            chosen_[e] = 1;
            stack_.push_back(e);
            search(i + 1);
            stack_.pop_back();
            chosen_[e] = 0;
        }
    }

    const SmallGraph& g_;
    const std::vector<SmallGraph::TriangleRef>& tris_;
    std::vector<char> chosen_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t clock_ = 0;
    std::vector<std::uint32_t> stack_;
    std::vector<std::uint32_t> best_;
    std::uint64_t limit_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

NuResult exact_nu(const SmallGraph& g, std::uint64_t node_limit) {
    NuResult out = NuSearch(g, node_limit).run();
    if (!packing_is_valid(out.packing, g.edge_list())) {
        throw std::logic_error("exact_nu produced an invalid packing");
    }
    return out;
}

TauResult exact_tau(const SmallGraph& g, std::uint64_t node_limit) {
    TauResult out = TauSearch(g, max_cut_cover(g), node_limit).run();
    if (!cover_is_valid(out.cover, g.edge_list())) {
        throw std::logic_error("exact_tau produced an invalid cover");
    }
    return out;
}

double fractional_nu(const SmallGraph& g) {
    const std::size_t tri = g.triangles().size();
    const std::size_t rows = g.edges().size();
    if (tri == 0) return 0.0;
    if (tri * rows > 4'000'000) throw std::length_error("fractional_nu: LP too large");
    const std::size_t cols = tri + rows;  // structural then slack
    const std::size_t rhs = cols;
    std::vector<std::vector<double>> a(rows, std::vector<double>(cols + 1, 0.0));
    std::vector<double> cost(cols + 1, 0.0);
    std::vector<std::size_t> basis(rows);
    for (std::size_t j = 0; j < tri; ++j) {
        for (auto e : g.triangles()[j].edges) a[e][j] = 1.0;
        cost[j] = 1.0;
    }
    for (std::size_t r = 0; r < rows; ++r) {
        a[r][tri + r] = 1.0;
        a[r][rhs] = 1.0;
        basis[r] = tri + r;
    }
    constexpr double eps = 1e-10;
    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (cost[j] > eps) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;
        std::size_t leave = rows;
        double best_ratio = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            if (a[r][enter] <= eps) continue;
            const double ratio = a[r][rhs] / a[r][enter];
            if (leave == rows || ratio < best_ratio - eps ||
                (std::abs(ratio - best_ratio) <= eps && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == rows) throw std::logic_error("fractional_nu: unbounded LP");
        const double pivot = a[leave][enter];
        for (double& x : a[leave]) x /= pivot;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == leave || a[r][enter] == 0.0) continue;
            const double f = a[r][enter];
            for (std::size_t j = 0; j <= cols; ++j) a[r][j] -= f * a[leave][j];
        }
        const double f = cost[enter];
        for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * a[leave][j];
        basis[leave] = enter;
    }
    return -cost[rhs];
}

TriangleCover max_cut_cover(const EdgeList& graph) {
    std::vector<std::vector<Vertex>> adjacency(graph.n);
    for (const EdgeId raw : graph.edges) {
        const EdgeId e = make_edge(raw.u, raw.v, graph.n);
        adjacency[e.u].push_back(e.v);
        adjacency[e.v].push_back(e.u);
    }
    std::vector<char> side(graph.n, 0);
    for (bool improved = true; improved;) {
        improved = false;
        for (Vertex v = 0; v < graph.n; ++v) {
            std::size_t same = 0;
            for (Vertex w : adjacency[v]) same += side[w] == side[v];
            if (2 * same > adjacency[v].size()) {
                side[v] ^= 1;
                improved = true;
            }
        }
    }
    TriangleCover cover{graph.n, {}};
    for (const EdgeId raw : graph.edges) {
        if (side[raw.u] == side[raw.v]) cover.edges.push_back(make_edge(raw.u, raw.v, graph.n));
    }
    std::sort(cover.edges.begin(), cover.edges.end());
    return cover;
}

TriangleCover max_cut_cover(const SmallGraph& g) { return max_cut_cover(g.edge_list()); }

TuzaCheck verify_tuza(const SmallGraph& g, std::uint64_t node_limit) {
    TuzaCheck out;
    if (g.triangles().empty()) {
        out.holds = true;
        return out;
    }
    out.nu = exact_nu(g, node_limit).size;
    out.tau = exact_tau(g, node_limit).size;
    out.holds = out.tau <= 2 * out.nu;
    return out;
}

ExhaustiveSummary verify_all_graphs(Vertex n, unsigned workers) {
    if (n < 1 || n > 8) throw std::invalid_argument("verify_all_graphs supports 1 <= n <= 8");
    std::vector<EdgeId> pairs;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
    }
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    workers = std::max(1u, workers);

    auto run_range = [&](std::uint64_t begin, std::uint64_t end, ExhaustiveSummary& out) {
        std::vector<std::uint64_t> masks(n);
        for (std::uint64_t code = begin; code < end; ++code) {
            std::fill(masks.begin(), masks.end(), 0);
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                if (code >> p & 1) {
                    masks[pairs[p].u] |= std::uint64_t{1} << pairs[p].v;
                    masks[pairs[p].v] |= std::uint64_t{1} << pairs[p].u;
                }
            }
            bool has_triangle = false;
            for (std::size_t p = 0; p < pairs.size() && !has_triangle; ++p) {
                if (code >> p & 1) has_triangle = (masks[pairs[p].u] & masks[pairs[p].v]) != 0;
            }
            ++out.graphs;
            if (!has_triangle) {
                ++out.histogram[{0, 0}];
                continue;
            }
            const SmallGraph g = SmallGraph::from_masks(n, masks);
            const TuzaCheck check = verify_tuza(g);
            ++out.histogram[{check.nu, check.tau}];
            if (check.nu > check.tau || check.tau > 3 * check.nu) ++out.trivial_bound_breaks;
            if (!check.holds) {
                ++out.violations;
                if (out.counterexamples.size() < 100) out.counterexamples.push_back(to_graph6(g.edge_list()));
            }
        }
    };

    std::vector<ExhaustiveSummary> parts(workers);
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min(total, chunk * w);
        const std::uint64_t end = std::min(total, begin + chunk);
        if (workers == 1) {
            run_range(begin, end, parts[w]);
        } else {
            threads.emplace_back(run_range, begin, end, std::ref(parts[w]));
        }
    }
    for (auto& t : threads) t.join();

    ExhaustiveSummary out;
    out.n = n;
    for (const auto& part : parts) {
        out.graphs += part.graphs;
        out.violations += part.violations;
        out.trivial_bound_breaks += part.trivial_bound_breaks;
        for (const auto& [key, count] : part.histogram) out.histogram[key] += count;
        for (const auto& s : part.counterexamples) {
            if (out.counterexamples.size() < 100) out.counterexamples.push_back(s);
        }
    }
    return out;
}

// ------------------------------------------------------------------- graph6

std::string to_graph6(const EdgeList& graph) {
    const Vertex n = graph.n;
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else if (n <= 258047) {
        out.push_back('~');
        for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
    } else {
        throw std::invalid_argument("graph6 encoding supports n <= 258047");
    }
    std::vector<char> bits(pair_count(n) + 5, 0);
    // Bit order: for v = 1..n-1, for u = 0..v-1.
    auto position = [](std::uint64_t u, std::uint64_t v) { return v * (v - 1) / 2 + u; };
    for (const EdgeId raw : graph.edges) {
        const EdgeId e = make_edge(raw.u, raw.v, n);
        bits[position(e.u, e.v)] = 1;
    }
    const std::uint64_t count = pair_count(n);
    for (std::uint64_t i = 0; i < count; i += 6) {
        int value = 0;
        for (int k = 0; k < 6; ++k) value = value << 1 | (i + k < count ? bits[i + k] : 0);
        out.push_back(static_cast<char>(63 + value));
    }
    return out;
}

EdgeList parse_graph6(std::string_view text) {
    if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    auto sextet = [&](std::size_t i) {
        if (i >= text.size()) throw std::invalid_argument("graph6: truncated input");
        const int c = static_cast<unsigned char>(text[i]);
        if (c < 63 || c > 126) throw std::invalid_argument("graph6: byte out of range");
        return c - 63;
    };
    if (text.empty()) throw std::invalid_argument("graph6: empty input");
    std::size_t pos = 0;
    Vertex n = 0;
    if (text[0] != '~') {
        n = static_cast<Vertex>(sextet(0));
        pos = 1;
    } else {
        if (text.size() > 1 && text[1] == '~') throw std::invalid_argument("graph6: n > 258047 not supported");
        n = static_cast<Vertex>(sextet(1) << 12 | sextet(2) << 6 | sextet(3));
        pos = 4;
    }
    const std::uint64_t count = pair_count(n);
    const std::uint64_t expected_bytes = (count + 5) / 6;
    if (text.size() - pos != expected_bytes) {
        throw std::invalid_argument("graph6: expected " + std::to_string(expected_bytes) + " data bytes, got " +
                                    std::to_string(text.size() - pos));
    }
    EdgeList out{n, {}};
    std::uint64_t bit = 0;
    for (Vertex v = 1; v < n; ++v) {
        for (Vertex u = 0; u < v; ++u, ++bit) {
            const int value = sextet(pos + bit / 6);
            if (value >> (5 - bit % 6) & 1) out.edges.push_back({u, v});
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

// ---------------------------------------------------------------- edge list

EdgeList read_edge_list(std::istream& in, Vertex n_hint) {
    std::vector<std::pair<long long, long long>> raw;
    std::string line;
    std::size_t line_no = 0;
    long long largest = -1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        long long u = 0;
        long long v = 0;
        std::string extra;
        if (!(fields >> u >> v) || (fields >> extra)) {
            throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": expected 'u v'");
        }
        if (u < 0 || v < 0 || u >= (1LL << 31) || v >= (1LL << 31)) {
            throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": bad vertex");
        }
        largest = std::max({largest, u, v});
        raw.emplace_back(u, v);
    }
    EdgeList out{std::max<Vertex>(n_hint, static_cast<Vertex>(largest + 1)), {}};
    for (const auto& [u, v] : raw) {
        out.edges.push_back(make_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), out.n));
    }
    std::vector<EdgeId> sorted = out.edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("edge list contains a repeated edge");
    }
    return out;
}

void write_edge_list(std::ostream& out, const EdgeList& graph) {
    for (const EdgeId e : graph.edges) out << e.u << ' ' << e.v << '\n';
}

}  // namespace tuza
