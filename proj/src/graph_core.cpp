#include "tuza/graph_core.hpp"

#include <algorithm>
#include <stdexcept>

namespace tuza {
namespace {

void sorted_insert(std::vector<Vertex>& list, Vertex x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
}

void sorted_erase(std::vector<Vertex>& list, Vertex x) {
    const auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) {
        throw std::logic_error("sorted_erase: vertex not present");
    }
    list.erase(it);
}

bool sorted_contains(const std::vector<Vertex>& list, Vertex x) {
    return std::binary_search(list.begin(), list.end(), x);
}

void check_vertex(const ProcessState& state, Vertex v) {
    if (v >= state.n()) {
        throw std::invalid_argument("vertex " + std::to_string(v) + " out of range for n = " +
                                    std::to_string(state.n()));
    }
}

void check_pair(const ProcessState& state, Vertex u, Vertex v) {
    check_vertex(state, u);
    check_vertex(state, v);
    if (u == v) {
        throw std::invalid_argument("query needs two distinct vertices");
    }
}

template <class Visit>
void for_each_common(std::span<const Vertex> a, std::span<const Vertex> b, Visit visit) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            visit(*i);
            ++i;
            ++j;
        }
    }
}

}  // namespace

ProcessState::ProcessState(Vertex n) : n_(n), unmatched_(n), matched_(n) {}

bool ProcessState::in_unmatched(Vertex u, Vertex v) const {
    return u < n_ && v < n_ && sorted_contains(unmatched_[u], v);
}

bool ProcessState::in_matched(Vertex u, Vertex v) const {
    return u < n_ && v < n_ && sorted_contains(matched_[u], v);
}

EdgeList ProcessState::revealed_edges() const {
    EdgeList out{n_, {}};
    out.edges.reserve(step_);
    for (Vertex u = 0; u < n_; ++u) {
        std::vector<Vertex> nbrs;
        std::merge(unmatched_[u].begin(), unmatched_[u].end(), matched_[u].begin(), matched_[u].end(),
                   std::back_inserter(nbrs));
        for (Vertex v : nbrs) {
            if (u < v) out.edges.push_back({u, v});
        }
    }
    return out;
}

void ProcessState::add_unmatched(EdgeId e) {
    sorted_insert(unmatched_[e.u], e.v);
    sorted_insert(unmatched_[e.v], e.u);
    ++unmatched_edges_;
    ++step_;
}

void ProcessState::match_triangle(EdgeId e, Vertex w) {
    sorted_erase(unmatched_[e.u], w);
    sorted_erase(unmatched_[w], e.u);
    sorted_erase(unmatched_[e.v], w);
    sorted_erase(unmatched_[w], e.v);
    unmatched_edges_ -= 2;
    sorted_insert(matched_[e.u], e.v);
    sorted_insert(matched_[e.v], e.u);
    sorted_insert(matched_[e.u], w);
    sorted_insert(matched_[w], e.u);
    sorted_insert(matched_[e.v], w);
    sorted_insert(matched_[w], e.v);
    triangles_.push_back(make_triangle(e.u, e.v, w));
    ++step_;
}

Codegree codeg_unmatched(const ProcessState& state, Vertex u, Vertex v) {
    check_pair(state, u, v);
    Codegree out;
    for_each_common(state.unmatched_neighbors(u), state.unmatched_neighbors(v),
                    [&](Vertex w) { out.witnesses.push_back(w); });
    out.count = out.witnesses.size();
    return out;
}

std::size_t codeg_unmatched_count(const ProcessState& state, Vertex u, Vertex v) {
    check_pair(state, u, v);
    std::size_t count = 0;
    for_each_common(state.unmatched_neighbors(u), state.unmatched_neighbors(v), [&](Vertex) { ++count; });
    return count;
}

void CodegreeRow::clear() {
    for (Vertex w : touched_) count_[w] = 0;
    touched_.clear();
}

void CodegreeRow::build(std::span<const std::vector<Vertex>> adjacency, Vertex v) {
    clear();
    for (Vertex x : adjacency[v]) {
        for (Vertex w : adjacency[x]) {
            if (count_[w]++ == 0) touched_.push_back(w);
        }
    }
}

void CodegreeRow::build(const ProcessState& state, Vertex v) { build(state.unmatched_adjacency(), v); }

std::vector<std::uint64_t> r_histogram(const ProcessState& state, Vertex v, std::size_t c_max) {
    check_vertex(state, v);
    std::vector<std::uint64_t> hist(c_max + 2, 0);
    CodegreeRow row(state.n());
    row.build(state, v);
    std::uint64_t positive = 0;
    for (Vertex w : row.touched()) {
        if (w == v) continue;
        ++positive;
        hist[std::min<std::size_t>(row[w], c_max + 1)] += 1;
    }
    hist[0] = (state.n() - 1) - positive;
    return hist;
}

std::uint64_t s_count(const ProcessState& state, Vertex u, Vertex v, std::size_t c) {
    check_pair(state, u, v);
    CodegreeRow row(state.n());
    row.build(state, u);
    const std::uint32_t through_v = state.in_unmatched(u, v) ? 1 : 0;
    std::uint64_t count = 0;
    for (Vertex w : state.unmatched_neighbors(v)) {
        if (w == u) continue;
        // w is adjacent to v, so v is a common neighbor of w and u exactly when uv is in U.
        if (row[w] - through_v == c) ++count;
    }
    return count;
}

std::uint64_t q_count(const ProcessState& state, Vertex u, Vertex v, std::size_t b, std::size_t c) {
    check_pair(state, u, v);
    CodegreeRow row_u(state.n());
    CodegreeRow row_v(state.n());
    row_u.build(state, u);
    row_v.build(state, v);
    if (b == 0 && c == 0) {
        // Complement: vertices outside {u, v} touched by either row.
        std::uint64_t nonzero = 0;
        std::vector<char> seen(state.n(), 0);
        auto visit = [&](Vertex w) {
            if (w == u || w == v || seen[w]) return;
            seen[w] = 1;
            if (row_u[w] != 0 || row_v[w] != 0) ++nonzero;
        };
        for (Vertex w : row_u.touched()) visit(w);
        for (Vertex w : row_v.touched()) visit(w);
        return (state.n() - 2) - nonzero;
    }
    // Some index is positive, so w must be touched by that row.
    const CodegreeRow& driver = b > 0 ? row_u : row_v;
    std::uint64_t count = 0;
    for (Vertex w : driver.touched()) {
        if (w == u || w == v) continue;
        if (row_u[w] == b && row_v[w] == c) ++count;
    }
    return count;
}

std::uint64_t a_count(const ProcessState& state, Vertex u, Vertex v) {
    check_pair(state, u, v);
    std::uint64_t count = 0;
    // Candidate vw with w in N_U(u): raises codeg(u, v) iff it lands in U,
    // which happens iff vw is unrevealed and codeg_U(v, w) = 0.
    auto side = [&](Vertex from, Vertex to) {
        for (Vertex w : state.unmatched_neighbors(from)) {
            if (w == to || state.is_revealed(to, w)) continue;
            if (codeg_unmatched_count(state, to, w) == 0) ++count;
        }
    };
    side(u, v);
    side(v, u);
    return count;
}

double k_count(const ProcessState& state, Vertex u, Vertex v, std::size_t c_max) {
    check_pair(state, u, v);
    if (!state.in_unmatched(u, v)) {
        throw std::domain_error("k_count is defined for unmatched edges only");
    }
    double total = 0.0;
    // Revealing xw with w in N_U(y) closes codeg_U(x, w) triangles, one being xyw.
    auto side = [&](Vertex x, Vertex y) {
        for (Vertex w : state.unmatched_neighbors(y)) {
            if (w == x || state.is_revealed(x, w)) continue;
            const std::size_t closed = codeg_unmatched_count(state, x, w);
            if (closed >= 1 && closed - 1 <= c_max) total += 1.0 / static_cast<double>(closed);
        }
    };
    side(u, v);
    side(v, u);
    return total;
}

std::uint64_t count_triangles(std::span<const std::vector<Vertex>> adjacency) {
    std::uint64_t count = 0;
    for (Vertex u = 0; u < adjacency.size(); ++u) {
        for (Vertex v : adjacency[u]) {
            if (v <= u) continue;
            for_each_common(adjacency[u], adjacency[v], [&](Vertex w) {
                if (w > v) ++count;
            });
        }
    }
    return count;
}

std::uint64_t count_unmatched_triangles(const ProcessState& state) {
    return count_triangles(state.unmatched_adjacency());
}

}  // namespace tuza
