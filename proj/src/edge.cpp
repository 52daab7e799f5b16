#include "tuza/edge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tuza {

EdgeId make_edge(Vertex a, Vertex b, Vertex n) {
    if (a == b) {
        throw std::invalid_argument("edge endpoints must differ (got " + std::to_string(a) + ")");
    }
    if (a >= n || b >= n) {
        throw std::invalid_argument("edge endpoint out of range: " + std::to_string(a) + " " +
                                    std::to_string(b) + " with n = " + std::to_string(n));
    }
    return a < b ? EdgeId{a, b} : EdgeId{b, a};
}

Triangle make_triangle(Vertex x, Vertex y, Vertex z) {
    if (x > y) std::swap(x, y);
    if (y > z) std::swap(y, z);
    if (x > y) std::swap(x, y);
    return {x, y, z};
}

EdgeId edge_from_index(Vertex n, std::uint64_t index) {
    if (index >= pair_count(n)) {
        throw std::out_of_range("pair index out of range");
    }
    // Number of pairs with first vertex < u is start(u) = u(2n-u-1)/2; take the
    // largest u with start(u) <= index. Float estimate, then exact correction.
    const double nn = static_cast<double>(n);
    const double disc = (2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(index);
    auto guess = static_cast<std::int64_t>(std::floor(((2 * nn - 1) - std::sqrt(std::max(disc, 0.0))) / 2));
    guess = std::clamp<std::int64_t>(guess, 0, static_cast<std::int64_t>(n) - 2);
    auto start = [n](std::uint64_t u) { return u * (2 * static_cast<std::uint64_t>(n) - u - 1) / 2; };
    auto u = static_cast<std::uint64_t>(guess);
    while (u > 0 && start(u) > index) --u;
    while (u + 1 < n - 1 && start(u + 1) <= index) ++u;
    const std::uint64_t v = u + 1 + (index - start(u));
    return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

EdgeStream::EdgeStream(Vertex n, std::uint64_t seed)
    : n_(n), universe_(pair_count(n)), rng_(seed, Stream::Edges) {}

std::uint64_t EdgeStream::value_at(std::uint64_t position) const {
    const auto it = displaced_.find(position);
    return it == displaced_.end() ? position : it->second;
}

EdgeId EdgeStream::next() {
    if (position_ >= universe_) {
        throw std::out_of_range("edge stream exhausted");
    }
    const std::uint64_t pick = position_ + rng_.below(universe_ - position_);
    const std::uint64_t chosen = value_at(pick);
    if (pick != position_) {
        displaced_[pick] = value_at(position_);
    }
    displaced_.erase(position_);
    ++position_;
    return edge_from_index(n_, chosen);
}

std::vector<EdgeId> random_edge_sequence(Vertex n, std::uint64_t m, std::uint64_t seed) {
    if (m > pair_count(n)) {
        throw std::invalid_argument("m = " + std::to_string(m) + " exceeds n(n-1)/2 = " +
                                    std::to_string(pair_count(n)));
    }
    EdgeStream stream(n, seed);
    std::vector<EdgeId> out;
    out.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) out.push_back(stream.next());
    return out;
}

std::string to_string(const EdgeId& e) { return std::to_string(e.u) + " " + std::to_string(e.v); }

}  // namespace tuza
