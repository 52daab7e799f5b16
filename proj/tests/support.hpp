#pragma once

// Brute-force oracles over a dense adjacency matrix. Deliberately naive.

#include <vector>

#include "tuza/graph_core.hpp"
#include "tuza/packing.hpp"

namespace tuza::testing {

struct Dense {
    Vertex n = 0;
    std::vector<std::vector<char>> u;  // unmatched
    std::vector<std::vector<char>> m;  // matched

    explicit Dense(const ProcessState& s) : n(s.n()), u(n, std::vector<char>(n, 0)), m(n, std::vector<char>(n, 0)) {
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b : s.unmatched_neighbors(a)) u[a][b] = 1;
            for (Vertex b : s.matched_neighbors(a)) m[a][b] = 1;
        }
    }

    bool revealed(Vertex a, Vertex b) const { return u[a][b] || m[a][b]; }

    std::size_t codeg(Vertex a, Vertex b) const {
        std::size_t c = 0;
        for (Vertex w = 0; w < n; ++w) c += u[a][w] && u[b][w];
        return c;
    }

    std::size_t codeg_excluding(Vertex a, Vertex b, Vertex skip) const {
        std::size_t c = 0;
        for (Vertex x = 0; x < n; ++x) c += x != skip && u[a][x] && u[b][x];
        return c;
    }

    std::size_t s(Vertex a, Vertex b, std::size_t c) const {
        std::size_t count = 0;
        for (Vertex w = 0; w < n; ++w) {
            if (w != a && u[b][w] && codeg_excluding(w, a, b) == c) ++count;
        }
        return count;
    }

    std::size_t q(Vertex a, Vertex b, std::size_t cb, std::size_t cc) const {
        std::size_t count = 0;
        for (Vertex w = 0; w < n; ++w) {
            if (w != a && w != b && codeg(w, a) == cb && codeg(w, b) == cc) ++count;
        }
        return count;
    }
};

/// Candidate moves of e in a dense copy: the witness list.
inline std::vector<Vertex> witnesses(const Dense& d, Vertex a, Vertex b) {
    std::vector<Vertex> out;
    for (Vertex w = 0; w < d.n; ++w) {
        if (d.u[a][w] && d.u[b][w]) out.push_back(w);
    }
    return out;
}

/// A: unrevealed e that would join U and raise codeg_U(a, b).
inline std::size_t a_by_insertion(const Dense& d, Vertex a, Vertex b) {
    std::size_t count = 0;
    const std::size_t before = d.codeg(a, b);
    for (Vertex x = 0; x < d.n; ++x) {
        for (Vertex y = x + 1; y < d.n; ++y) {
            if (d.revealed(x, y) || !witnesses(d, x, y).empty()) continue;
            Dense copy = d;
            copy.u[x][y] = copy.u[y][x] = 1;
            if (copy.codeg(a, b) == before + 1) ++count;
        }
    }
    return count;
}

/// Expected number of removals of the unmatched edge ab over one uniformly
/// chosen unrevealed edge (times the number of unrevealed edges), keeping
/// edges that close at most c_max + 1 triangles.
inline double k_by_insertion(const Dense& d, Vertex a, Vertex b, std::size_t c_max) {
    double total = 0.0;
    for (Vertex x = 0; x < d.n; ++x) {
        for (Vertex y = x + 1; y < d.n; ++y) {
            if (d.revealed(x, y)) continue;
            const auto w = witnesses(d, x, y);
            if (w.empty() || w.size() - 1 > c_max) continue;
            std::size_t through = 0;
            for (Vertex z : w) {
                // Triangle xyz contains edge ab.
                const bool has_a = a == x || a == y || a == z;
                const bool has_b = b == x || b == y || b == z;
                through += has_a && has_b;
            }
            total += static_cast<double>(through) / static_cast<double>(w.size());
        }
    }
    return total;
}

}  // namespace tuza::testing
