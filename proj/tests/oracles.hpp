#pragma once

// Slow, independent reference implementations used only by the tests.

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <vector>

#include "mapforge/map.hpp"

namespace oracle {

using mapforge::Dart;
using mapforge::Edge;
using mapforge::Map;
using mapforge::Vertex;

// orbits of a permutation given as a plain array
inline std::size_t count_cycles(const std::vector<Dart> &perm) {
    std::vector<char> seen(perm.size(), 0);
    std::size_t cycles = 0;
    for (std::size_t d = 0; d < perm.size(); ++d) {
        if (seen[d])
            continue;
        ++cycles;
        for (std::size_t x = d; !seen[x]; x = perm[x])
            seen[x] = 1;
    }
    return cycles;
}

inline int genus_from_arrays(const std::vector<Dart> &sigma, const std::vector<Dart> &alpha) {
    if (sigma.empty())
        return 0;
    std::vector<Dart> inv(sigma.size()), phi(sigma.size());
    for (std::size_t d = 0; d < sigma.size(); ++d)
        inv[sigma[d]] = static_cast<Dart>(d);
    for (std::size_t d = 0; d < sigma.size(); ++d)
        phi[d] = inv[alpha[d]];
    const long v = static_cast<long>(count_cycles(sigma));
    const long e = static_cast<long>(sigma.size() / 2);
    const long f = static_cast<long>(count_cycles(phi));
    return static_cast<int>((2 - (v - e + f)) / 2);
}

struct SimpleDsu {
    std::vector<int> p;
    explicit SimpleDsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        p[a] = b;
        return true;
    }
};

// every spanning tree as a sorted edge list, by exhaustive subset search
inline std::vector<std::vector<Edge>> spanning_trees(const Map &m) {
    const std::size_t n = m.num_vertices(), k = n - 1;
    std::vector<Edge> edges;
    for (Edge e = 0; e < m.num_edges(); ++e)
        if (!m.is_loop(e))
            edges.push_back(e);
    std::vector<std::vector<Edge>> out;
    std::vector<Edge> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (chosen.size() == k) {
            SimpleDsu dsu(n);
            for (Edge e : chosen) {
                const auto [u, v] = m.endpoints(e);
                if (!dsu.unite(static_cast<int>(u), static_cast<int>(v)))
                    return;
            }
            out.push_back(chosen);
            return;
        }
        for (std::size_t i = from; i + (k - chosen.size()) <= edges.size(); ++i) {
            chosen.push_back(edges[i]);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return out;
}

// dense Gaussian elimination with partial pivoting
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c]))
                piv = r;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k)
            s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

// R_eff(s, t) from the dense Laplacian grounded at t
inline double resistance(const Map &m, Vertex s, Vertex t) {
    const std::size_t n = m.num_vertices();
    std::vector<std::vector<double>> lap(n, std::vector<double>(n, 0.0));
    for (Edge e = 0; e < m.num_edges(); ++e) {
        const auto [u, v] = m.endpoints(e);
        if (u == v)
            continue;
        lap[u][u] += 1;
        lap[v][v] += 1;
        lap[u][v] -= 1;
        lap[v][u] -= 1;
    }
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < n; ++v)
        if (v != t)
            keep.push_back(v);
    std::vector<std::vector<double>> a(keep.size(), std::vector<double>(keep.size()));
    std::vector<double> b(keep.size(), 0.0);
    std::size_t s_index = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = 0; j < keep.size(); ++j)
            a[i][j] = lap[keep[i]][keep[j]];
        if (keep[i] == s) {
            b[i] = 1.0;
            s_index = i;
        }
    }
    return dense_solve(a, b)[s_index];
}

// minimum of |boundary W| / |W| over connected W with |W| <= V/2, by brute force
inline double cheeger_connected(const Map &m) {
    const std::size_t n = m.num_vertices();
    double best = 1e300;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size > n / 2)
            continue;
        SimpleDsu dsu(n);
        std::size_t boundary = 0;
        for (Edge e = 0; e < m.num_edges(); ++e) {
            const auto [u, v] = m.endpoints(e);
            const bool iu = mask >> u & 1, iv = mask >> v & 1;
            if (iu != iv)
                ++boundary;
            if (iu && iv)
                dsu.unite(static_cast<int>(u), static_cast<int>(v));
        }
        std::set<int> comps;
        for (Vertex v = 0; v < n; ++v)
            if (mask >> v & 1)
                comps.insert(dsu.find(static_cast<int>(v)));
        if (comps.size() == 1)
            best = std::min(best, static_cast<double>(boundary) / static_cast<double>(size));
    }
    return best;
}

// pairs (i < j) of non-adjacent corners such that one of the two arcs strictly
// between them carries only labels above both endpoint labels
inline std::set<std::pair<std::size_t, std::size_t>> chords_by_definition(
    const std::vector<double> &u, bool cyclic) {
    const std::size_t n = u.size();
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (cyclic && i == 0 && j == n - 1)
                continue;
            const double t = std::max(u[i], u[j]);
            bool inner = true;
            for (std::size_t k = i + 1; k < j; ++k)
                inner = inner && u[k] > t;
            bool outer = cyclic;
            if (cyclic) {
                for (std::size_t k = j + 1; k < n + i; ++k)
                    outer = outer && u[k % n] > t;
            }
            if (inner || outer)
                out.insert({i, j});
        }
    }
    return out;
}

// BFS over (vertex, seam crossings); an open cluster wraps when some vertex is
// reached with two different crossing counts
inline bool wraps(const mapforge::Map &m, std::span<const char> open, std::span<const int> winding) {
    const std::size_t n = m.num_vertices();
    std::vector<long> seen(n, LONG_MIN);
    for (mapforge::Vertex s = 0; s < n; ++s) {
        if (seen[s] != LONG_MIN)
            continue;
        seen[s] = 0;
        std::vector<mapforge::Vertex> queue{s};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const mapforge::Vertex u = queue[i];
            for (mapforge::Dart d : m.darts_at(u)) {
                if (!open[m.edge_of(d)])
                    continue;
                const mapforge::Vertex v = m.head(d);
                const long pos = seen[u] + winding[d];
                if (seen[v] == LONG_MIN) {
                    seen[v] = pos;
                    queue.push_back(v);
                } else if (seen[v] != pos) {
                    return true;
                }
            }
        }
    }
    return false;
}

} // namespace oracle
