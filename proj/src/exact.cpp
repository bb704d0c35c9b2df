#include <numeric>

#include "mapforge/forests.hpp"

namespace mapforge {

namespace {

// Determinant by fraction-free Gaussian elimination; every division is exact.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    mpz_class previous = 1;
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i][i] == 0) {
            std::size_t r = i + 1;
            while (r < n && m[r][i] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(m[i], m[r]);
            sign = -sign;
        }
        for (std::size_t r = i + 1; r < n; ++r) {
            for (std::size_t c = i + 1; c < n; ++c) {
                m[r][c] = m[r][c] * m[i][i] - m[r][i] * m[i][c];
                mpz_divexact(m[r][c].get_mpz_t(), m[r][c].get_mpz_t(), previous.get_mpz_t());
            }
            m[r][i] = 0;
        }
        previous = m[i][i];
    }
    return sign * m[n - 1][n - 1];
}

// Matrix-tree count on the quotient graph given by a vertex -> class map.
mpz_class quotient_tree_count(const Map &map, const std::vector<std::uint32_t> &cls,
                              std::size_t classes) {
    if (classes <= 1)
        return 1;
    const std::size_t k = classes - 1; // drop the last class
    std::vector<std::vector<mpz_class>> lap(k, std::vector<mpz_class>(k, 0));
    for (Edge e = 0; e < map.num_edges(); ++e) {
        const auto [u0, v0] = map.endpoints(e);
        const std::uint32_t u = cls[u0], v = cls[v0];
        if (u == v)
            continue;
        if (u < k)
            lap[u][u] += 1;
        if (v < k)
            lap[v][v] += 1;
        if (u < k && v < k) {
            lap[u][v] -= 1;
            lap[v][u] -= 1;
        }
    }
    return bareiss_determinant(std::move(lap));
}

std::size_t merge_classes(std::size_t n, std::vector<std::uint32_t> &cls,
                          std::span<const Vertex> group) {
    std::vector<char> in_group(n, 0);
    for (Vertex v : group)
        in_group[v] = 1;
    cls.assign(n, 0);
    std::uint32_t next = 0;
    std::uint32_t group_id = UINT32_MAX;
    for (Vertex v = 0; v < n; ++v) {
        if (in_group[v]) {
            if (group_id == UINT32_MAX)
                group_id = next++;
            cls[v] = group_id;
        } else {
            cls[v] = next++;
        }
    }
    return next;
}

} // namespace

mpz_class spanning_tree_count(const Map &map) {
    std::vector<std::uint32_t> cls(map.num_vertices());
    std::iota(cls.begin(), cls.end(), 0u);
    return quotient_tree_count(map, cls, map.num_vertices());
}

mpz_class wired_spanning_tree_count(const Map &map, std::span<const Vertex> boundary) {
    std::vector<std::uint32_t> cls;
    const std::size_t classes = merge_classes(map.num_vertices(), cls, boundary);
    return quotient_tree_count(map, cls, classes);
}

mpq_class ust_edge_probability_exact(const Map &map, Edge e) {
    if (map.is_loop(e))
        return 0;
    const auto [u, v] = map.endpoints(e);
    const Vertex pair[2] = {u, v};
    std::vector<std::uint32_t> cls;
    const std::size_t classes = merge_classes(map.num_vertices(), cls, pair);
    mpq_class p(quotient_tree_count(map, cls, classes), spanning_tree_count(map));
    p.canonicalize();
    return p;
}

} // namespace mapforge
