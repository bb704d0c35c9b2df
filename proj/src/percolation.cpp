#include "mapforge/percolation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "mapforge/interchange.hpp"
#include "mapforge/parallel.hpp"

namespace mapforge {

namespace {

struct Clusters {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;
    std::vector<std::uint8_t> sides; // bit 0: touches a, bit 1: touches b
    std::vector<int> shift;          // seam crossings from parent[x] to x
    std::size_t count;
    std::uint32_t largest = 1;
    bool crossed = false;

    explicit Clusters(std::size_t n) : parent(n), size(n, 1), sides(n, 0), shift(n, 0), count(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // root of x and the seam crossings from the root to x, compressing the path
    std::pair<std::uint32_t, int> locate(std::uint32_t x) {
        std::uint32_t r = x;
        int total = 0;
        while (parent[r] != r) {
            total += shift[r];
            r = parent[r];
        }
        int remaining = total;
        while (parent[x] != x) {
            const std::uint32_t up = parent[x];
            const int own = shift[x];
            parent[x] = r;
            shift[x] = remaining;
            remaining -= own;
            x = up;
        }
        return {r, total};
    }
    // joins the ends of an edge crossing the seam `w` times; a cycle with
    // nonzero total crossing means the cluster wraps around the torus
    void unite_wound(std::uint32_t a, std::uint32_t b, int w) {
        auto [ra, da] = locate(a);
        auto [rb, db] = locate(b);
        if (ra == rb) {
            crossed = crossed || da + w != db;
            return;
        }
        int link = da + w - db; // crossings from ra to rb
        if (size[ra] < size[rb]) {
            std::swap(ra, rb);
            link = -link;
        }
        parent[rb] = ra;
        shift[rb] = link;
        size[ra] += size[rb];
        largest = std::max(largest, size[ra]);
        --count;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (size[a] < size[b])
            std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        sides[a] |= sides[b];
        crossed = crossed || sides[a] == 3;
        largest = std::max(largest, size[a]);
        --count;
    }
};

} // namespace

PercolationState percolate(const Map &map, const WeightAssignment &labels, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw PercolationError(PercolationError::Kind::BadProbability, "p must lie in [0, 1]");
    PercolationState state;
    state.p = p;
    state.open.assign(map.num_edges(), 0);
    Clusters dsu(map.num_vertices());
    for (Edge e = 0; e < map.num_edges(); ++e) {
        if (labels.labels[e] <= p) {
            state.open[e] = 1;
            const auto [u, v] = map.endpoints(e);
            dsu.unite(u, v);
        }
    }
    state.cluster_of.assign(map.num_vertices(), 0);
    std::vector<std::uint32_t> id_of_root(map.num_vertices(), UINT32_MAX);
    for (Vertex v = 0; v < map.num_vertices(); ++v) {
        const std::uint32_t r = dsu.find(v);
        if (id_of_root[r] == UINT32_MAX) {
            id_of_root[r] = static_cast<std::uint32_t>(state.cluster_size.size());
            state.cluster_size.push_back(0);
        }
        state.cluster_of[v] = id_of_root[r];
        ++state.cluster_size[id_of_root[r]];
    }
    return state;
}

ClusterStats cluster_stats(const PercolationState &state) {
    ClusterStats out;
    out.clusters = state.num_clusters();
    out.sizes = state.cluster_size;
    std::sort(out.sizes.begin(), out.sizes.end(), std::greater<>());
    out.largest = out.sizes.empty() ? 0 : out.sizes.front();
    out.open_edges = static_cast<std::size_t>(std::count(state.open.begin(), state.open.end(), 1));
    return out;
}

std::vector<SweepRow> percolation_sweep(const Map &map, std::span<const double> p_grid,
                                        std::size_t replicas, std::uint64_t seed,
                                        const std::optional<CrossingSides> &sides,
                                        unsigned threads) {
    for (double p : p_grid)
        if (!(p >= 0.0 && p <= 1.0))
            throw PercolationError(PercolationError::Kind::BadProbability,
                                   "p must lie in [0, 1]");
    const std::size_t k = p_grid.size();
    std::vector<std::size_t> grid_order(k);
    std::iota(grid_order.begin(), grid_order.end(), 0);
    std::stable_sort(grid_order.begin(), grid_order.end(),
                     [&](std::size_t a, std::size_t b) { return p_grid[a] < p_grid[b]; });

    struct Sample {
        std::size_t clusters;
        std::size_t largest;
        bool crossed;
    };
    std::vector<std::vector<Sample>> samples(replicas, std::vector<Sample>(k));
    parallel_for(replicas, threads, [&](std::size_t r) {
        const WeightAssignment w = sample_weights(map.num_edges(), seed, r);
        std::vector<Edge> edges(map.num_edges());
        std::iota(edges.begin(), edges.end(), 0u);
        std::sort(edges.begin(), edges.end(),
                  [&](Edge a, Edge b) { return w.labels[a] < w.labels[b]; });
        Clusters dsu(map.num_vertices());
        if (sides) {
            for (Vertex v : sides->a)
                dsu.sides[v] |= 1;
            for (Vertex v : sides->b)
                dsu.sides[v] |= 2;
            for (Vertex v = 0; v < map.num_vertices(); ++v)
                dsu.crossed = dsu.crossed || dsu.sides[v] == 3;
        }
        const bool wound = sides && !sides->winding.empty();
        std::size_t next = 0;
        for (std::size_t gi : grid_order) {
            const double p = p_grid[gi];
            while (next < edges.size() && w.labels[edges[next]] <= p) {
                const auto [u, v] = map.endpoints(edges[next]);
                if (wound)
                    dsu.unite_wound(u, v, sides->winding[map.edge_darts(edges[next]).first]);
                else
                    dsu.unite(u, v);
                ++next;
            }
            samples[r][gi] = {dsu.count, dsu.largest, dsu.crossed};
        }
    });

    std::vector<SweepRow> rows(k);
    const double n = static_cast<double>(map.num_vertices());
    for (std::size_t gi = 0; gi < k; ++gi) {
        double clusters = 0, largest = 0, crossed = 0;
        for (std::size_t r = 0; r < replicas; ++r) {
            clusters += static_cast<double>(samples[r][gi].clusters);
            largest += static_cast<double>(samples[r][gi].largest);
            crossed += samples[r][gi].crossed ? 1.0 : 0.0;
        }
        const double reps = static_cast<double>(std::max<std::size_t>(replicas, 1));
        rows[gi].p = p_grid[gi];
        rows[gi].mean_clusters = clusters / reps;
        rows[gi].max_cluster_fraction = largest / reps / n;
        rows[gi].crossing_probability =
            sides ? crossed / reps : std::numeric_limits<double>::quiet_NaN();
    }
    return rows;
}

void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows) {
    out << "p,mean_clusters,max_cluster_fraction,crossing_probability\n";
    for (const SweepRow &row : rows)
        out << format_double(row.p) << ',' << format_double(row.mean_clusters) << ','
            << format_double(row.max_cluster_fraction) << ','
            << format_double(row.crossing_probability) << '\n';
}

std::optional<double> estimate_threshold(std::span<const SweepRow> rows) {
    if (rows.size() < 2)
        return std::nullopt;
    std::vector<SweepRow> sorted(rows.begin(), rows.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const SweepRow &a, const SweepRow &b) { return a.p < b.p; });
    if (!std::isnan(sorted.front().crossing_probability)) {
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            const double lo = sorted[i - 1].crossing_probability;
            const double hi = sorted[i].crossing_probability;
            if (lo < 0.5 && hi >= 0.5) {
                const double t = (0.5 - lo) / (hi - lo);
                return sorted[i - 1].p + t * (sorted[i].p - sorted[i - 1].p);
            }
        }
        return std::nullopt;
    }
    double best_slope = -1;
    std::optional<double> best;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double dp = sorted[i].p - sorted[i - 1].p;
        if (dp <= 0)
            continue;
        const double slope =
            (sorted[i].max_cluster_fraction - sorted[i - 1].max_cluster_fraction) / dp;
        if (slope > best_slope) {
            best_slope = slope;
            best = 0.5 * (sorted[i].p + sorted[i - 1].p);
        }
    }
    return best;
}

CheegerReport cheeger_exact(const Map &map) {
    const std::size_t n = map.num_vertices();
    if (n > 24)
        throw PercolationError(PercolationError::Kind::TooLarge,
                               "exact Cheeger enumeration is limited to 24 vertices");
    CheegerReport out;
    if (n < 2)
        return out;
    // neighbour lists without loops, with multiplicity
    std::vector<std::vector<Vertex>> nbrs(n);
    for (Vertex v = 0; v < n; ++v)
        for (Dart d : map.darts_at(v))
            if (map.head(d) != v)
                nbrs[v].push_back(map.head(d));
    const std::size_t half = n / 2;
    std::vector<char> in(n, 0);
    std::size_t size = 0, boundary = 0;
    std::size_t best_boundary = 0, best_size = 0;
    std::uint32_t best_mask = 0, gray = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
        const auto v = static_cast<Vertex>(std::countr_zero(i));
        gray ^= 1u << v;
        const bool adding = !in[v];
        for (Vertex w : nbrs[v]) {
            if (in[w] == adding)
                --boundary;
            else
                ++boundary;
        }
        in[v] = adding ? 1 : 0;
        size = adding ? size + 1 : size - 1;
        if (size >= 1 && size <= half &&
            (best_size == 0 || boundary * best_size < best_boundary * size)) {
            best_boundary = boundary;
            best_size = size;
            best_mask = gray;
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (best_mask & (1u << v))
            out.set.push_back(v);
    out.boundary_edges = best_boundary;
    out.ratio = static_cast<double>(best_boundary) / static_cast<double>(best_size);
    return out;
}

} // namespace mapforge
