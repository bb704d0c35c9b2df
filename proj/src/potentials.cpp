#include "mapforge/potentials.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "mapforge/interchange.hpp"
#include "mapforge/parallel.hpp"

namespace mapforge {

WalkPath srw(const Map &map, Vertex start, std::size_t steps, Stream &rng) {
    WalkPath path;
    path.vertices.reserve(steps + 1);
    path.darts.reserve(steps);
    path.vertices.push_back(start);
    Vertex u = start;
    for (std::size_t t = 0; t < steps; ++t) {
        const auto darts = map.darts_at(u);
        if (darts.empty())
            break;
        const Dart d = darts[rng.below(darts.size())];
        u = map.head(d);
        path.darts.push_back(d);
        path.vertices.push_back(u);
    }
    return path;
}

double stationarity_defect(const Map &map, std::span<const double> pi) {
    std::vector<double> pushed(map.num_vertices(), 0.0);
    for (Vertex u = 0; u < map.num_vertices(); ++u) {
        const auto darts = map.darts_at(u);
        if (darts.empty()) {
            pushed[u] += pi[u];
            continue;
        }
        const double share = pi[u] / static_cast<double>(darts.size());
        for (Dart d : darts)
            pushed[map.head(d)] += share;
    }
    double defect = 0;
    for (Vertex v = 0; v < map.num_vertices(); ++v)
        defect = std::max(defect, std::abs(pushed[v] - pi[v]));
    return defect;
}

double stationarity_check(const Map &map) {
    std::vector<double> pi(map.num_vertices(), 1.0);
    if (map.num_darts() > 0)
        for (Vertex v = 0; v < map.num_vertices(); ++v)
            pi[v] = static_cast<double>(map.degree(v)) / static_cast<double>(map.num_darts());
    return stationarity_defect(map, pi);
}

std::vector<double> harmonic_solve(const Map &map, const BoundaryValues &boundary) {
    const std::size_t n = map.num_vertices();
    if (boundary.size() != n)
        throw PotentialError(PotentialError::Kind::EmptyBoundary,
                             "boundary table must have one slot per vertex");
    std::vector<double> h(n, 0.0);
    std::vector<std::int64_t> index(n, -1);
    std::vector<Vertex> interior;
    std::vector<Vertex> frontier;
    std::vector<char> reached(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (boundary[v]) {
            h[v] = *boundary[v];
            frontier.push_back(v);
            reached[v] = 1;
        } else {
            index[v] = static_cast<std::int64_t>(interior.size());
            interior.push_back(v);
        }
    }
    if (frontier.empty())
        throw PotentialError(PotentialError::Kind::EmptyBoundary, "no boundary values given");
    for (std::size_t i = 0; i < frontier.size(); ++i)
        for (Dart d : map.darts_at(frontier[i]))
            if (!reached[map.head(d)]) {
                reached[map.head(d)] = 1;
                frontier.push_back(map.head(d));
            }
    if (frontier.size() != n)
        throw PotentialError(PotentialError::Kind::Unreachable,
                             "some vertex is not connected to the boundary");
    const std::size_t k = interior.size();
    if (k == 0)
        return h;

    using SpMat = Eigen::SparseMatrix<double>;
    std::vector<Eigen::Triplet<double>> entries;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
        const Vertex v = interior[i];
        double diag = 0;
        for (Dart d : map.darts_at(v)) {
            const Vertex w = map.head(d);
            if (w == v)
                continue;
            diag += 1;
            if (index[w] >= 0)
                entries.emplace_back(static_cast<int>(i), static_cast<int>(index[w]), -1.0);
            else
                rhs[static_cast<Eigen::Index>(i)] += h[w];
        }
        entries.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);
    }
    SpMat a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    a.setFromTriplets(entries.begin(), entries.end());
    Eigen::SimplicialLDLT<SpMat> solver(a);
    if (solver.info() != Eigen::Success)
        throw PotentialError(PotentialError::Kind::SolveFailed, "Laplacian factorization failed");
    Eigen::VectorXd x = solver.solve(rhs);
    const double scale = std::max(1.0, rhs.lpNorm<Eigen::Infinity>());
    for (int round = 0; round < 5; ++round) {
        const Eigen::VectorXd residual = rhs - a * x;
        if (residual.lpNorm<Eigen::Infinity>() <= 1e-14 * scale)
            break;
        x += solver.solve(residual);
    }
    for (std::size_t i = 0; i < k; ++i)
        h[interior[i]] = x[static_cast<Eigen::Index>(i)];
    return h;
}

double dirichlet_energy(const Map &map, std::span<const double> f) {
    double energy = 0;
    for (Edge e = 0; e < map.num_edges(); ++e) {
        const auto [u, v] = map.endpoints(e);
        const double diff = f[u] - f[v];
        energy += diff * diff;
    }
    return energy;
}

Resistance effective_resistance(const Map &map, Vertex source, std::span<const Vertex> sink) {
    if (sink.empty())
        throw PotentialError(PotentialError::Kind::EmptySink, "sink set is empty");
    BoundaryValues bv(map.num_vertices());
    for (Vertex s : sink) {
        if (s == source)
            throw PotentialError(PotentialError::Kind::SourceInSink, "source lies in the sink set");
        bv[s] = 0.0;
    }
    bv[source] = 1.0;
    Resistance out;
    out.potential = harmonic_solve(map, bv);
    out.energy = dirichlet_energy(map, out.potential);
    out.resistance = 1.0 / out.energy;
    return out;
}

double vel_objective(const Map &map, std::span<const double> m, Vertex source,
                     std::span<const Vertex> sink) {
    if (sink.empty())
        throw PotentialError(PotentialError::Kind::EmptySink, "sink set is empty");
    double norm2 = 0;
    for (double x : m)
        norm2 += x * x;
    if (norm2 == 0)
        return 0;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(map.num_vertices(), inf);
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[source] = m[source];
    queue.push({dist[source], source});
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u])
            continue;
        for (Dart e : map.darts_at(u)) {
            const Vertex w = map.head(e);
            if (d + m[w] < dist[w]) {
                dist[w] = d + m[w];
                queue.push({dist[w], w});
            }
        }
    }
    double best = inf;
    for (Vertex s : sink)
        best = std::min(best, dist[s]);
    return best * best / norm2;
}

IntersectionStats intersection_stats(const Map &map, Vertex start1, Vertex start2,
                                     std::size_t steps, std::size_t replicas, std::uint64_t seed,
                                     unsigned threads) {
    IntersectionStats out;
    out.counts.resize(replicas);
    parallel_for(replicas, threads, [&](std::size_t i) {
        Stream first(seed, 2 * i, Purpose::Walk);
        Stream second(seed, 2 * i + 1, Purpose::Walk);
        std::vector<char> seen(map.num_vertices(), 0);
        for (Vertex v : srw(map, start1, steps, first).vertices)
            seen[v] = 1;
        std::size_t common = 0;
        for (Vertex v : srw(map, start2, steps, second).vertices) {
            if (seen[v] == 1) {
                seen[v] = 2;
                ++common;
            }
        }
        out.counts[i] = common;
    });
    double sum = 0;
    for (std::size_t c : out.counts)
        sum += static_cast<double>(c);
    out.mean = replicas ? sum / static_cast<double>(replicas) : 0.0;
    if (replicas > 1) {
        double ss = 0;
        for (std::size_t c : out.counts)
            ss += (static_cast<double>(c) - out.mean) * (static_cast<double>(c) - out.mean);
        out.std_error = std::sqrt(ss / static_cast<double>(replicas - 1) /
                                  static_cast<double>(replicas));
    }
    return out;
}

void write_vertex_function_csv(std::ostream &out, std::span<const double> values) {
    out << "vertex_id,value\n";
    for (std::size_t v = 0; v < values.size(); ++v)
        out << v << ',' << format_double(values[v]) << '\n';
}

} // namespace mapforge
