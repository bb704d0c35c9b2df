#include "mapforge/forests.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "mapforge/parallel.hpp"

namespace mapforge {

namespace {

struct Dsu {
    std::vector<std::uint32_t> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

Dart uniform_dart(const Map &map, Vertex v, Stream &rng) {
    const auto darts = map.darts_at(v);
    return darts[rng.below(darts.size())];
}

Forest kruskal(const Map &map, const WeightAssignment &weights, std::span<const Vertex> boundary,
               ForestFlavor flavor) {
    if (weights.labels.size() != map.num_edges())
        throw ForestError(ForestError::Kind::DuplicateWeights, "need one weight per edge");
    check_distinct(weights);
    std::vector<Edge> order(map.num_edges());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](Edge a, Edge b) { return weights.labels[a] < weights.labels[b]; });
    Dsu dsu(map.num_vertices());
    for (std::size_t i = 1; i < boundary.size(); ++i)
        dsu.unite(boundary[0], boundary[i]);
    Forest out;
    out.flavor = flavor;
    out.member.assign(map.num_edges(), 0);
    for (Edge e : order) {
        const auto [u, v] = map.endpoints(e);
        if (dsu.unite(u, v))
            out.member[e] = 1;
    }
    return out;
}

} // namespace

std::string_view flavor_name(ForestFlavor flavor) {
    switch (flavor) {
    case ForestFlavor::UST:
        return "ust";
    case ForestFlavor::WiredUST:
        return "wired-ust";
    case ForestFlavor::MSTFree:
        return "mst-free";
    case ForestFlavor::MSTWired:
        return "mst-wired";
    }
    return "?";
}

std::optional<ForestFlavor> parse_flavor(std::string_view name) {
    for (ForestFlavor f : {ForestFlavor::UST, ForestFlavor::WiredUST, ForestFlavor::MSTFree,
                           ForestFlavor::MSTWired})
        if (flavor_name(f) == name)
            return f;
    return std::nullopt;
}

std::size_t Forest::size() const {
    return static_cast<std::size_t>(std::count(member.begin(), member.end(), 1));
}

std::vector<Edge> Forest::edges() const {
    std::vector<Edge> out;
    for (Edge e = 0; e < member.size(); ++e)
        if (member[e])
            out.push_back(e);
    return out;
}

std::size_t Forest::degree(const Map &map, Vertex v) const {
    std::size_t deg = 0;
    for (Dart d : map.darts_at(v))
        deg += member[map.edge_of(d)] ? 1 : 0;
    return deg;
}

std::string forest_to_json(const Forest &forest) {
    std::ostringstream out;
    out << "{\"flavor\":\"" << flavor_name(forest.flavor) << "\",\"edges\":[";
    bool first = true;
    for (Edge e : forest.edges()) {
        out << (first ? "" : ",") << e;
        first = false;
    }
    out << "]}";
    return out.str();
}

WeightAssignment sample_weights(std::size_t edges, std::uint64_t seed, std::uint64_t replica) {
    WeightAssignment w;
    w.labels.resize(edges);
    std::vector<std::uint32_t> attempt(edges, 0);
    auto draw = [&](std::size_t e) {
        w.labels[e] = keyed_uniform(seed, Purpose::Labels, (replica << 32) | e, attempt[e]);
    };
    for (std::size_t e = 0; e < edges; ++e)
        draw(e);
    std::vector<std::size_t> order(edges);
    for (;;) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return w.labels[a] < w.labels[b] || (w.labels[a] == w.labels[b] && a < b);
        });
        bool clash = false;
        for (std::size_t i = 1; i < edges; ++i) {
            if (w.labels[order[i]] == w.labels[order[i - 1]]) {
                ++attempt[order[i]];
                draw(order[i]);
                clash = true;
            }
        }
        if (!clash)
            return w;
    }
}

void check_distinct(const WeightAssignment &weights) {
    std::vector<double> sorted = weights.labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ForestError(ForestError::Kind::DuplicateWeights, "edge weights must be distinct");
}

WalkPath loop_erase(const WalkPath &walk) {
    WalkPath out;
    if (walk.vertices.empty())
        return out;
    std::unordered_map<Vertex, std::size_t> position;
    out.vertices.push_back(walk.vertices[0]);
    position[walk.vertices[0]] = 0;
    for (std::size_t i = 0; i < walk.darts.size(); ++i) {
        const Vertex w = walk.vertices[i + 1];
        auto it = position.find(w);
        if (it != position.end()) {
            const std::size_t keep = it->second;
            for (std::size_t j = keep + 1; j < out.vertices.size(); ++j)
                position.erase(out.vertices[j]);
            out.vertices.resize(keep + 1);
            out.darts.resize(keep);
        } else {
            position[w] = out.vertices.size();
            out.vertices.push_back(w);
            out.darts.push_back(walk.darts[i]);
        }
    }
    return out;
}

WalkPath lerw(const Map &map, Vertex start, std::span<const Vertex> targets, Stream &rng) {
    if (targets.empty())
        throw ForestError(ForestError::Kind::EmptyTargets, "loop-erased walk needs a target set");
    std::vector<char> target(map.num_vertices(), 0);
    for (Vertex t : targets)
        target[t] = 1;
    std::vector<std::size_t> position(map.num_vertices(), SIZE_MAX);
    WalkPath path;
    path.vertices.push_back(start);
    position[start] = 0;
    Vertex u = start;
    while (!target[u]) {
        const Dart d = uniform_dart(map, u, rng);
        const Vertex w = map.head(d);
        if (position[w] != SIZE_MAX) {
            const std::size_t keep = position[w];
            for (std::size_t j = keep + 1; j < path.vertices.size(); ++j)
                position[path.vertices[j]] = SIZE_MAX;
            path.vertices.resize(keep + 1);
            path.darts.resize(keep);
        } else {
            position[w] = path.vertices.size();
            path.vertices.push_back(w);
            path.darts.push_back(d);
        }
        u = w;
    }
    return path;
}

Forest wilson(const Map &map, std::span<const Vertex> roots, Stream &rng,
              std::span<const Vertex> order) {
    const std::size_t n = map.num_vertices();
    std::vector<char> in_tree(n, 0);
    for (Vertex r : roots)
        in_tree[r] = 1;
    std::vector<Dart> next(n, kNoDart);
    Forest out;
    out.member.assign(map.num_edges(), 0);
    auto grow = [&](Vertex start) {
        // walk with last-exit pointers; following them afterwards is the loop erasure
        Vertex u = start;
        while (!in_tree[u]) {
            next[u] = uniform_dart(map, u, rng);
            u = map.head(next[u]);
        }
        u = start;
        while (!in_tree[u]) {
            in_tree[u] = 1;
            out.member[map.edge_of(next[u])] = 1;
            u = map.head(next[u]);
        }
    };
    if (order.empty()) {
        for (Vertex v = 0; v < n; ++v)
            grow(v);
    } else {
        for (Vertex v : order)
            grow(v);
        for (Vertex v = 0; v < n; ++v)
            grow(v);
    }
    return out;
}

Forest wilson_ust(const Map &map, Stream &rng) {
    const Vertex root = 0;
    Forest f = wilson(map, std::span<const Vertex>(&root, 1), rng);
    f.flavor = ForestFlavor::UST;
    return f;
}

Forest wilson_wired(const Map &map, std::span<const Vertex> boundary, Stream &rng) {
    if (boundary.empty())
        throw ForestError(ForestError::Kind::EmptyTargets, "wired forest needs a boundary set");
    Forest f = wilson(map, boundary, rng);
    f.flavor = ForestFlavor::WiredUST;
    return f;
}

DualWilson wilson_dual_infinity(const Map &map, std::span<const Face> marked_faces, Stream &rng) {
    if (map.genus() != 0)
        throw ForestError(ForestError::Kind::NotPlanar,
                          "rooting at marked faces needs a genus-0 map");
    if (marked_faces.empty())
        throw ForestError(ForestError::Kind::NoMarkedFaces, "no marked faces");
    const Map d = dual(map);
    std::vector<Vertex> roots;
    for (Face f : marked_faces) {
        if (f >= map.num_faces())
            throw ForestError(ForestError::Kind::NoMarkedFaces, "marked face out of range");
        roots.push_back(d.tail(map.face_dart(f)));
    }
    DualWilson out;
    out.dual_forest = wilson(d, roots, rng);
    out.dual_forest.flavor = ForestFlavor::WiredUST;
    out.primal_forest.flavor = ForestFlavor::UST;
    out.primal_forest.member.resize(map.num_edges());
    for (Edge e = 0; e < map.num_edges(); ++e)
        out.primal_forest.member[e] = out.dual_forest.member[e] ? 0 : 1;
    return out;
}

bool is_spanning_tree(const Map &map, const Forest &forest) {
    if (forest.member.size() != map.num_edges())
        return false;
    Dsu dsu(map.num_vertices());
    std::size_t used = 0;
    for (Edge e = 0; e < map.num_edges(); ++e) {
        if (!forest.member[e])
            continue;
        const auto [u, v] = map.endpoints(e);
        if (!dsu.unite(u, v))
            return false;
        ++used;
    }
    return used + 1 == map.num_vertices();
}

bool is_wired_spanning_forest(const Map &map, const Forest &forest,
                              std::span<const Vertex> boundary) {
    if (forest.member.size() != map.num_edges())
        return false;
    Dsu dsu(map.num_vertices());
    std::size_t classes = map.num_vertices();
    for (std::size_t i = 1; i < boundary.size(); ++i)
        if (dsu.unite(boundary[0], boundary[i]))
            --classes;
    std::size_t used = 0;
    for (Edge e = 0; e < map.num_edges(); ++e) {
        if (!forest.member[e])
            continue;
        const auto [u, v] = map.endpoints(e);
        if (!dsu.unite(u, v))
            return false;
        ++used;
    }
    return used + 1 == classes;
}

Forest dual_forest(const Map &map, const Forest &forest) {
    if (map.genus() != 0)
        throw ForestError(ForestError::Kind::NotPlanar, "forest duality needs a genus-0 map");
    if (!is_spanning_tree(map, forest))
        throw ForestError(ForestError::Kind::NotSpanningTree, "input is not a spanning tree");
    Forest out;
    out.flavor = forest.flavor;
    out.member.resize(map.num_edges());
    for (Edge e = 0; e < map.num_edges(); ++e)
        out.member[e] = forest.member[e] ? 0 : 1;
    return out;
}

Forest mst_free(const Map &map, const WeightAssignment &weights) {
    return kruskal(map, weights, {}, ForestFlavor::MSTFree);
}

Forest mst_wired(const Map &map, const WeightAssignment &weights,
                 std::span<const Vertex> boundary) {
    if (boundary.empty())
        throw ForestError(ForestError::Kind::EmptyTargets, "wired forest needs a boundary set");
    return kruskal(map, weights, boundary, ForestFlavor::MSTWired);
}

Forest sample_forest(const Map &map, ForestFlavor flavor, std::uint64_t seed,
                     std::uint64_t replica, std::span<const Vertex> boundary) {
    switch (flavor) {
    case ForestFlavor::UST: {
        Stream rng(seed, replica, Purpose::Wilson);
        return wilson_ust(map, rng);
    }
    case ForestFlavor::WiredUST: {
        Stream rng(seed, replica, Purpose::Wilson);
        return wilson_wired(map, boundary, rng);
    }
    case ForestFlavor::MSTFree:
        return mst_free(map, sample_weights(map.num_edges(), seed, replica));
    case ForestFlavor::MSTWired:
        return mst_wired(map, sample_weights(map.num_edges(), seed, replica), boundary);
    }
    return {};
}

double forest_mean_degree(const Map &map, const Forest &forest, std::span<const Vertex> roots) {
    double total = 0;
    if (roots.empty()) {
        for (Vertex v = 0; v < map.num_vertices(); ++v)
            total += static_cast<double>(forest.degree(map, v));
        return total / static_cast<double>(map.num_vertices());
    }
    for (Vertex v : roots)
        total += static_cast<double>(forest.degree(map, v));
    return total / static_cast<double>(roots.size());
}

DegreeEstimate forest_degree_stats(const Map &map, ForestFlavor flavor, std::size_t replicas,
                                   std::uint64_t seed, std::span<const Vertex> roots,
                                   std::span<const Vertex> boundary, unsigned threads) {
    std::vector<double> values(replicas);
    parallel_for(replicas, threads, [&](std::size_t i) {
        values[i] = forest_mean_degree(map, sample_forest(map, flavor, seed, i, boundary), roots);
    });
    DegreeEstimate out;
    out.replicas = replicas;
    double sum = 0;
    for (double v : values)
        sum += v;
    out.estimate = replicas ? sum / static_cast<double>(replicas) : 0.0;
    if (replicas > 1) {
        double ss = 0;
        for (double v : values)
            ss += (v - out.estimate) * (v - out.estimate);
        out.std_error = std::sqrt(ss / static_cast<double>(replicas - 1) /
                                  static_cast<double>(replicas));
    }
    if ((flavor == ForestFlavor::UST || flavor == ForestFlavor::MSTFree) && roots.empty())
        out.analytic = 2.0 - 2.0 / static_cast<double>(map.num_vertices());
    return out;
}

IdentitySides omega_dagger_identity(const Map &map, std::span<const char> omega) {
    if (map.genus() != 0)
        throw ForestError(ForestError::Kind::NotPlanar, "the omega-dagger identity needs genus 0");
    const double v_count = static_cast<double>(map.num_vertices());
    double open_darts = 0;
    for (Dart d = 0; d < map.num_darts(); ++d)
        open_darts += omega[map.edge_of(d)] ? 1.0 : 0.0;
    const DualRootLaw law = dual_root_law(map);
    double dual_degree = 0;
    for (Face f = 0; f < map.num_faces(); ++f) {
        double closed = 0;
        for (Dart d : map.face_darts(f))
            closed += omega[map.edge_of(d)] ? 0.0 : 1.0;
        dual_degree += law.face_weight[f] * closed;
    }
    IdentitySides out;
    out.lhs = open_darts / v_count;
    out.rhs = static_cast<double>(map.num_darts()) / v_count - law.normalization * dual_degree;
    return out;
}

} // namespace mapforge
