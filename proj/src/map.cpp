#include "mapforge/map.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace mapforge {

namespace {

std::string dart_str(std::size_t d) { return std::to_string(d); }

void validate(const std::vector<Dart> &sigma, const std::vector<Dart> &alpha) {
    const std::size_t n = sigma.size();
    if (alpha.size() != n)
        throw MapError(MapError::Kind::SizeMismatch,
                       "sigma and alpha differ in length (" + std::to_string(n) + " vs " +
                           std::to_string(alpha.size()) + ")");
    if (n % 2 != 0)
        throw MapError(MapError::Kind::NotInvolution,
                       "odd dart count " + std::to_string(n) +
                           ": alpha cannot be a fixed-point-free involution");
    for (std::size_t d = 0; d < n; ++d) {
        if (alpha[d] >= n)
            throw MapError(MapError::Kind::NotInvolution,
                           "alpha(" + dart_str(d) + ") out of range");
        if (alpha[d] == d)
            throw MapError(MapError::Kind::NotInvolution,
                           "alpha has fixed point at dart " + dart_str(d));
        if (alpha[alpha[d]] != d)
            throw MapError(MapError::Kind::NotInvolution,
                           "alpha(alpha(" + dart_str(d) + ")) != " + dart_str(d));
    }
    std::vector<char> seen(n, 0);
    for (std::size_t d = 0; d < n; ++d) {
        if (sigma[d] >= n)
            throw MapError(MapError::Kind::NotPermutation,
                           "sigma(" + dart_str(d) + ") out of range");
        if (seen[sigma[d]])
            throw MapError(MapError::Kind::NotPermutation,
                           "sigma is not injective: dart " + dart_str(sigma[d]) +
                               " has two preimages");
        seen[sigma[d]] = 1;
    }
    if (n == 0)
        return;
    // transitivity of <sigma, alpha>
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<Dart> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Dart d = stack.back();
        stack.pop_back();
        for (Dart next : {sigma[d], alpha[d]}) {
            if (!seen[next]) {
                seen[next] = 1;
                ++reached;
                stack.push_back(next);
            }
        }
    }
    if (reached != n)
        throw MapError(MapError::Kind::Disconnected,
                       "sigma and alpha do not act transitively: " + std::to_string(reached) +
                           " of " + std::to_string(n) + " darts reachable from dart 0");
}

} // namespace

Map::Map(std::vector<Dart> sigma, std::vector<Dart> alpha, bool validated)
    : sigma_(std::move(sigma)), alpha_(std::move(alpha)) {
    if (!validated)
        validate(sigma_, alpha_);
    derive();
}

Map Map::build(std::vector<Dart> sigma, std::vector<Dart> alpha) {
    return Map(std::move(sigma), std::move(alpha), false);
}

Map Map::build(std::vector<Dart> sigma) {
    std::vector<Dart> alpha(sigma.size());
    for (std::size_t d = 0; d < alpha.size(); ++d)
        alpha[d] = static_cast<Dart>(d ^ 1u);
    if (sigma.size() % 2 != 0)
        throw MapError(MapError::Kind::NotInvolution, "odd dart count with standard pairing");
    return build(std::move(sigma), std::move(alpha));
}

Map Map::single_vertex() { return Map({}, {}, true); }

void Map::derive() {
    const std::size_t n = sigma_.size();
    sigma_inv_.assign(n, 0);
    for (std::size_t d = 0; d < n; ++d)
        sigma_inv_[sigma_[d]] = static_cast<Dart>(d);

    vertex_of_.assign(n, kNoDart);
    vertex_degree_.clear();
    vertex_rep_.clear();
    vertex_offsets_.assign(1, 0);
    vertex_darts_.clear();
    vertex_darts_.reserve(n);
    for (std::size_t d0 = 0; d0 < n; ++d0) {
        if (vertex_of_[d0] != kNoDart)
            continue;
        const auto v = static_cast<Vertex>(vertex_degree_.size());
        std::uint32_t deg = 0;
        Dart d = static_cast<Dart>(d0);
        do {
            vertex_of_[d] = v;
            vertex_darts_.push_back(d);
            ++deg;
            d = sigma_[d];
        } while (d != d0);
        vertex_degree_.push_back(deg);
        vertex_rep_.push_back(static_cast<Dart>(d0));
        vertex_offsets_.push_back(static_cast<std::uint32_t>(vertex_darts_.size()));
    }
    if (n == 0) {
        vertex_degree_.push_back(0);
        vertex_rep_.push_back(kNoDart);
        vertex_offsets_.push_back(0);
    }

    edge_of_.assign(n, 0);
    edge_rep_.clear();
    for (std::size_t d = 0; d < n; ++d) {
        if (alpha_[d] > d) {
            edge_of_[d] = edge_of_[alpha_[d]] = static_cast<Edge>(edge_rep_.size());
            edge_rep_.push_back(static_cast<Dart>(d));
        }
    }

    faces_ = mapforge::faces(*this);
    const long chi = euler_characteristic();
    if ((2 - chi) % 2 != 0 || chi > 2)
        throw MapError(MapError::Kind::Inconsistent,
                       "Euler characteristic " + std::to_string(chi) + " is not 2 - 2g");
    genus_ = static_cast<int>((2 - chi) / 2);
}

FaceTable faces(const Map &map) {
    FaceTable table;
    const std::size_t n = map.num_darts();
    table.face_of.assign(n, static_cast<Face>(-1));
    table.offsets.assign(1, 0);
    table.darts.reserve(n);
    for (std::size_t d0 = 0; d0 < n; ++d0) {
        if (table.face_of[d0] != static_cast<Face>(-1))
            continue;
        const auto f = static_cast<Face>(table.degree.size());
        std::uint32_t deg = 0;
        Dart d = static_cast<Dart>(d0);
        do {
            table.face_of[d] = f;
            table.darts.push_back(d);
            ++deg;
            d = map.sigma_dagger(d);
        } while (d != d0);
        table.degree.push_back(deg);
        table.representative.push_back(static_cast<Dart>(d0));
        table.offsets.push_back(static_cast<std::uint32_t>(table.darts.size()));
    }
    if (n == 0) {
        table.degree.push_back(0);
        table.representative.push_back(kNoDart);
        table.offsets.push_back(0);
    }
    return table;
}

int genus(const Map &map) { return map.genus(); }

RootedMap::RootedMap(Map m, Dart root) : map(std::move(m)), root_dart(root) {
    if (map.num_darts() == 0 ? root != 0 : root >= map.num_darts())
        throw MapError(MapError::Kind::BadArgument,
                       "root dart " + std::to_string(root) + " out of range");
}

Map dual(const Map &map) {
    const std::size_t n = map.num_darts();
    if (n == 0)
        return Map::single_vertex();
    std::vector<Dart> sigma(n);
    for (std::size_t d = 0; d < n; ++d)
        sigma[d] = map.sigma_dagger(static_cast<Dart>(d));
    const auto alpha = map.alpha_array();
    return Map::build(std::move(sigma), std::vector<Dart>(alpha.begin(), alpha.end()));
}

std::vector<int> bfs_distances(const Map &map, Vertex source, int max_radius) {
    std::vector<int> dist(map.num_vertices(), -1);
    std::deque<Vertex> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        if (max_radius >= 0 && dist[v] >= max_radius)
            continue;
        for (Dart d : map.darts_at(v)) {
            const Vertex u = map.head(d);
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    return dist;
}

namespace {

// Restricts the rotation to the kept darts (given in increasing order).
std::pair<std::vector<Dart>, std::vector<Dart>>
restrict_rotation(const Map &map, const std::vector<Dart> &kept,
                  const std::unordered_map<Dart, Dart> &new_id) {
    std::vector<Dart> sigma(kept.size()), alpha(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        Dart next = map.sigma(kept[i]);
        while (!new_id.contains(next))
            next = map.sigma(next);
        sigma[i] = new_id.at(next);
        alpha[i] = new_id.at(map.alpha(kept[i]));
    }
    return {std::move(sigma), std::move(alpha)};
}

std::vector<Vertex> vertex_origin_of(const Map &sub, const std::vector<Dart> &dart_origin,
                                     const Map &parent) {
    std::vector<Vertex> origin(sub.num_vertices());
    for (Vertex v = 0; v < sub.num_vertices(); ++v)
        origin[v] = parent.tail(dart_origin[sub.vertex_dart(v)]);
    return origin;
}

} // namespace

Submap submap_delete_edges(const Map &map, std::span<const Edge> remove) {
    std::vector<char> removed(map.num_edges(), 0);
    for (Edge e : remove) {
        if (e >= map.num_edges())
            throw MapError(MapError::Kind::BadArgument, "edge " + std::to_string(e) + " out of range");
        removed[e] = 1;
    }
    std::vector<Dart> kept;
    std::unordered_map<Dart, Dart> new_id;
    std::vector<char> vertex_alive(map.num_vertices(), 0);
    for (Dart d = 0; d < map.num_darts(); ++d) {
        if (!removed[map.edge_of(d)]) {
            new_id.emplace(d, static_cast<Dart>(kept.size()));
            kept.push_back(d);
            vertex_alive[map.tail(d)] = 1;
        }
    }
    Submap out;
    out.genus_before = map.genus();
    if (kept.empty()) {
        if (map.num_vertices() > 1)
            throw MapError(MapError::Kind::WouldDisconnect,
                           "deleting every edge leaves " + std::to_string(map.num_vertices()) +
                               " isolated vertices");
        out.map = Map::single_vertex();
        out.vertex_origin = {0};
        out.genus_after = 0;
        return out;
    }
    for (Vertex v = 0; v < map.num_vertices(); ++v)
        if (!vertex_alive[v])
            throw MapError(MapError::Kind::WouldDisconnect,
                           "vertex " + std::to_string(v) + " would become isolated");
    auto [sigma, alpha] = restrict_rotation(map, kept, new_id);
    try {
        out.map = Map::build(std::move(sigma), std::move(alpha));
    } catch (const MapError &err) {
        if (err.kind() == MapError::Kind::Disconnected)
            throw MapError(MapError::Kind::WouldDisconnect,
                           std::string("edge deletion disconnects the map: ") + err.what());
        throw;
    }
    out.dart_origin = std::move(kept);
    out.vertex_origin = vertex_origin_of(out.map, out.dart_origin, map);
    out.genus_after = out.map.genus();
    return out;
}

Ball ball(const RootedMap &rooted, int r) {
    if (r < 0)
        throw MapError(MapError::Kind::BadArgument, "negative radius");
    const Map &map = rooted.map;
    Ball out;
    if (map.num_darts() == 0) {
        out.rooted = RootedMap(Map::single_vertex(), 0);
        out.vertex_origin = {0};
        return out;
    }
    const Vertex root = rooted.root_vertex();
    // local BFS; touches only the ball
    std::unordered_map<Vertex, int> dist{{root, 0}};
    std::vector<Vertex> order{root};
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Vertex v = order[i];
        const int dv = dist[v];
        if (dv >= r)
            continue;
        for (Dart d : map.darts_at(v)) {
            const Vertex u = map.head(d);
            if (dist.emplace(u, dv + 1).second)
                order.push_back(u);
        }
    }
    std::vector<Dart> kept;
    for (Vertex v : order)
        for (Dart d : map.darts_at(v))
            if (dist.contains(map.head(d)))
                kept.push_back(d);
    std::sort(kept.begin(), kept.end());
    if (kept.empty()) {
        out.rooted = RootedMap(Map::single_vertex(), 0);
        out.vertex_origin = {root};
        return out;
    }
    std::unordered_map<Dart, Dart> new_id;
    new_id.reserve(kept.size() * 2);
    for (std::size_t i = 0; i < kept.size(); ++i)
        new_id.emplace(kept[i], static_cast<Dart>(i));
    auto [sigma, alpha] = restrict_rotation(map, kept, new_id);
    Map sub = Map::build(std::move(sigma), std::move(alpha));
    Dart new_root;
    if (auto it = new_id.find(rooted.root_dart); it != new_id.end()) {
        new_root = it->second;
        out.root_dart_retained = true;
    } else {
        new_root = kNoDart;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (map.tail(kept[i]) == root) {
                new_root = static_cast<Dart>(i);
                break;
            }
        }
        if (new_root == kNoDart) {
            out.rooted = RootedMap(Map::single_vertex(), 0);
            out.vertex_origin = {root};
            return out;
        }
    }
    out.vertex_origin = vertex_origin_of(sub, kept, map);
    out.dart_origin = std::move(kept);
    out.rooted = RootedMap(std::move(sub), new_root);
    return out;
}

Map relabel(const Map &map, std::span<const Dart> perm) {
    const std::size_t n = map.num_darts();
    if (perm.size() != n)
        throw MapError(MapError::Kind::SizeMismatch, "relabel permutation has wrong length");
    std::vector<Dart> sigma(n), alpha(n);
    for (std::size_t d = 0; d < n; ++d) {
        sigma[perm[d]] = perm[map.sigma(static_cast<Dart>(d))];
        alpha[perm[d]] = perm[map.alpha(static_cast<Dart>(d))];
    }
    if (n == 0)
        return Map::single_vertex();
    return Map::build(std::move(sigma), std::move(alpha));
}

} // namespace mapforge
