#include "mapforge/map_builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace mapforge {

namespace {

double normalize_angle(double a) {
    a = std::fmod(a, 2 * std::numbers::pi);
    if (a < 0)
        a += 2 * std::numbers::pi;
    // fold values that round to 2pi back to 0
    if (a >= 2 * std::numbers::pi - 1e-12)
        a = 0;
    return a;
}

} // namespace

Vertex MapBuilder::add_vertex() {
    darts_at_.emplace_back();
    return static_cast<Vertex>(darts_at_.size() - 1);
}

Edge MapBuilder::add_edge(Vertex u, Vertex v, double angle_u, double angle_v, double tie_u,
                          double tie_v) {
    if (u >= darts_at_.size() || v >= darts_at_.size())
        throw MapError(MapError::Kind::BadArgument, "edge endpoint out of range");
    const auto e = static_cast<Edge>(tails_.size() / 2);
    const Dart du = 2 * e, dv = 2 * e + 1;
    tails_.push_back(u);
    tails_.push_back(v);
    darts_at_[u].push_back({du, normalize_angle(angle_u), tie_u});
    darts_at_[v].push_back({dv, normalize_angle(angle_v), tie_v});
    return e;
}

Edge MapBuilder::add_segment(Vertex u, Vertex v, Point pu, Point pv, double tie) {
    const double a = std::atan2(pv.y - pu.y, pv.x - pu.x);
    return add_edge(u, v, a, a + std::numbers::pi, tie, -tie);
}

void MapBuilder::set_rotation(Vertex v, std::vector<Dart> ccw) {
    if (explicit_.size() < darts_at_.size())
        explicit_.resize(darts_at_.size());
    explicit_[v] = std::move(ccw);
}

Map MapBuilder::build() const {
    const std::size_t n = tails_.size();
    std::vector<Dart> sigma(n, kNoDart);
    for (std::size_t v = 0; v < darts_at_.size(); ++v) {
        std::vector<Dart> order;
        if (v < explicit_.size() && explicit_[v]) {
            order = *explicit_[v];
        } else {
            auto slots = darts_at_[v];
            std::stable_sort(slots.begin(), slots.end(), [](const Slot &a, const Slot &b) {
                if (a.angle != b.angle)
                    return a.angle < b.angle;
                return a.tie < b.tie;
            });
            for (const auto &s : slots)
                order.push_back(s.dart);
        }
        if (order.size() != darts_at_[v].size())
            throw MapError(MapError::Kind::NotPermutation,
                           "explicit rotation at vertex " + std::to_string(v) +
                               " has the wrong number of darts");
        for (std::size_t i = 0; i < order.size(); ++i)
            sigma[order[i]] = order[(i + 1) % order.size()];
    }
    if (n == 0)
        return Map::single_vertex();
    return Map::build(std::move(sigma));
}

std::vector<Vertex> MapBuilder::vertex_map(const Map &built) const {
    std::vector<Vertex> out(darts_at_.size(), static_cast<Vertex>(-1));
    if (built.num_darts() == 0) {
        if (!out.empty())
            out[0] = 0;
        return out;
    }
    for (std::size_t v = 0; v < darts_at_.size(); ++v)
        if (!darts_at_[v].empty())
            out[v] = built.tail(darts_at_[v].front().dart);
    return out;
}

Dart FaceBuild::dart(Vertex u, Vertex v) const {
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
    auto it = std::lower_bound(dart_index.begin(), dart_index.end(),
                               std::make_pair(key, Dart{0}));
    if (it == dart_index.end() || it->first != key)
        return kNoDart;
    return it->second;
}

FaceBuild map_from_faces(std::size_t vertices, std::span<const std::vector<Vertex>> faces) {
    // dart ids: edge k = {2k, 2k+1} numbered in first-appearance order
    std::map<std::pair<Vertex, Vertex>, Dart> darts;
    std::vector<std::pair<Vertex, Vertex>> ends;
    auto dart_of = [&](Vertex u, Vertex v) -> Dart {
        if (auto it = darts.find({u, v}); it != darts.end())
            return it->second;
        const auto d = static_cast<Dart>(ends.size());
        darts[{u, v}] = d;
        darts[{v, u}] = d + 1;
        ends.push_back({u, v});
        ends.push_back({v, u});
        return d;
    };
    FaceBuild out;
    std::vector<char> used;
    std::vector<Dart> sigma;
    for (const auto &cycle : faces) {
        const std::size_t k = cycle.size();
        if (k < 1)
            throw MapError(MapError::Kind::BadArgument, "empty face cycle");
        for (std::size_t i = 0; i < k; ++i) {
            const Vertex a = cycle[i], b = cycle[(i + 1) % k];
            if (a >= vertices || b >= vertices || a == b)
                throw MapError(MapError::Kind::BadArgument,
                               "face cycle uses a loop or an out-of-range vertex");
            dart_of(a, b);
        }
    }
    used.assign(ends.size(), 0);
    sigma.assign(ends.size(), kNoDart);
    for (const auto &cycle : faces) {
        const std::size_t k = cycle.size();
        out.face_first_dart.push_back(darts.at({cycle[0], cycle[1 % k]}));
        for (std::size_t i = 0; i < k; ++i) {
            const Vertex a = cycle[i], b = cycle[(i + 1) % k], c = cycle[(i + 2) % k];
            const Dart ab = darts.at({a, b});
            if (used[ab])
                throw MapError(MapError::Kind::NotPermutation,
                               "dart " + std::to_string(a) + "->" + std::to_string(b) +
                                   " appears in two faces");
            used[ab] = 1;
            // face on the right of a->b->c: sigma(b->c) = b->a
            sigma[darts.at({b, c})] = darts.at({b, a});
        }
    }
    for (std::size_t d = 0; d < used.size(); ++d)
        if (!used[d])
            throw MapError(MapError::Kind::NotPermutation,
                           "dart " + std::to_string(ends[d].first) + "->" +
                               std::to_string(ends[d].second) + " is not on any face");
    out.map = Map::build(std::move(sigma));
    out.vertex_map.assign(vertices, static_cast<Vertex>(-1));
    for (const auto &[key, d] : darts)
        out.vertex_map[key.first] = out.map.tail(d);
    for (const auto &[key, d] : darts)
        out.dart_index.push_back(
            {(static_cast<std::uint64_t>(key.first) << 32) | key.second, d});
    std::sort(out.dart_index.begin(), out.dart_index.end());
    return out;
}

} // namespace mapforge
