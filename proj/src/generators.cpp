#include "mapforge/generators.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include "toml.hpp"

#include "mapforge/map_builder.hpp"
#include "mapforge/rng.hpp"

namespace mapforge {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void bad(const std::string &what) {
    throw GeneratorError(GeneratorError::Kind::BadParameters, what);
}

void require(bool ok, const std::string &what) {
    if (!ok)
        bad(what);
}

std::vector<Vertex> translate(const std::vector<Vertex> &ids, std::span<const Vertex> builder_ids) {
    std::vector<Vertex> out;
    out.reserve(builder_ids.size());
    for (Vertex v : builder_ids)
        out.push_back(ids[v]);
    return out;
}

// Fills outer_faces and boundary from one dart drawn with the outer region on its
// right. With counterclockwise sigma, face_of(d) is the region drawn on the left of d.
void set_outer_face(Generated &g, Dart outer_dart) {
    const Face f = g.map.face_of(g.map.alpha(outer_dart));
    g.outer_faces = {f};
    std::vector<Vertex> on_face;
    for (Dart d : g.map.face_darts(f))
        on_face.push_back(g.map.tail(d));
    std::sort(on_face.begin(), on_face.end());
    on_face.erase(std::unique(on_face.begin(), on_face.end()), on_face.end());
    g.boundary = std::move(on_face);
}

void set_layers_by_distance(Generated &g) {
    const auto dist = bfs_distances(g.map, g.center);
    g.layer.assign(dist.begin(), dist.end());
}

// Builder vertex -> map vertex; a map without darts is the single vertex 0.
std::vector<Vertex> ids_of(const MapBuilder &b, const Map &m) {
    if (m.num_darts() == 0)
        return std::vector<Vertex>(b.num_vertices(), 0);
    return b.vertex_map(m);
}

Generated finish(MapBuilder &b, std::string name, int genus, Vertex builder_center) {
    Generated g;
    g.map = b.build();
    g.name = std::move(name);
    g.declared_genus = genus;
    g.center = ids_of(b, g.map)[builder_center];
    if (g.map.num_darts() > 0)
        g.root = g.map.vertex_dart(g.center);
    return g;
}

// Parallel copies of one segment, ordered so consecutive copies bound digons.
void add_bundle(MapBuilder &b, Vertex u, Vertex v, Point pu, Point pv, int copies) {
    for (int t = 0; t < copies; ++t)
        b.add_segment(u, v, pu, pv, t - (copies - 1) / 2.0);
}

int parse_int(std::string_view s) {
    int value = 0;
    const auto *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end)
        bad("expected an integer, got '" + std::string(s) + "'");
    return value;
}

double parse_real(std::string_view s) {
    try {
        std::size_t used = 0;
        const double value = std::stod(std::string(s), &used);
        if (used != s.size())
            bad("expected a number, got '" + std::string(s) + "'");
        return value;
    } catch (const std::logic_error &) {
        bad("expected a number, got '" + std::string(s) + "'");
    }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

std::string canonical_family(std::string_view f) {
    if (f == "torus")
        return "torus_grid";
    if (f == "disc" || f == "grid")
        return "disc_grid";
    if (f == "canopy")
        return "canopy_pair";
    if (f == "thick")
        return "thick_canopy";
    if (f == "random")
        return "random_rotation";
    if (f == "pq")
        return "pq_ball";
    return std::string(f);
}

} // namespace

Generated torus_grid(int width, int height) {
    require(width >= 1 && height >= 1, "torus_grid needs positive dimensions");
    MapBuilder b(static_cast<std::size_t>(width) * height);
    auto id = [&](int i, int j) { return static_cast<Vertex>(j * width + i); };
    std::vector<Edge> seam;
    for (int j = 0; j < height; ++j) {
        for (int i = 0; i < width; ++i) {
            const Edge e = b.add_edge(id(i, j), id((i + 1) % width, j), 0, kPi);
            if (i + 1 == width)
                seam.push_back(e);
            b.add_edge(id(i, j), id(i, (j + 1) % height), kPi / 2, 3 * kPi / 2);
        }
    }
    Generated g = finish(b, "torus_grid:" + std::to_string(width) + "x" + std::to_string(height), 1,
                         id(width / 2, height / 2));
    g.winding.assign(g.map.num_darts(), 0);
    for (Edge e : seam) {
        g.winding[2 * e] = 1;
        g.winding[2 * e + 1] = -1;
    }
    set_layers_by_distance(g);
    return g;
}

Generated disc_grid(int width, int height) {
    require(width >= 1 && height >= 1, "disc_grid needs positive dimensions");
    MapBuilder b(static_cast<std::size_t>(width) * height);
    auto id = [&](int i, int j) { return static_cast<Vertex>(j * width + i); };
    auto pt = [](int i, int j) { return Point{static_cast<double>(i), static_cast<double>(j)}; };
    for (int j = 0; j < height; ++j) {
        for (int i = 0; i < width; ++i) {
            if (i + 1 < width)
                b.add_segment(id(i, j), id(i + 1, j), pt(i, j), pt(i + 1, j));
            if (j + 1 < height)
                b.add_segment(id(i, j), id(i, j + 1), pt(i, j), pt(i, j + 1));
        }
    }
    Generated g = finish(b, "disc_grid:" + std::to_string(width) + "x" + std::to_string(height), 0,
                         id(width / 2, height / 2));
    const auto ids = ids_of(b, g.map);
    for (int j = 0; j < height; ++j) {
        g.side_a.push_back(ids[id(0, j)]);
        g.side_b.push_back(ids[id(width - 1, j)]);
    }
    // edge 0 leaves (0,0) eastward (or northward when width is 1); outside is on its right
    if (g.map.num_darts() > 0)
        set_outer_face(g, 0);
    else
        g.outer_faces = {0}, g.boundary = {0};
    set_layers_by_distance(g);
    return g;
}

Generated diamond(int radius) {
    require(radius >= 0, "diamond radius must be non-negative");
    std::vector<std::pair<int, int>> points;
    for (int y = -radius; y <= radius; ++y)
        for (int x = -radius; x <= radius; ++x)
            if (std::abs(x) + std::abs(y) <= radius)
                points.push_back({x, y});
    auto index = [&](int x, int y) -> std::optional<Vertex> {
        if (std::abs(x) + std::abs(y) > radius)
            return std::nullopt;
        const auto it = std::lower_bound(points.begin(), points.end(), std::make_pair(x, y),
                                         [](auto a, auto b) {
                                             return std::tie(a.second, a.first) <
                                                    std::tie(b.second, b.first);
                                         });
        return static_cast<Vertex>(it - points.begin());
    };
    MapBuilder b(points.size());
    std::optional<Dart> outer;
    for (const auto &[x, y] : points) {
        const Vertex v = *index(x, y);
        const Point pv{static_cast<double>(x), static_cast<double>(y)};
        if (auto r = index(x + 1, y)) {
            const Edge e = b.add_segment(v, *r, pv, Point{x + 1.0, static_cast<double>(y)});
            if (x == -radius && y == 0)
                outer = 2 * e;
        }
        if (auto u = index(x, y + 1))
            b.add_segment(v, *u, pv, Point{static_cast<double>(x), y + 1.0});
    }
    Generated g = finish(b, "diamond:" + std::to_string(radius), 0, *index(0, 0));
    if (outer)
        set_outer_face(g, *outer);
    else
        g.outer_faces = {0}, g.boundary = {0};
    set_layers_by_distance(g);
    return g;
}

Generated cycle(int n) {
    require(n >= 1, "cycle needs at least one vertex");
    MapBuilder b(n);
    for (int i = 0; i < n; ++i) {
        const double theta = 2 * kPi * i / n;
        const double next = 2 * kPi * ((i + 1) % n) / n;
        // leave along the counterclockwise tangent, arrive along the clockwise one
        b.add_edge(i, (i + 1) % n, theta + kPi / 2, next - kPi / 2);
    }
    Generated g = finish(b, "cycle:" + std::to_string(n), 0, 0);
    set_outer_face(g, 0);
    set_layers_by_distance(g);
    return g;
}

Generated path(int n) {
    require(n >= 1, "path needs at least one vertex");
    MapBuilder b(n);
    for (int i = 0; i + 1 < n; ++i)
        b.add_edge(i, i + 1, 0, kPi);
    Generated g = finish(b, "path:" + std::to_string(n), 0, n / 2);
    set_layers_by_distance(g);
    return g;
}

Generated star(int leaves) {
    require(leaves >= 0, "star needs a non-negative number of leaves");
    MapBuilder b(leaves + 1);
    for (int i = 0; i < leaves; ++i)
        b.add_edge(0, i + 1, 2 * kPi * i / leaves, 0);
    Generated g = finish(b, "star:" + std::to_string(leaves), 0, 0);
    set_layers_by_distance(g);
    return g;
}

Generated polygon(int n) {
    require(n >= 3, "polygon needs at least three sides");
    MapBuilder b(n);
    std::vector<Point> pts(n);
    for (int i = 0; i < n; ++i)
        pts[i] = {std::cos(2 * kPi * i / n), std::sin(2 * kPi * i / n)};
    for (int i = 0; i < n; ++i)
        b.add_segment(i, (i + 1) % n, pts[i], pts[(i + 1) % n]);
    for (int i = 2; i + 1 < n; ++i)
        b.add_segment(0, i, pts[0], pts[i]);
    Generated g = finish(b, "polygon:" + std::to_string(n), 0, 0);
    set_outer_face(g, 0);
    set_layers_by_distance(g);
    return g;
}

Generated platonic(std::string_view solid) {
    using P3 = std::array<double, 3>;
    const double phi = (1 + std::sqrt(5.0)) / 2;
    std::vector<P3> pts;
    if (solid == "tetrahedron") {
        pts = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    } else if (solid == "cube") {
        for (int s = 0; s < 8; ++s)
            pts.push_back({s & 1 ? 1.0 : -1.0, s & 2 ? 1.0 : -1.0, s & 4 ? 1.0 : -1.0});
    } else if (solid == "octahedron") {
        pts = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    } else if (solid == "icosahedron") {
        for (double a : {-1.0, 1.0})
            for (double c : {-phi, phi}) {
                pts.push_back({0, a, c});
                pts.push_back({a, c, 0});
                pts.push_back({c, 0, a});
            }
    } else if (solid == "dodecahedron") {
        for (int s = 0; s < 8; ++s)
            pts.push_back({s & 1 ? 1.0 : -1.0, s & 2 ? 1.0 : -1.0, s & 4 ? 1.0 : -1.0});
        for (double a : {-1 / phi, 1 / phi})
            for (double c : {-phi, phi}) {
                pts.push_back({0, a, c});
                pts.push_back({a, c, 0});
                pts.push_back({c, 0, a});
            }
    } else {
        bad("unknown platonic solid '" + std::string(solid) + "'");
    }
    auto dist2 = [](const P3 &a, const P3 &b) {
        double s = 0;
        for (int k = 0; k < 3; ++k)
            s += (a[k] - b[k]) * (a[k] - b[k]);
        return s;
    };
    double edge2 = 1e300;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            edge2 = std::min(edge2, dist2(pts[i], pts[j]));
    // angle of w around the outward normal at v, seen from outside
    auto angle_at = [&](const P3 &v, const P3 &w) {
        const double norm = std::sqrt(dist2(v, {0, 0, 0}));
        const P3 n{v[0] / norm, v[1] / norm, v[2] / norm};
        P3 t = std::abs(n[0]) < 0.9 ? P3{1, 0, 0} : P3{0, 1, 0};
        const double dot = t[0] * n[0] + t[1] * n[1] + t[2] * n[2];
        P3 e1{t[0] - dot * n[0], t[1] - dot * n[1], t[2] - dot * n[2]};
        const double l1 = std::sqrt(dist2(e1, {0, 0, 0}));
        for (double &x : e1)
            x /= l1;
        const P3 e2{n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2],
                    n[0] * e1[1] - n[1] * e1[0]};
        const P3 d{w[0] - v[0], w[1] - v[1], w[2] - v[2]};
        return std::atan2(d[0] * e2[0] + d[1] * e2[1] + d[2] * e2[2],
                          d[0] * e1[0] + d[1] * e1[1] + d[2] * e1[2]);
    };
    MapBuilder b(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (std::abs(dist2(pts[i], pts[j]) - edge2) < 1e-9)
                b.add_edge(i, j, angle_at(pts[i], pts[j]), angle_at(pts[j], pts[i]));
    Generated g = finish(b, "platonic:" + std::string(solid), 0, 0);
    set_layers_by_distance(g);
    return g;
}

Generated pq_ball(int p, int q, int radius) {
    require(p >= 3 && q >= 3, "pq_ball needs p, q >= 3");
    require(2 * (p + q) < p * q, "pq_ball needs 1/p + 1/q < 1/2");
    require(radius >= 0, "pq_ball radius must be non-negative");
    if (radius == 0) {
        Generated g;
        g.name = "pq_ball:" + std::to_string(p) + "," + std::to_string(q) + ",0";
        g.layer = {0};
        g.boundary = {0};
        g.outer_faces = {0};
        return g;
    }
    std::vector<std::vector<Vertex>> faces;
    std::vector<int> layer{0};
    Vertex next_vertex = 1;
    auto fresh = [&](int l) {
        layer.push_back(l);
        return next_vertex++;
    };

    // first layer: q faces around the centre, spokes in counterclockwise order
    std::vector<Vertex> boundary;
    std::vector<int> face_count;
    {
        std::vector<Vertex> ends(q);
        for (int j = 0; j < q; ++j)
            ends[j] = fresh(1);
        for (int j = 0; j < q; ++j) {
            std::vector<Vertex> mids;
            for (int t = 0; t < p - 3; ++t)
                mids.push_back(fresh(1));
            std::vector<Vertex> face{0, ends[(j + 1) % q]};
            face.insert(face.end(), mids.rbegin(), mids.rend());
            face.push_back(ends[j]);
            faces.push_back(std::move(face));
            boundary.push_back(ends[j]);
            face_count.push_back(2);
            for (Vertex w : mids) {
                boundary.push_back(w);
                face_count.push_back(1);
            }
        }
    }

    for (int l = 2; l <= radius; ++l) {
        const std::size_t len = boundary.size();
        struct Spoke {
            std::size_t at;    // boundary index of the tail
            std::size_t local; // index among the spokes of that vertex
        };
        std::vector<Spoke> spokes;
        for (std::size_t i = 0; i < len; ++i) {
            const int extra = q - face_count[i] - 1;
            if (extra < 0)
                bad("pq_ball: boundary vertex already has more than q faces");
            for (int t = 0; t < extra; ++t)
                spokes.push_back({i, static_cast<std::size_t>(t)});
        }
        const std::size_t k = spokes.size();
        if (k == 0)
            bad("pq_ball: no room to grow another layer");
        // face j lies between spoke j and spoke j+1
        std::vector<int> gap(k);
        std::vector<std::size_t> run(k);
        for (std::size_t j = 0; j < k; ++j) {
            const Spoke &a = spokes[j];
            const Spoke &c = spokes[(j + 1) % k];
            std::size_t edges;
            if (a.at == c.at)
                edges = c.local > a.local ? 0 : len;
            else
                edges = (c.at + len - a.at) % len;
            run[j] = edges;
            gap[j] = p - static_cast<int>(edges) - 3;
            if (gap[j] < -1)
                bad("pq_ball: layer cannot be closed with " + std::to_string(p) + "-gons");
        }
        std::size_t start = k;
        for (std::size_t j = 0; j < k; ++j)
            if (gap[(j + k - 1) % k] != -1) {
                start = j;
                break;
            }
        if (start == k)
            bad("pq_ball: every spoke merges");
        std::vector<Vertex> end(k);
        std::vector<std::size_t> chain(k, 0); // spokes sharing the endpoint
        for (std::size_t s = 0; s < k; ++s) {
            const std::size_t j = (start + s) % k;
            if (s == 0 || gap[(j + k - 1) % k] != -1)
                end[j] = fresh(l);
            else
                end[j] = end[(j + k - 1) % k];
        }
        for (std::size_t j = 0; j < k; ++j)
            ++chain[end[j] - end[start]];
        std::vector<Vertex> new_boundary;
        std::vector<int> new_count;
        for (std::size_t s = 0; s < k; ++s) {
            const std::size_t j = (start + s) % k;
            if (s == 0 || gap[(j + k - 1) % k] != -1) {
                new_boundary.push_back(end[j]);
                new_count.push_back(static_cast<int>(chain[end[j] - end[start]]) + 1);
            }
            std::vector<Vertex> mids;
            for (int t = 0; t < gap[j]; ++t)
                mids.push_back(fresh(l));
            std::vector<Vertex> face;
            for (std::size_t e = 0; e <= run[j]; ++e)
                face.push_back(boundary[(spokes[j].at + e) % len]);
            face.push_back(end[(j + 1) % k]);
            face.insert(face.end(), mids.rbegin(), mids.rend());
            if (end[j] != end[(j + 1) % k])
                face.push_back(end[j]);
            faces.push_back(std::move(face));
            for (Vertex w : mids) {
                new_boundary.push_back(w);
                new_count.push_back(1);
            }
        }
        boundary = std::move(new_boundary);
        face_count = std::move(new_count);
    }

    // the outer face runs along the boundary in its counterclockwise order
    faces.push_back(boundary);
    const FaceBuild built = map_from_faces(next_vertex, faces);
    Generated g;
    g.map = built.map;
    g.name = "pq_ball:" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(radius);
    g.declared_genus = 0;
    g.center = built.vertex_map[0];
    g.root = g.map.vertex_dart(g.center);
    g.outer_faces = {g.map.face_of(built.face_first_dart.back())};
    g.boundary = translate(built.vertex_map, boundary);
    std::sort(g.boundary.begin(), g.boundary.end());
    g.layer.assign(g.map.num_vertices(), 0);
    for (Vertex v = 0; v < next_vertex; ++v)
        g.layer[built.vertex_map[v]] = layer[v];
    return g;
}

Generated gw_tree(std::string_view law, double mean, int max_depth, int max_size,
                  bool size_biased, std::uint64_t seed) {
    require(mean >= 0, "offspring mean must be non-negative");
    require(max_depth >= 0 && max_size >= 1, "gw_tree needs a depth and size budget");
    Stream rng(seed, 0, Purpose::Generator);
    auto poisson = [&](double lambda) {
        // multiplication method; fine for the small means used here
        const double limit = std::exp(-lambda);
        int k = 0;
        double prod = rng.uniform();
        while (prod > limit) {
            ++k;
            prod *= rng.uniform();
        }
        return k;
    };
    const double a = mean / (1 + mean);
    auto geometric = [&]() {
        if (a <= 0)
            return 0;
        const double u = 1.0 - rng.uniform(); // (0, 1]
        return static_cast<int>(std::floor(std::log(u) / std::log(a)));
    };
    std::function<int(bool)> offspring;
    if (law == "poisson") {
        offspring = [&](bool biased) { return poisson(mean) + (biased ? 1 : 0); };
    } else if (law == "geometric") {
        offspring = [&](bool biased) { return biased ? 1 + geometric() + geometric() : geometric(); };
    } else if (law == "binary") {
        require(mean <= 2, "binary offspring law needs mean <= 2");
        offspring = [&](bool biased) { return biased || rng.uniform() < mean / 2 ? 2 : 0; };
    } else {
        bad("unknown offspring law '" + std::string(law) + "'");
    }

    std::vector<int> depth{0};
    std::vector<std::int64_t> truncated{0};
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<int> child_count{0};
    std::vector<int> child_index{0};
    for (std::size_t i = 0; i < depth.size(); ++i) {
        if (depth[i] >= max_depth) {
            truncated[i] = 1;
            continue;
        }
        const int k = offspring(i == 0 && size_biased);
        if (static_cast<int>(depth.size()) + k > max_size) {
            truncated[i] = 1;
            continue;
        }
        child_count[i] = k;
        for (int c = 0; c < k; ++c) {
            edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(depth.size())});
            child_index.push_back(c);
            depth.push_back(depth[i] + 1);
            truncated.push_back(0);
            child_count.push_back(0);
        }
    }
    MapBuilder b(depth.size());
    for (const auto &[parent, child] : edges) {
        // parent edge at angle 0, children spread counterclockwise after it
        const double slots = child_count[parent] + 1.0;
        b.add_edge(parent, child, 2 * kPi * (child_index[child] + 1) / slots, 0);
    }
    Generated g = finish(b, "gw_tree:" + std::string(law), 0, 0);
    const auto ids = ids_of(b, g.map);
    g.marks.assign(g.map.num_vertices(), 0);
    g.layer.assign(g.map.num_vertices(), 0);
    for (std::size_t v = 0; v < depth.size(); ++v) {
        g.marks[ids[v]] = truncated[v];
        g.layer[ids[v]] = depth[v];
        if (truncated[v])
            g.boundary.push_back(ids[v]);
    }
    std::sort(g.boundary.begin(), g.boundary.end());
    return g;
}

namespace {

Generated canopy(int n, bool thick) {
    require(n >= 1 && n <= 12, "canopy height must be in 1..12");
    // upper node (d, i) for d = 0..n, lower node (d, i) for d = 0..n-1; leaves shared
    std::vector<std::vector<Vertex>> upper(n + 1), lower(n);
    Vertex next = 0;
    for (int d = 0; d <= n; ++d)
        for (int i = 0; i < (1 << d); ++i)
            upper[d].push_back(next++);
    for (int d = 0; d < n; ++d)
        for (int i = 0; i < (1 << d); ++i)
            lower[d].push_back(next++);
    auto x = [&](int d, int i) { return (i + 0.5) * static_cast<double>(1 << (n - d)); };
    MapBuilder b(next);
    for (int d = 0; d < n; ++d) {
        const int copies = thick ? static_cast<int>(std::lround(std::pow(3.0, n - d - 1))) : 1;
        for (int i = 0; i < (1 << d); ++i) {
            for (int c = 0; c < 2; ++c) {
                const int ci = 2 * i + c;
                const Point pu{x(d, i), static_cast<double>(n - d)};
                const Point pc{x(d + 1, ci), static_cast<double>(n - d - 1)};
                add_bundle(b, upper[d][i], upper[d + 1][ci], pu, pc, copies);
                const Vertex child = d + 1 == n ? upper[n][ci] : lower[d + 1][ci];
                add_bundle(b, lower[d][i], child, Point{pu.x, -pu.y}, Point{pc.x, -pc.y}, copies);
            }
        }
    }
    Generated g = finish(b, std::string(thick ? "thick_canopy:" : "canopy_pair:") + std::to_string(n),
                         0, upper[0][0]);
    set_layers_by_distance(g);
    return g;
}

} // namespace

Generated canopy_pair(int n) { return canopy(n, false); }
Generated thick_canopy(int n) { return canopy(n, true); }

Generated complete(int n) {
    require(n >= 1, "complete graph needs a vertex");
    MapBuilder b(n);
    std::vector<Point> pts(n);
    pts[0] = {0.1, 0.05};
    for (int i = 1; i < n; ++i)
        pts[i] = {std::cos(2 * kPi * i / (n - 1)), std::sin(2 * kPi * i / (n - 1))};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            b.add_segment(i, j, pts[i], pts[j]);
    Generated g = finish(b, "complete:" + std::to_string(n), -1, 0);
    g.declared_genus = g.map.genus();
    set_layers_by_distance(g);
    return g;
}

Generated random_rotation(const Generated &base, std::uint64_t seed) {
    Stream rng(seed, 0, Purpose::Generator);
    const Map &m = base.map;
    std::vector<Dart> sigma(m.num_darts());
    for (Vertex v = 0; v < m.num_vertices(); ++v) {
        std::vector<Dart> darts(m.darts_at(v).begin(), m.darts_at(v).end());
        for (std::size_t i = darts.size(); i > 1; --i)
            std::swap(darts[i - 1], darts[rng.below(i)]);
        for (std::size_t i = 0; i < darts.size(); ++i)
            sigma[darts[i]] = darts[(i + 1) % darts.size()];
    }
    Generated g;
    g.map = m.num_darts() == 0
                ? Map::single_vertex()
                : Map::build(std::move(sigma),
                             std::vector<Dart>(m.alpha_array().begin(), m.alpha_array().end()));
    g.name = "random_rotation:" + base.name;
    g.declared_genus = g.map.genus();
    g.center = g.map.num_darts() ? g.map.tail(m.vertex_dart(base.center)) : 0;
    if (g.map.num_darts())
        g.root = g.map.vertex_dart(g.center);
    set_layers_by_distance(g);
    return g;
}

Generated petersen() {
    MapBuilder b(10);
    std::vector<Point> pts(10);
    for (int i = 0; i < 5; ++i) {
        const double t = kPi / 2 + 2 * kPi * i / 5;
        pts[i] = {2 * std::cos(t), 2 * std::sin(t)};
        pts[i + 5] = {std::cos(t), std::sin(t)};
    }
    for (int i = 0; i < 5; ++i) {
        b.add_segment(i, (i + 1) % 5, pts[i], pts[(i + 1) % 5]);
        b.add_segment(i, i + 5, pts[i], pts[i + 5]);
        b.add_segment(i + 5, 5 + (i + 2) % 5, pts[i + 5], pts[5 + (i + 2) % 5]);
    }
    Generated g = finish(b, "petersen", -1, 0);
    g.declared_genus = g.map.genus();
    set_layers_by_distance(g);
    return g;
}

Generated dipole(int k) {
    require(k >= 1, "dipole needs at least one edge");
    MapBuilder b(2);
    add_bundle(b, 0, 1, Point{0, 0}, Point{1, 0}, k);
    Generated g = finish(b, "dipole:" + std::to_string(k), 0, 0);
    set_layers_by_distance(g);
    return g;
}

Generated bouquet(int k) {
    require(k >= 0, "bouquet needs a non-negative number of loops");
    std::vector<Dart> sigma(2 * k);
    for (int d = 0; d < 2 * k; ++d)
        sigma[d] = (d + 1) % (2 * k);
    Generated g;
    g.map = k == 0 ? Map::single_vertex() : Map::build(std::move(sigma));
    g.name = "bouquet:" + std::to_string(k);
    if (k > 0)
        g.root = 0;
    g.layer = {0};
    return g;
}

Generated bouquet_genus2() {
    // a=0, a'=1, b=2, b'=3, c=4, c'=5, d=6, d'=7
    const std::vector<Dart> order{0, 2, 1, 3, 4, 6, 5, 7};
    std::vector<Dart> sigma(8);
    for (std::size_t i = 0; i < order.size(); ++i)
        sigma[order[i]] = order[(i + 1) % order.size()];
    Generated g;
    g.map = Map::build(std::move(sigma));
    g.name = "bouquet_genus2";
    g.declared_genus = 2;
    g.root = 0;
    g.layer = {0};
    return g;
}

Generated k4_torus() {
    const Generated base = complete(4);
    const Map &m = base.map;
    // each vertex has degree 3, so two cyclic orders; take the first choice with two faces
    for (int mask = 0; mask < 16; ++mask) {
        std::vector<Dart> sigma(m.num_darts());
        for (Vertex v = 0; v < 4; ++v) {
            auto darts = m.darts_at(v);
            std::array<Dart, 3> order{darts[0], darts[1], darts[2]};
            if (mask & (1 << v))
                std::swap(order[1], order[2]);
            for (int i = 0; i < 3; ++i)
                sigma[order[i]] = order[(i + 1) % 3];
        }
        Map candidate = Map::build(std::move(sigma), std::vector<Dart>(m.alpha_array().begin(),
                                                                      m.alpha_array().end()));
        if (candidate.num_faces() == 2) {
            Generated g;
            g.map = std::move(candidate);
            g.name = "k4_torus";
            g.declared_genus = 1;
            g.root = 0;
            set_layers_by_distance(g);
            return g;
        }
    }
    bad("no toroidal rotation of K4 found");
}

GeneratorSpec parse_generator(std::string_view text) {
    GeneratorSpec spec;
    const std::size_t colon = text.find(':');
    spec.family = canonical_family(text.substr(0, colon));
    const std::string_view args = colon == std::string_view::npos ? "" : text.substr(colon + 1);
    const std::string &f = spec.family;
    auto numbers = [&] { return args.empty() ? std::vector<std::string_view>{} : split(args, ','); };
    if (f == "torus_grid" || f == "disc_grid") {
        const auto dims = split(args, 'x');
        require(dims.size() == 2, f + " expects WIDTHxHEIGHT");
        spec.width = parse_int(dims[0]);
        spec.height = parse_int(dims[1]);
    } else if (f == "diamond") {
        spec.radius = parse_int(args);
    } else if (f == "cycle" || f == "polygon" || f == "complete" || f == "canopy_pair" ||
               f == "thick_canopy" || f == "dipole" || f == "bouquet" || f == "path" ||
               f == "star") {
        spec.n = parse_int(args);
    } else if (f == "platonic") {
        spec.name = std::string(args);
    } else if (f == "pq_ball") {
        const auto v = numbers();
        require(v.size() == 3, "pq_ball expects p,q,radius");
        spec.p = parse_int(v[0]);
        spec.q = parse_int(v[1]);
        spec.radius = parse_int(v[2]);
    } else if (f == "gw_tree") {
        const auto v = numbers();
        require(v.size() >= 1 && v.size() <= 5, "gw_tree expects law[,mean[,depth[,size[,biased]]]]");
        spec.name = std::string(v[0]);
        if (v.size() > 1)
            spec.mean = parse_real(v[1]);
        if (v.size() > 2)
            spec.max_depth = parse_int(v[2]);
        if (v.size() > 3)
            spec.max_size = parse_int(v[3]);
        if (v.size() > 4) {
            require(v[4] == "biased" || v[4] == "plain", "gw_tree root variant is biased or plain");
            spec.size_biased = v[4] == "biased";
        }
    } else if (f == "random_rotation") {
        spec.base = std::make_shared<GeneratorSpec>(parse_generator(args));
    } else if (f == "petersen" || f == "bouquet_genus2" || f == "k4_torus") {
        require(args.empty(), f + " takes no parameters");
    } else {
        bad("unknown generator family '" + f + "'");
    }
    return spec;
}

GeneratorSpec parse_generator_toml(std::string_view text) {
    toml::table table;
    try {
        table = toml::parse(text);
    } catch (const toml::parse_error &err) {
        bad(std::string("generator TOML does not parse: ") + std::string(err.description()));
    }
    const auto family = table["family"].value<std::string>();
    require(family.has_value(), "generator TOML needs a string key 'family'");
    GeneratorSpec spec;
    spec.family = canonical_family(*family);
    auto get_int = [&](const char *key, int &out) {
        if (auto v = table[key].value<std::int64_t>())
            out = static_cast<int>(*v);
    };
    get_int("width", spec.width);
    get_int("height", spec.height);
    get_int("n", spec.n);
    get_int("p", spec.p);
    get_int("q", spec.q);
    get_int("radius", spec.radius);
    get_int("max_depth", spec.max_depth);
    get_int("max_size", spec.max_size);
    if (auto v = table["solid"].value<std::string>())
        spec.name = *v;
    if (auto v = table["law"].value<std::string>())
        spec.name = *v;
    if (auto v = table["mean"].value<double>())
        spec.mean = *v;
    if (auto v = table["size_biased"].value<bool>())
        spec.size_biased = *v;
    if (auto v = table["base"].value<std::string>())
        spec.base = std::make_shared<GeneratorSpec>(parse_generator(*v));
    require(spec.family != "random_rotation" || spec.base,
            "random_rotation needs a 'base' generator string");
    return spec;
}

std::string describe(const GeneratorSpec &spec) {
    const std::string &f = spec.family;
    std::ostringstream out;
    out << f;
    if (f == "torus_grid" || f == "disc_grid")
        out << ':' << spec.width << 'x' << spec.height;
    else if (f == "diamond")
        out << ':' << spec.radius;
    else if (f == "platonic")
        out << ':' << spec.name;
    else if (f == "pq_ball")
        out << ':' << spec.p << ',' << spec.q << ',' << spec.radius;
    else if (f == "gw_tree")
        out << ':' << spec.name << ',' << spec.mean << ',' << spec.max_depth << ','
            << spec.max_size << ',' << (spec.size_biased ? "biased" : "plain");
    else if (f == "random_rotation" && spec.base)
        out << ':' << describe(*spec.base);
    else if (f != "petersen" && f != "bouquet_genus2" && f != "k4_torus")
        out << ':' << spec.n;
    return out.str();
}

Generated generate(const GeneratorSpec &spec, std::uint64_t seed) {
    const std::string &f = spec.family;
    if (f == "torus_grid")
        return torus_grid(spec.width, spec.height);
    if (f == "disc_grid")
        return disc_grid(spec.width, spec.height);
    if (f == "diamond")
        return diamond(spec.radius);
    if (f == "cycle")
        return cycle(spec.n);
    if (f == "path")
        return path(spec.n);
    if (f == "star")
        return star(spec.n);
    if (f == "polygon")
        return polygon(spec.n);
    if (f == "platonic")
        return platonic(spec.name);
    if (f == "pq_ball")
        return pq_ball(spec.p, spec.q, spec.radius);
    if (f == "gw_tree")
        return gw_tree(spec.name, spec.mean, spec.max_depth, spec.max_size, spec.size_biased, seed);
    if (f == "canopy_pair")
        return canopy_pair(spec.n);
    if (f == "thick_canopy")
        return thick_canopy(spec.n);
    if (f == "complete")
        return complete(spec.n);
    if (f == "random_rotation") {
        require(spec.base != nullptr, "random_rotation needs a base family");
        return random_rotation(generate(*spec.base, seed), seed);
    }
    if (f == "petersen")
        return petersen();
    if (f == "dipole")
        return dipole(spec.n);
    if (f == "bouquet")
        return bouquet(spec.n);
    if (f == "bouquet_genus2")
        return bouquet_genus2();
    if (f == "k4_torus")
        return k4_torus();
    bad("unknown generator family '" + f + "'");
}

GeneratorSpec resized(const GeneratorSpec &spec, int n) {
    GeneratorSpec out = spec;
    const std::string &f = spec.family;
    if (f == "torus_grid" || f == "disc_grid")
        out.width = out.height = n;
    else if (f == "diamond" || f == "pq_ball")
        out.radius = n;
    else if (f == "gw_tree")
        out.max_size = n;
    else if (f == "random_rotation" && spec.base)
        out.base = std::make_shared<GeneratorSpec>(resized(*spec.base, n));
    else if (f == "platonic" || f == "petersen" || f == "bouquet_genus2" || f == "k4_torus")
        bad("family '" + f + "' has no size parameter");
    else
        out.n = n;
    return out;
}

std::vector<Vertex> vertices_up_to_layer(const Generated &g, int max_layer) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.layer.size(); ++v)
        if (g.layer[v] <= max_layer)
            out.push_back(v);
    return out;
}

std::vector<Generated> exhaustion(const GeneratorSpec &family, std::span<const int> radii) {
    if (!std::is_sorted(radii.begin(), radii.end()))
        bad("exhaustion radii must be increasing");
    std::vector<Generated> out;
    for (int r : radii) {
        if (family.family == "diamond" || family.family == "disc_grid")
            out.push_back(diamond(r));
        else if (family.family == "pq_ball")
            out.push_back(pq_ball(family.p, family.q, r));
        else
            throw GeneratorError(GeneratorError::Kind::NotNestable,
                                 "family '" + family.family + "' has no nested patches");
    }
    return out;
}

} // namespace mapforge
