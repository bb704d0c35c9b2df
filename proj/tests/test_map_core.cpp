#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "mapforge/canonical.hpp"
#include "mapforge/corpus.hpp"
#include "mapforge/interchange.hpp"
#include "mapforge/map.hpp"
#include "mapforge/map_builder.hpp"
#include "mapforge/rng.hpp"
#include "oracles.hpp"

using namespace mapforge;

namespace {

std::vector<Dart> to_vec(std::span<const Dart> s) { return {s.begin(), s.end()}; }

Map random_relabel(const Map &m, std::uint64_t seed, std::vector<Dart> *perm_out = nullptr) {
    // arbitrary dart permutation; relabel carries alpha along
    Stream rng(seed, 0, Purpose::Relabel);
    std::vector<Dart> perm(m.num_darts());
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[rng.below(i)]);
    if (perm_out)
        *perm_out = perm;
    return relabel(m, perm);
}

} // namespace

TEST_CASE("philox matches the Random123 known-answer vectors") {
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) ==
          std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and separated by replica and purpose") {
    Stream a(5, 3, Purpose::Wilson), b(5, 3, Purpose::Wilson);
    Stream c(5, 4, Purpose::Wilson), d(5, 3, Purpose::Labels);
    bool differ_c = false, differ_d = false;
    for (int i = 0; i < 20; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differ_c = differ_c || x != c.next_u64();
        differ_d = differ_d || x != d.next_u64();
    }
    CHECK(differ_c);
    CHECK(differ_d);
    Stream r(1);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(r.below(7) < 7);
    }
}

TEST_CASE("below is close to uniform") {
    Stream r(11);
    std::vector<int> counts(6, 0);
    const int n = 60000;
    for (int i = 0; i < n; ++i)
        ++counts[r.below(6)];
    for (int c : counts)
        CHECK(std::abs(c - n / 6) < 5 * std::sqrt(n / 6.0));
}

TEST_CASE("build rejects invalid permutation data") {
    CHECK_THROWS_AS(Map::build({1, 0, 2}), MapError);
    try {
        Map::build({0, 0});
        FAIL("accepted a non-permutation");
    } catch (const MapError &e) {
        CHECK(e.kind() == MapError::Kind::NotPermutation);
    }
    try {
        Map::build({1, 0}, {0, 1});
        FAIL("accepted a fixed point of alpha");
    } catch (const MapError &e) {
        CHECK(e.kind() == MapError::Kind::NotInvolution);
    }
    try {
        Map::build({1, 0}, {1, 0, 2});
        FAIL("accepted mismatched sizes");
    } catch (const MapError &e) {
        CHECK(e.kind() == MapError::Kind::SizeMismatch);
    }
    try {
        // two separate loops at two vertices
        Map::build({0, 1, 2, 3});
        FAIL("accepted a disconnected map");
    } catch (const MapError &e) {
        CHECK(e.kind() == MapError::Kind::Disconnected);
    }
}

TEST_CASE("single vertex map") {
    const Map m = Map::single_vertex();
    CHECK(m.num_vertices() == 1);
    CHECK(m.num_edges() == 0);
    CHECK(m.num_faces() == 1);
    CHECK(m.genus() == 0);
}

TEST_CASE("a drawn square has two faces of degree four") {
    MapBuilder b(4);
    const Point p[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (Vertex i = 0; i < 4; ++i)
        b.add_segment(i, (i + 1) % 4, p[i], p[(i + 1) % 4]);
    const Map m = b.build();
    CHECK(m.num_faces() == 2);
    CHECK(m.face_degree(0) == 4);
    CHECK(m.face_degree(1) == 4);
    // dart 0 runs 0 -> 1 along the bottom; with counterclockwise sigma its orbit
    // under sigma_dagger is the drawn square, traversed counterclockwise
    std::vector<Vertex> cycle;
    for (Dart d : m.face_darts(m.face_of(0)))
        cycle.push_back(m.tail(d));
    const auto ids = b.vertex_map(m);
    CHECK(cycle == std::vector<Vertex>{ids[0], ids[1], ids[2], ids[3]});
    CHECK(m.face_of(m.alpha(0)) != m.face_of(0));
}

TEST_CASE("genus and face counts agree with a direct orbit count on the corpus") {
    for (const auto &entry : builtin_corpus()) {
        const Map &m = entry.map();
        CAPTURE(entry.name);
        CHECK(m.genus() == oracle::genus_from_arrays(to_vec(m.sigma_array()), to_vec(m.alpha_array())));
        CHECK(m.euler_characteristic() == 2 - 2 * m.genus());
        for (Dart d = 0; d < m.num_darts(); ++d) {
            CHECK(m.face_of(m.sigma_dagger(d)) == m.face_of(d));
            CHECK(m.tail(m.sigma(d)) == m.tail(d));
            CHECK(m.head(d) == m.tail(m.alpha(d)));
        }
        std::size_t degree_sum = 0;
        for (Vertex v = 0; v < m.num_vertices(); ++v)
            degree_sum += m.degree(v);
        CHECK(degree_sum == m.num_darts());
    }
}

TEST_CASE("dual swaps vertices and faces and is an involution up to alpha") {
    for (const auto &entry : builtin_corpus()) {
        const Map &m = entry.map();
        CAPTURE(entry.name);
        const Map d = dual(m);
        CHECK(d.num_vertices() == m.num_faces());
        CHECK(d.num_faces() == m.num_vertices());
        CHECK(d.genus() == m.genus());
        CHECK(relabel(dual(d), m.alpha_array()) == m);
    }
}

TEST_CASE("deleting edges") {
    const Map cube = generate(parse_generator("platonic:cube")).map;
    const std::vector<Edge> one{0};
    const Submap s = submap_delete_edges(cube, one);
    CHECK(s.map.num_edges() == 11);
    CHECK(s.map.num_faces() == 5);
    CHECK_FALSE(s.genus_changed());
    const Map path = generate(parse_generator("path:3")).map;
    try {
        submap_delete_edges(path, one);
        FAIL("deleted a bridge");
    } catch (const MapError &e) {
        CHECK(e.kind() == MapError::Kind::WouldDisconnect);
    }
}

TEST_CASE("balls") {
    const Generated t = generate(parse_generator("torus:8x8"));
    const RootedMap rooted(t.map, 0);
    const Ball b0 = ball(rooted, 0);
    CHECK(b0.rooted.map.num_vertices() == 1);
    CHECK(b0.rooted.map.num_edges() == 0);
    const Ball b1 = ball(rooted, 1);
    CHECK(b1.rooted.map.num_vertices() == 5);
    CHECK(b1.rooted.map.num_edges() == 4);
    const Ball b2 = ball(rooted, 2);
    CHECK(b2.rooted.map.num_vertices() == 13);
    // induced: the four unit squares around the root are present
    CHECK(b2.rooted.map.num_edges() == 16);
    const Ball whole = ball(rooted, 100);
    CHECK(whole.rooted.map.num_vertices() == 64);
    CHECK(canonical_code(whole.rooted) == canonical_code(rooted));
    for (Vertex v = 0; v < b2.vertex_origin.size(); ++v)
        CHECK(bfs_distances(t.map, t.map.tail(0))[b2.vertex_origin[v]] <= 2);
}

TEST_CASE("canonical codes are invariant under relabelling") {
    for (const auto &entry : builtin_corpus()) {
        const Map &m = entry.map();
        if (m.num_darts() == 0)
            continue;
        CAPTURE(entry.name);
        std::vector<Dart> perm;
        const Map r = random_relabel(m, 3, &perm);
        for (Dart d = 0; d < m.num_darts(); d += 3)
            CHECK(canonical_code(m, d) == canonical_code(r, perm[d]));
        CHECK(vertex_rooted_code(m, 0) == vertex_rooted_code(r, r.tail(perm[m.vertex_dart(0)])));
        CHECK(rooted_graph_code(m, 0) == rooted_graph_code(r, r.tail(perm[m.vertex_dart(0)])));
    }
}

TEST_CASE("canonical codes separate non-isomorphic rootings") {
    // a path of length two: rooting at the middle differs from rooting at an end
    const Map p = generate(parse_generator("path:3")).map;
    std::set<std::string> vertex_codes;
    for (Vertex v = 0; v < 3; ++v)
        vertex_codes.insert(vertex_rooted_code(p, v).bytes);
    CHECK(vertex_codes.size() == 2);
    // the cube is vertex-transitive
    const Map cube = generate(parse_generator("platonic:cube")).map;
    std::set<std::string> cube_codes;
    for (Vertex v = 0; v < cube.num_vertices(); ++v)
        cube_codes.insert(vertex_rooted_code(cube, v).bytes);
    CHECK(cube_codes.size() == 1);
    // mirror images: the two rotations of K4 on the torus need not be isomorphic as maps,
    // but as graphs all rootings of K4 agree
    const Map k4 = generate(parse_generator("k4_torus")).map;
    std::set<std::string> graph_codes;
    for (Vertex v = 0; v < 4; ++v)
        graph_codes.insert(rooted_graph_code(k4, v).bytes);
    CHECK(graph_codes.size() == 1);
}

TEST_CASE("graph codes ignore the rotation, map codes do not") {
    const Generated base = generate(parse_generator("complete:5"));
    bool map_code_changed = false;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Generated g = random_rotation(base, seed);
        CHECK(rooted_graph_code(g.map, 0).bytes.size() > 0);
        CHECK(rooted_graph_code(g.map, g.map.tail(base.map.vertex_dart(0))) ==
              rooted_graph_code(base.map, 0));
        map_code_changed = map_code_changed || g.map.genus() != base.map.genus();
    }
    CHECK(map_code_changed);
}

TEST_CASE("json interchange round trip") {
    for (const auto &entry : builtin_corpus()) {
        const Map &m = entry.map();
        std::vector<double> w(m.num_edges());
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = 0.1 * static_cast<double>(i) + 1.0 / 3.0;
        const std::string text = to_json(m, entry.generated.root, std::span<const double>(w));
        const MapDocument doc = map_from_json(text);
        CHECK(doc.map == m);
        CHECK(doc.root == entry.generated.root);
        REQUIRE(doc.weights.has_value());
        CHECK(*doc.weights == w);
    }
    CHECK_THROWS_AS(map_from_json("{\"n_darts\": 2, \"sigma\": [0], \"alpha\": [1, 0]}"),
                    std::exception);
    CHECK_THROWS_AS(map_from_json("not json"), FormatError);
}

TEST_CASE("base64 and double formatting round trip") {
    for (const std::string &s : std::vector<std::string>{"", "a", "ab", "abc", "abcd", std::string("\0\xff\x10", 3)})
        CHECK(base64_decode(base64_encode(s)) == s);
    for (double x : {0.1, 1.0 / 3.0, 2.0 - 2.0 / 256.0, 1e-300, 123456789.125})
        CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("small maps by hand") {
    // one vertex with a loop: two faces of degree one
    const Map loop = generate(parse_generator("bouquet:1")).map;
    CHECK(loop.num_darts() == 2);
    CHECK(loop.num_faces() == 2);
    CHECK(loop.face_degree(0) == 1);
    CHECK(loop.face_degree(1) == 1);
    // the dual of a triangle is a triple edge between two vertices
    const Map tri = dual(generate(parse_generator("cycle:3")).map);
    CHECK(tri.num_vertices() == 2);
    CHECK(tri.num_edges() == 3);
    for (Edge e = 0; e < 3; ++e)
        CHECK(tri.endpoints(e).first != tri.endpoints(e).second);
    // K4 with a toroidal rotation
    const Map k4 = generate(parse_generator("k4_torus")).map;
    CHECK(k4.num_faces() == 2);
    CHECK(k4.genus() == 1);
}

TEST_CASE("random rotations of K5 have genus at most three") {
    const Generated k5 = complete(5);
    for (std::uint64_t s = 1; s <= 200; ++s) {
        const int g = random_rotation(k5, s).map.genus();
        CHECK(g >= 0);
        CHECK(g <= 3);
    }
}

TEST_CASE("removing one torus edge merges two faces and keeps the genus") {
    const Map t = generate(parse_generator("torus:4x4")).map;
    const std::vector<Edge> one{5};
    const Submap s = submap_delete_edges(t, one);
    CHECK(s.map.num_faces() == t.num_faces() - 1);
    CHECK_FALSE(s.genus_changed());
    CHECK(s.map.genus() == 1);
}
