#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "mapforge/canonical.hpp"
#include "mapforge/corpus.hpp"
#include "mapforge/curvature.hpp"
#include "mapforge/generators.hpp"

using namespace mapforge;

TEST_CASE("parse and describe round trip") {
    for (const char *text : {"torus_grid:16x16", "disc_grid:5x4", "diamond:4", "cycle:6", "polygon:7",
                             "platonic:cube", "pq_ball:3,7,6", "canopy_pair:4", "thick_canopy:3",
                             "complete:5", "dipole:3", "bouquet:2", "bouquet_genus2", "k4_torus",
                             "petersen", "path:4", "star:3", "random_rotation:complete:5"}) {
        CAPTURE(text);
        CHECK(describe(parse_generator(text)) == text);
    }
    CHECK(parse_generator("torus:4x5").family == "torus_grid");
    CHECK(describe(parse_generator("gw_tree:poisson,1.5,6,300,biased")) ==
          "gw_tree:poisson,1.5,6,300,biased");
    for (const char *bad : {"nosuch:3", "torus:4", "torus:ax4", "pq_ball:3,7", "cycle:x"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_generator(bad), GeneratorError);
    }
}

TEST_CASE("toml generator specs") {
    const GeneratorSpec s = parse_generator_toml("family = \"pq_ball\"\np = 4\nq = 5\nradius = 2\n");
    CHECK(describe(s) == "pq_ball:4,5,2");
    const GeneratorSpec r =
        parse_generator_toml("family = \"random_rotation\"\nbase = \"platonic:cube\"\n");
    CHECK(describe(r) == "random_rotation:platonic:cube");
    CHECK_THROWS_AS(parse_generator_toml("p = 3"), GeneratorError);
    CHECK_THROWS_AS(parse_generator_toml("family = "), GeneratorError);
}

TEST_CASE("declared genus matches and maps are valid") {
    for (const auto &entry : builtin_corpus()) {
        CAPTURE(entry.name);
        const Generated &g = entry.generated;
        CHECK(g.map.genus() == g.declared_genus);
        CHECK(g.map.genus() <= 2);
        if (!g.layer.empty()) {
            CHECK(g.layer.size() == g.map.num_vertices());
        }
        for (Vertex b : g.boundary)
            CHECK(b < g.map.num_vertices());
    }
    CHECK(builtin_corpus().size() >= 50);
}

TEST_CASE("corpus contains loops, multi-edges and every genus up to two") {
    bool loops = false, multi = false;
    std::set<int> genera;
    for (const auto &entry : builtin_corpus()) {
        const Map &m = entry.map();
        genera.insert(m.genus());
        std::set<std::pair<Vertex, Vertex>> seen;
        for (Edge e = 0; e < m.num_edges(); ++e) {
            auto [u, v] = m.endpoints(e);
            loops = loops || u == v;
            if (u > v)
                std::swap(u, v);
            multi = multi || !seen.insert({u, v}).second;
        }
    }
    CHECK(loops);
    CHECK(multi);
    CHECK(genera == std::set<int>{0, 1, 2});
}

TEST_CASE("grid families") {
    const Generated t = torus_grid(5, 4);
    CHECK(t.map.num_vertices() == 20);
    CHECK(t.map.num_edges() == 40);
    CHECK(t.map.num_faces() == 20);
    for (Face f = 0; f < t.map.num_faces(); ++f)
        CHECK(t.map.face_degree(f) == 4);
    const Generated d = disc_grid(4, 3);
    CHECK(d.map.num_faces() == 7);
    CHECK(d.boundary.size() == 10);
    CHECK(d.map.face_degree(d.outer_faces[0]) == 10);
    CHECK(d.side_a.size() == 3);
    const Generated dia = diamond(3);
    CHECK(dia.map.num_vertices() == 25);
    // the staircase outline visits the 12 vertices at distance 3 and the 8 at distance 2
    CHECK(dia.boundary.size() == 20);
    CHECK(*std::max_element(dia.layer.begin(), dia.layer.end()) == 3);
    const auto nested = exhaustion(parse_generator("diamond:1"), std::vector<int>{1, 2, 3});
    CHECK(nested.size() == 3);
    CHECK(nested[2].map.num_vertices() == 25);
    CHECK_THROWS_AS(exhaustion(parse_generator("torus:3x3"), std::vector<int>{1}), GeneratorError);
}

TEST_CASE("pq_ball structure") {
    // layer sizes of {3,7}
    const Generated g = pq_ball(3, 7, 5);
    std::vector<int> sizes(6, 0);
    for (int l : g.layer)
        ++sizes[l];
    CHECK(sizes == std::vector<int>{1, 7, 21, 56, 147, 385});
    for (Vertex v = 0; v < g.map.num_vertices(); ++v) {
        if (g.layer[v] < 5)
            CHECK(g.map.degree(v) == 7);
    }
    for (Face f = 0; f < g.map.num_faces(); ++f)
        if (f != g.outer_faces[0])
            CHECK(g.map.face_degree(f) == 3);
    for (auto [p, q] : {std::pair{4, 5}, std::pair{5, 4}, std::pair{7, 3}, std::pair{6, 4},
                        std::pair{4, 6}}) {
        CAPTURE(p);
        CAPTURE(q);
        const Generated h = pq_ball(p, q, 3);
        CHECK(h.map.genus() == 0);
        for (Vertex v = 0; v < h.map.num_vertices(); ++v)
            if (h.layer[v] < 3)
                CHECK(h.map.degree(v) == static_cast<std::size_t>(q));
        for (Face f = 0; f < h.map.num_faces(); ++f)
            if (f != h.outer_faces[0])
                CHECK(h.map.face_degree(f) == static_cast<std::size_t>(p));
    }
    CHECK_THROWS_AS(pq_ball(4, 4, 2), GeneratorError);
    CHECK(pq_ball(3, 7, 0).map.num_vertices() == 1);
}

TEST_CASE("canopy maps are mirror symmetric") {
    for (int n = 1; n <= 4; ++n) {
        for (bool thick : {false, true}) {
            const Generated g = thick ? thick_canopy(n) : canopy_pair(n);
            CAPTURE(n);
            CAPTURE(thick);
            const std::size_t v = (std::size_t{1} << (n + 1)) - 1 + (std::size_t{1} << n) - 1;
            CHECK(g.map.num_vertices() == v);
            CHECK(g.map.genus() == 0);
            // the two roots have degree 2 * 3^(n-1) in the thick version
            std::vector<Vertex> roots;
            for (Vertex x = 0; x < g.map.num_vertices(); ++x)
                if (g.layer[x] == 0 || g.layer[x] == 2 * n)
                    roots.push_back(x);
            REQUIRE(roots.size() == 2);
            CHECK(g.map.degree(roots[0]) ==
                  (thick ? 2 * static_cast<std::size_t>(std::pow(3, n - 1)) : 2));
            // the half-turn about the centre of the leaf row swaps the two trees
            CHECK(vertex_rooted_code(g.map, roots[0]) == vertex_rooted_code(g.map, roots[1]));
            CHECK(rooted_graph_code(g.map, roots[0]) == rooted_graph_code(g.map, roots[1]));
        }
    }
}

TEST_CASE("other families") {
    CHECK(cycle(1).map.num_edges() == 1);
    CHECK(cycle(1).map.num_faces() == 2);
    CHECK(polygon(6).map.num_edges() == 9);
    CHECK(platonic("dodecahedron").map.num_faces() == 12);
    CHECK(platonic("icosahedron").map.num_faces() == 20);
    CHECK_THROWS_AS(platonic("sphere"), GeneratorError);
    CHECK(complete(4).map.genus() == 0);
    CHECK(k4_torus().map.genus() == 1);
    CHECK(bouquet_genus2().map.genus() == 2);
    CHECK(bouquet(3).map.genus() == 0);
    CHECK(dipole(4).map.num_faces() == 4);
    CHECK(petersen().map.num_edges() == 15);
    const Generated base = complete(6);
    std::set<int> genera;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const Generated r = random_rotation(base, s);
        CHECK(r.map.num_edges() == base.map.num_edges());
        genera.insert(r.map.genus());
    }
    CHECK(genera.size() > 1);
    CHECK(random_rotation(base, 3).map == random_rotation(base, 3).map);
}

TEST_CASE("galton-watson trees") {
    const Generated t = gw_tree("poisson", 1.0, 6, 500, false, 4);
    CHECK(t.map.num_faces() == 1);
    CHECK(t.map.num_edges() + 1 == t.map.num_vertices());
    CHECK(*std::max_element(t.layer.begin(), t.layer.end()) <= 6);
    for (Vertex v = 0; v < t.map.num_vertices(); ++v)
        if (t.layer[v] == 6)
            CHECK(t.marks[v] == 1);
    const Generated same = gw_tree("poisson", 1.0, 6, 500, false, 4);
    CHECK(same.map == t.map);
    // the size-biased root always has at least one child
    for (std::uint64_t s = 1; s <= 30; ++s)
        CHECK(gw_tree("geometric", 1.0, 5, 200, true, s).map.degree(0) >= 1);
    const Generated capped = gw_tree("binary", 2.0, 30, 50, false, 1);
    CHECK(capped.map.num_vertices() <= 50);
    CHECK_THROWS_AS(gw_tree("bogus", 1.0, 3, 10, false, 1), GeneratorError);
}

TEST_CASE("resized specs") {
    CHECK(describe(resized(parse_generator("torus:4x4"), 9)) == "torus_grid:9x9");
    CHECK(describe(resized(parse_generator("pq_ball:3,7,2"), 4)) == "pq_ball:3,7,4");
    CHECK_THROWS_AS(resized(parse_generator("petersen"), 3), GeneratorError);
}
