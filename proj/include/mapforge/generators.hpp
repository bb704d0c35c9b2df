#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mapforge/map.hpp"

namespace mapforge {

class GeneratorError : public std::runtime_error {
public:
    enum class Kind { BadParameters, NotNestable };
    GeneratorError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// A generated map with the side information experiments need.
struct Generated {
    Map map;
    std::string name;
    int declared_genus = 0;
    Vertex center = 0;
    std::optional<Dart> root;
    std::vector<Vertex> boundary;     // vertices on the outer face (patches), truncated leaves (trees)
    std::vector<Face> outer_faces;    // faces playing the role of infinite faces
    std::vector<std::int64_t> marks;  // per vertex; gw_tree: 1 = truncated
    std::vector<int> layer;           // pq_ball: face layer of each vertex; disc patches: graph distance
    std::vector<Vertex> side_a;       // disc_grid: left column
    std::vector<Vertex> side_b;       // disc_grid: right column
    std::vector<int> winding;         // torus_grid: per dart, +1 east across the seam, -1 west
};

struct GeneratorSpec {
    std::string family;
    int width = 0;
    int height = 0;
    int n = 0;
    int p = 0;
    int q = 0;
    int radius = 0;
    std::string name;        // platonic solid or offspring law
    double mean = 1.0;       // gw_tree
    int max_depth = 8;       // gw_tree
    int max_size = 2000;     // gw_tree
    bool size_biased = false;
    std::shared_ptr<GeneratorSpec> base; // random_rotation
};

/**
 * Parses "family:args", e.g. torus:16x16, disc_grid:5x5, diamond:4, cycle:6,
 * polygon:7, platonic:cube, pq_ball:3,7,6, gw_tree:poisson,1.0,8,500,biased,
 * canopy:4, thick_canopy:3, complete:5, random_rotation:complete:5,
 * dipole:3, bouquet:2, bouquet_genus2, k4_torus, petersen, path:4, star:3.
 */
GeneratorSpec parse_generator(std::string_view text);
/// TOML table with key `family` and the family's parameters.
GeneratorSpec parse_generator_toml(std::string_view text);
std::string describe(const GeneratorSpec &spec);

/// Deterministic given the seed (only gw_tree and random_rotation use it).
Generated generate(const GeneratorSpec &spec, std::uint64_t seed = 0);

Generated torus_grid(int width, int height);
Generated disc_grid(int width, int height);
/// Vertices of Z^2 with |x| + |y| <= radius: the Z^2 ball of that radius.
Generated diamond(int radius);
Generated cycle(int n);
Generated path(int n);
Generated star(int leaves);
/// Convex n-gon triangulated by the chords from vertex 0.
Generated polygon(int n);
Generated platonic(std::string_view solid);
/// Ball of `radius` face layers around a vertex of the {p,q} tessellation.
Generated pq_ball(int p, int q, int radius);
Generated gw_tree(std::string_view law, double mean, int max_depth, int max_size,
                  bool size_biased, std::uint64_t seed);
/// Two reflected binary trees of height n glued at their 2^n leaves.
Generated canopy_pair(int n);
/// canopy_pair with each edge at distance k from the leaves replaced by 3^k parallel edges.
Generated thick_canopy(int n);
/// Vertex 0 at the centre, the others on a circle; the induced rotation.
Generated complete(int n);
Generated random_rotation(const Generated &base, std::uint64_t seed);
Generated petersen();
Generated dipole(int k);
Generated bouquet(int k);
/// One vertex, four loops with rotation a b a' b' c d c' d'.
Generated bouquet_genus2();
/// K4 with a rotation having two faces.
Generated k4_torus();

/// The same family with its size parameter set to n (side, radius, height or size budget).
GeneratorSpec resized(const GeneratorSpec &spec, int n);

/// Vertices with layer <= max_layer.
std::vector<Vertex> vertices_up_to_layer(const Generated &g, int max_layer);

/// Nested patches for the exhaustion families (diamond, disc_grid as diamond, pq_ball).
std::vector<Generated> exhaustion(const GeneratorSpec &family, std::span<const int> radii);

} // namespace mapforge
