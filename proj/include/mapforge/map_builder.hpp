#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mapforge/map.hpp"

namespace mapforge {

struct Point {
    double x = 0;
    double y = 0;
};

/**
 * Incremental construction of a rotation system.
 *
 * Edge k owns darts 2k (u -> v) and 2k+1 (v -> u). The counterclockwise order at
 * each vertex is obtained by sorting darts by a key (angle, tiebreak); parallel
 * edges drawn with the same angle use opposite tiebreaks at the two ends so the
 * bundle bounds digons.
 */
class MapBuilder {
public:
    explicit MapBuilder(std::size_t vertices = 0) : darts_at_(vertices) {}

    Vertex add_vertex();
    std::size_t num_vertices() const { return darts_at_.size(); }
    std::size_t num_edges() const { return tails_.size() / 2; }

    /// Explicit angle keys at both endpoints.
    Edge add_edge(Vertex u, Vertex v, double angle_u, double angle_v, double tie_u = 0,
                  double tie_v = 0);
    /// Straight segment between two points.
    Edge add_segment(Vertex u, Vertex v, Point pu, Point pv, double tie = 0);

    /// Overrides the sorted order at v with an explicit ccw dart list.
    void set_rotation(Vertex v, std::vector<Dart> ccw);

    Vertex tail(Dart d) const { return tails_[d]; }

    /// Vertex ids of the built map follow min-dart order; vertex_map() translates.
    Map build() const;
    /// Builder vertex -> map vertex for the last build(). Isolated vertices map to -1.
    std::vector<Vertex> vertex_map(const Map &built) const;

private:
    struct Slot {
        Dart dart;
        double angle;
        double tie;
    };
    std::vector<std::vector<Slot>> darts_at_;
    std::vector<std::optional<std::vector<Dart>>> explicit_;
    std::vector<Vertex> tails_;
};

/**
 * Builds a map from its faces given as vertex cycles, each traversed with the
 * face on the right (clockwise around the face). Every ordered pair (u,v) of
 * consecutive vertices must occur exactly once overall and its reverse exactly
 * once, so the graph must be simple. Returns the map and, for each face cycle,
 * the dart from its first to its second vertex.
 */
struct FaceBuild {
    Map map;
    std::vector<Dart> face_first_dart;
    std::vector<Vertex> vertex_map; // input vertex -> map vertex
    /// Dart u -> v (input ids), or kNoDart.
    Dart dart(Vertex u, Vertex v) const;
    std::vector<std::pair<std::uint64_t, Dart>> dart_index; // sorted (u<<32|v, dart)
};
FaceBuild map_from_faces(std::size_t vertices, std::span<const std::vector<Vertex>> faces);

} // namespace mapforge
