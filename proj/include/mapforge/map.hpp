#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mapforge {

using Dart = std::uint32_t;
using Vertex = std::uint32_t;
using Edge = std::uint32_t;
using Face = std::uint32_t;

constexpr Dart kNoDart = static_cast<Dart>(-1);

/// Raised when permutation data does not describe a valid connected map.
class MapError : public std::runtime_error {
public:
    enum class Kind {
        SizeMismatch,
        NotPermutation,
        NotInvolution,
        Disconnected,
        WouldDisconnect,
        NotPlanar,
        BadArgument,
        Inconsistent,
    };

    MapError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/**
 * Orbit decomposition of sigma_dagger = sigma^-1 o alpha.
 *
 * face_of[d] is the face to the right of dart d. Face ids are dense and ordered
 * by the minimum dart of each orbit; darts lists each orbit in sigma_dagger order
 * starting at that minimum dart.
 */
struct FaceTable {
    std::vector<Face> face_of;
    std::vector<std::uint32_t> degree;
    std::vector<Dart> representative;
    std::vector<std::uint32_t> offsets; // CSR into darts, size F+1
    std::vector<Dart> darts;

    std::size_t size() const { return degree.size(); }
    std::span<const Dart> orbit(Face f) const {
        return {darts.data() + offsets[f], darts.data() + offsets[f + 1]};
    }
};

/**
 * A finite connected map on an orientable surface, as a rotation system.
 *
 * Darts are 0..n-1. sigma is the counterclockwise successor of a dart around its
 * tail vertex, alpha pairs a dart with its reversal. Vertices, edges and faces
 * receive dense ids ordered by the minimum dart in their orbit.
 *
 * The map with zero darts is the single isolated vertex (V=1, E=0, F=1).
 * Immutable after construction.
 */
class Map {
public:
    /// Validates and builds; throws MapError naming the violated invariant.
    static Map build(std::vector<Dart> sigma, std::vector<Dart> alpha);
    /// Standard pairing alpha(2k) = 2k+1.
    static Map build(std::vector<Dart> sigma);
    static Map single_vertex();

    Map() : Map(single_vertex()) {}

    std::size_t num_darts() const { return sigma_.size(); }
    std::size_t num_edges() const { return sigma_.size() / 2; }
    std::size_t num_vertices() const { return vertex_degree_.size(); }
    std::size_t num_faces() const { return faces_.size(); }

    Dart sigma(Dart d) const { return sigma_[d]; }
    Dart sigma_inv(Dart d) const { return sigma_inv_[d]; }
    Dart alpha(Dart d) const { return alpha_[d]; }
    Dart sigma_dagger(Dart d) const { return sigma_inv_[alpha_[d]]; }

    std::span<const Dart> sigma_array() const { return sigma_; }
    std::span<const Dart> alpha_array() const { return alpha_; }

    Vertex tail(Dart d) const { return vertex_of_[d]; }
    Vertex head(Dart d) const { return vertex_of_[alpha_[d]]; }
    Edge edge_of(Dart d) const { return edge_of_[d]; }
    Face face_of(Dart d) const { return faces_.face_of[d]; }
    Face right_face(Dart d) const { return faces_.face_of[d]; }
    Face left_face(Dart d) const { return faces_.face_of[alpha_[d]]; }

    std::size_t degree(Vertex v) const { return vertex_degree_[v]; }
    std::size_t face_degree(Face f) const { return faces_.degree[f]; }

    /// Darts with tail v, counterclockwise starting at the minimum dart.
    std::span<const Dart> darts_at(Vertex v) const {
        return {vertex_darts_.data() + vertex_offsets_[v],
                vertex_darts_.data() + vertex_offsets_[v + 1]};
    }
    std::span<const Dart> face_darts(Face f) const { return faces_.orbit(f); }

    Dart vertex_dart(Vertex v) const { return vertex_rep_[v]; }
    Dart face_dart(Face f) const { return faces_.representative[f]; }
    /// The two darts of an edge, smaller first.
    std::pair<Dart, Dart> edge_darts(Edge e) const {
        const Dart d = edge_rep_[e];
        return {d, alpha_[d]};
    }
    std::pair<Vertex, Vertex> endpoints(Edge e) const {
        const auto [d, r] = edge_darts(e);
        return {tail(d), tail(r)};
    }
    bool is_loop(Edge e) const {
        const auto [u, v] = endpoints(e);
        return u == v;
    }

    const FaceTable &faces() const { return faces_; }

    long euler_characteristic() const {
        return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) +
               static_cast<long>(num_faces());
    }
    int genus() const { return genus_; }

    bool operator==(const Map &other) const {
        return sigma_ == other.sigma_ && alpha_ == other.alpha_;
    }

private:
    Map(std::vector<Dart> sigma, std::vector<Dart> alpha, bool validated);
    void derive();

    std::vector<Dart> sigma_;
    std::vector<Dart> sigma_inv_;
    std::vector<Dart> alpha_;
    std::vector<Vertex> vertex_of_;
    std::vector<Edge> edge_of_;
    std::vector<std::uint32_t> vertex_degree_;
    std::vector<Dart> vertex_rep_;
    std::vector<std::uint32_t> vertex_offsets_;
    std::vector<Dart> vertex_darts_;
    std::vector<Dart> edge_rep_;
    FaceTable faces_;
    int genus_ = 0;
};

/// A map with a distinguished root dart; the root vertex is its tail.
/// For the single-vertex map root_dart is 0 and denotes the vertex.
struct RootedMap {
    Map map;
    Dart root_dart = 0;

    RootedMap() = default;
    RootedMap(Map m, Dart root);

    Vertex root_vertex() const { return map.num_darts() == 0 ? 0 : map.tail(root_dart); }
};

FaceTable faces(const Map &map);

/// Same darts, vertices and faces exchanged: sigma of the dual is sigma_dagger.
/// Dart d of the map is the dual dart d, crossing d from right to left.
Map dual(const Map &map);

int genus(const Map &map);

struct Submap {
    Map map;
    std::vector<Dart> dart_origin;     // new dart -> old dart
    std::vector<Vertex> vertex_origin; // new vertex -> old vertex
    int genus_before = 0;
    int genus_after = 0;
    bool genus_changed() const { return genus_before != genus_after; }
};

/// Removes the given edges; rotation at each vertex skips the removed darts.
/// Throws MapError::WouldDisconnect if the remaining graph is disconnected.
Submap submap_delete_edges(const Map &map, std::span<const Edge> remove);

struct Ball {
    RootedMap rooted;
    std::vector<Dart> dart_origin;
    std::vector<Vertex> vertex_origin;
    bool root_dart_retained = false;
};

/// Submap induced on vertices within graph distance r of the root vertex, with
/// inherited rotation. Rooted at the same dart when it is retained, otherwise at
/// the least retained dart of the root vertex.
Ball ball(const RootedMap &rooted, int r);

/// Graph distances from a vertex (unreachable entries are -1; never for a map).
std::vector<int> bfs_distances(const Map &map, Vertex source, int max_radius = -1);

/// Renumbers darts by a permutation new_id = perm[old_id].
Map relabel(const Map &map, std::span<const Dart> perm);

} // namespace mapforge
