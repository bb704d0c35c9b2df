#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mapforge/curvature.hpp"
#include "mapforge/map.hpp"
#include "mapforge/potentials.hpp"
#include "mapforge/rng.hpp"

namespace mapforge {

class ForestError : public std::runtime_error {
public:
    enum class Kind { EmptyTargets, NotPlanar, NoMarkedFaces, NotSpanningTree, DuplicateWeights };
    ForestError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

enum class ForestFlavor { UST, WiredUST, MSTFree, MSTWired };

std::string_view flavor_name(ForestFlavor flavor);
std::optional<ForestFlavor> parse_flavor(std::string_view name);

/// Edge subset of a map, one byte per edge.
struct Forest {
    std::vector<char> member;
    ForestFlavor flavor = ForestFlavor::UST;

    bool contains(Edge e) const { return member[e] != 0; }
    std::size_t size() const;
    std::vector<Edge> edges() const;
    /// Number of forest edges at v, loops counted twice.
    std::size_t degree(const Map &map, Vertex v) const;
};

/// {"flavor": "...", "edges": [sorted edge ids]}
std::string forest_to_json(const Forest &forest);

/// One distinct label in [0,1) per edge.
struct WeightAssignment {
    std::vector<double> labels;
};

/**
 * Labels addressed by (seed, replica, edge id), so any edge's label can be
 * regenerated independently. Colliding labels are redrawn with a bumped attempt
 * counter until all are distinct.
 */
WeightAssignment sample_weights(std::size_t edges, std::uint64_t seed, std::uint64_t replica = 0);

/// Throws DuplicateWeights if two labels coincide.
void check_distinct(const WeightAssignment &weights);

/// Loop erasure of a walk path, keeping the dart used on each retained step.
WalkPath loop_erase(const WalkPath &walk);

/// Loop-erased random walk from start, stopped on hitting targets.
WalkPath lerw(const Map &map, Vertex start, std::span<const Vertex> targets, Stream &rng);

/**
 * Wilson's algorithm. Vertices in roots start inside the tree; with one root this
 * samples the uniform spanning tree, with several it samples the UST of the graph
 * in which the roots are identified (loops created by the identification are
 * never added). Walks are started in the given order (default: vertex id order).
 */
Forest wilson(const Map &map, std::span<const Vertex> roots, Stream &rng,
              std::span<const Vertex> order = {});

/// Uniform spanning tree rooted at vertex 0.
Forest wilson_ust(const Map &map, Stream &rng);
/// UST of the wired graph: boundary vertices identified into one.
Forest wilson_wired(const Map &map, std::span<const Vertex> boundary, Stream &rng);

/**
 * Wilson's algorithm on the dual, rooted at the marked faces: the dual forest
 * starts as the marked faces and grows by loop-erased dual walks stopped on
 * hitting it. The primal forest is the set of edges whose duals are not used.
 */
struct DualWilson {
    Forest dual_forest;   // over the edges of dual(map) (same ids)
    Forest primal_forest; // complement
};
DualWilson wilson_dual_infinity(const Map &map, std::span<const Face> marked_faces, Stream &rng);

bool is_spanning_tree(const Map &map, const Forest &forest);
/// Acyclic, and with the boundary class contracted, still acyclic and spanning.
bool is_wired_spanning_forest(const Map &map, const Forest &forest,
                              std::span<const Vertex> boundary);

/// {e : e not in forest}, as a forest of dual(map). Requires genus 0 and a spanning tree.
Forest dual_forest(const Map &map, const Forest &forest);

Forest mst_free(const Map &map, const WeightAssignment &weights);
Forest mst_wired(const Map &map, const WeightAssignment &weights,
                 std::span<const Vertex> boundary);

/// Exact number of spanning trees (loops ignored, parallel edges counted).
mpz_class spanning_tree_count(const Map &map);
/// Spanning trees of the graph with the boundary vertices identified.
mpz_class wired_spanning_tree_count(const Map &map, std::span<const Vertex> boundary);
/// tau(G / e) / tau(G); 0 for loops.
mpq_class ust_edge_probability_exact(const Map &map, Edge e);

struct DegreeEstimate {
    double estimate = 0;
    double std_error = 0;
    std::size_t replicas = 0;
    std::optional<double> analytic; // 2 - 2/V for the plain UST
};

/**
 * Mean forest degree over the root set (all vertices if empty), averaged over
 * independent replicas. Replica i uses streams keyed by (seed, i).
 */
DegreeEstimate forest_degree_stats(const Map &map, ForestFlavor flavor, std::size_t replicas,
                                   std::uint64_t seed, std::span<const Vertex> roots = {},
                                   std::span<const Vertex> boundary = {}, unsigned threads = 1);

/// One replica of forest_degree_stats: mean degree of the forest over the root set.
double forest_mean_degree(const Map &map, const Forest &forest, std::span<const Vertex> roots);

Forest sample_forest(const Map &map, ForestFlavor flavor, std::uint64_t seed, std::uint64_t replica,
                     std::span<const Vertex> boundary = {});

/**
 * Both sides of lhs = E[deg_omega(rho)] and rhs = E[deg rho] - Z E_dual[deg_{omega_dual}],
 * with omega_dual = {e : e not in omega} and the dual root law of the map.
 */
IdentitySides omega_dagger_identity(const Map &map, std::span<const char> omega);

} // namespace mapforge
