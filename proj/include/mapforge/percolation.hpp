#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapforge/forests.hpp"
#include "mapforge/map.hpp"

namespace mapforge {

class PercolationError : public std::runtime_error {
public:
    enum class Kind { BadProbability, TooLarge };
    PercolationError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// omega_p(e) = [U(e) <= p] with clusters of the open subgraph.
struct PercolationState {
    double p = 0;
    std::vector<char> open;
    std::vector<std::uint32_t> cluster_of; // dense cluster ids, ordered by least vertex
    std::vector<std::size_t> cluster_size;

    std::size_t num_clusters() const { return cluster_size.size(); }
};

PercolationState percolate(const Map &map, const WeightAssignment &labels, double p);

struct ClusterStats {
    std::size_t clusters = 0;
    std::size_t largest = 0;
    std::size_t open_edges = 0;
    std::vector<std::size_t> sizes; // descending
};

ClusterStats cluster_stats(const PercolationState &state);

/// Two vertex sets for the crossing observable (e.g. opposite sides of a patch).
/**
 * Crossing event of a sweep: some cluster meets both a and b. When winding is
 * given (per dart, signed crossings of a seam of a torus), the event is instead
 * that some cluster wraps around the torus across that seam.
 */
struct CrossingSides {
    std::vector<Vertex> a;
    std::vector<Vertex> b;
    std::vector<int> winding;
};

struct SweepRow {
    double p = 0;
    double mean_clusters = 0;
    double max_cluster_fraction = 0;
    double crossing_probability = 0; // NaN without sides
};

/**
 * Coupled sweep: each replica draws one label per edge and reads every p in the
 * grid off the same labels, adding edges in label order. Rows follow the grid
 * order given.
 */
std::vector<SweepRow> percolation_sweep(const Map &map, std::span<const double> p_grid,
                                        std::size_t replicas, std::uint64_t seed,
                                        const std::optional<CrossingSides> &sides = std::nullopt,
                                        unsigned threads = 1);

/// p,mean_clusters,max_cluster_fraction,crossing_probability
void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows);

/**
 * Finite-size threshold: where the crossing probability first reaches 1/2
 * (linear interpolation) when crossing data exist, otherwise the midpoint of
 * the grid interval with the steepest rise of the largest-cluster fraction.
 */
std::optional<double> estimate_threshold(std::span<const SweepRow> rows);

struct CheegerReport {
    std::vector<Vertex> set;
    std::size_t boundary_edges = 0;
    double ratio = 0;
};

/// Exact minimum of |boundary W| / |W| over 1 <= |W| <= V/2; V <= 24.
CheegerReport cheeger_exact(const Map &map);

} // namespace mapforge
