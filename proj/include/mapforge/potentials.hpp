#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapforge/map.hpp"
#include "mapforge/rng.hpp"

namespace mapforge {

class PotentialError : public std::runtime_error {
public:
    enum class Kind { EmptyBoundary, SourceInSink, EmptySink, Unreachable, SolveFailed };
    PotentialError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

struct WalkPath {
    std::vector<Vertex> vertices; // v0 .. vk
    std::vector<Dart> darts;      // darts[i] goes from vertices[i] to vertices[i+1]
};

/// Simple random walk; each step follows a uniform dart at the current vertex,
/// so parallel edges and loops are weighted by multiplicity.
WalkPath srw(const Map &map, Vertex start, std::size_t steps, Stream &rng);

/// Exact one-step transition matrix row sums: max_v |(pi P)(v) - pi(v)|.
double stationarity_defect(const Map &map, std::span<const double> pi);
/// Defect of the degree-biased law pi(v) = deg(v) / 2E.
double stationarity_check(const Map &map);

/// Boundary values; vertices without a value are interior.
using BoundaryValues = std::vector<std::optional<double>>;

/**
 * Harmonic extension: h(v) = mean of h over the darts at v for every interior v.
 * Loops cancel. Sparse LDLT on the interior Laplacian with iterative refinement.
 */
std::vector<double> harmonic_solve(const Map &map, const BoundaryValues &boundary);

/// One term (f(u) - f(v))^2 per edge.
double dirichlet_energy(const Map &map, std::span<const double> f);

struct Resistance {
    double resistance = 0;
    double energy = 0;             // energy of the unit potential, 1 / resistance
    std::vector<double> potential; // 1 at source, 0 on sink
};

Resistance effective_resistance(const Map &map, Vertex source, std::span<const Vertex> sink);

/// (min over source-to-sink paths of sum of m on the path's vertices)^2 / sum m^2.
double vel_objective(const Map &map, std::span<const double> m, Vertex source,
                     std::span<const Vertex> sink);

struct IntersectionStats {
    std::vector<std::size_t> counts; // per replica
    double mean = 0;
    double std_error = 0;
};

/// Number of common vertices visited by two independent walks of the given length.
IntersectionStats intersection_stats(const Map &map, Vertex start1, Vertex start2,
                                     std::size_t steps, std::size_t replicas, std::uint64_t seed,
                                     unsigned threads = 1);

/// vertex_id,value
void write_vertex_function_csv(std::ostream &out, std::span<const double> values);

} // namespace mapforge
