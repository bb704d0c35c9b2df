#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mapforge/canonical.hpp"
#include "mapforge/curvature.hpp"
#include "mapforge/map.hpp"
#include "mapforge/rng.hpp"

namespace mapforge {

enum class BallMode {
    Map,   // rooted-map isomorphism (uses the rotation)
    Graph, // rooted-multigraph isomorphism only
};

struct BallOptions {
    BallMode mode = BallMode::Map;
    bool degree_marks = false; // mark ball vertices with their degree in the whole map
};

/// Code of the radius-r ball around a root dart. The first byte records whether
/// the root dart itself survives in the ball.
BallCode ball_code(const RootedMap &rooted, int r, BallOptions options = {});

/// Code of the radius-r ball around a root vertex (no distinguished dart).
BallCode vertex_ball_code(const Map &map, Vertex v, int r, BallOptions options = {});

/**
 * Largest r whose radius-r balls agree; nullopt when the maps are isomorphic as
 * rooted maps. -1 when even the radius-0 balls differ.
 */
std::optional<int> agreement_radius(const RootedMap &a, const RootedMap &b,
                                    BallOptions options = {});

/// e^{-R}; 0 for isomorphic rooted maps, capped at 1.
double dloc(const RootedMap &a, const RootedMap &b, BallOptions options = {});

/// f(map, u, v) >= 0, assumed to depend only on the doubly-rooted isomorphism class.
using TransportFunction = std::function<double(const Map &, Vertex, Vertex)>;

/// lhs = (1/V) sum_rho sum_v f(rho, v); rhs = (1/V) sum_rho sum_u f(u, rho).
IdentitySides mtp_check(const Map &map, const TransportFunction &f);

struct EmpiricalBallLaw {
    int radius = 0;
    std::map<BallCode, std::size_t> counts;
    std::size_t total = 0;

    double probability(const BallCode &code) const;
};

/// [{"code": base64, "count": int}, ...] in code order.
std::string ball_law_to_json(const EmpiricalBallLaw &law);

/// Exact law of the radius-r ball around a uniform vertex.
std::map<BallCode, double> exact_ball_law(const Map &map, int r, BallOptions options = {});

double tv_distance(const EmpiricalBallLaw &a, const EmpiricalBallLaw &b);
double tv_distance(const EmpiricalBallLaw &a, const std::map<BallCode, double> &law);

/// Uniform root vertices of one map, drawn from Stream(seed, stream_index, Root).
EmpiricalBallLaw sample_ball_law(const Map &map, int r, std::size_t roots, std::uint64_t seed,
                                 std::uint64_t stream_index = 0, BallOptions options = {},
                                 unsigned threads = 1);

using MapEnsemble = std::function<Map(std::size_t n, std::uint64_t seed)>;

struct BsRow {
    std::size_t n = 0;
    EmpiricalBallLaw law;
    double tv_to_prev = 0; // NaN for the first row
};

/// Empirical radius-r ball laws of ensemble(n) for each n, with TV to the previous n.
std::vector<BsRow> bs_sample(const MapEnsemble &ensemble, std::span<const std::size_t> n_grid,
                             int r, std::size_t roots, std::uint64_t seed,
                             BallOptions options = {}, unsigned threads = 1);

/// n,distinct_balls,tv_to_prev
void write_bs_csv(std::ostream &out, std::span<const BsRow> rows);

struct RootSample {
    Vertex vertex = 0;
    Dart eta = 0; // uniform among the darts at vertex
};

/// Vertex drawn proportionally to its degree, then a uniform dart at it.
RootSample degree_biased_root(const Map &map, Stream &rng);

} // namespace mapforge
