#pragma once

#include <gmpxx.h>

#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mapforge/map.hpp"

namespace mapforge {

class CurvatureError : public std::runtime_error {
public:
    enum class Kind { DuplicateLabels, FaceTooSmall, BadArgument };
    CurvatureError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Faces flagged here are treated as infinite: each of their corners
/// contributes pi to the angle sum.
using FaceMarks = std::span<const char>;

/// theta(v) = sum over corners at v of pi (deg f - 2) / deg f.
double angle_sum(const Map &map, Vertex v, FaceMarks infinite_faces = {});
/// theta(v) / pi as an exact rational.
mpq_class angle_sum_over_pi(const Map &map, Vertex v, FaceMarks infinite_faces = {});

/// kappa(v) = 2 pi - theta(v).
double curvature(const Map &map, Vertex v, FaceMarks infinite_faces = {});

struct CurvatureReport {
    std::vector<double> theta;
    std::vector<double> kappa;
    double total_kappa = 0;
    double average_kappa = 0;
};

CurvatureReport curvature_report(const Map &map, FaceMarks infinite_faces = {});

/// Sum of kappa over all vertices, divided by pi, exactly.
mpq_class total_curvature_over_pi(const Map &map);

/// (1/V) sum_v kappa(v).
double average_curvature(const Map &map);

/// vertex_id,degree,theta,kappa
void write_curvature_csv(std::ostream &out, const Map &map, const CurvatureReport &report);

/**
 * Angle sums recomputed face by face: every face of degree d hands
 * (d-2) pi / d to each of its corners. Must agree with angle_sum.
 */
std::vector<double> face_transport_angle_sums(const Map &map);

/// Dual root law of a uniformly rooted finite map.
struct DualRootLaw {
    std::vector<double> face_weight; // sums to 1
    double normalization = 0;        // Z = E[sum_{f ~ rho} 1/deg f]
};

DualRootLaw dual_root_law(const Map &map);

struct IdentitySides {
    double lhs = 0;
    double rhs = 0;
};

/// lhs = E_dual[deg rho_dual] from the dual root law, rhs = E[deg rho] / Z.
IdentitySides dual_degree_identity(const Map &map);

enum class CornerOrder { Cyclic, Linear };

/**
 * Corner pairs (i < j) joined by the label rule: non-adjacent corners a, b are
 * joined when some run of corners strictly between them has every label above
 * max(U_a, U_b). Cyclic order considers both arcs; linear order only the arc
 * i+1..j-1 and treats corners 0 and n-1 as non-adjacent.
 */
std::vector<std::pair<std::size_t, std::size_t>> corner_chords(std::span<const double> labels,
                                                               CornerOrder order);

/// Number of chords for a linear corner sequence, in O(n) with a monotone stack.
std::size_t count_linear_chords(std::span<const double> labels);

struct Triangulation {
    Map map;
    std::vector<std::pair<std::size_t, std::size_t>> chords; // corner indices
    std::vector<Edge> new_edges;
};

/**
 * Adds the label-rule chords inside one face. Corner i is the tail of the i-th
 * dart of the face orbit (starting at the face representative). Chords are drawn
 * inside the face, so the genus is unchanged; in cyclic order every new interior
 * face is a triangle.
 */
Triangulation triangulate_face(const Map &map, Face face, std::span<const double> labels,
                               CornerOrder order = CornerOrder::Cyclic);

} // namespace mapforge
