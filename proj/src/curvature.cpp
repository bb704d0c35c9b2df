#include "mapforge/curvature.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <unordered_set>

#include "mapforge/interchange.hpp"

namespace mapforge {

namespace {

constexpr double kPi = std::numbers::pi;

bool marked(FaceMarks marks, Face f) { return f < marks.size() && marks[f]; }

double corner_share(const Map &map, Face f, FaceMarks infinite_faces) {
    if (marked(infinite_faces, f))
        return 1.0;
    const double d = static_cast<double>(map.face_degree(f));
    return (d - 2.0) / d;
}

} // namespace

double angle_sum(const Map &map, Vertex v, FaceMarks infinite_faces) {
    double theta = 0;
    for (Dart d : map.darts_at(v))
        theta += corner_share(map, map.face_of(d), infinite_faces);
    return theta * kPi;
}

mpq_class angle_sum_over_pi(const Map &map, Vertex v, FaceMarks infinite_faces) {
    mpq_class theta = 0;
    for (Dart d : map.darts_at(v)) {
        const Face f = map.face_of(d);
        if (marked(infinite_faces, f)) {
            theta += 1;
        } else {
            const long deg = static_cast<long>(map.face_degree(f));
            mpq_class share(deg - 2, deg);
            share.canonicalize();
            theta += share;
        }
    }
    return theta;
}

double curvature(const Map &map, Vertex v, FaceMarks infinite_faces) {
    return 2 * kPi - angle_sum(map, v, infinite_faces);
}

CurvatureReport curvature_report(const Map &map, FaceMarks infinite_faces) {
    CurvatureReport report;
    const std::size_t n = map.num_vertices();
    report.theta.resize(n);
    report.kappa.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        report.theta[v] = angle_sum(map, v, infinite_faces);
        report.kappa[v] = 2 * kPi - report.theta[v];
        report.total_kappa += report.kappa[v];
    }
    report.average_kappa = report.total_kappa / static_cast<double>(n);
    return report;
}

mpq_class total_curvature_over_pi(const Map &map) {
    mpq_class total = 0;
    for (Vertex v = 0; v < map.num_vertices(); ++v)
        total += 2 - angle_sum_over_pi(map, v);
    return total;
}

double average_curvature(const Map &map) {
    return curvature_report(map).average_kappa;
}

void write_curvature_csv(std::ostream &out, const Map &map, const CurvatureReport &report) {
    out << "vertex_id,degree,theta,kappa\n";
    for (Vertex v = 0; v < map.num_vertices(); ++v)
        out << v << ',' << map.degree(v) << ',' << format_double(report.theta[v]) << ','
            << format_double(report.kappa[v]) << '\n';
}

std::vector<double> face_transport_angle_sums(const Map &map) {
    std::vector<double> theta(map.num_vertices(), 0.0);
    for (Face f = 0; f < map.num_faces(); ++f) {
        const auto orbit = map.face_darts(f);
        if (orbit.empty())
            continue;
        const double d = static_cast<double>(orbit.size());
        for (Dart dart : orbit)
            theta[map.tail(dart)] += (d - 2.0) / d * kPi;
    }
    return theta;
}

DualRootLaw dual_root_law(const Map &map) {
    // Uniform root rho; each corner of rho on f carries 1/deg f to f.
    DualRootLaw law;
    const double v_count = static_cast<double>(map.num_vertices());
    law.face_weight.assign(map.num_faces(), 0.0);
    for (Vertex v = 0; v < map.num_vertices(); ++v) {
        for (Dart d : map.darts_at(v)) {
            const Face f = map.face_of(d);
            const double share = 1.0 / static_cast<double>(map.face_degree(f)) / v_count;
            law.face_weight[f] += share;
            law.normalization += share;
        }
    }
    for (double &w : law.face_weight)
        w /= law.normalization;
    return law;
}

IdentitySides dual_degree_identity(const Map &map) {
    const DualRootLaw law = dual_root_law(map);
    IdentitySides out;
    for (Face f = 0; f < map.num_faces(); ++f)
        out.lhs += law.face_weight[f] * static_cast<double>(map.face_degree(f));
    double mean_degree = 0;
    for (Vertex v = 0; v < map.num_vertices(); ++v)
        mean_degree += static_cast<double>(map.degree(v));
    mean_degree /= static_cast<double>(map.num_vertices());
    out.rhs = mean_degree / law.normalization;
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> corner_chords(std::span<const double> labels,
                                                               CornerOrder order) {
    const std::size_t n = labels.size();
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n < 3)
        return out;
    // forward scan from each corner with a running minimum of the interior
    for (std::size_t a = 0; a < n; ++a) {
        double interior_min = std::numeric_limits<double>::infinity();
        const std::size_t reach = order == CornerOrder::Cyclic ? n : n - a;
        for (std::size_t step = 1; step < reach; ++step) {
            const std::size_t b = (a + step) % n;
            if (step >= 2) {
                const bool adjacent = order == CornerOrder::Cyclic && step == n - 1;
                // in cyclic order a pair may qualify through either arc; dedup below
                if (!adjacent && interior_min > std::max(labels[a], labels[b]))
                    out.push_back({std::min(a, b), std::max(a, b)});
            }
            interior_min = std::min(interior_min, labels[b]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t count_linear_chords(std::span<const double> labels) {
    const std::size_t n = labels.size();
    if (n < 3)
        return 0;
    std::vector<double> stack;
    std::size_t visible = 0;
    for (double x : labels) {
        while (!stack.empty() && stack.back() > x) {
            stack.pop_back();
            ++visible;
        }
        if (!stack.empty())
            ++visible;
        stack.push_back(x);
    }
    return visible - (n - 1);
}

Triangulation triangulate_face(const Map &map, Face face, std::span<const double> labels,
                               CornerOrder order) {
    if (face >= map.num_faces())
        throw CurvatureError(CurvatureError::Kind::BadArgument, "face out of range");
    const auto orbit = map.face_darts(face);
    const std::size_t n = orbit.size();
    if (n < 3)
        throw CurvatureError(CurvatureError::Kind::FaceTooSmall,
                             "face of degree " + std::to_string(n) + " cannot take chords");
    if (labels.size() != n)
        throw CurvatureError(CurvatureError::Kind::BadArgument,
                             "need one label per corner (" + std::to_string(n) + ")");
    {
        std::vector<double> sorted(labels.begin(), labels.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw CurvatureError(CurvatureError::Kind::DuplicateLabels,
                                 "corner labels must be distinct");
    }

    Triangulation out;
    out.chords = corner_chords(labels, order);

    const std::size_t n0 = map.num_darts();
    std::vector<Dart> sigma(map.sigma_array().begin(), map.sigma_array().end());
    std::vector<Dart> alpha(map.alpha_array().begin(), map.alpha_array().end());
    std::vector<Dart> sigma_inv(n0);
    for (Dart d = 0; d < n0; ++d)
        sigma_inv[sigma[d]] = d;

    // corner i is the wedge from orbit[i] counterclockwise to sigma(orbit[i]); after
    // chords split it, each piece is the counterclockwise wedge of one representative
    std::vector<std::vector<Dart>> reps(n);
    for (std::size_t i = 0; i < n; ++i)
        reps[i].push_back(orbit[i]);

    auto face_orbit = [&](Dart start) {
        std::unordered_set<Dart> members;
        Dart d = start;
        do {
            members.insert(d);
            d = sigma_inv[alpha[d]];
        } while (d != start);
        return members;
    };
    auto insert_after = [&](Dart x, Dart at) {
        const Dart next = sigma[at];
        sigma[at] = x;
        sigma[x] = next;
        sigma_inv[x] = at;
        sigma_inv[next] = x;
    };

    for (auto [a, b] : out.chords) {
        Dart da = kNoDart, db = kNoDart;
        for (Dart u : reps[a]) {
            const auto members = face_orbit(u);
            for (Dart w : reps[b]) {
                if (members.contains(w)) {
                    da = u;
                    db = w;
                    break;
                }
            }
            if (da != kNoDart)
                break;
        }
        if (da == kNoDart)
            throw MapError(MapError::Kind::Inconsistent, "chord endpoints share no face");
        const auto x = static_cast<Dart>(sigma.size());
        const Dart y = x + 1;
        sigma.resize(sigma.size() + 2);
        sigma_inv.resize(sigma.size());
        alpha.push_back(y);
        alpha.push_back(x);
        insert_after(x, da);
        insert_after(y, db);
        reps[a].push_back(x);
        reps[b].push_back(y);
    }
    out.map = Map::build(std::move(sigma), std::move(alpha));
    for (std::size_t k = 0; k < out.chords.size(); ++k)
        out.new_edges.push_back(out.map.edge_of(static_cast<Dart>(n0 + 2 * k)));
    if (out.map.genus() != map.genus())
        throw MapError(MapError::Kind::Inconsistent, "triangulation changed the genus");
    return out;
}

} // namespace mapforge
