#include "mapforge/local_limits.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mapforge/interchange.hpp"
#include "mapforge/parallel.hpp"

namespace mapforge {

namespace {

std::vector<std::int64_t> degree_marks(const Map &whole, const Ball &b) {
    std::vector<std::int64_t> marks(b.rooted.map.num_vertices());
    for (Vertex v = 0; v < marks.size(); ++v)
        marks[v] = static_cast<std::int64_t>(whole.degree(b.vertex_origin[v]));
    return marks;
}

BallCode code_of(const Map &whole, const Ball &b, bool use_root_dart, BallOptions options) {
    std::vector<std::int64_t> marks;
    if (options.degree_marks)
        marks = degree_marks(whole, b);
    const Map &m = b.rooted.map;
    const Vertex root = b.rooted.root_vertex();
    BallCode inner;
    if (options.mode == BallMode::Graph)
        inner = rooted_graph_code(m, root, marks);
    else if (use_root_dart && b.root_dart_retained)
        inner = canonical_code(m, b.rooted.root_dart, marks);
    else
        inner = vertex_rooted_code(m, root, marks);
    BallCode out;
    out.bytes.push_back(use_root_dart && b.root_dart_retained ? 'D' : 'V');
    out.bytes += inner.bytes;
    return out;
}

RootedMap vertex_rooted(const Map &map, Vertex v) {
    return RootedMap(map, map.num_darts() == 0 ? 0 : map.vertex_dart(v));
}

} // namespace

BallCode ball_code(const RootedMap &rooted, int r, BallOptions options) {
    return code_of(rooted.map, ball(rooted, r), options.mode == BallMode::Map, options);
}

BallCode vertex_ball_code(const Map &map, Vertex v, int r, BallOptions options) {
    return code_of(map, ball(vertex_rooted(map, v), r), false, options);
}

std::optional<int> agreement_radius(const RootedMap &a, const RootedMap &b, BallOptions options) {
    for (int r = 0;; ++r) {
        const Ball ba = ball(a, r);
        const Ball bb = ball(b, r);
        if (code_of(a.map, ba, options.mode == BallMode::Map, options) !=
            code_of(b.map, bb, options.mode == BallMode::Map, options))
            return r - 1;
        const bool whole_a = ba.rooted.map.num_darts() == a.map.num_darts() &&
                             ba.rooted.map.num_vertices() == a.map.num_vertices();
        const bool whole_b = bb.rooted.map.num_darts() == b.map.num_darts() &&
                             bb.rooted.map.num_vertices() == b.map.num_vertices();
        if (whole_a && whole_b)
            return std::nullopt;
    }
}

double dloc(const RootedMap &a, const RootedMap &b, BallOptions options) {
    const auto radius = agreement_radius(a, b, options);
    if (!radius)
        return 0.0;
    if (*radius <= 0)
        return 1.0;
    return std::exp(-static_cast<double>(*radius));
}

IdentitySides mtp_check(const Map &map, const TransportFunction &f) {
    const std::size_t n = map.num_vertices();
    std::vector<double> out_mass(n, 0.0), in_mass(n, 0.0);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = 0; v < n; ++v) {
            const double mass = f(map, u, v);
            out_mass[u] += mass;
            in_mass[v] += mass;
        }
    }
    IdentitySides sides;
    for (Vertex v = 0; v < n; ++v) {
        sides.lhs += out_mass[v];
        sides.rhs += in_mass[v];
    }
    sides.lhs /= static_cast<double>(n);
    sides.rhs /= static_cast<double>(n);
    return sides;
}

double EmpiricalBallLaw::probability(const BallCode &code) const {
    const auto it = counts.find(code);
    if (it == counts.end() || total == 0)
        return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(total);
}

std::string ball_law_to_json(const EmpiricalBallLaw &law) {
    std::ostringstream out;
    out << '[';
    bool first = true;
    for (const auto &[code, count] : law.counts) {
        out << (first ? "" : ",") << "{\"code\":\"" << base64_encode(code.bytes)
            << "\",\"count\":" << count << '}';
        first = false;
    }
    out << ']';
    return out.str();
}

std::map<BallCode, double> exact_ball_law(const Map &map, int r, BallOptions options) {
    std::map<BallCode, double> law;
    const double w = 1.0 / static_cast<double>(map.num_vertices());
    for (Vertex v = 0; v < map.num_vertices(); ++v)
        law[vertex_ball_code(map, v, r, options)] += w;
    return law;
}

double tv_distance(const EmpiricalBallLaw &a, const EmpiricalBallLaw &b) {
    double sum = 0;
    for (const auto &[code, count] : a.counts)
        sum += std::abs(a.probability(code) - b.probability(code));
    for (const auto &[code, count] : b.counts)
        if (!a.counts.contains(code))
            sum += b.probability(code);
    return 0.5 * sum;
}

double tv_distance(const EmpiricalBallLaw &a, const std::map<BallCode, double> &law) {
    double sum = 0;
    for (const auto &[code, count] : a.counts) {
        const auto it = law.find(code);
        sum += std::abs(a.probability(code) - (it == law.end() ? 0.0 : it->second));
    }
    for (const auto &[code, p] : law)
        if (!a.counts.contains(code))
            sum += p;
    return 0.5 * sum;
}

EmpiricalBallLaw sample_ball_law(const Map &map, int r, std::size_t roots, std::uint64_t seed,
                                 std::uint64_t stream_index, BallOptions options,
                                 unsigned threads) {
    Stream rng(seed, stream_index, Purpose::Root);
    std::vector<Vertex> chosen(roots);
    for (auto &v : chosen)
        v = static_cast<Vertex>(rng.below(map.num_vertices()));
    std::vector<BallCode> codes(roots);
    parallel_for(roots, threads,
                 [&](std::size_t i) { codes[i] = vertex_ball_code(map, chosen[i], r, options); });
    EmpiricalBallLaw law;
    law.radius = r;
    law.total = roots;
    for (auto &c : codes)
        ++law.counts[std::move(c)];
    return law;
}

std::vector<BsRow> bs_sample(const MapEnsemble &ensemble, std::span<const std::size_t> n_grid,
                             int r, std::size_t roots, std::uint64_t seed, BallOptions options,
                             unsigned threads) {
    std::vector<BsRow> rows;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        BsRow row;
        row.n = n_grid[i];
        const Map m = ensemble(n_grid[i], seed);
        row.law = sample_ball_law(m, r, roots, seed, i, options, threads);
        row.tv_to_prev = rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : tv_distance(rows.back().law, row.law);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_bs_csv(std::ostream &out, std::span<const BsRow> rows) {
    out << "n,distinct_balls,tv_to_prev\n";
    for (const BsRow &row : rows)
        out << row.n << ',' << row.law.counts.size() << ',' << format_double(row.tv_to_prev)
            << '\n';
}

RootSample degree_biased_root(const Map &map, Stream &rng) {
    RootSample out;
    if (map.num_darts() == 0)
        return out;
    // P(v) = deg(v) / 2E is the law of the tail of a uniform dart
    out.vertex = map.tail(static_cast<Dart>(rng.below(map.num_darts())));
    const auto darts = map.darts_at(out.vertex);
    out.eta = darts[rng.below(darts.size())];
    return out;
}

} // namespace mapforge
