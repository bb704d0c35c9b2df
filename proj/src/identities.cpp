#include "mapforge/identities.hpp"

#include <cmath>
#include <numbers>

#include "mapforge/curvature.hpp"
#include "mapforge/forests.hpp"
#include "mapforge/interchange.hpp"
#include "mapforge/local_limits.hpp"
#include "mapforge/parallel.hpp"

namespace mapforge {

namespace {

constexpr double kPi = std::numbers::pi;

struct Checker {
    const std::string &name;
    double tolerance;
    IdentityReport report;

    void exact(const std::string &identity, bool ok, double lhs, double rhs) {
        report.checks.push_back({name, identity, ok, lhs, rhs});
    }
    void close(const std::string &identity, double lhs, double rhs) {
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        exact(identity, std::abs(lhs - rhs) <= tolerance * scale, lhs, rhs);
    }
};

int expected_genus(const Generated &g) {
    return g.declared_genus >= 0 ? g.declared_genus : g.map.genus();
}

} // namespace

std::size_t IdentityReport::failures() const {
    std::size_t n = 0;
    for (const auto &c : checks)
        n += c.passed ? 0 : 1;
    return n;
}

IdentityReport verify_map(const CorpusEntry &entry, std::uint64_t seed, double tolerance) {
    const Map &m = entry.map();
    Checker check{entry.name, tolerance, {}};
    const int g = expected_genus(entry.generated);
    const long chi = 2 - 2 * g;
    const double V = static_cast<double>(m.num_vertices());

    check.exact("euler", m.euler_characteristic() == chi,
                static_cast<double>(m.euler_characteristic()), static_cast<double>(chi));

    const mpq_class total = total_curvature_over_pi(m);
    check.exact("gauss_bonnet", total == mpq_class(2 * chi), total.get_d() * kPi,
                2 * kPi * static_cast<double>(chi));

    check.close("average_curvature", average_curvature(m), 2 * kPi * static_cast<double>(chi) / V);

    const auto transported = face_transport_angle_sums(m);
    double worst = 0;
    for (Vertex v = 0; v < m.num_vertices(); ++v)
        worst = std::max(worst, std::abs(transported[v] - angle_sum(m, v)));
    check.close("face_transport", worst, 0.0);

    const IdentitySides dd = dual_degree_identity(m);
    check.close("dual_degree", dd.lhs, dd.rhs);

    const Map d = dual(m);
    const Map back = relabel(dual(d), m.alpha_array());
    check.exact("dual_involution",
                back == m && d.num_vertices() == m.num_faces() && d.num_faces() == m.num_vertices(),
                static_cast<double>(d.num_vertices()), static_cast<double>(m.num_faces()));

    Stream rng(seed, 0, Purpose::Generic);
    std::vector<char> omega(m.num_edges());
    for (auto &x : omega)
        x = rng.uniform() < 0.5 ? 1 : 0;

    // distance-weighted transport; depends only on the doubly rooted class
    std::vector<std::vector<int>> dist(m.num_vertices());
    for (Vertex u = 0; u < m.num_vertices(); ++u)
        dist[u] = bfs_distances(m, u);
    const IdentitySides mtp = mtp_check(m, [&](const Map &map, Vertex u, Vertex v) {
        return static_cast<double>(map.degree(u) * map.degree(u)) / (1.0 + dist[u][v]);
    });
    check.close("mass_transport", mtp.lhs, mtp.rhs);

    if (g == 0) {
        const IdentitySides od = omega_dagger_identity(m, omega);
        check.close("omega_dagger", od.lhs, od.rhs);

        Stream wrng(seed, 1, Purpose::Wilson);
        const Forest tree = wilson_ust(m, wrng);
        const IdentitySides ot = omega_dagger_identity(m, tree.member);
        check.close("omega_dagger_ust", ot.lhs, ot.rhs);
        check.exact("ust_dual_tree", is_spanning_tree(d, dual_forest(m, tree)), 1, 1);

        const WeightAssignment w = sample_weights(m.num_edges(), seed, 0);
        WeightAssignment reversed = w;
        for (auto &x : reversed.labels)
            x = 1.0 - x;
        const Forest primal = mst_free(m, w);
        const Forest dual_mst = mst_free(d, reversed);
        check.exact("mst_duality", dual_mst.member == dual_forest(m, primal).member, 1, 1);
    }
    return check.report;
}

IdentityReport verify_corpus(std::span<const CorpusEntry> corpus, std::uint64_t seed,
                             double tolerance, unsigned threads) {
    std::vector<IdentityReport> parts(corpus.size());
    parallel_for(corpus.size(), threads,
                 [&](std::size_t i) { parts[i] = verify_map(corpus[i], seed + i, tolerance); });
    IdentityReport out;
    for (auto &p : parts)
        out.checks.insert(out.checks.end(), p.checks.begin(), p.checks.end());
    return out;
}

void write_report(std::ostream &out, const IdentityReport &report) {
    for (const auto &c : report.checks)
        out << (c.passed ? "ok   " : "FAIL ") << c.map << ' ' << c.identity << ' '
            << format_double(c.lhs) << ' ' << format_double(c.rhs) << '\n';
    out << report.checks.size() << " checks, " << report.failures() << " failures\n";
}

} // namespace mapforge
