#include "mapforge/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "mapforge/corpus.hpp"
#include "mapforge/curvature.hpp"
#include "mapforge/forests.hpp"
#include "mapforge/generators.hpp"
#include "mapforge/identities.hpp"
#include "mapforge/interchange.hpp"
#include "mapforge/local_limits.hpp"
#include "mapforge/parallel.hpp"
#include "mapforge/percolation.hpp"
#include "mapforge/potentials.hpp"

namespace mapforge {

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string gen;
    std::uint64_t seed = 0;
    std::size_t replicas = 100;
    std::string out;
    bool json = false;
    unsigned threads = 1;
};

json null_if_nan(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IOError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

GeneratorSpec load_spec(const std::string &text) {
    if (text.empty())
        throw ConfigError("--gen is required");
    try {
        if (text.front() == '@')
            return parse_generator_toml(read_file(text.substr(1)));
        return parse_generator(text);
    } catch (const GeneratorError &e) {
        throw ConfigError(e.what());
    }
}

Generated load_map(const Common &c) {
    const GeneratorSpec spec = load_spec(c.gen);
    try {
        return generate(spec, c.seed);
    } catch (const GeneratorError &e) {
        throw ConfigError(e.what());
    }
}

std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> out;
    auto number = [](const std::string &s) {
        try {
            std::size_t used = 0;
            const double x = std::stod(s, &used);
            if (used == s.size())
                return x;
        } catch (const std::logic_error &) {
        }
        throw ConfigError("bad number '" + s + "' in grid");
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ':');)
            parts.push_back(part);
        if (parts.size() != 3)
            throw ConfigError("range grid is start:stop:step");
        const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
        if (!(step > 0) || b < a)
            throw ConfigError("range grid needs start <= stop and step > 0");
        const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(std::min(b, a + static_cast<double>(i) * step));
        return out;
    }
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');)
        out.push_back(number(part));
    return out;
}

std::uint64_t effective_seed(std::uint64_t seed) {
    if (const char *env = std::getenv("MAPFORGE_SEED")) {
        try {
            std::size_t used = 0;
            const std::string s(env);
            const auto value = std::stoull(s, &used);
            if (used == s.size())
                return value;
        } catch (const std::logic_error &) {
        }
        throw ConfigError("MAPFORGE_SEED must be an unsigned integer");
    }
    return seed;
}

void add_common(CLI::App *cmd, Common &c, bool needs_gen = true) {
    auto *g = cmd->add_option("--gen", c.gen, "generator: family:args or @file.toml");
    if (needs_gen)
        g->required();
    cmd->add_option("--seed", c.seed, "random seed (MAPFORGE_SEED overrides)");
    cmd->add_option("--replicas", c.replicas, "number of independent replicas");
    cmd->add_option("--out", c.out, "output file (default stdout)");
    cmd->add_flag("--json", c.json, "emit JSON instead of CSV");
    cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 1024u));
}

int cmd_gen(const Common &c, std::ostream &out) {
    const Generated g = load_map(c);
    out << to_json(g.map, g.root) << '\n';
    return kExitOk;
}

int cmd_stats(const Common &c, std::ostream &out) {
    const Generated g = load_map(c);
    const CurvatureReport report = curvature_report(g.map);
    if (!c.json) {
        write_curvature_csv(out, g.map, report);
        return kExitOk;
    }
    json doc{{"name", g.name},
             {"vertices", g.map.num_vertices()},
             {"edges", g.map.num_edges()},
             {"faces", g.map.num_faces()},
             {"genus", g.map.genus()},
             {"total_kappa", report.total_kappa},
             {"average_kappa", report.average_kappa}};
    json rows = json::array();
    for (Vertex v = 0; v < g.map.num_vertices(); ++v)
        rows.push_back({{"vertex_id", v},
                        {"degree", g.map.degree(v)},
                        {"theta", report.theta[v]},
                        {"kappa", report.kappa[v]}});
    doc["vertices_table"] = rows;
    out << doc.dump() << '\n';
    return kExitOk;
}

ForestFlavor flavor_or_throw(const std::string &name, bool spanning_tree_cmd) {
    const auto flavor = parse_flavor(name);
    if (!flavor)
        throw ConfigError("unknown flavor '" + name + "'");
    const bool is_ust = *flavor == ForestFlavor::UST || *flavor == ForestFlavor::WiredUST;
    if (is_ust != spanning_tree_cmd)
        throw ConfigError("flavor '" + name + "' does not belong to this subcommand");
    return *flavor;
}

void require_boundary(const Generated &g, ForestFlavor flavor) {
    if ((flavor == ForestFlavor::WiredUST || flavor == ForestFlavor::MSTWired) && g.boundary.empty())
        throw ConfigError("wired flavors need a generator with a boundary");
}

int cmd_forest(const Common &c, const std::string &flavor_text, bool spanning_tree_cmd,
               std::ostream &out) {
    const ForestFlavor flavor = flavor_or_throw(flavor_text, spanning_tree_cmd);
    const Generated g = load_map(c);
    require_boundary(g, flavor);
    const Map &m = g.map;
    std::vector<Forest> forests(c.replicas);
    parallel_for(c.replicas, c.threads, [&](std::size_t i) {
        forests[i] = sample_forest(m, flavor, c.seed, i, g.boundary);
    });
    if (c.json) {
        json doc = json::array();
        for (const Forest &f : forests)
            doc.push_back(json::parse(forest_to_json(f)));
        out << doc.dump() << '\n';
        return kExitOk;
    }
    const bool analytic = flavor == ForestFlavor::UST || flavor == ForestFlavor::MSTFree;
    const double reference = 2.0 - 2.0 / static_cast<double>(m.num_vertices());
    out << "replica,flavor,root,root_degree,mean_degree,n_edges,analytic_mean_degree\n";
    for (std::size_t i = 0; i < forests.size(); ++i) {
        Stream rng(c.seed, i, Purpose::Root);
        const auto root = static_cast<Vertex>(rng.below(m.num_vertices()));
        out << i << ',' << flavor_name(flavor) << ',' << root << ','
            << forests[i].degree(m, root) << ','
            << format_double(forest_mean_degree(m, forests[i], {})) << ',' << forests[i].size()
            << ',' << (analytic ? format_double(reference) : "") << '\n';
    }
    return kExitOk;
}

int cmd_walk(const Common &c, std::size_t steps, std::ostream &out) {
    const Generated g = load_map(c);
    const Map &m = g.map;
    struct Row {
        Vertex end = 0;
        int distance = 0;
        std::size_t distinct = 0;
    };
    std::vector<Row> rows(c.replicas);
    const auto dist = bfs_distances(m, g.center);
    parallel_for(c.replicas, c.threads, [&](std::size_t i) {
        Stream rng(c.seed, i, Purpose::Walk);
        const WalkPath path = srw(m, g.center, steps, rng);
        std::vector<Vertex> seen = path.vertices;
        std::sort(seen.begin(), seen.end());
        rows[i].end = path.vertices.back();
        rows[i].distance = dist[rows[i].end];
        rows[i].distinct = static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) -
                                                    seen.begin());
    });
    if (c.json) {
        json doc = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
            doc.push_back({{"replica", i},
                           {"start", g.center},
                           {"end", rows[i].end},
                           {"distance", rows[i].distance},
                           {"distinct_vertices", rows[i].distinct}});
        out << doc.dump() << '\n';
        return kExitOk;
    }
    out << "replica,start,end,distance,distinct_vertices\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        out << i << ',' << g.center << ',' << rows[i].end << ',' << rows[i].distance << ','
            << rows[i].distinct << '\n';
    return kExitOk;
}

int cmd_perc(const Common &c, const std::string &grid_text, std::ostream &out) {
    const Generated g = load_map(c);
    const auto grid = parse_grid(grid_text);
    std::optional<CrossingSides> sides;
    if (!g.side_a.empty())
        sides = CrossingSides{g.side_a, g.side_b, {}};
    else if (!g.winding.empty())
        sides = CrossingSides{{}, {}, g.winding};
    std::vector<SweepRow> rows;
    try {
        rows = percolation_sweep(g.map, grid, c.replicas, c.seed, sides, c.threads);
    } catch (const PercolationError &e) {
        throw ConfigError(e.what());
    }
    if (!c.json) {
        write_sweep_csv(out, rows);
        return kExitOk;
    }
    json doc;
    doc["rows"] = json::array();
    for (const SweepRow &r : rows)
        doc["rows"].push_back({{"p", r.p},
                               {"mean_clusters", r.mean_clusters},
                               {"max_cluster_fraction", r.max_cluster_fraction},
                               {"crossing_probability", null_if_nan(r.crossing_probability)}});
    const auto threshold = estimate_threshold(rows);
    doc["threshold"] = threshold ? json(*threshold) : json(nullptr);
    out << doc.dump() << '\n';
    return kExitOk;
}

int cmd_bslimit(const Common &c, const std::string &n_text, int radius, std::size_t roots,
                bool graph_mode, std::ostream &out) {
    const GeneratorSpec spec = load_spec(c.gen);
    std::vector<std::size_t> n_grid;
    for (double x : parse_grid(n_text)) {
        if (!(x >= 1) || x != std::floor(x))
            throw ConfigError("--n-grid needs positive integers");
        n_grid.push_back(static_cast<std::size_t>(x));
    }
    if (radius < 0)
        throw ConfigError("--radius must be non-negative");
    const MapEnsemble ensemble = [&](std::size_t n, std::uint64_t seed) {
        try {
            return generate(resized(spec, static_cast<int>(n)), seed).map;
        } catch (const GeneratorError &e) {
            throw ConfigError(e.what());
        }
    };
    BallOptions options;
    options.mode = graph_mode ? BallMode::Graph : BallMode::Map;
    const auto rows = bs_sample(ensemble, n_grid, radius, roots, c.seed, options, c.threads);
    if (!c.json) {
        write_bs_csv(out, rows);
        return kExitOk;
    }
    json doc = json::array();
    for (const BsRow &row : rows)
        doc.push_back({{"n", row.n},
                       {"tv_to_prev", null_if_nan(row.tv_to_prev)},
                       {"law", json::parse(ball_law_to_json(row.law))}});
    out << doc.dump() << '\n';
    return kExitOk;
}

int cmd_forest_degree(const Common &c, const std::string &flavor_text, int root_layers,
                      std::ostream &out) {
    const auto flavor = parse_flavor(flavor_text);
    if (!flavor)
        throw ConfigError("unknown flavor '" + flavor_text + "'");
    const GeneratorSpec spec = load_spec(c.gen);
    const Generated g = load_map(c);
    require_boundary(g, *flavor);
    const bool hyperbolic = spec.family == "pq_ball";
    if (root_layers < 0 && hyperbolic)
        root_layers = 2;
    std::vector<Vertex> roots;
    if (root_layers >= 0)
        roots = vertices_up_to_layer(g, root_layers);
    const DegreeEstimate est =
        forest_degree_stats(g.map, *flavor, c.replicas, c.seed, roots, g.boundary, c.threads);
    // infinite-volume value 2 - kappa/pi for the {p,q} tessellation
    std::optional<double> reference = est.analytic;
    if (hyperbolic)
        reference = static_cast<double>(spec.q * (spec.p - 2)) / spec.p;
    if (c.json) {
        json doc{{"flavor", flavor_name(*flavor)},
                 {"replicas", est.replicas},
                 {"estimate", est.estimate},
                 {"stderr", est.std_error},
                 {"reference", reference ? json(*reference) : json(nullptr)}};
        out << doc.dump() << '\n';
        return kExitOk;
    }
    out << "flavor,replicas,estimate,stderr,reference\n";
    out << flavor_name(*flavor) << ',' << est.replicas << ',' << format_double(est.estimate) << ','
        << format_double(est.std_error) << ',' << (reference ? format_double(*reference) : "")
        << '\n';
    return kExitOk;
}

int cmd_verify(const Common &c, const std::string &corpus_name, std::ostream &out) {
    std::vector<CorpusEntry> corpus;
    if (corpus_name == "builtin") {
        corpus = builtin_corpus();
    } else if (corpus_name.rfind("random:", 0) == 0) {
        std::size_t count = 0;
        try {
            count = std::stoul(corpus_name.substr(7));
        } catch (const std::logic_error &) {
            throw ConfigError("random corpus size must be an integer");
        }
        corpus = random_corpus(count, c.seed);
    } else if (!c.gen.empty() || corpus_name == "gen") {
        corpus.push_back({c.gen, load_map(c)});
    } else {
        throw ConfigError("unknown corpus '" + corpus_name + "'");
    }
    const IdentityReport report = verify_corpus(corpus, c.seed, 1e-10, c.threads);
    if (c.json) {
        json checks = json::array();
        for (const auto &ch : report.checks)
            checks.push_back({{"map", ch.map},
                              {"identity", ch.identity},
                              {"passed", ch.passed},
                              {"lhs", ch.lhs},
                              {"rhs", ch.rhs}});
        out << json{{"checks", checks}, {"failures", report.failures()}}.dump() << '\n';
    } else {
        write_report(out, report);
    }
    return report.failures() == 0 ? kExitOk : kExitIdentityFailure;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"mapforge: experiments on combinatorial maps"};
    app.require_subcommand(1);
    Common c;
    std::string flavor = "ust";
    std::string msf_flavor = "mst-free";
    std::string fd_flavor = "ust";
    std::size_t steps = 100;
    std::string p_grid = "0:1:0.05";
    std::string n_grid = "8,16,32";
    int radius = 2;
    std::size_t roots = 1000;
    bool graph_mode = false;
    int root_layers = -1;
    std::string corpus_name = "builtin";

    auto *gen = app.add_subcommand("gen", "write a generated map as JSON");
    add_common(gen, c);
    auto *stats = app.add_subcommand("stats", "per-vertex angle sums and curvature");
    add_common(stats, c);
    auto *ust = app.add_subcommand("ust", "uniform spanning tree samples");
    add_common(ust, c);
    ust->add_option("--flavor", flavor, "ust or wired-ust");
    auto *msf = app.add_subcommand("msf", "minimal spanning forest samples");
    add_common(msf, c);
    msf->add_option("--flavor", msf_flavor, "mst-free or mst-wired");
    auto *walk = app.add_subcommand("walk", "simple random walks from the centre");
    add_common(walk, c);
    walk->add_option("--steps", steps, "walk length");
    auto *perc = app.add_subcommand("perc", "coupled bond percolation sweep");
    add_common(perc, c);
    perc->add_option("--p-grid", p_grid, "start:stop:step or comma list");
    auto *bs = app.add_subcommand("bslimit", "empirical ball laws along a size sequence");
    add_common(bs, c);
    bs->add_option("--n-grid", n_grid, "sizes, comma list or start:stop:step");
    bs->add_option("--radius", radius, "ball radius");
    bs->add_option("--roots", roots, "uniform roots per map");
    bs->add_flag("--graph", graph_mode, "compare balls as rooted graphs, ignoring the rotation");
    auto *fd = app.add_subcommand("forest-degree", "mean forest degree at the roots");
    add_common(fd, c);
    fd->add_option("--flavor", fd_flavor, "ust, wired-ust, mst-free or mst-wired");
    fd->add_option("--root-layers", root_layers,
                   "roots are the vertices up to this layer (default: 2 for pq_ball, else all)");
    auto *verify = app.add_subcommand("verify", "exact identity suite");
    add_common(verify, c, false);
    verify->add_option("--corpus", corpus_name, "builtin, random:N, or gen (uses --gen)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        std::ostringstream msg;
        app.exit(e, msg, msg);
        err << msg.str();
        return kExitConfigError;
    }

    std::ostringstream buf;
    int code = kExitOk;
    try {
        c.seed = effective_seed(c.seed);
        if (gen->parsed())
            code = cmd_gen(c, buf);
        else if (stats->parsed())
            code = cmd_stats(c, buf);
        else if (ust->parsed())
            code = cmd_forest(c, flavor, true, buf);
        else if (msf->parsed())
            code = cmd_forest(c, msf_flavor, false, buf);
        else if (walk->parsed())
            code = cmd_walk(c, steps, buf);
        else if (perc->parsed())
            code = cmd_perc(c, p_grid, buf);
        else if (bs->parsed())
            code = cmd_bslimit(c, n_grid, radius, roots, graph_mode, buf);
        else if (fd->parsed())
            code = cmd_forest_degree(c, fd_flavor, root_layers, buf);
        else if (verify->parsed())
            code = cmd_verify(c, corpus_name, buf);
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const IOError &e) {
        err << "io error: " << e.what() << '\n';
        return kExitIOError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }

    if (c.out.empty()) {
        out << buf.str();
    } else {
        std::ofstream file(c.out, std::ios::binary);
        if (!(file << buf.str()) || !file.flush()) {
            err << "io error: cannot write '" << c.out << "'\n";
            return kExitIOError;
        }
    }
    return code;
}

} // namespace mapforge
