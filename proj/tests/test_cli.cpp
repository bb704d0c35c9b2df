#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mapforge/cli.hpp"
#include "mapforge/interchange.hpp"

using namespace mapforge;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "mapforge");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);)
        out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("gen writes the interchange format") {
    const Result r = run({"gen", "--gen", "platonic:cube"});
    CHECK(r.code == 0);
    const MapDocument doc = map_from_json(r.out);
    CHECK(doc.map.num_vertices() == 8);
    CHECK(doc.root.has_value());
}

TEST_CASE("stats writes the curvature table") {
    const Result r = run({"stats", "--gen", "platonic:tetrahedron"});
    CHECK(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 5);
    CHECK(l[0] == "vertex_id,degree,theta,kappa");
    const Result j = run({"stats", "--gen", "platonic:tetrahedron", "--json"});
    CHECK(j.out.find("\"genus\":0") != std::string::npos);
}

TEST_CASE("ust reports the analytic mean degree") {
    const Result r = run({"ust", "--gen", "torus:16x16", "--replicas", "5", "--seed", "1"});
    CHECK(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 6);
    CHECK(l[0] == "replica,flavor,root,root_degree,mean_degree,n_edges,analytic_mean_degree");
    const std::string analytic = format_double(2.0 - 2.0 / 256.0);
    for (std::size_t i = 1; i < l.size(); ++i) {
        CHECK(l[i].rfind(std::to_string(i - 1) + ",ust,", 0) == 0);
        CHECK(l[i].find("," + analytic + ",255," + analytic) != std::string::npos);
    }
    const Result json = run({"msf", "--gen", "torus:4x4", "--replicas", "2", "--json"});
    CHECK(json.out.find("\"flavor\":\"mst-free\"") != std::string::npos);
}

TEST_CASE("forest-degree on a hyperbolic ball carries the 7/3 reference") {
    const Result r = run({"forest-degree", "--gen", "pq_ball:3,7,6", "--replicas", "200"});
    CHECK(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "flavor,replicas,estimate,stderr,reference");
    CHECK(l[1].rfind("ust,200,", 0) == 0);
    CHECK(l[1].substr(l[1].rfind(',') + 1) == format_double(7.0 / 3.0));
}

TEST_CASE("perc and bslimit schemas") {
    const Result p = run({"perc", "--gen", "disc_grid:6x6", "--replicas", "10", "--p-grid", "0:1:0.25"});
    CHECK(p.code == 0);
    const auto pl = lines(p.out);
    REQUIRE(pl.size() == 6);
    CHECK(pl[0] == "p,mean_clusters,max_cluster_fraction,crossing_probability");
    CHECK(pl[1].rfind("0,36,", 0) == 0);
    CHECK(pl[5] == "1,1,1,1");
    const Result b = run({"bslimit", "--gen", "torus:4x4", "--n-grid", "6,8", "--roots", "50"});
    CHECK(b.code == 0);
    const auto bl = lines(b.out);
    REQUIRE(bl.size() == 3);
    CHECK(bl[0] == "n,distinct_balls,tv_to_prev");
    CHECK(bl[2] == "8,1,0");
    const Result w = run({"walk", "--gen", "torus:5x5", "--replicas", "3", "--steps", "10"});
    CHECK(w.code == 0);
    CHECK(lines(w.out).size() == 4);
}

TEST_CASE("verify passes on the builtin corpus") {
    const Result r = run({"verify", "--corpus", "builtin", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find(" 0 failures") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({"stats", "--gen", "nosuch:3"}).code == kExitConfigError);
    CHECK(run({"stats"}).code == kExitConfigError);
    CHECK(run({"bogus"}).code == kExitConfigError);
    CHECK(run({"ust", "--gen", "torus:3x3", "--flavor", "mst-free"}).code == kExitConfigError);
    CHECK(run({"ust", "--gen", "torus:3x3", "--flavor", "wired-ust"}).code == kExitConfigError);
    CHECK(run({"stats", "--gen", "@/nonexistent/spec.toml"}).code == kExitIOError);
    CHECK(run({"stats", "--gen", "cycle:3", "--out", "/nonexistent/dir/out.csv"}).code == kExitIOError);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("toml spec files and --out") {
    const std::string spec = "mapforge_test_spec.toml";
    {
        std::ofstream f(spec);
        f << "family = \"disc_grid\"\nwidth = 3\nheight = 2\n";
    }
    const std::string out = "mapforge_test_out.csv";
    const Result r = run({"stats", "--gen", "@" + spec, "--out", out});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(lines(buf.str()).size() == 7);
    std::remove(spec.c_str());
    std::remove(out.c_str());
}

TEST_CASE("MAPFORGE_SEED overrides --seed") {
    const auto args = std::vector<std::string>{"ust", "--gen", "torus:5x5", "--replicas", "4", "--seed", "1"};
    const Result plain = run(args);
    ::setenv("MAPFORGE_SEED", "99", 1);
    const Result overridden = run(args);
    auto with99 = args;
    with99.back() = "99";
    const Result explicit99 = run(with99);
    ::setenv("MAPFORGE_SEED", "x", 1);
    const Result bad = run(args);
    ::unsetenv("MAPFORGE_SEED");
    CHECK(overridden.out == explicit99.out);
    CHECK(overridden.out != plain.out);
    CHECK(bad.code == kExitConfigError);
}

TEST_CASE("output does not depend on the thread count") {
    const std::vector<std::vector<std::string>> commands{
        {"ust", "--gen", "torus:6x6", "--replicas", "16", "--seed", "3"},
        {"msf", "--gen", "disc_grid:5x5", "--replicas", "16", "--flavor", "mst-wired"},
        {"perc", "--gen", "disc_grid:6x6", "--replicas", "16"},
        {"bslimit", "--gen", "pq_ball:3,7,2", "--n-grid", "2,3", "--roots", "40"},
        {"forest-degree", "--gen", "pq_ball:3,7,3", "--replicas", "16"},
        {"walk", "--gen", "torus:6x6", "--replicas", "16"},
    };
    for (const auto &cmd : commands) {
        CAPTURE(cmd[0]);
        auto one = cmd, four = cmd;
        one.insert(one.end(), {"--threads", "1"});
        four.insert(four.end(), {"--threads", "4"});
        const Result a = run(one), b = run(four);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}
