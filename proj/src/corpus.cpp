#include "mapforge/corpus.hpp"

namespace mapforge {

namespace {

void add(std::vector<CorpusEntry> &out, const std::string &spec, std::uint64_t seed = 0) {
    Generated g = generate(parse_generator(spec), seed);
    // the dartless map has no corners, so the curvature identities do not apply
    if (g.map.genus() > 2 || g.map.num_darts() == 0)
        return;
    std::string name = spec;
    if (seed != 0)
        name += "@" + std::to_string(seed);
    out.push_back({std::move(name), std::move(g)});
}

} // namespace

std::vector<CorpusEntry> builtin_corpus() {
    std::vector<CorpusEntry> out;
    for (const char *solid : {"tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"})
        add(out, std::string("platonic:") + solid);
    for (int n = 1; n <= 6; ++n)
        add(out, "cycle:" + std::to_string(n));
    for (int n = 2; n <= 5; ++n)
        add(out, "path:" + std::to_string(n));
    for (int n = 2; n <= 4; ++n)
        add(out, "star:" + std::to_string(n));
    for (int n = 3; n <= 7; ++n)
        add(out, "polygon:" + std::to_string(n));
    for (int k = 1; k <= 4; ++k)
        add(out, "dipole:" + std::to_string(k));
    for (int k = 1; k <= 3; ++k)
        add(out, "bouquet:" + std::to_string(k));
    add(out, "bouquet_genus2");
    add(out, "k4_torus");
    add(out, "petersen");
    for (int n = 2; n <= 5; ++n)
        add(out, "complete:" + std::to_string(n));
    for (const char *dims : {"1x1", "1x3", "2x2", "2x3", "3x3", "4x4"})
        add(out, std::string("torus:") + dims);
    for (const char *dims : {"2x2", "2x3", "3x3"})
        add(out, std::string("disc_grid:") + dims);
    for (int r = 1; r <= 3; ++r)
        add(out, "diamond:" + std::to_string(r));
    add(out, "pq_ball:3,7,1");
    add(out, "pq_ball:3,7,2");
    add(out, "pq_ball:4,5,1");
    add(out, "pq_ball:5,4,1");
    for (int n = 1; n <= 3; ++n)
        add(out, "canopy:" + std::to_string(n));
    add(out, "thick_canopy:1");
    add(out, "thick_canopy:2");
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
        add(out, "gw_tree:poisson,1.0,4,40,biased", seed);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        add(out, "random_rotation:complete:5", seed);
        add(out, "random_rotation:platonic:cube", seed);
        add(out, "random_rotation:dipole:3", seed);
    }
    return out;
}

std::vector<CorpusEntry> random_corpus(std::size_t count, std::uint64_t seed) {
    std::vector<CorpusEntry> out = builtin_corpus();
    const char *bases[] = {"random_rotation:petersen",   "random_rotation:torus:3x3",
                           "random_rotation:diamond:2",  "random_rotation:platonic:octahedron",
                           "gw_tree:geometric,1.0,5,60", "random_rotation:complete:4"};
    for (std::uint64_t i = 0; out.size() < count; ++i)
        add(out, bases[i % std::size(bases)], seed * 1000 + i + 1);
    out.resize(std::min(out.size(), count));
    return out;
}

} // namespace mapforge
