#include "mapforge/canonical.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

namespace mapforge {

namespace {

void put_varint(std::string &out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7F) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

void put_signed(std::string &out, std::int64_t v) {
    // zigzag
    put_varint(out, (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63));
}

} // namespace

BallCode canonical_code(const Map &map, Dart root, std::span<const std::int64_t> marks) {
    BallCode code;
    const std::size_t n = map.num_darts();
    put_varint(code.bytes, n);
    if (n == 0) {
        if (!marks.empty())
            put_signed(code.bytes, marks[0]);
        return code;
    }
    std::vector<Dart> label(n, kNoDart);
    std::vector<Dart> order;
    order.reserve(n);
    label[root] = 0;
    order.push_back(root);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Dart d = order[i];
        for (Dart next : {map.sigma(d), map.alpha(d)}) {
            if (label[next] == kNoDart) {
                label[next] = static_cast<Dart>(order.size());
                order.push_back(next);
            }
        }
    }
    for (Dart d : order) {
        put_varint(code.bytes, label[map.sigma(d)]);
        put_varint(code.bytes, label[map.alpha(d)]);
    }
    if (!marks.empty()) {
        // one mark per vertex, in order of first appearance
        std::vector<char> seen(map.num_vertices(), 0);
        for (Dart d : order) {
            const Vertex v = map.tail(d);
            if (!seen[v]) {
                seen[v] = 1;
                put_signed(code.bytes, marks[v]);
            }
        }
    }
    return code;
}

BallCode canonical_code(const RootedMap &rooted) {
    return canonical_code(rooted.map, rooted.root_dart);
}

BallCode vertex_rooted_code(const Map &map, Vertex root, std::span<const std::int64_t> marks) {
    if (map.num_darts() == 0)
        return canonical_code(map, 0, marks);
    BallCode best;
    bool first = true;
    for (Dart d : map.darts_at(root)) {
        BallCode c = canonical_code(map, d, marks);
        if (first || c < best) {
            best = std::move(c);
            first = false;
        }
    }
    return best;
}

namespace {

struct GraphCanon {
    std::size_t k = 0;
    std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> adj; // (nbr, multiplicity)
    std::vector<std::uint32_t> loops;
    std::vector<std::int64_t> marks;

    std::vector<std::size_t> refine(std::vector<std::size_t> colors) const {
        std::size_t classes = 0;
        {
            auto tmp = colors;
            std::sort(tmp.begin(), tmp.end());
            classes = static_cast<std::size_t>(std::unique(tmp.begin(), tmp.end()) - tmp.begin());
        }
        while (true) {
            using Sig = std::tuple<std::size_t, std::uint32_t,
                                   std::vector<std::pair<std::size_t, std::uint32_t>>>;
            std::vector<Sig> sig(k);
            for (std::size_t v = 0; v < k; ++v) {
                std::vector<std::pair<std::size_t, std::uint32_t>> nb;
                nb.reserve(adj[v].size());
                for (auto [u, m] : adj[v])
                    nb.push_back({colors[u], m});
                std::sort(nb.begin(), nb.end());
                sig[v] = {colors[v], loops[v], std::move(nb)};
            }
            std::vector<Sig> distinct = sig;
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            std::vector<std::size_t> next(k);
            for (std::size_t v = 0; v < k; ++v)
                next[v] = static_cast<std::size_t>(
                    std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
            colors = std::move(next);
            if (distinct.size() == classes)
                return colors;
            classes = distinct.size();
        }
    }

    std::string encode(const std::vector<std::size_t> &colors) const {
        std::vector<std::size_t> pos(k);
        for (std::size_t v = 0; v < k; ++v)
            pos[colors[v]] = v;
        std::string out;
        put_varint(out, k);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t v = pos[i];
            put_signed(out, marks.empty() ? 0 : marks[v]);
            put_varint(out, loops[v]);
            std::vector<std::pair<std::size_t, std::uint32_t>> row;
            for (auto [u, m] : adj[v])
                row.push_back({colors[u], m});
            std::sort(row.begin(), row.end());
            put_varint(out, row.size());
            for (auto [c, m] : row) {
                put_varint(out, c);
                put_varint(out, m);
            }
        }
        return out;
    }

    std::string search(std::vector<std::size_t> colors) const {
        colors = refine(std::move(colors));
        std::map<std::size_t, std::vector<std::size_t>> cells;
        for (std::size_t v = 0; v < k; ++v)
            cells[colors[v]].push_back(v);
        const std::vector<std::size_t> *target = nullptr;
        for (const auto &[c, members] : cells)
            if (members.size() > 1 && (!target || members.size() < target->size()))
                target = &members;
        if (!target)
            return encode(colors);
        std::string best;
        bool first = true;
        for (std::size_t chosen : *target) {
            std::vector<std::size_t> split(k);
            for (std::size_t v = 0; v < k; ++v)
                split[v] = 2 * colors[v] + ((colors[v] == colors[chosen] && v != chosen) ? 1 : 0);
            std::string candidate = search(std::move(split));
            if (first || candidate < best) {
                best = std::move(candidate);
                first = false;
            }
        }
        return best;
    }
};

} // namespace

BallCode rooted_graph_code(const Map &map, Vertex root, std::span<const std::int64_t> marks) {
    GraphCanon g;
    g.k = map.num_vertices();
    g.adj.resize(g.k);
    g.loops.assign(g.k, 0);
    std::vector<std::map<std::size_t, std::uint32_t>> mult(g.k);
    for (Edge e = 0; e < map.num_edges(); ++e) {
        const auto [u, v] = map.endpoints(e);
        if (u == v) {
            ++g.loops[u];
        } else {
            ++mult[u][v];
            ++mult[v][u];
        }
    }
    for (std::size_t v = 0; v < g.k; ++v)
        for (auto [u, m] : mult[v])
            g.adj[v].push_back({u, m});
    if (!marks.empty())
        g.marks.assign(marks.begin(), marks.end());
    // initial colouring: (is root, mark)
    std::vector<std::pair<int, std::int64_t>> init(g.k);
    for (std::size_t v = 0; v < g.k; ++v)
        init[v] = {v == root ? 1 : 0, marks.empty() ? 0 : marks[v]};
    auto distinct = init;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::size_t> colors(g.k);
    for (std::size_t v = 0; v < g.k; ++v)
        colors[v] = static_cast<std::size_t>(
            std::lower_bound(distinct.begin(), distinct.end(), init[v]) - distinct.begin());
    BallCode code;
    code.bytes = "G" + g.search(std::move(colors));
    return code;
}

} // namespace mapforge
