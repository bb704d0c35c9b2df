#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "mapforge/map.hpp"

namespace mapforge {

/// Canonical byte string of a rooted isomorphism class.
struct BallCode {
    std::string bytes;

    auto operator<=>(const BallCode &) const = default;
    bool operator==(const BallCode &) const = default;
};

struct BallCodeHash {
    std::size_t operator()(const BallCode &c) const noexcept {
        return std::hash<std::string>{}(c.bytes);
    }
};

/**
 * Rooted-map code. Darts are numbered in breadth-first order from the root dart,
 * following sigma before alpha; the code lists (sigma, alpha) of every dart in
 * that numbering. Rooted maps are rigid, so the code is complete: equal codes iff
 * isomorphic as dart-rooted maps. Optional integer vertex marks are appended.
 */
BallCode canonical_code(const RootedMap &rooted);
BallCode canonical_code(const Map &map, Dart root, std::span<const std::int64_t> vertex_marks = {});

/// Minimum dart-rooted code over the darts at a vertex: a code for the
/// vertex-rooted isomorphism class.
BallCode vertex_rooted_code(const Map &map, Vertex root,
                            std::span<const std::int64_t> vertex_marks = {});

/**
 * Code of the underlying rooted multigraph, ignoring the rotation. Computed by
 * colour refinement plus individualisation; exponential in the worst case, meant
 * for small balls.
 */
BallCode rooted_graph_code(const Map &map, Vertex root,
                           std::span<const std::int64_t> vertex_marks = {});

} // namespace mapforge
