#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mapforge/corpus.hpp"

namespace mapforge {

struct IdentityCheck {
    std::string map;
    std::string identity;
    bool passed = false;
    double lhs = 0;
    double rhs = 0;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    std::size_t failures() const;
};

/**
 * Euler, Gauss-Bonnet (exact), average curvature, face transport, dual degree,
 * the complement-dual degree identity (genus 0), mass transport, dual
 * involution, and spanning tree / MST duality (genus 0) on every map.
 */
IdentityReport verify_map(const CorpusEntry &entry, std::uint64_t seed, double tolerance = 1e-10);
IdentityReport verify_corpus(std::span<const CorpusEntry> corpus, std::uint64_t seed,
                             double tolerance = 1e-10, unsigned threads = 1);

/// One line per check, then a summary line.
void write_report(std::ostream &out, const IdentityReport &report);

} // namespace mapforge
