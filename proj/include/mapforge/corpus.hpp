#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mapforge/generators.hpp"

namespace mapforge {

struct CorpusEntry {
    std::string name;
    Generated generated;

    const Map &map() const { return generated.map; }
};

/// Fixed collection of small named maps of genus 0 to 2, including loops and
/// parallel edges. Deterministic.
std::vector<CorpusEntry> builtin_corpus();

/// The builtin corpus followed by random rotations and random trees until
/// `count` maps are collected; genus at most 2.
std::vector<CorpusEntry> random_corpus(std::size_t count, std::uint64_t seed);

} // namespace mapforge
