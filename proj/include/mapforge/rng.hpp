#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace mapforge {

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// What a stream is used for. Streams with distinct purposes never overlap.
enum class Purpose : std::uint32_t {
    Generic = 0,
    Walk = 1,
    Wilson = 2,
    Labels = 3,
    Root = 4,
    Generator = 5,
    Percolation = 6,
    Intersection = 7,
    Triangulation = 8,
    Relabel = 9,
};

/**
 * Counter-based random stream keyed by (seed, replica, purpose).
 *
 * Each (seed, replica, purpose) triple addresses an independent sequence, so
 * replicas can be evaluated in any order or on any thread and still produce the
 * same numbers. Satisfies UniformRandomBitGenerator.
 */
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t seed, std::uint64_t replica = 0,
                    Purpose purpose = Purpose::Generic);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next_u64(); }
    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// A fresh stream derived from this one's key; used for nested replicas.
    Stream substream(std::uint64_t index) const;

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint32_t replica_word_;
    std::uint32_t purpose_word_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
};

/// Random-access uniform in [0,1) addressed by (seed, purpose, index, attempt).
double keyed_uniform(std::uint64_t seed, Purpose purpose, std::uint64_t index,
                     std::uint32_t attempt = 0);

} // namespace mapforge
