#ifndef CMOPBENCH_RNG_HPP
#define CMOPBENCH_RNG_HPP

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cmopbench/types.hpp"

namespace cmopbench {

/// Seedable, platform-independent random stream (xoshiro256++ seeded via
/// splitmix64). All randomness in the library goes through this type;
/// identical seeds replay identical sequences on every platform.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);

    /// Uniform integer in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n);

    /// Fisher-Yates permutation of 0..n-1.
    std::vector<std::size_t> permutation(std::size_t n);

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_;
};

/// Stable 64-bit seed for one (problem, algorithm, run) cell: FNV-1a over
/// the canonical string "problem\x1falgorithm\x1frun", XORed with the master
/// seed and passed through a splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view problem,
                          std::string_view algorithm, std::uint64_t run_index);

/// n points sampled coordinate-wise uniformly inside the box.
std::vector<std::vector<double>> uniform_init(const BoxBounds& bounds, std::size_t n,
                                              RngStream& rng);

} // namespace cmopbench

#endif
