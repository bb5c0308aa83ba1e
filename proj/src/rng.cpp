#include "cmopbench/rng.hpp"

#include <bit>

#include "cmopbench/errors.hpp"

namespace cmopbench {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::size_t RngStream::uniform_index(std::size_t n) {
    if (n == 0) throw PreconditionError("uniform_index requires n > 0");
    // Mask rejection keeps the draw unbiased and platform independent.
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t draw;
    do {
        draw = next_u64() & mask;
    } while (draw >= n);
    return static_cast<std::size_t>(draw);
}

std::vector<std::size_t> RngStream::permutation(std::size_t n) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = uniform_index(i);
        std::swap(order[i - 1], order[j]);
    }
    return order;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view problem,
                          std::string_view algorithm, std::uint64_t run_index) {
    constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
    constexpr std::uint64_t kPrime = 0x100000001b3ULL;
    std::uint64_t hash = kOffset;
    auto mix = [&](std::string_view s) {
        for (unsigned char c : s) {
            hash ^= c;
            hash *= kPrime;
        }
        hash ^= 0x1f;  // field separator
        hash *= kPrime;
    };
    mix(problem);
    mix(algorithm);
    for (int shift = 0; shift < 64; shift += 8) {
        hash ^= (run_index >> shift) & 0xff;
        hash *= kPrime;
    }
    std::uint64_t state = hash ^ master_seed;
    return splitmix64(state);
}

std::vector<std::vector<double>> uniform_init(const BoxBounds& bounds, std::size_t n,
                                              RngStream& rng) {
    if (n == 0) throw PreconditionError("uniform_init requires n >= 1");
    std::vector<std::vector<double>> points(n);
    const std::size_t d = bounds.dimension();
    for (auto& x : points) {
        x.resize(d);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
        }
    }
    return points;
}

} // namespace cmopbench
