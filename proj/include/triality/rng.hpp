// rng.hpp — Seeded substream derivation and Poisson count draws

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace triality {

// splitmix64 step (Vigna). Used only to mix seeds, never as the main stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive an independent child seed from (seed, salt). Order-independent:
// parallel consumers may draw their substreams in any sequence.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + salt * 0x9e3779b97f4a7c15ULL);
    splitmix64(s);
    return splitmix64(s);
}

// Engine for one substream of a run.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t salt) {
    return std::mt19937_64(mix_seed(seed, salt));
}

// One Poisson count with the given mean. mean = 0 draws are always 0.
inline long long poisson_draw(std::mt19937_64& eng, double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson_draw: mean must be >= 0");
    if (mean == 0.0) return 0;
    std::poisson_distribution<long long> dist(mean);
    return dist(eng);
}

} // namespace triality
