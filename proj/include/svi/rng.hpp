#ifndef SVI_RNG_HPP
#define SVI_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace svi {

/// splitmix64 step; used to derive independent sub-streams from one seed.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic sub-seed for a named subsystem and task index.
/// Every consumer of randomness derives its stream through this, so a single
/// top-level seed reproduces the whole run (see README for the derivation table).
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view subsystem, std::uint64_t task = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a over the subsystem tag
    for (char c : subsystem) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return mix_seed(seed ^ mix_seed(h ^ mix_seed(task)));
}

/// mt19937_64 wrapper with fixed-consumption uniform/normal draws, so streams
/// are bit-stable for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1), 53-bit resolution.
    double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * canonical(); }

    /// Box-Muller (cosine branch); consumes exactly two engine draws.
    double normal(double mu, double sigma) {
        double u1 = canonical();
        double u2 = canonical();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
        return mu + sigma * z;
    }

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace svi

#endif
