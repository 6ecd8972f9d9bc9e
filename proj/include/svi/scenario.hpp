#ifndef SVI_SCENARIO_HPP
#define SVI_SCENARIO_HPP

#include <cstdint>
#include <vector>

#include "svi/rng.hpp"
#include "svi/types.hpp"

namespace svi {

/// One outcome of a finite discrete scenario model.
struct Outcome {
    Vector omega;
    double prob = 0.0;
};

enum class DistKind { Uniform, Normal };

/// Per-coordinate distribution of a continuous sampler: Uniform(a, b) or Normal(mu, sigma).
struct CoordDist {
    DistKind kind = DistKind::Uniform;
    double p1 = 0.0; // a or mu
    double p2 = 1.0; // b or sigma
};

/// The probability space: a finite discrete set {(omega_k, p_k)} or a seeded
/// per-coordinate continuous sampler. Immutable after construction; all draws
/// are reproducible from (seed, task index).
class ScenarioModel {
public:
    static ScenarioModel finite_discrete(std::vector<Outcome> outcomes);
    static ScenarioModel sampler(std::vector<CoordDist> coords, std::uint64_t seed);

    bool is_finite() const { return finite_; }
    Index omega_dim() const { return omega_dim_; }
    const std::vector<Outcome>& outcomes() const { return outcomes_; }
    const std::vector<CoordDist>& coords() const { return coords_; }
    std::uint64_t default_seed() const { return seed_; }

    /// i.i.d. draws: inverse CDF for the finite model, per-spec draws for the sampler.
    std::vector<Vector> sample(Index n, std::uint64_t seed) const;

    /// Closed-form E[omega].
    Vector mean_omega() const;

private:
    ScenarioModel() = default;

    bool finite_ = true;
    Index omega_dim_ = 0;
    std::vector<Outcome> outcomes_;
    std::vector<CoordDist> coords_;
    std::uint64_t seed_ = 0;
};

/// Draws N scenarios from the model, reproducibly under the given seed.
std::vector<Vector> sample_scenarios(const ScenarioModel& model, Index n, std::uint64_t seed);

} // namespace svi

#endif
