#include "svi/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace svi {

ScenarioModel ScenarioModel::finite_discrete(std::vector<Outcome> outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("FiniteDiscrete: needs at least one outcome");
    const Index d = outcomes.front().omega.size();
    double total = 0.0;
    for (const auto& o : outcomes) {
        if (o.omega.size() != d) throw std::invalid_argument("FiniteDiscrete: inconsistent omega dimensions");
        if (o.prob < 0.0) throw std::invalid_argument("FiniteDiscrete: probabilities must be >= 0");
        total += o.prob;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("FiniteDiscrete: probabilities must sum to 1 within 1e-12");
    ScenarioModel m;
    m.finite_ = true;
    m.omega_dim_ = d;
    m.outcomes_ = std::move(outcomes);
    return m;
}

ScenarioModel ScenarioModel::sampler(std::vector<CoordDist> coords, std::uint64_t seed) {
    if (coords.empty()) throw std::invalid_argument("Sampler: needs at least one coordinate");
    for (const auto& c : coords) {
        if (c.kind == DistKind::Uniform && !(c.p1 <= c.p2)) throw std::invalid_argument("Sampler: Uniform requires a <= b");
        if (c.kind == DistKind::Normal && !(c.p2 >= 0.0)) throw std::invalid_argument("Sampler: Normal requires sigma >= 0");
    }
    ScenarioModel m;
    m.finite_ = false;
    m.omega_dim_ = static_cast<Index>(coords.size());
    m.coords_ = std::move(coords);
    m.seed_ = seed;
    return m;
}

std::vector<Vector> ScenarioModel::sample(Index n, std::uint64_t seed) const {
    if (n < 1) throw std::invalid_argument("sample: N must be >= 1");
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(n));
    Rng rng(derive_seed(seed, "scenario-sample"));
    if (finite_) {
        // inverse CDF over the outcome list
        std::vector<double> cum(outcomes_.size());
        double acc = 0.0;
        for (std::size_t k = 0; k < outcomes_.size(); ++k) {
            acc += outcomes_[k].prob;
            cum[k] = acc;
        }
        cum.back() = 1.0;
        for (Index i = 0; i < n; ++i) {
            const double u = rng.canonical();
            std::size_t k = 0;
            while (k + 1 < cum.size() && u >= cum[k]) ++k;
            out.push_back(outcomes_[k].omega);
        }
    } else {
        for (Index i = 0; i < n; ++i) {
            Vector w(omega_dim_);
            for (Index j = 0; j < omega_dim_; ++j) {
                const auto& c = coords_[static_cast<std::size_t>(j)];
                w[j] = c.kind == DistKind::Uniform ? rng.uniform(c.p1, c.p2) : rng.normal(c.p1, c.p2);
            }
            out.push_back(std::move(w));
        }
    }
    return out;
}

Vector ScenarioModel::mean_omega() const {
    Vector mu = Vector::Zero(omega_dim_);
    if (finite_) {
        for (const auto& o : outcomes_) mu += o.prob * o.omega;
    } else {
        for (Index j = 0; j < omega_dim_; ++j) {
            const auto& c = coords_[static_cast<std::size_t>(j)];
            mu[j] = c.kind == DistKind::Uniform ? 0.5 * (c.p1 + c.p2) : c.p1;
        }
    }
    return mu;
}

std::vector<Vector> sample_scenarios(const ScenarioModel& model, Index n, std::uint64_t seed) {
    return model.sample(n, seed);
}

} // namespace svi
