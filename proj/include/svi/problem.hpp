#ifndef SVI_PROBLEM_HPP
#define SVI_PROBLEM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "svi/ground_set.hpp"
#include "svi/scenario.hpp"
#include "svi/scenario_map.hpp"

namespace svi {

enum class ProblemKind { Svi, Scp, MixedScp, Sqvi };

/// Moving set K(x) for quasi-variational instances. Two structured forms:
///  - Translated: K(x) = c(x) + K0 with affine c(x) = C x + c0;
///  - AggregateCapacityBox: K_i(x) = [0, C_tot - sum_{j != i} x_j] per coordinate
///    (the shared-capacity Cournot coupling).
class MovingSet {
public:
    enum class Kind { Translated, AggregateCapacityBox };

    static MovingSet translated(GroundSet base, Matrix c_lin, Vector c_const);
    static MovingSet aggregate_capacity_box(Index n, double total_capacity);

    Kind kind() const { return kind_; }
    Index dim() const { return dim_; }
    const GroundSet& base() const { return base_; }
    const Matrix& c_lin() const { return c_lin_; }
    const Vector& c_const() const { return c_const_; }
    double total_capacity() const { return total_capacity_; }

    Vector translation(const Vector& x) const;

    /// Projection of z onto K(x).
    Vector project_at(const Vector& x, const Vector& z) const;

    /// Membership test z in K(x).
    bool member(const Vector& x, const Vector& z, double tol = 1e-9) const;

    /// A point of K(x) drawn uniformly from a bounded slice (used by samplers).
    Vector sample_point(const Vector& x, Rng& rng, double radius = 1.0) const;

private:
    explicit MovingSet(GroundSet base) : base_(std::move(base)) {}

    Kind kind_ = Kind::Translated;
    Index dim_ = 0;
    GroundSet base_;
    Matrix c_lin_;
    Vector c_const_;
    double total_capacity_ = 0.0;
};

/// A fully specified instance: kind tag, ground set (plus moving-set descriptor
/// for SQVI), scenario-based map, and scenario model. Immutable after construction.
struct ProblemInstance {
    ProblemKind kind;
    GroundSet set;
    std::optional<MovingSet> moving_set; // SQVI only
    ScenarioMap map;
    ScenarioModel scenarios;
    Index dim;

    ProblemInstance(ProblemKind kind, GroundSet set, std::optional<MovingSet> moving,
                    ScenarioMap map, ScenarioModel scenarios);
};

ProblemInstance make_problem(ProblemKind kind, GroundSet set, ScenarioMap map, ScenarioModel scenarios);
ProblemInstance make_sqvi(MovingSet moving, ScenarioMap map, ScenarioModel scenarios);

enum class ExpectationKind { ExactFiniteSum, MonteCarlo };

struct ExpectationMode {
    ExpectationKind kind = ExpectationKind::ExactFiniteSum;
    Index n = 0;            // MonteCarlo sample count
    std::uint64_t seed = 0; // MonteCarlo seed
    static ExpectationMode exact() { return {}; }
    static ExpectationMode monte_carlo(Index n, std::uint64_t seed) {
        return {ExpectationKind::MonteCarlo, n, seed};
    }
};

struct ExpectationEstimate {
    Vector value;
    ExpectationKind kind = ExpectationKind::ExactFiniteSum;
    Index n = 0;
    std::uint64_t seed = 0;
    Vector stderr_; // MonteCarlo only (per component)
};

/// F(x; omega) for a single-valued instance.
Vector eval_map(const ProblemInstance& problem, const Vector& x, const Vector& omega);

/// Estimate of E[F(x; omega)]: exact weighted sum for finite models, sample
/// mean with per-component standard errors for Monte Carlo.
ExpectationEstimate expected_map(const ProblemInstance& problem, const Vector& x, const ExpectationMode& mode);

/// || x - project(set, x - Fx) ||_2; zero exactly at VI(K, F) solutions.
double natural_residual(const ProblemInstance& problem, const Vector& x, const Vector& fx);
double natural_residual(const GroundSet& set, const Vector& x, const Vector& fx);

/// Componentwise Fischer-Burmeister residual sqrt(x_i^2 + F_i^2) - (x_i + F_i).
Vector fb_residual(const Vector& x, const Vector& fx);

/// Deterministic averaged map: exact finite-sum weights or a frozen sample.
/// Exposes the averaged Jacobian (analytic for random-affine maps, finite
/// differences otherwise) for Newton-type solvers and step sizing.
class AveragedMap {
public:
    static AveragedMap exact(ScenarioMap map, const ScenarioModel& model);
    static AveragedMap frozen(ScenarioMap map, std::vector<Vector> draws);
    /// Single fixed scenario (a deterministic map).
    static AveragedMap single(ScenarioMap map, Vector omega);

    Vector operator()(const Vector& x) const;
    Matrix jacobian(const Vector& x) const;
    /// Constant Jacobian when the underlying map is affine with deterministic M.
    std::optional<Matrix> constant_jacobian() const;
    Index dim() const { return map_.dim(); }
    Index scenario_count() const { return static_cast<Index>(omegas_.size()); }
    const std::vector<Vector>& scenarios() const { return omegas_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    explicit AveragedMap(ScenarioMap map) : map_(std::move(map)) {}
    ScenarioMap map_;
    std::vector<Vector> omegas_;
    std::vector<double> weights_;
};

} // namespace svi

#endif
