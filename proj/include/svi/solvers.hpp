#ifndef SVI_SOLVERS_HPP
#define SVI_SOLVERS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "svi/problem.hpp"

namespace svi {

enum class SolveStatus { Converged, MaxIter, Diverged };

struct SolverConfig {
    double tol = 1e-8;      // deterministic default; stochastic methods use 1e-4
    Index max_iter = 20000;
    double tau = 0.0;       // extragradient step; 0 = auto (0.9 / Lipschitz estimate)
    double theta = 1.0;     // stochastic-approximation step rule theta / k
    Index samples = 0;      // SAA/ERM sample size; 0 = exact weights (finite models)
    double erm_mu0 = 1e-1;  // ERM smoothing start, halved per stage
    Index erm_stages = 8;
    std::uint64_t seed = 0;
    bool sa_average = true; // iterate averaging for sa_solve
    bool keep_trace = false;
    Vector x0;              // empty = projection of zero onto the set

    static SolverConfig deterministic() { return {}; }
    static SolverConfig stochastic() {
        SolverConfig c;
        c.tol = 1e-4;
        c.max_iter = 100000;
        return c;
    }
    void validate() const;
};

struct SolveResult {
    Vector x;
    double residual = kInf;   // natural or FB residual, per solver
    Index iterations = 0;
    SolveStatus status = SolveStatus::MaxIter;
    std::vector<double> trace; // per-iteration residuals (or per-stage ERM objectives)
    std::uint64_t seed = 0;    // config echo
    Index samples_used = 0;
    double objective = 0.0;    // ERM achieved objective
    std::string note;
};

/// Extragradient iteration y = P(x - tau F(x)), x+ = P(x - tau F(y)) on a
/// deterministic averaged map; stops at natural residual <= tol.
SolveResult extragradient_solve(const GroundSet& set, const std::function<Vector(const Vector&)>& averaged_map,
                                Vector x0, const SolverConfig& config,
                                std::optional<double> lipschitz_hint = std::nullopt);

/// Sample-average approximation: freezes the scenario average (exact weights
/// when samples == 0 on finite models) and delegates to extragradient (SVI)
/// or semismooth Newton (SCP kinds).
SolveResult saa_solve(const ProblemInstance& problem, const SolverConfig& config);

/// Projected stochastic approximation x+ = P(x - theta/k F(x; omega_k)); the
/// returned residual is measured against a high-accuracy expected map.
SolveResult sa_solve(const ProblemInstance& problem, const SolverConfig& config);

/// Semismooth Newton on the Fischer-Burmeister system (raw equations on the
/// free block of mixed problems), Armijo-globalized, with a gradient-step
/// fallback at singular generalized Jacobians.
SolveResult ssn_fb_solve(const ProblemInstance& problem, Vector x0, const SolverConfig& config);
SolveResult ssn_fb_solve_map(const GroundSet& set, const AveragedMap& averaged, Vector x0, const SolverConfig& config);

/// Expected-residual minimization over the nonnegative orthant with a smoothed
/// FB function and mu-continuation; the achieved objective may be positive.
SolveResult erm_solve(const ProblemInstance& problem, const SolverConfig& config);

/// Evaluates the (sampled or exact) ERM objective E ||Phi_FB(x; omega)|| at x.
double erm_objective(const ProblemInstance& problem, const Vector& x, const SolverConfig& config);

/// Fixed-point iteration for SQVIs with structured moving sets: solve
/// VI(K(x_k), F) for x_{k+1} until the displacement drops below tol. Absence
/// of convergence is reported via status, not as an error.
SolveResult qvi_fixed_point(const ProblemInstance& problem, const SolverConfig& config);

} // namespace svi

#endif
