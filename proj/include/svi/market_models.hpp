#ifndef SVI_MARKET_MODELS_HPP
#define SVI_MARKET_MODELS_HPP

#include <optional>
#include <vector>

#include "svi/certificates.hpp"
#include "svi/problem.hpp"

namespace svi {

/// Convex quadratic production cost 0.5 * gamma * x^2 + delta * x.
struct CournotFirm {
    double gamma = 0.0;
    double delta = 0.0;
};

/// Nonsmooth stochastic Cournot game: piecewise-affine decreasing price of the
/// aggregate output, quadratic costs, optional shared-capacity coupling.
struct CournotConfig {
    std::vector<CournotFirm> firms;
    std::vector<double> breakpoints;        // kink locations (segments - 1 of them)
    AffineInOmega intercept0;               // a^1(omega); later intercepts solved from continuity
    std::vector<AffineInOmega> slopes;      // b^j(omega) > 0 per segment
    double smoothing_eps = 1e-3;            // C1 blend half-width of the smoothed variant
    std::optional<double> total_capacity;   // present = SQVI with shared aggregate capacity
    std::optional<ScenarioModel> model;

    Index firm_count() const { return static_cast<Index>(firms.size()); }
    void validate() const;
    PiecewiseAffine price(double blend_eps) const;
};

/// Clarke interval of d p(X; omega) / dX: singleton slopes inside segments,
/// the two adjacent slopes exactly at a breakpoint (snap tolerance 1e-12).
Interval price_clarke_interval(const CournotConfig& config, double total_output, const Vector& omega);

struct CournotInstances {
    ProblemInstance interval;  // IntervalValued map; SVI or SQVI
    ProblemInstance smoothed;  // single-valued C1-blended map
};

/// Assembles both the interval-valued game map c_i'(x_i) - p(X) - x_i dp(X)
/// and its smoothed single-valued variant.
CournotInstances build_cournot(const CournotConfig& config);

/// Growth quotient inf_w w^T (x - x_ref) / ||x|| along one ray; PASS when the
/// tail is increasing and clears the threshold at the largest radius.
CertificateReport cournot_growth_probe(const CournotConfig& config, const Vector& direction,
                                       const std::vector<double>& radii, double threshold = 1.0,
                                       std::uint64_t seed = 0);

/// Networked power market (firms selling/generating at nodes, ISO-priced
/// transmission): linear nodal prices, quadratic costs, capacitated links.
struct PowerNetworkConfig {
    Index nodes = 1;
    Index firms = 1;
    std::vector<double> link_capacities;          // T_j >= 0
    Matrix pdf;                                   // links x nodes
    std::vector<AffineInOmega> price_intercepts;  // a_i(omega) > 0 per node
    Vector price_slopes;                          // b_i > 0 per node
    Matrix cost_quad;                             // kappa_{fi} >= 0 (firms x nodes)
    std::vector<std::vector<AffineInOmega>> cost_lin; // m_{fi}(omega) >= 0
    Matrix caps;                                  // cap_{fi} >= 0
    std::optional<ScenarioModel> model;

    Index link_count() const { return static_cast<Index>(link_capacities.size()); }
    Index var_count() const { return 3 * firms * nodes + link_count() + firms; }
    Index nonneg_count() const { return 3 * firms * nodes + link_count(); }

    // variable layout: s (firm-major), g, mu, eta | lambda (free)
    Index s_index(Index f, Index i) const { return f * nodes + i; }
    Index g_index(Index f, Index i) const { return firms * nodes + f * nodes + i; }
    Index mu_index(Index f, Index i) const { return 2 * firms * nodes + f * nodes + i; }
    Index eta_index(Index j) const { return 3 * firms * nodes + j; }
    Index lambda_index(Index f) const { return 3 * firms * nodes + link_count() + f; }

    void validate() const;
};

/// Mixed complementarity instance of the market equilibrium: stationarity rows
/// for sales and generation, capacity rows, link rows, and free market-clearing
/// rows per firm.
ProblemInstance build_power_market(const PowerNetworkConfig& config);

/// u(omega) = max_i a_i(omega) * total capacity: the integrable lower-bound
/// envelope for x^T H(x; omega) over the capped region.
double power_market_u_bound(const PowerNetworkConfig& config, const Vector& omega);

struct EquilibriumReport {
    double max_complementarity = 0.0; // |x_i * row_i| over the nonnegative block
    double max_primal_infeasibility = 0.0; // max(0, -x_i)
    double max_dual_infeasibility = 0.0;   // max(0, -row_i) on the nonnegative block
    double max_free_equation = 0.0;        // |row| on the free block
    double simplification_error = 0.0;     // |(x,l)^T H_full - x^T H(x, l=0)| over samples
    bool within(double tol) const {
        return max_complementarity <= tol && max_primal_infeasibility <= tol &&
               max_dual_infeasibility <= tol && max_free_equation <= tol;
    }
};

/// Residual report for a candidate equilibrium of a MixedSCP instance, using
/// the exact expected map; also samples the inner-product simplification
/// identity at random points.
EquilibriumReport verify_equilibrium(const ProblemInstance& problem, const Vector& x, double tol,
                                     std::uint64_t seed = 0);

} // namespace svi

#endif
