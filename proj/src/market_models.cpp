#include "svi/market_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svi {

namespace {

/// Scenario points used for construction-time positivity checks.
std::vector<Vector> validation_scenarios(const std::optional<ScenarioModel>& model, Index omega_dim) {
    std::vector<Vector> out;
    if (!model) {
        out.push_back(Vector::Zero(omega_dim));
        return out;
    }
    if (model->is_finite()) {
        for (const auto& o : model->outcomes()) out.push_back(o.omega);
    } else {
        out = model->sample(64, derive_seed(model->default_seed(), "config-validate"));
    }
    return out;
}

Index model_omega_dim(const std::optional<ScenarioModel>& model) {
    return model ? model->omega_dim() : 0;
}

} // namespace

void CournotConfig::validate() const {
    if (firms.empty()) throw std::invalid_argument("CournotConfig: at least one firm required");
    for (const auto& f : firms) {
        if (f.gamma < 0.0 || f.delta < 0.0)
            throw std::invalid_argument("CournotConfig: cost coefficients must be nonnegative");
    }
    if (slopes.empty()) throw std::invalid_argument("CournotConfig: at least one price segment required");
    if (breakpoints.size() + 1 != slopes.size())
        throw std::invalid_argument("CournotConfig: breakpoints must number segments - 1");
    double prev = 0.0;
    for (double b : breakpoints) {
        if (!(b > prev)) throw std::invalid_argument("CournotConfig: breakpoints must be strictly increasing and positive");
        prev = b;
    }
    if (!model) throw std::invalid_argument("CournotConfig: scenario model required");
    if (smoothing_eps < 0.0) throw std::invalid_argument("CournotConfig: smoothing width must be >= 0");
    if (total_capacity && !(*total_capacity > 0.0))
        throw std::invalid_argument("CournotConfig: total capacity must be positive");

    for (const auto& omega : validation_scenarios(model, model_omega_dim(model))) {
        if (!(intercept0.at(omega) > 0.0))
            throw std::invalid_argument("CournotConfig: price intercept a^1(omega) must be positive on sampled scenarios");
        for (const auto& b : slopes) {
            if (!(b.at(omega) > 0.0))
                throw std::invalid_argument("CournotConfig: price slopes b^j(omega) must be positive on sampled scenarios");
        }
    }
}

PiecewiseAffine CournotConfig::price(double blend_eps) const {
    PiecewiseAffine p;
    p.kinks = breakpoints;
    p.intercept0 = intercept0;
    p.slopes = slopes;
    p.blend_eps = blend_eps;
    p.validate();
    return p;
}

Interval price_clarke_interval(const CournotConfig& config, double total_output, const Vector& omega) {
    if (total_output < 0.0) throw std::invalid_argument("price_clarke_interval: X must be >= 0");
    config.validate();
    return config.price(0.0).derivative_interval(total_output, omega);
}

namespace {

SmoothMap cournot_map(const CournotConfig& config, double blend_eps, KinkSide side) {
    const Index n = config.firm_count();
    SmoothMap sm;
    sm.dim_n = n;
    sm.omega_dim = model_omega_dim(config.model);
    sm.pieces.push_back(config.price(blend_eps));
    sm.components.resize(static_cast<std::size_t>(n));
    const Vector ones = Vector::Ones(n);
    for (Index i = 0; i < n; ++i) {
        auto& comp = sm.components[static_cast<std::size_t>(i)];
        const auto& firm = config.firms[static_cast<std::size_t>(i)];
        // c_i'(x_i) = gamma_i x_i + delta_i
        if (firm.gamma != 0.0) {
            MonomialTerm quad;
            quad.coeff = AffineInOmega::constant(firm.gamma);
            quad.powers = {{i, 1}};
            comp.monomials.push_back(std::move(quad));
        }
        if (firm.delta != 0.0) comp.monomials.push_back(MonomialTerm{AffineInOmega::constant(firm.delta), {}});
        // - p(X; omega)
        PiecewiseTerm value_term;
        value_term.scale = -1.0;
        value_term.x_index = -1;
        value_term.use_derivative = false;
        value_term.agg_weights = ones;
        value_term.pw_index = 0;
        value_term.kink_side = side;
        comp.piecewise.push_back(std::move(value_term));
        // - x_i * dp(X; omega)
        PiecewiseTerm deriv_term;
        deriv_term.scale = -1.0;
        deriv_term.x_index = i;
        deriv_term.use_derivative = true;
        deriv_term.agg_weights = ones;
        deriv_term.pw_index = 0;
        deriv_term.kink_side = side;
        comp.piecewise.push_back(std::move(deriv_term));
    }
    sm.validate();
    return sm;
}

ProblemInstance cournot_instance(const CournotConfig& config, ScenarioMap map) {
    const Index n = config.firm_count();
    if (config.total_capacity) {
        return make_sqvi(MovingSet::aggregate_capacity_box(n, *config.total_capacity), std::move(map), *config.model);
    }
    return make_problem(ProblemKind::Svi, GroundSet::nonneg_orthant(n), std::move(map), *config.model);
}

} // namespace

CournotInstances build_cournot(const CournotConfig& config) {
    config.validate();
    IntervalMap interval;
    interval.sel_a = cournot_map(config, 0.0, KinkSide::Left);
    interval.sel_b = cournot_map(config, 0.0, KinkSide::Right);
    ScenarioMap interval_map(std::move(interval));
    ScenarioMap smoothed_map(cournot_map(config, config.smoothing_eps, KinkSide::Left));
    return CournotInstances{cournot_instance(config, std::move(interval_map)),
                            cournot_instance(config, std::move(smoothed_map))};
}

CertificateReport cournot_growth_probe(const CournotConfig& config, const Vector& direction,
                                       const std::vector<double>& radii, double threshold, std::uint64_t seed) {
    config.validate();
    const Index n = config.firm_count();
    if (direction.size() != n) throw std::invalid_argument("cournot_growth_probe: direction dimension mismatch");
    if (direction.minCoeff() < 0.0 || direction.norm() < 1e-12)
        throw std::invalid_argument("cournot_growth_probe: direction must be nonzero and in the nonnegative orthant");
    if (radii.size() < 3) throw std::invalid_argument("cournot_growth_probe: at least three radii required");
    for (std::size_t j = 1; j < radii.size(); ++j)
        if (!(radii[j] > radii[j - 1])) throw std::invalid_argument("cournot_growth_probe: radii must increase");

    CournotInstances instances = build_cournot(config);
    const ProblemInstance& problem = instances.interval;
    RayPlan plan;
    plan.x_ref = Vector::Zero(n);
    plan.seed = seed;
    const auto scenarios = certificate_scenarios(problem, plan);
    const Vector d = direction / direction.norm();

    CertificateReport report;
    report.condition = "cournot-growth";
    report.margin = threshold;
    report.note = "quotient inf_w w.(x - x_ref)/||x|| along the ray; sampled evidence";

    bool pass = true;
    for (Index s = 0; s < static_cast<Index>(scenarios.size()); ++s) {
        const Vector& omega = scenarios[static_cast<std::size_t>(s)];
        std::vector<double> quotient;
        for (const double r : radii) {
            const Vector x = r * d;
            auto [lo, hi] = problem.map.eval_interval(x, omega);
            double inner = 0.0;
            for (Index i = 0; i < n; ++i) inner += x[i] > 0.0 ? lo[i] * x[i] : hi[i] * x[i];
            quotient.push_back(inner / x.norm());
        }
        EvidenceCell cell;
        cell.scenario_index = s;
        const std::size_t m = quotient.size();
        cell.tail = {quotient[m - 3], quotient[m - 2], quotient[m - 1]};
        cell.tail_min = *std::min_element(cell.tail.begin(), cell.tail.end());
        cell.slope_sign = quotient[m - 1] > quotient[m - 2] ? 1 : -1;
        const bool increasing = quotient[m - 1] > quotient[m - 2] && quotient[m - 2] > quotient[m - 3];
        const bool cleared = quotient[m - 1] > threshold;
        if (!increasing || !cleared) {
            pass = false;
            if (!report.witness) {
                CertificateWitness w;
                w.scenario_index = s;
                w.omega = omega;
                w.direction = d;
                w.radius = radii.back();
                w.value = quotient[m - 1];
                w.detail = increasing ? "tail quotient below threshold" : "tail quotient not increasing";
                report.witness = std::move(w);
            }
        }
        report.evidence.push_back(std::move(cell));
    }
    report.verdict = pass ? Verdict::Pass : Verdict::Fail;
    return report;
}

void PowerNetworkConfig::validate() const {
    if (nodes < 1 || firms < 1) throw std::invalid_argument("PowerNetworkConfig: nodes and firms must be >= 1");
    const Index links = link_count();
    for (double t : link_capacities)
        if (t < 0.0) throw std::invalid_argument("PowerNetworkConfig: link capacities must be >= 0");
    if (links > 0 && (pdf.rows() != links || pdf.cols() != nodes))
        throw std::invalid_argument("PowerNetworkConfig: PDF matrix must be links x nodes");
    if (static_cast<Index>(price_intercepts.size()) != nodes)
        throw std::invalid_argument("PowerNetworkConfig: one price intercept per node required");
    if (price_slopes.size() != nodes) throw std::invalid_argument("PowerNetworkConfig: one price slope per node required");
    if (price_slopes.minCoeff() <= 0.0) throw std::invalid_argument("PowerNetworkConfig: price slopes must be positive");
    if (cost_quad.rows() != firms || cost_quad.cols() != nodes)
        throw std::invalid_argument("PowerNetworkConfig: cost_quad must be firms x nodes");
    if (cost_quad.minCoeff() < 0.0) throw std::invalid_argument("PowerNetworkConfig: cost_quad must be >= 0");
    if (static_cast<Index>(cost_lin.size()) != firms)
        throw std::invalid_argument("PowerNetworkConfig: cost_lin must have one row per firm");
    for (const auto& row : cost_lin)
        if (static_cast<Index>(row.size()) != nodes)
            throw std::invalid_argument("PowerNetworkConfig: cost_lin rows must have one entry per node");
    if (caps.rows() != firms || caps.cols() != nodes)
        throw std::invalid_argument("PowerNetworkConfig: caps must be firms x nodes");
    if (caps.minCoeff() < 0.0) throw std::invalid_argument("PowerNetworkConfig: caps must be >= 0");
    if (!model) throw std::invalid_argument("PowerNetworkConfig: scenario model required");

    for (const auto& omega : validation_scenarios(model, model_omega_dim(model))) {
        for (const auto& a : price_intercepts)
            if (!(a.at(omega) > 0.0))
                throw std::invalid_argument("PowerNetworkConfig: price intercepts must stay positive on sampled scenarios");
        for (const auto& row : cost_lin)
            for (const auto& mfi : row)
                if (mfi.at(omega) < 0.0)
                    throw std::invalid_argument("PowerNetworkConfig: marginal costs must stay nonnegative on sampled scenarios");
    }
}

ProblemInstance build_power_market(const PowerNetworkConfig& config) {
    config.validate();
    const Index n = config.var_count();
    const Index links = config.link_count();
    const Index omega_dim = config.model->omega_dim();

    RandomAffine map;
    map.m_base = Matrix::Zero(n, n);
    map.q_base = Vector::Zero(n);
    map.q_coeff = Matrix::Zero(n, omega_dim);

    auto set_q = [&](Index row, const AffineInOmega& a, double sign) {
        map.q_base[row] += sign * a.base;
        for (Index k = 0; k < a.coeff.size() && k < omega_dim; ++k) map.q_coeff(row, k) += sign * a.coeff[k];
    };

    for (Index f = 0; f < config.firms; ++f) {
        for (Index i = 0; i < config.nodes; ++i) {
            const Index srow = config.s_index(f, i);
            const double b = config.price_slopes[i];
            // -p' s_fi - p(S_i) + sum_j eta_j PDF_ji - lambda_f
            map.m_base(srow, config.s_index(f, i)) += b; // -p' s term
            for (Index h = 0; h < config.firms; ++h) map.m_base(srow, config.s_index(h, i)) += b; // b * S_i
            set_q(srow, config.price_intercepts[static_cast<std::size_t>(i)], -1.0);
            for (Index j = 0; j < links; ++j) map.m_base(srow, config.eta_index(j)) += config.pdf(j, i);
            map.m_base(srow, config.lambda_index(f)) -= 1.0;

            const Index grow = config.g_index(f, i);
            // c'(g) - sum_j eta_j PDF_ji + mu_fi + lambda_f
            map.m_base(grow, config.g_index(f, i)) += config.cost_quad(f, i);
            set_q(grow, config.cost_lin[static_cast<std::size_t>(f)][static_cast<std::size_t>(i)], 1.0);
            for (Index j = 0; j < links; ++j) map.m_base(grow, config.eta_index(j)) -= config.pdf(j, i);
            map.m_base(grow, config.mu_index(f, i)) += 1.0;
            map.m_base(grow, config.lambda_index(f)) += 1.0;

            const Index mrow = config.mu_index(f, i);
            // cap_fi - g_fi
            map.m_base(mrow, config.g_index(f, i)) -= 1.0;
            map.q_base[mrow] += config.caps(f, i);
        }
    }
    for (Index j = 0; j < links; ++j) {
        const Index erow = config.eta_index(j);
        // T_j - sum_i PDF_ji sum_h (s_hi - g_hi)
        map.q_base[erow] += config.link_capacities[static_cast<std::size_t>(j)];
        for (Index i = 0; i < config.nodes; ++i) {
            for (Index h = 0; h < config.firms; ++h) {
                map.m_base(erow, config.s_index(h, i)) -= config.pdf(j, i);
                map.m_base(erow, config.g_index(h, i)) += config.pdf(j, i);
            }
        }
    }
    for (Index f = 0; f < config.firms; ++f) {
        const Index lrow = config.lambda_index(f);
        // free row: sum_i (s_fi - g_fi) = 0
        for (Index i = 0; i < config.nodes; ++i) {
            map.m_base(lrow, config.s_index(f, i)) += 1.0;
            map.m_base(lrow, config.g_index(f, i)) -= 1.0;
        }
    }

    return make_problem(ProblemKind::MixedScp,
                        GroundSet::mixed_partition(config.nonneg_count(), config.firms),
                        ScenarioMap(std::move(map)), *config.model);
}

double power_market_u_bound(const PowerNetworkConfig& config, const Vector& omega) {
    double max_price = 0.0;
    for (const auto& a : config.price_intercepts) max_price = std::max(max_price, a.at(omega));
    return max_price * config.caps.sum();
}

EquilibriumReport verify_equilibrium(const ProblemInstance& problem, const Vector& x, double tol, std::uint64_t seed) {
    if (problem.kind != ProblemKind::MixedScp) throw std::invalid_argument("verify_equilibrium: MixedSCP instance required");
    if (x.size() != problem.dim) throw std::invalid_argument("verify_equilibrium: dimension mismatch");
    (void)tol;

    const Index nn = problem.set.nonneg_dim();
    const ExpectationMode mode = problem.scenarios.is_finite()
                                     ? ExpectationMode::exact()
                                     : ExpectationMode::monte_carlo(100000, derive_seed(seed, "verify"));
    const Vector rows = expected_map(problem, x, mode).value;

    EquilibriumReport report;
    for (Index i = 0; i < nn; ++i) {
        report.max_primal_infeasibility = std::max(report.max_primal_infeasibility, -x[i]);
        report.max_dual_infeasibility = std::max(report.max_dual_infeasibility, -rows[i]);
        report.max_complementarity = std::max(report.max_complementarity, std::abs(x[i] * rows[i]));
    }
    for (Index i = nn; i < problem.dim; ++i)
        report.max_free_equation = std::max(report.max_free_equation, std::abs(rows[i]));

    // inner-product simplification: (x, l)^T H_full(x, l) == x^T H(x, l = 0)
    Rng rng(derive_seed(seed, "verify-simplification"));
    const auto omegas = problem.scenarios.is_finite()
                            ? certificate_scenarios(problem, RayPlan{Vector::Zero(problem.dim), {}, 1.0, 1, 16, seed})
                            : problem.scenarios.sample(16, derive_seed(seed, "verify-scenarios"));
    for (int t = 0; t < 100; ++t) {
        Vector z(problem.dim);
        for (Index i = 0; i < problem.dim; ++i) z[i] = rng.uniform(0.0, 2.0);
        z.tail(problem.dim - nn) = z.tail(problem.dim - nn).array() - 1.0; // free block signed
        Vector z0 = z;
        z0.tail(problem.dim - nn).setZero();
        for (const auto& omega : omegas) {
            const Vector full = problem.map.eval(z, omega);
            const Vector nolambda = problem.map.eval(z0, omega);
            const double lhs = z.head(nn).dot(full.head(nn)) + z.tail(problem.dim - nn).dot(full.tail(problem.dim - nn));
            const double rhs = z.head(nn).dot(nolambda.head(nn));
            report.simplification_error = std::max(report.simplification_error, std::abs(lhs - rhs));
        }
    }
    return report;
}

} // namespace svi
