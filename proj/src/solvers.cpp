#include "svi/solvers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svi {

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
    if (tau < 0.0) throw std::invalid_argument("SolverConfig: tau must be >= 0");
    if (!(theta > 0.0)) throw std::invalid_argument("SolverConfig: theta must be positive");
    if (samples < 0) throw std::invalid_argument("SolverConfig: samples must be >= 0");
    if (!(erm_mu0 > 0.0) || erm_stages < 1) throw std::invalid_argument("SolverConfig: ERM schedule must be positive");
}

namespace {

double power_iteration_norm(const Matrix& m) {
    const Index n = m.rows();
    Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
    double norm = 0.0;
    for (int it = 0; it < 100; ++it) {
        Vector w = m.transpose() * (m * v);
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;
        v = w / wn;
        norm = std::sqrt(wn);
    }
    return norm;
}

/// Averaged map handle for saa/ssn/qvi: exact weights or a frozen draw.
AveragedMap build_averaged(const ProblemInstance& problem, const SolverConfig& config, const char* tag) {
    if (config.samples == 0) {
        if (!problem.scenarios.is_finite())
            throw std::invalid_argument("solver: sampler scenario models need samples >= 1");
        return AveragedMap::exact(problem.map, problem.scenarios);
    }
    auto draws = problem.scenarios.sample(config.samples, derive_seed(config.seed, tag));
    return AveragedMap::frozen(problem.map, std::move(draws));
}

Vector start_point(const GroundSet& set, const SolverConfig& config) {
    if (config.x0.size() > 0) {
        if (config.x0.size() != set.dim()) throw std::invalid_argument("solver: x0 dimension mismatch");
        return set.project(config.x0);
    }
    return set.project(Vector::Zero(set.dim()));
}

using Projector = std::function<Vector(const Vector&)>;

SolveResult extragradient_core(const Projector& project, const std::function<Vector(const Vector&)>& f,
                               Vector x, const SolverConfig& config, std::optional<double> lipschitz) {
    SolveResult result;
    result.seed = config.seed;
    double tau = config.tau;
    if (tau <= 0.0) {
        if (lipschitz && *lipschitz > 0.0) tau = 0.9 / *lipschitz;
        else tau = 1.0; // refined by backtracking below
    }
    const bool backtrack = config.tau <= 0.0 && !(lipschitz && *lipschitz > 0.0);

    x = project(x);
    for (Index k = 0; k < config.max_iter; ++k) {
        const Vector fx = f(x);
        const double res = (x - project(x - fx)).norm();
        if (config.keep_trace) result.trace.push_back(res);
        if (res <= config.tol) {
            result.x = x;
            result.residual = res;
            result.iterations = k;
            result.status = SolveStatus::Converged;
            return result;
        }
        if (!std::isfinite(res) || res > 1e12) {
            result.x = x;
            result.residual = res;
            result.iterations = k;
            result.status = SolveStatus::Diverged;
            return result;
        }

        Vector y = project(x - tau * fx);
        if (backtrack) {
            // shrink until tau ||F(x) - F(y)|| <= 0.9 ||x - y||
            for (int bt = 0; bt < 60; ++bt) {
                const Vector fy_probe = f(y);
                if (tau * (fx - fy_probe).norm() <= 0.9 * (x - y).norm() + 1e-16) break;
                tau *= 0.5;
                y = project(x - tau * fx);
            }
        }
        const Vector fy = f(y);
        x = project(x - tau * fy);
    }
    const Vector fx = f(x);
    result.x = x;
    result.residual = (x - project(x - fx)).norm();
    result.iterations = config.max_iter;
    result.status = result.residual <= config.tol ? SolveStatus::Converged : SolveStatus::MaxIter;
    if (config.keep_trace) result.trace.push_back(result.residual);
    return result;
}

} // namespace

SolveResult extragradient_solve(const GroundSet& set, const std::function<Vector(const Vector&)>& averaged_map,
                                Vector x0, const SolverConfig& config, std::optional<double> lipschitz_hint) {
    config.validate();
    if (x0.size() != set.dim()) throw std::invalid_argument("extragradient_solve: x0 dimension mismatch");
    Projector proj = [&set](const Vector& z) { return set.project(z); };
    return extragradient_core(proj, averaged_map, std::move(x0), config, lipschitz_hint);
}

SolveResult saa_solve(const ProblemInstance& problem, const SolverConfig& config) {
    config.validate();
    if (problem.map.interval_valued())
        throw std::invalid_argument("saa_solve: map must be single-valued (smooth the instance first)");
    if (problem.kind == ProblemKind::Sqvi)
        throw std::invalid_argument("saa_solve: use qvi_fixed_point for SQVI instances");

    const AveragedMap averaged = build_averaged(problem, config, "saa");
    SolveResult result;
    if (problem.kind == ProblemKind::Scp || problem.kind == ProblemKind::MixedScp) {
        result = ssn_fb_solve_map(problem.set, averaged, start_point(problem.set, config), config);
    } else {
        std::optional<double> lip;
        if (auto jac = averaged.constant_jacobian()) lip = power_iteration_norm(*jac);
        result = extragradient_solve(problem.set, std::cref(averaged), start_point(problem.set, config), config, lip);
    }
    result.seed = config.seed;
    result.samples_used = config.samples == 0 ? averaged.scenario_count() : config.samples;
    return result;
}

SolveResult sa_solve(const ProblemInstance& problem, const SolverConfig& config) {
    config.validate();
    if (problem.map.interval_valued()) throw std::invalid_argument("sa_solve: map must be single-valued");
    const GroundSet& set = problem.set;

    Vector x = start_point(set, config);
    Vector avg = x;
    SolveResult result;
    result.seed = config.seed;

    // one scenario per step, all drawn up front from the sa stream
    const auto draws = problem.scenarios.sample(config.max_iter, derive_seed(config.seed, "sa"));
    for (Index k = 1; k <= config.max_iter; ++k) {
        const double gamma = config.theta / static_cast<double>(k);
        x = set.project(x - gamma * problem.map.eval(x, draws[static_cast<std::size_t>(k - 1)]));
        if (!x.allFinite() || x.norm() > 1e12) {
            result.x = x;
            result.iterations = k;
            result.status = SolveStatus::Diverged;
            result.residual = kInf;
            return result;
        }
        avg += (x - avg) / static_cast<double>(k);
        if (config.keep_trace && (k % std::max<Index>(1, config.max_iter / 200) == 0)) result.trace.push_back((x - avg).norm());
    }

    result.x = config.sa_average ? avg : x;
    result.iterations = config.max_iter;

    // residual against a high-accuracy expected map
    const ExpectationMode mode = problem.scenarios.is_finite()
                                     ? ExpectationMode::exact()
                                     : ExpectationMode::monte_carlo(100000, derive_seed(config.seed, "sa-residual"));
    const Vector fbar = expected_map(problem, result.x, mode).value;
    result.residual = natural_residual(problem, result.x, fbar);
    result.status = result.residual <= config.tol ? SolveStatus::Converged : SolveStatus::MaxIter;
    return result;
}

namespace {

struct FbSystem {
    const GroundSet* set;
    const AveragedMap* map;
    Index nonneg = 0; // leading complementarity rows; remainder are raw equations

    Vector residual(const Vector& x) const {
        const Vector fx = (*map)(x);
        Vector psi(x.size());
        for (Index i = 0; i < x.size(); ++i) {
            if (i < nonneg) {
                psi[i] = std::sqrt(x[i] * x[i] + fx[i] * fx[i]) - (x[i] + fx[i]);
            } else {
                psi[i] = fx[i];
            }
        }
        return psi;
    }

    Matrix generalized_jacobian(const Vector& x) const {
        const Vector fx = (*map)(x);
        const Matrix jf = map->jacobian(x);
        Matrix j(x.size(), x.size());
        for (Index i = 0; i < x.size(); ++i) {
            if (i < nonneg) {
                const double r = std::sqrt(x[i] * x[i] + fx[i] * fx[i]);
                double da, db;
                if (r > 1e-14) {
                    da = x[i] / r - 1.0;
                    db = fx[i] / r - 1.0;
                } else {
                    da = db = 1.0 / std::sqrt(2.0) - 1.0; // element at the origin kink
                }
                j.row(i) = db * jf.row(i);
                j(i, i) += da;
            } else {
                j.row(i) = jf.row(i);
            }
        }
        return j;
    }
};

} // namespace

SolveResult ssn_fb_solve_map(const GroundSet& set, const AveragedMap& averaged, Vector x0, const SolverConfig& config) {
    config.validate();
    if (!set.is_cone()) throw std::invalid_argument("ssn_fb_solve: set must be an orthant or mixed partition");
    if (x0.size() != set.dim()) throw std::invalid_argument("ssn_fb_solve: x0 dimension mismatch");

    FbSystem sys;
    sys.set = &set;
    sys.map = &averaged;
    sys.nonneg = set.kind() == SetKind::NonnegOrthant ? set.dim() : set.nonneg_dim();

    SolveResult result;
    result.seed = config.seed;
    Vector x = std::move(x0);
    Vector psi = sys.residual(x);
    double theta = 0.5 * psi.squaredNorm();

    for (Index k = 0; k < config.max_iter; ++k) {
        const double norm = psi.norm();
        if (config.keep_trace) result.trace.push_back(norm);
        if (norm <= config.tol) {
            result.x = x;
            result.residual = norm;
            result.iterations = k;
            result.status = SolveStatus::Converged;
            return result;
        }
        if (!std::isfinite(norm) || norm > 1e12) {
            result.x = x;
            result.residual = norm;
            result.iterations = k;
            result.status = SolveStatus::Diverged;
            return result;
        }

        const Matrix jac = sys.generalized_jacobian(x);
        Vector dir;
        Eigen::FullPivLU<Matrix> lu(jac);
        const Vector grad = jac.transpose() * psi;
        if (lu.isInvertible()) {
            dir = lu.solve(-psi);
            if (grad.dot(dir) > -1e-12 * dir.norm() * grad.norm()) dir = -grad; // not a descent direction
        } else {
            dir = -grad; // gradient-step fallback
        }
        if (!dir.allFinite() || dir.norm() == 0.0) {
            result.x = x;
            result.residual = norm;
            result.iterations = k;
            result.status = SolveStatus::MaxIter;
            return result;
        }

        double step = 1.0;
        const double slope = grad.dot(dir);
        bool accepted = false;
        for (int ls = 0; ls < 50; ++ls) {
            const Vector cand = x + step * dir;
            const Vector psi_c = sys.residual(cand);
            const double theta_c = 0.5 * psi_c.squaredNorm();
            if (theta_c <= theta + 1e-4 * step * slope) {
                x = cand;
                psi = psi_c;
                theta = theta_c;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            result.x = x;
            result.residual = psi.norm();
            result.iterations = k;
            result.status = SolveStatus::MaxIter;
            result.note = "line search stalled";
            return result;
        }
    }
    result.x = x;
    result.residual = psi.norm();
    result.iterations = config.max_iter;
    result.status = result.residual <= config.tol ? SolveStatus::Converged : SolveStatus::MaxIter;
    return result;
}

SolveResult ssn_fb_solve(const ProblemInstance& problem, Vector x0, const SolverConfig& config) {
    if (problem.kind != ProblemKind::Scp && problem.kind != ProblemKind::MixedScp)
        throw std::invalid_argument("ssn_fb_solve: instance must be SCP or MixedSCP");
    const AveragedMap averaged = build_averaged(problem, config, "ssn");
    SolveResult result = ssn_fb_solve_map(problem.set, averaged, std::move(x0), config);
    result.samples_used = config.samples == 0 ? averaged.scenario_count() : config.samples;
    return result;
}

double erm_objective(const ProblemInstance& problem, const Vector& x, const SolverConfig& config) {
    if (problem.kind != ProblemKind::Scp) throw std::invalid_argument("erm: nonnegative-orthant SCP required");
    const AveragedMap averaged = build_averaged(problem, config, "erm");
    double obj = 0.0;
    for (Index k = 0; k < averaged.scenario_count(); ++k) {
        const Vector fx = problem.map.eval(x, averaged.scenarios()[static_cast<std::size_t>(k)]);
        obj += averaged.weights()[static_cast<std::size_t>(k)] * fb_residual(x, fx).norm();
    }
    return obj;
}

SolveResult erm_solve(const ProblemInstance& problem, const SolverConfig& config) {
    config.validate();
    if (problem.kind != ProblemKind::Scp) throw std::invalid_argument("erm_solve: nonnegative-orthant SCP required");
    const AveragedMap averaged = build_averaged(problem, config, "erm");
    const Index n = problem.dim;
    const auto& omegas = averaged.scenarios();
    const auto& weights = averaged.weights();

    auto smoothed_obj = [&](const Vector& x, double mu) {
        double obj = 0.0;
        for (std::size_t k = 0; k < omegas.size(); ++k) {
            const Vector fx = problem.map.eval(x, omegas[k]);
            double s = 0.0;
            for (Index i = 0; i < n; ++i) {
                const double r = std::sqrt(x[i] * x[i] + fx[i] * fx[i] + mu * mu);
                const double phi = r - (x[i] + fx[i]);
                s += phi * phi;
            }
            obj += weights[k] * std::sqrt(s);
        }
        return obj;
    };
    auto smoothed_grad = [&](const Vector& x, double mu) {
        Vector g = Vector::Zero(n);
        for (std::size_t k = 0; k < omegas.size(); ++k) {
            const Vector fx = problem.map.eval(x, omegas[k]);
            const Matrix jf = problem.map.jacobian(x, omegas[k]);
            Vector phi(n);
            Matrix jphi(n, n);
            for (Index i = 0; i < n; ++i) {
                const double r = std::sqrt(x[i] * x[i] + fx[i] * fx[i] + mu * mu);
                phi[i] = r - (x[i] + fx[i]);
                jphi.row(i) = (fx[i] / r - 1.0) * jf.row(i);
                jphi(i, i) += x[i] / r - 1.0;
            }
            const double norm = phi.norm();
            if (norm > 1e-14) g += weights[k] * (jphi.transpose() * phi) / norm;
        }
        return g;
    };
    auto true_obj = [&](const Vector& x) {
        double obj = 0.0;
        for (std::size_t k = 0; k < omegas.size(); ++k) {
            const Vector fx = problem.map.eval(x, omegas[k]);
            obj += weights[k] * fb_residual(x, fx).norm();
        }
        return obj;
    };

    SolveResult result;
    result.seed = config.seed;
    result.samples_used = config.samples == 0 ? averaged.scenario_count() : config.samples;

    Vector x = start_point(problem.set, config);
    Vector best_x = x;
    double best_obj = true_obj(x);
    Index total_iters = 0;
    double final_stationarity = kInf;

    const Index inner = std::max<Index>(100, config.max_iter / config.erm_stages);
    for (Index stage = 0; stage < config.erm_stages; ++stage) {
        const double mu = config.erm_mu0 * std::pow(2.0, -static_cast<double>(stage));
        double step = 1.0;
        double fcur = smoothed_obj(x, mu);
        for (Index it = 0; it < inner; ++it) {
            const Vector g = smoothed_grad(x, mu);
            final_stationarity = (x - problem.set.project(x - g)).norm();
            if (final_stationarity <= config.tol) break;
            bool moved = false;
            for (int bt = 0; bt < 50; ++bt) {
                const Vector cand = problem.set.project(x - step * g);
                const double fc = smoothed_obj(cand, mu);
                const double decrease = (cand - x).squaredNorm() / std::max(step, 1e-300);
                if (fc <= fcur - 1e-4 * decrease) {
                    x = cand;
                    fcur = fc;
                    moved = true;
                    step *= 2.0;
                    break;
                }
                step *= 0.5;
            }
            ++total_iters;
            if (!moved) break;
        }
        // stage safeguard: keep the best iterate under the unsmoothed objective
        const double stage_obj = true_obj(x);
        if (stage_obj < best_obj) {
            best_obj = stage_obj;
            best_x = x;
        } else {
            x = best_x;
        }
        result.trace.push_back(best_obj);
    }

    result.x = best_x;
    result.objective = best_obj;
    result.residual = best_obj;
    result.iterations = total_iters;
    result.status = final_stationarity <= config.tol || best_obj <= config.tol ? SolveStatus::Converged : SolveStatus::MaxIter;
    return result;
}

SolveResult qvi_fixed_point(const ProblemInstance& problem, const SolverConfig& config) {
    config.validate();
    if (problem.kind != ProblemKind::Sqvi || !problem.moving_set)
        throw std::invalid_argument("qvi_fixed_point: SQVI instance with a moving set required");
    const MovingSet& moving = *problem.moving_set;
    const AveragedMap averaged = build_averaged(problem, config, "qvi");
    std::optional<double> lip;
    if (auto jac = averaged.constant_jacobian()) lip = power_iteration_norm(*jac);

    SolverConfig inner = config;
    inner.tol = std::max(1e-12, 0.1 * config.tol);
    inner.max_iter = 20000;
    inner.keep_trace = false;

    SolveResult result;
    result.seed = config.seed;
    result.samples_used = averaged.scenario_count();

    Vector x = config.x0.size() > 0 ? config.x0 : Vector::Zero(problem.dim);
    x = moving.project_at(x, x);
    double prev_disp = kInf;
    Index grow_streak = 0;
    const Index outer_cap = 200;
    for (Index k = 0; k < outer_cap; ++k) {
        Projector proj = [&moving, &x](const Vector& z) { return moving.project_at(x, z); };
        SolveResult vi = extragradient_core(proj, std::cref(averaged), x, inner, lip);
        const double disp = (vi.x - x).norm();
        if (config.keep_trace) result.trace.push_back(disp);
        x = vi.x;
        ++result.iterations;
        if (disp <= config.tol) {
            result.x = x;
            result.residual = disp;
            result.status = SolveStatus::Converged;
            if (!moving.member(x, x, 1e-6)) result.note = "fixed point not in K(x)";
            return result;
        }
        if (disp > prev_disp * (1.0 + 1e-12)) {
            if (++grow_streak >= 3) result.note = "moving-set iteration appears non-contractive";
        } else {
            grow_streak = 0;
        }
        prev_disp = disp;
    }
    result.x = x;
    result.residual = prev_disp;
    result.status = SolveStatus::MaxIter;
    if (result.note.empty()) result.note = "no fixed point found within the outer iteration cap";
    return result;
}

} // namespace svi
