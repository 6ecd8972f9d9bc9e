#include "svi/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "svi/parallel.hpp"

namespace svi {

namespace {

/// Zero out components that leave the set along the ray (recession cone).
Vector recession_project(const GroundSet& set, const Vector& d) {
    switch (set.kind()) {
    case SetKind::NonnegOrthant:
        return d.cwiseMax(0.0);
    case SetKind::Box: {
        Vector out = d;
        for (Index i = 0; i < d.size(); ++i) {
            if (set.upper()[i] < kInf && out[i] > 0.0) out[i] = 0.0;
            if (set.lower()[i] > -kInf && out[i] < 0.0) out[i] = 0.0;
        }
        return out;
    }
    case SetKind::Cartesian: {
        Vector out(d.size());
        Index off = 0;
        for (const auto& b : set.blocks()) {
            out.segment(off, b.dim()) = recession_project(b, d.segment(off, b.dim()));
            off += b.dim();
        }
        return out;
    }
    case SetKind::MixedPartition: {
        Vector out = d;
        out.head(set.nonneg_dim()) = out.head(set.nonneg_dim()).cwiseMax(0.0);
        return out;
    }
    }
    throw std::logic_error("unreachable");
}

std::vector<Vector> default_directions(const GroundSet& set, std::uint64_t seed) {
    const Index n = set.dim();
    std::vector<Vector> dirs;
    for (Index i = 0; i < n; ++i) {
        for (const double sgn : {1.0, -1.0}) {
            Vector d = Vector::Zero(n);
            d[i] = sgn;
            if ((recession_project(set, d) - d).norm() <= 1e-14) dirs.push_back(d);
        }
    }
    Rng rng(derive_seed(seed, "cert-directions"));
    Index added = 0;
    for (int attempt = 0; attempt < 200 && added < 8; ++attempt) {
        Vector z(n);
        for (Index i = 0; i < n; ++i) z[i] = rng.normal(0.0, 1.0);
        Vector d = recession_project(set, z);
        const double norm = d.norm();
        if (norm < 1e-9) continue;
        dirs.push_back(d / norm);
        ++added;
    }
    return dirs;
}

const char* kSampledEvidenceNote = "sampled evidence over the declared scenario/direction grid, not a proof";

} // namespace

std::vector<double> RayPlan::radii() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(stages));
    for (Index j = 0; j < stages; ++j) out.push_back(r0 * std::pow(2.0, static_cast<double>(j)));
    return out;
}

RayPlan RayPlan::defaults(const ProblemInstance& problem, Vector x_ref, std::uint64_t seed) {
    RayPlan plan;
    plan.x_ref = std::move(x_ref);
    plan.seed = seed;
    plan.directions = default_directions(problem.set, seed);
    plan.validate(problem);
    return plan;
}

void RayPlan::validate(const ProblemInstance& problem) const {
    if (x_ref.size() != problem.dim) throw std::invalid_argument("RayPlan: x_ref dimension mismatch");
    if (!problem.set.contains(x_ref, 1e-10)) throw std::invalid_argument("RayPlan: x_ref must lie in the set");
    if (!(r0 > 0.0) || stages < 1) throw std::invalid_argument("RayPlan: radii schedule must be positive");
    if (scenario_draws < 1) throw std::invalid_argument("RayPlan: scenario draw count must be >= 1");
    for (const auto& d : directions) {
        if (d.size() != problem.dim) throw std::invalid_argument("RayPlan: direction dimension mismatch");
        if (d.norm() < 1e-12) throw std::invalid_argument("RayPlan: directions must be nonzero");
    }
}

std::vector<Vector> certificate_scenarios(const ProblemInstance& problem, const RayPlan& plan) {
    if (problem.scenarios.is_finite()) {
        std::vector<Vector> out;
        for (const auto& o : problem.scenarios.outcomes()) out.push_back(o.omega);
        return out;
    }
    return problem.scenarios.sample(plan.scenario_draws, derive_seed(plan.seed, "cert-scenarios"));
}

namespace {

/// Shared tail-window evaluation: values(s, d, j) over the radii schedule.
/// FAIL when a tail value <= -margin; PASS when every tail minimum > margin.
CertificateReport tail_rule(const std::string& condition, const RayPlan& plan,
                            const std::vector<Vector>& scenarios, const std::vector<Vector>& directions,
                            const std::function<double(const Vector& omega, const Vector& dir, double r)>& value) {
    CertificateReport report;
    report.condition = condition;
    report.margin = plan.margin;
    report.note = kSampledEvidenceNote;

    const auto radii = plan.radii();
    const Index tail_len = std::min<Index>(3, static_cast<Index>(radii.size()));
    const Index ns = static_cast<Index>(scenarios.size());
    const Index nd = static_cast<Index>(directions.size());

    if (nd == 0) {
        report.verdict = Verdict::Inconclusive;
        report.note = "no recession directions available; nothing to certify";
        return report;
    }

    std::vector<std::vector<double>> grid(static_cast<std::size_t>(ns * nd));
    parallel_for(ns * nd, [&](Index cell) {
        const Index s = cell / nd;
        const Index d = cell % nd;
        std::vector<double> vals;
        vals.reserve(radii.size());
        for (const double r : radii)
            vals.push_back(value(scenarios[static_cast<std::size_t>(s)], directions[static_cast<std::size_t>(d)], r));
        grid[static_cast<std::size_t>(cell)] = std::move(vals);
    });

    bool all_pass = true;
    for (Index s = 0; s < ns; ++s) {
        for (Index d = 0; d < nd; ++d) {
            const auto& vals = grid[static_cast<std::size_t>(s * nd + d)];
            EvidenceCell cell;
            cell.scenario_index = s;
            cell.direction_index = d;
            double tail_min = kInf;
            for (Index j = static_cast<Index>(vals.size()) - tail_len; j < static_cast<Index>(vals.size()); ++j) {
                const double v = vals[static_cast<std::size_t>(j)];
                cell.tail.push_back(v);
                tail_min = std::min(tail_min, v);
                if (v <= -plan.margin && !report.witness) {
                    CertificateWitness w;
                    w.scenario_index = s;
                    w.omega = scenarios[static_cast<std::size_t>(s)];
                    w.direction_index = d;
                    w.direction = directions[static_cast<std::size_t>(d)];
                    w.radius = radii[static_cast<std::size_t>(j)];
                    w.value = v;
                    w.point = plan.x_ref + w.radius * w.direction;
                    report.witness = std::move(w);
                }
            }
            cell.tail_min = tail_min;
            if (vals.size() >= 2) {
                const double diff = vals[vals.size() - 1] - vals[vals.size() - 2];
                cell.slope_sign = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
            }
            report.evidence.push_back(std::move(cell));
            if (tail_min <= plan.margin) all_pass = false;
        }
    }

    if (report.witness) {
        report.verdict = Verdict::Fail;
    } else if (all_pass) {
        report.verdict = Verdict::Pass;
    } else {
        report.verdict = Verdict::Inconclusive;
    }
    return report;
}

std::vector<Vector> plan_directions(const ProblemInstance& problem, const RayPlan& plan) {
    if (!plan.directions.empty()) return plan.directions;
    return default_directions(problem.set, plan.seed);
}

} // namespace

CertificateReport coercivity_certificate(const ProblemInstance& problem, const RayPlan& plan) {
    plan.validate(problem);
    if (problem.map.interval_valued())
        throw std::invalid_argument("coercivity_certificate: single-valued map required (use the multivalued variant)");
    const auto scenarios = certificate_scenarios(problem, plan);
    const auto dirs = plan_directions(problem, plan);
    return tail_rule("coercivity", plan, scenarios, dirs,
                     [&](const Vector& omega, const Vector& d, double r) {
                         const Vector x = plan.x_ref + r * d;
                         return problem.map.eval(x, omega).dot(r * d);
                     });
}

CertificateReport cartesian_coercivity_certificate(const ProblemInstance& problem, Index nu, const RayPlan& plan) {
    plan.validate(problem);
    if (problem.set.kind() != SetKind::Cartesian)
        throw std::invalid_argument("cartesian_coercivity_certificate: Cartesian set required");
    if (nu < 0 || nu >= problem.set.block_count())
        throw std::invalid_argument("cartesian_coercivity_certificate: block index out of range");
    if (problem.map.interval_valued())
        throw std::invalid_argument("cartesian_coercivity_certificate: single-valued map required");

    const GroundSet& block = problem.set.blocks()[static_cast<std::size_t>(nu)];
    const Index off = problem.set.block_offset(nu);
    const Index bd = block.dim();

    // directions grow only block nu
    std::vector<Vector> dirs;
    for (const auto& bdir : default_directions(block, plan.seed)) {
        Vector d = Vector::Zero(problem.dim);
        d.segment(off, bd) = bdir;
        dirs.push_back(d);
    }

    // anchors for the held blocks: x_ref plus two sampled feasible points
    std::vector<Vector> anchors{plan.x_ref};
    Rng rng(derive_seed(plan.seed, "cert-anchors"));
    for (int a = 0; a < 2; ++a) {
        Vector z(problem.dim);
        for (Index i = 0; i < problem.dim; ++i) z[i] = rng.uniform(-2.0 * plan.r0, 2.0 * plan.r0);
        anchors.push_back(problem.set.project(plan.x_ref + z));
    }

    const auto scenarios = certificate_scenarios(problem, plan);
    return tail_rule("cartesian-coercivity", plan, scenarios, dirs,
                     [&](const Vector& omega, const Vector& d, double r) {
                         double worst = kInf;
                         for (const auto& anchor : anchors) {
                             Vector x = anchor;
                             x.segment(off, bd) = plan.x_ref.segment(off, bd) + r * d.segment(off, bd);
                             const Vector fx = problem.map.eval(x, omega);
                             worst = std::min(worst, fx.segment(off, bd).dot(r * d.segment(off, bd)));
                         }
                         return worst;
                     });
}

CertificateReport monotone_coercivity_certificate(const ProblemInstance& problem, const RayPlan& plan) {
    plan.validate(problem);
    if (problem.map.interval_valued())
        throw std::invalid_argument("monotone_coercivity_certificate: single-valued map required");
    const auto scenarios = certificate_scenarios(problem, plan);
    const auto dirs = plan_directions(problem, plan);
    CertificateReport report =
        tail_rule("monotone-coercivity", plan, scenarios, dirs,
                  [&](const Vector& omega, const Vector& d, double r) {
                      return problem.map.eval(plan.x_ref, omega).dot(r * d);
                  });
    report.note += "; inner product frozen at x_ref (monotone refinement)";
    return report;
}

CertificateReport lower_bound_certificate(const ProblemInstance& problem, const Vector& x_ref, const RayPlan& plan,
                                          const std::function<double(const Vector&)>* u) {
    if (x_ref.size() != problem.dim) throw std::invalid_argument("lower_bound_certificate: x_ref dimension mismatch");
    if (problem.map.interval_valued())
        throw std::invalid_argument("lower_bound_certificate: single-valued map required");

    CertificateReport report;
    report.condition = "lower-bound";
    report.margin = plan.margin;
    report.note = kSampledEvidenceNote;

    const auto scenarios = certificate_scenarios(problem, plan);
    const auto radii = plan.radii();
    const Index samples_per_radius = 16;
    Rng rng(derive_seed(plan.seed, "cert-lower-bound"));

    bool all_finite = true;
    for (Index s = 0; s < static_cast<Index>(scenarios.size()); ++s) {
        const Vector& omega = scenarios[static_cast<std::size_t>(s)];
        double envelope = kInf;
        for (const double r : radii) {
            for (Index t = 0; t < samples_per_radius; ++t) {
                Vector z(problem.dim);
                for (Index i = 0; i < problem.dim; ++i) z[i] = rng.uniform(-r, r);
                const Vector x = problem.set.project(x_ref + z);
                const double g = problem.map.eval(x, omega).dot(x - x_ref);
                envelope = std::min(envelope, g);
                if (!std::isfinite(g)) all_finite = false;
                if (u && g < -(*u)(omega) - plan.margin && !report.witness) {
                    CertificateWitness w;
                    w.scenario_index = s;
                    w.omega = omega;
                    w.radius = r;
                    w.value = g;
                    w.point = x;
                    w.detail = "G(x; omega) fell below -u(omega)";
                    report.witness = std::move(w);
                }
            }
        }
        EvidenceCell cell;
        cell.scenario_index = s;
        cell.tail = {envelope};
        cell.tail_min = envelope;
        report.evidence.push_back(std::move(cell));
    }

    if (report.witness) {
        report.verdict = Verdict::Fail;
    } else if (u) {
        report.verdict = Verdict::Pass;
    } else {
        report.verdict = all_finite ? Verdict::Pass : Verdict::Inconclusive;
        report.note += "; no u supplied: evidence records the empirical lower envelope per scenario";
    }
    return report;
}

CertificateReport multivalued_coercivity_certificate(const ProblemInstance& problem, const RayPlan& plan) {
    plan.validate(problem);
    if (!problem.map.interval_valued())
        throw std::invalid_argument("multivalued_coercivity_certificate: interval-valued map required");
    const auto scenarios = certificate_scenarios(problem, plan);
    const auto dirs = plan_directions(problem, plan);
    return tail_rule("multivalued-coercivity", plan, scenarios, dirs,
                     [&](const Vector& omega, const Vector& d, double r) {
                         const Vector x = plan.x_ref + r * d;
                         const Vector g = x - plan.x_ref;
                         auto [lo, hi] = problem.map.eval_interval(x, omega);
                         // infimum over the interval image, attained at endpoints
                         double v = 0.0;
                         for (Index i = 0; i < g.size(); ++i) v += g[i] > 0.0 ? lo[i] * g[i] : hi[i] * g[i];
                         return v;
                     });
}

CertificateReport qvi_boundary_certificate(const ProblemInstance& problem, const GroundSet& u_box,
                                           const Vector& x_ref, Index boundary_samples, const RayPlan& plan) {
    if (problem.kind != ProblemKind::Sqvi || !problem.moving_set)
        throw std::invalid_argument("qvi_boundary_certificate: SQVI instance required");
    if (u_box.kind() != SetKind::Box) throw std::invalid_argument("qvi_boundary_certificate: U must be a box");
    const Index n = problem.dim;
    if (u_box.dim() != n || x_ref.size() != n) throw std::invalid_argument("qvi_boundary_certificate: dimension mismatch");
    for (Index i = 0; i < n; ++i) {
        if (!(u_box.lower()[i] < x_ref[i] && x_ref[i] < u_box.upper()[i]))
            throw std::invalid_argument("qvi_boundary_certificate: x_ref must be interior to U");
        if (!(u_box.lower()[i] > -kInf && u_box.upper()[i] < kInf))
            throw std::invalid_argument("qvi_boundary_certificate: U must be bounded");
    }

    CertificateReport report;
    report.condition = "qvi-boundary";
    report.margin = plan.margin;
    report.note = kSampledEvidenceNote;

    const auto scenarios = certificate_scenarios(problem, plan);
    Rng rng(derive_seed(plan.seed, "cert-qvi-boundary"));
    const Index per_face = std::max<Index>(1, boundary_samples / (2 * n));

    Index feasible_count = 0;
    double worst = kInf;
    for (Index i = 0; i < n && !report.witness; ++i) {
        for (const int side : {0, 1}) {
            for (Index t = 0; t < per_face; ++t) {
                Vector x(n);
                for (Index j = 0; j < n; ++j) x[j] = rng.uniform(u_box.lower()[j], u_box.upper()[j]);
                x[i] = side == 0 ? u_box.lower()[i] : u_box.upper()[i];
                if (!problem.moving_set->member(x, x, 1e-9)) continue;
                ++feasible_count;
                for (Index s = 0; s < static_cast<Index>(scenarios.size()); ++s) {
                    const double v = problem.map.eval(x, scenarios[static_cast<std::size_t>(s)]).dot(x - x_ref);
                    worst = std::min(worst, v);
                    if (v < -plan.margin) {
                        CertificateWitness w;
                        w.scenario_index = s;
                        w.omega = scenarios[static_cast<std::size_t>(s)];
                        w.value = v;
                        w.point = x;
                        w.detail = "boundary point of U in K(x) with negative inner product";
                        report.witness = std::move(w);
                        break;
                    }
                }
                if (report.witness) break;
            }
            if (report.witness) break;
        }
    }

    EvidenceCell cell;
    cell.tail = {static_cast<double>(feasible_count), worst};
    cell.tail_min = worst;
    report.evidence.push_back(std::move(cell));

    if (report.witness) {
        report.verdict = Verdict::Fail;
    } else {
        report.verdict = Verdict::Pass;
        if (feasible_count == 0) report.note += "; vacuous: no sampled boundary point lies in K(x)";
    }
    return report;
}

CertificateReport qvi_compactness_check(const ProblemInstance& problem, const GroundSet& gamma_box, Index probes,
                                        std::uint64_t seed) {
    if (problem.kind != ProblemKind::Sqvi || !problem.moving_set)
        throw std::invalid_argument("qvi_compactness_check: SQVI instance required");
    if (gamma_box.kind() != SetKind::Box) throw std::invalid_argument("qvi_compactness_check: Gamma must be a box");
    const Index n = problem.dim;

    CertificateReport report;
    report.condition = "qvi-compactness";
    report.note = kSampledEvidenceNote;

    Rng rng(derive_seed(seed, "cert-qvi-compact"));
    double span = 1.0;
    for (Index i = 0; i < n; ++i) span = std::max(span, gamma_box.upper()[i] - gamma_box.lower()[i]);

    for (Index p = 0; p < probes; ++p) {
        Vector x(n);
        for (Index i = 0; i < n; ++i) x[i] = rng.uniform(gamma_box.lower()[i], gamma_box.upper()[i]);
        for (Index t = 0; t < 8; ++t) {
            const Vector z = problem.moving_set->sample_point(x, rng, span);
            if (!gamma_box.contains(z, 1e-9)) {
                CertificateWitness w;
                w.point = x;
                w.value = (z - gamma_box.project(z)).norm();
                w.direction = z;
                w.detail = "point of K(x) escapes Gamma";
                report.witness = std::move(w);
                report.verdict = Verdict::Fail;
                return report;
            }
        }
    }
    report.verdict = Verdict::Pass;
    EvidenceCell cell;
    cell.tail = {static_cast<double>(probes)};
    report.evidence.push_back(cell);
    return report;
}

CertificateReport scp_growth_certificate(const ProblemInstance& problem, const RayPlan& plan, ScpGrowthMode mode) {
    plan.validate(problem);
    if (!problem.set.is_cone()) throw std::invalid_argument("scp_growth_certificate: cone ground set required");
    if (problem.map.interval_valued()) throw std::invalid_argument("scp_growth_certificate: single-valued map required");
    const auto scenarios = certificate_scenarios(problem, plan);
    const auto dirs = plan_directions(problem, plan);
    const char* name = mode == ScpGrowthMode::ComponentwiseH ? "scp-growth-componentwise" : "scp-growth-inner-product";
    return tail_rule(name, plan, scenarios, dirs,
                     [&](const Vector& omega, const Vector& d, double r) {
                         const Vector x = plan.x_ref + r * d;
                         const Vector h = problem.map.eval(x, omega);
                         if (mode == ScpGrowthMode::ComponentwiseH) return h.minCoeff();
                         return x.dot(h);
                     });
}

std::pair<Matrix, bool> scp_growth_matrix(Index n) {
    const Matrix id = Matrix::Identity(n, n);
    const bool ok = is_copositive(id).status == CopositivityVerdict::Status::Copositive &&
                    is_r0_pair(id).status == R0Verdict::Status::R0;
    return {id, ok};
}

CertificateReport cocoercivity_certificate(const ProblemInstance& problem, Index pair_count, const RayPlan& plan,
                                           const Vector& u_candidate) {
    if (problem.map.interval_valued()) throw std::invalid_argument("cocoercivity_certificate: single-valued map required");
    if (u_candidate.size() != problem.dim) throw std::invalid_argument("cocoercivity_certificate: u dimension mismatch");

    CertificateReport report;
    report.condition = "cocoercivity";
    report.margin = plan.margin;
    report.note = kSampledEvidenceNote;

    const auto scenarios = certificate_scenarios(problem, plan);
    Rng rng(derive_seed(plan.seed, "cert-cocoercive"));
    const double radius = 4.0 * plan.r0;

    double eta_hat = kInf;
    for (Index p = 0; p < pair_count && !report.witness; ++p) {
        Vector zx(problem.dim), zy(problem.dim);
        for (Index i = 0; i < problem.dim; ++i) {
            zx[i] = rng.uniform(-radius, radius);
            zy[i] = rng.uniform(-radius, radius);
        }
        const Vector x = problem.set.project(zx);
        const Vector y = problem.set.project(zy);
        for (Index s = 0; s < static_cast<Index>(scenarios.size()); ++s) {
            const Vector& omega = scenarios[static_cast<std::size_t>(s)];
            const Vector dh = problem.map.eval(x, omega) - problem.map.eval(y, omega);
            const double den = dh.squaredNorm();
            if (den <= 1e-12) continue;
            const double ratio = dh.dot(x - y) / den;
            eta_hat = std::min(eta_hat, ratio);
            if (ratio < plan.margin) {
                CertificateWitness w;
                w.scenario_index = s;
                w.omega = omega;
                w.point = x;
                w.direction = y;
                w.value = ratio;
                w.detail = "co-coercivity ratio below margin for the sampled pair";
                report.witness = std::move(w);
                break;
            }
        }
    }

    bool interior_ok = true;
    double interior_min = kInf;
    if (!report.witness) {
        for (Index s = 0; s < static_cast<Index>(scenarios.size()); ++s) {
            const Vector h = problem.map.eval(u_candidate, scenarios[static_cast<std::size_t>(s)]);
            interior_min = std::min(interior_min, h.minCoeff());
            if (h.minCoeff() <= plan.margin) {
                interior_ok = false;
                CertificateWitness w;
                w.scenario_index = s;
                w.omega = scenarios[static_cast<std::size_t>(s)];
                w.point = u_candidate;
                w.value = h.minCoeff();
                w.detail = "H(u; omega) not in the interior of the dual cone";
                report.witness = std::move(w);
                break;
            }
        }
    }

    EvidenceCell ratio_cell;
    ratio_cell.tail = {eta_hat};
    ratio_cell.tail_min = eta_hat;
    report.evidence.push_back(ratio_cell);
    EvidenceCell interior_cell;
    interior_cell.scenario_index = -1;
    interior_cell.tail = {interior_min};
    interior_cell.tail_min = interior_min;
    report.evidence.push_back(interior_cell);

    report.verdict = (!report.witness && interior_ok) ? Verdict::Pass : Verdict::Fail;
    return report;
}

CertificateReport monotonicity_probe(const ProblemInstance& problem, Index pair_count, const RayPlan& plan) {
    if (problem.map.interval_valued()) throw std::invalid_argument("monotonicity_probe: single-valued map required");

    CertificateReport report;
    report.condition = "monotonicity";
    report.margin = 1e-10;
    report.note = kSampledEvidenceNote;

    const auto scenarios = certificate_scenarios(problem, plan);
    Rng rng(derive_seed(plan.seed, "cert-monotone"));
    const double radius = 4.0 * plan.r0;

    double worst = kInf;
    for (Index p = 0; p < pair_count && !report.witness; ++p) {
        Vector zx(problem.dim), zy(problem.dim);
        for (Index i = 0; i < problem.dim; ++i) {
            zx[i] = rng.uniform(-radius, radius);
            zy[i] = rng.uniform(-radius, radius);
        }
        const Vector x = problem.set.project(zx);
        const Vector y = problem.set.project(zy);
        for (Index s = 0; s < static_cast<Index>(scenarios.size()); ++s) {
            const Vector& omega = scenarios[static_cast<std::size_t>(s)];
            const double v = (problem.map.eval(x, omega) - problem.map.eval(y, omega)).dot(x - y);
            worst = std::min(worst, v);
            if (v < -1e-10) {
                CertificateWitness w;
                w.scenario_index = s;
                w.omega = omega;
                w.point = x;
                w.direction = y;
                w.value = v;
                w.detail = "monotonicity violated on the sampled pair";
                report.witness = std::move(w);
                break;
            }
        }
    }

    EvidenceCell cell;
    cell.tail = {worst};
    cell.tail_min = worst;
    report.evidence.push_back(cell);
    report.verdict = report.witness ? Verdict::Fail : Verdict::Pass;
    return report;
}

namespace {

ScenarioMap add_tau_identity(const ScenarioMap& map, double tau) {
    if (const auto* ra = map.as_random_affine()) {
        RandomAffine out = *ra;
        out.m_base += tau * Matrix::Identity(out.dim(), out.dim());
        return ScenarioMap(out);
    }
    const auto* sm = map.as_smooth();
    if (!sm) throw std::invalid_argument("alternative_witness_search: single-valued map required");
    SmoothMap out = *sm;
    for (Index i = 0; i < out.dim_n; ++i) {
        MonomialTerm t;
        t.coeff = AffineInOmega::constant(tau);
        t.powers = {{i, 1}};
        out.components[static_cast<std::size_t>(i)].monomials.push_back(std::move(t));
    }
    return ScenarioMap(out);
}

} // namespace

CertificateReport alternative_witness_search(const ProblemInstance& problem, const std::vector<double>& radii,
                                             const std::vector<double>& tau_grid, const SolverConfig& solver_config) {
    if (problem.kind != ProblemKind::Scp) throw std::invalid_argument("alternative_witness_search: orthant SCP required");
    if (radii.empty() || tau_grid.empty()) throw std::invalid_argument("alternative_witness_search: empty schedule");

    CertificateReport report;
    report.condition = "alternative";
    report.note = kSampledEvidenceNote;
    const double bound = radii.back();

    Index failures = 0;
    double max_norm = 0.0;
    for (Index t = 0; t < static_cast<Index>(tau_grid.size()); ++t) {
        const double tau = tau_grid[static_cast<std::size_t>(t)];
        ProblemInstance shifted(problem.kind, problem.set, std::nullopt,
                                add_tau_identity(problem.map, tau), problem.scenarios);
        SolveResult sol = ssn_fb_solve(shifted, problem.set.project(Vector::Zero(problem.dim)), solver_config);
        EvidenceCell cell;
        cell.scenario_index = t;
        if (sol.status != SolveStatus::Converged) {
            ++failures;
            cell.tail = {tau, kInf};
            cell.slope_sign = 0;
            report.evidence.push_back(std::move(cell));
            continue;
        }
        const double norm = sol.x.norm();
        max_norm = std::max(max_norm, norm);
        cell.tail = {tau, norm};
        cell.tail_min = norm;
        report.evidence.push_back(std::move(cell));
        if (norm > bound && !report.witness) {
            CertificateWitness w;
            w.value = norm;
            w.radius = tau;
            w.point = sol.x;
            w.detail = "perturbed solution trajectory escaped the radii schedule";
            report.witness = std::move(w);
        }
    }

    if (report.witness) {
        report.verdict = Verdict::Fail;
        report.note += "; unbounded trajectory is the alternative's witness";
    } else if (failures * 2 > static_cast<Index>(tau_grid.size())) {
        report.verdict = Verdict::Inconclusive;
        report.note += "; inner solver failed on most of the tau grid";
    } else {
        report.verdict = Verdict::Pass;
        report.note += "; bounded trajectory (evidence for solvability), max norm " + std::to_string(max_norm);
    }
    return report;
}

} // namespace svi
