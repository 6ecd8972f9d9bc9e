#ifndef SVI_CERTIFICATES_HPP
#define SVI_CERTIFICATES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "svi/lcp.hpp"
#include "svi/problem.hpp"
#include "svi/solvers.hpp"

namespace svi {

/// Finite stand-in for the liminf along ||x|| -> infinity: rays from x_ref in
/// sampled recession directions, radii r0 * 2^j, and a tail window of the last
/// three radii compared against a positive margin. Verdicts are sampled
/// evidence, never proofs.
struct RayPlan {
    Vector x_ref;
    std::vector<Vector> directions; // unit recession directions; empty = defaults
    double r0 = 1.0;
    Index stages = 13;        // j = 0..12
    Index scenario_draws = 64; // sampler models; finite models use all outcomes
    std::uint64_t seed = 0;
    double margin = 1e-6;

    std::vector<double> radii() const;

    /// 2n signed axes intersected with the set plus 8 random unit recession
    /// directions; x_ref must lie in the set (projection residual <= 1e-10).
    static RayPlan defaults(const ProblemInstance& problem, Vector x_ref, std::uint64_t seed = 0);

    void validate(const ProblemInstance& problem) const;
};

struct CertificateWitness {
    Index scenario_index = -1;
    Vector omega;
    Index direction_index = -1;
    Vector direction;
    double radius = 0.0;
    double value = 0.0;
    Vector point; // evaluation point, when meaningful
    std::string detail;
};

struct EvidenceCell {
    Index scenario_index = -1;
    Index direction_index = -1;
    std::vector<double> tail; // last-window values (or summary statistics)
    double tail_min = 0.0;
    int slope_sign = 0; // sign of the last increment
};

enum class Verdict { Pass, Fail, Inconclusive };

struct CertificateReport {
    std::string condition;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<CertificateWitness> witness; // present exactly when verdict == Fail
    std::vector<EvidenceCell> evidence;
    std::string note; // semantics flags, e.g. "sampled evidence"
    double margin = 1e-6;
};

/// Almost-sure coercivity along rays: tail of F(x_ref + r d; omega)^T (r d).
CertificateReport coercivity_certificate(const ProblemInstance& problem, const RayPlan& plan);

/// Per-block coercivity for Cartesian sets: rays grow only block nu, other
/// blocks held at the reference/anchor points.
CertificateReport cartesian_coercivity_certificate(const ProblemInstance& problem, Index nu, const RayPlan& plan);

/// Coercivity of the frozen-reference inner product F(x_ref; omega)^T (r d);
/// meaningful under monotonicity of the scenario maps.
CertificateReport monotone_coercivity_certificate(const ProblemInstance& problem, const RayPlan& plan);

/// Fatou lower-bound hypothesis G(x; omega) >= -u(omega) on sampled (x, omega)
/// pairs over an expanding box; u absent = report the empirical envelope.
CertificateReport lower_bound_certificate(const ProblemInstance& problem, const Vector& x_ref,
                                          const RayPlan& plan,
                                          const std::function<double(const Vector&)>* u = nullptr);

/// Multi-valued coercivity: exact infimum of w^T (x - x_ref) over the interval
/// image (attained at endpoints chosen by the sign of x - x_ref).
CertificateReport multivalued_coercivity_certificate(const ProblemInstance& problem, const RayPlan& plan);

/// SQVI boundary condition: no sampled point of bd(U) with x in K(x) has
/// (x - x_ref)^T F(x; omega) < -margin.
CertificateReport qvi_boundary_certificate(const ProblemInstance& problem, const GroundSet& u_box,
                                           const Vector& x_ref, Index boundary_samples, const RayPlan& plan);

/// SQVI self-mapping check: K(x) subseteq Gamma for sampled x in Gamma.
CertificateReport qvi_compactness_check(const ProblemInstance& problem, const GroundSet& gamma_box, Index probes,
                                        std::uint64_t seed = 0);

enum class ScpGrowthMode { ComponentwiseH, InnerProduct };

/// SCP growth conditions along rays: componentwise min of H, or x^T H(x; omega).
CertificateReport scp_growth_certificate(const ProblemInstance& problem, const RayPlan& plan, ScpGrowthMode mode);

/// Companion matrix for the copositive/R0 route: identity, validated through
/// the copositivity and R0 verdicts.
std::pair<Matrix, bool> scp_growth_matrix(Index n);

/// Empirical co-coercivity modulus on sampled pairs plus the interior-point
/// condition H(u; omega) > margin componentwise.
CertificateReport cocoercivity_certificate(const ProblemInstance& problem, Index pair_count, const RayPlan& plan,
                                           const Vector& u_candidate);

/// Sampled monotonicity probe on K x K x Omega (evidence, not proof).
CertificateReport monotonicity_probe(const ProblemInstance& problem, Index pair_count, const RayPlan& plan);

/// Theorem-of-the-alternative search: solve CP(K, H + tau I) along a
/// decreasing tau grid and report whether solution norms stay bounded.
CertificateReport alternative_witness_search(const ProblemInstance& problem, const std::vector<double>& radii,
                                             const std::vector<double>& tau_grid, const SolverConfig& solver_config);

/// Scenario list used by the certificates for this problem/plan: all outcomes
/// for finite models, seeded draws otherwise.
std::vector<Vector> certificate_scenarios(const ProblemInstance& problem, const RayPlan& plan);

} // namespace svi

#endif
