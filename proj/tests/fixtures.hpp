#ifndef SVI_TESTS_FIXTURES_HPP
#define SVI_TESTS_FIXTURES_HPP

#include "svi/lcp.hpp"
#include "svi/problem.hpp"

namespace fixtures {

using namespace svi;

/// Two-firm stochastic LCP: M = [[2,1],[1,2]], q(omega) = (-2 + w1, -4 + w2),
/// omega in {(1,1), (-1,-1)} with probability 1/2 each.
inline RandomAffine example1_map() {
    RandomAffine m;
    m.m_base = (Matrix(2, 2) << 2.0, 1.0, 1.0, 2.0).finished();
    m.q_base = (Vector(2) << -2.0, -4.0).finished();
    m.q_coeff = Matrix::Identity(2, 2);
    return m;
}

inline ScenarioModel example1_model() {
    return ScenarioModel::finite_discrete({
        Outcome{(Vector(2) << 1.0, 1.0).finished(), 0.5},
        Outcome{(Vector(2) << -1.0, -1.0).finished(), 0.5},
    });
}

inline ProblemInstance example1_problem() {
    return make_problem(ProblemKind::Scp, GroundSet::nonneg_orthant(2), ScenarioMap(example1_map()), example1_model());
}

/// The deterministic reduction: expectation of the scenario map.
inline LcpInstance example1_expected_lcp() {
    LcpInstance lcp;
    lcp.m = (Matrix(2, 2) << 2.0, 1.0, 1.0, 2.0).finished();
    lcp.q = (Vector(2) << -2.0, -4.0).finished();
    return lcp;
}

inline LcpInstance example1_scenario_lcp(int scenario) {
    LcpInstance lcp;
    lcp.m = (Matrix(2, 2) << 2.0, 1.0, 1.0, 2.0).finished();
    lcp.q = scenario == 1 ? (Vector(2) << -1.0, -3.0).finished() : (Vector(2) << -3.0, -5.0).finished();
    return lcp;
}

} // namespace fixtures

#endif
