#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "fixtures.hpp"
#include "svi/lcp.hpp"
#include "svi/rng.hpp"

using namespace svi;

namespace {

LcpInstance random_lcp(Rng& rng, Index n, double span = 2.0) {
    LcpInstance lcp;
    lcp.m = Matrix(n, n);
    lcp.q = Vector(n);
    for (Index i = 0; i < n; ++i) {
        lcp.q[i] = rng.uniform(-span, span);
        for (Index j = 0; j < n; ++j) lcp.m(i, j) = rng.uniform(-span, span);
    }
    return lcp;
}

Matrix random_symmetric(Rng& rng, Index n, double span = 2.0) {
    Matrix a(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) a(i, j) = rng.uniform(-span, span);
    return 0.5 * (a + a.transpose());
}

bool is_valid_solution(const LcpInstance& lcp, const Vector& x, double tol) {
    const Vector w = lcp.m * x + lcp.q;
    return x.minCoeff() >= -tol && w.minCoeff() >= -tol && std::abs(x.dot(w)) <= tol * (1.0 + x.norm() * w.norm());
}

/// Dense simplex-grid minimum of x^T M x (the independent copositivity oracle).
double simplex_grid_min(const Matrix& m, Index points, std::uint64_t seed) {
    const Matrix s = 0.5 * (m + m.transpose());
    const Index n = m.rows();
    Rng rng(seed);
    double best = kInf;
    for (Index i = 0; i < n; ++i) best = std::min(best, s(i, i));
    for (Index p = 0; p < points; ++p) {
        Vector lambda(n);
        double total = 0.0;
        for (Index i = 0; i < n; ++i) {
            lambda[i] = -std::log(std::max(rng.canonical(), 1e-300));
            total += lambda[i];
        }
        lambda /= total;
        best = std::min(best, lambda.dot(s * lambda));
    }
    return best;
}

} // namespace

TEST_CASE("lemke on the paper's two-firm instances") {
    auto det = lemke_solve(fixtures::example1_expected_lcp());
    REQUIRE(det.status == LemkeResult::Status::Solution);
    CHECK((det.x - (Vector(2) << 0.0, 2.0).finished()).norm() <= 1e-9);

    auto s1 = lemke_solve(fixtures::example1_scenario_lcp(1));
    REQUIRE(s1.status == LemkeResult::Status::Solution);
    CHECK((s1.x - (Vector(2) << 0.0, 1.5).finished()).norm() <= 1e-9);

    auto s2 = lemke_solve(fixtures::example1_scenario_lcp(2));
    REQUIRE(s2.status == LemkeResult::Status::Solution);
    CHECK((s2.x - (Vector(2) << 1.0 / 3.0, 7.0 / 3.0).finished()).norm() <= 1e-9);
}

TEST_CASE("lemke trivial and error cases") {
    LcpInstance trivial;
    trivial.m = (Matrix(2, 2) << 0.0, 5.0, -3.0, 1.0).finished();
    trivial.q = (Vector(2) << 1.0, 0.5).finished();
    auto r = lemke_solve(trivial);
    REQUIRE(r.status == LemkeResult::Status::Solution);
    CHECK(r.x.norm() == 0.0);

    LcpInstance bad;
    bad.m = Matrix::Zero(2, 3);
    bad.q = Vector::Zero(2);
    CHECK_THROWS_AS((void)lemke_solve(bad), std::invalid_argument);
}

TEST_CASE("lemke solutions satisfy the complementarity contract") {
    Rng rng(1001);
    int solved = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Index n = 1 + static_cast<Index>(rng.canonical() * 6);
        const LcpInstance lcp = random_lcp(rng, n);
        const auto r = lemke_solve(lcp);
        if (r.status != LemkeResult::Status::Solution) continue;
        ++solved;
        REQUIRE(is_valid_solution(lcp, r.x, 1e-9));
    }
    CHECK(solved > 100);
}

TEST_CASE("enumeration oracle on the paper instances") {
    auto sols = enumerate_lcp_solutions(fixtures::example1_scenario_lcp(2));
    REQUIRE(sols.size() == 1);
    CHECK((sols[0].x - (Vector(2) << 1.0 / 3.0, 7.0 / 3.0).finished()).norm() <= 1e-12);

    LcpInstance idq;
    idq.m = Matrix::Identity(2, 2);
    idq.q = Vector::Ones(2);
    auto trivial = enumerate_lcp_solutions(idq);
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0].x.norm() == 0.0);
}

TEST_CASE("enumeration reports degenerate ray supports") {
    LcpInstance lcp;
    lcp.m = (Matrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished();
    lcp.q = Vector::Zero(2);
    auto sols = enumerate_lcp_solutions(lcp);

    bool has_zero = false, has_e1 = false, has_e2 = false;
    for (const auto& s : sols) {
        if (s.x.norm() == 0.0) has_zero = true;
        if (s.degenerate && (s.x - (Vector(2) << 1.0, 0.0).finished()).norm() <= 1e-12) has_e1 = true;
        if (s.degenerate && (s.x - (Vector(2) << 0.0, 1.0).finished()).norm() <= 1e-12) has_e2 = true;
    }
    CHECK(has_zero);
    CHECK(has_e1);
    CHECK(has_e2);
}

TEST_CASE("enumeration size cap") {
    LcpInstance big;
    big.m = Matrix::Identity(13, 13);
    big.q = Vector::Ones(13);
    CHECK_THROWS_AS((void)enumerate_lcp_solutions(big), std::invalid_argument);
}

TEST_CASE("lemke output belongs to the enumerated solution set") {
    Rng rng(77);
    int solved = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Index n = 1 + static_cast<Index>(rng.canonical() * 6);
        const LcpInstance lcp = random_lcp(rng, n);
        const auto r = lemke_solve(lcp);
        if (r.status != LemkeResult::Status::Solution) continue;
        ++solved;
        const auto oracle = enumerate_lcp_solutions(lcp, 1e-7);
        bool member = false;
        for (const auto& s : oracle) {
            if ((s.x - r.x).lpNorm<Eigen::Infinity>() <= 1e-7 * (1.0 + s.x.lpNorm<Eigen::Infinity>())) {
                member = true;
                break;
            }
        }
        REQUIRE(member);
    }
    CHECK(solved > 150);
}

TEST_CASE("natural residual vanishes on enumerated solutions") {
    Rng rng(88);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = 1 + static_cast<Index>(rng.canonical() * 6);
        const GroundSet orthant = GroundSet::nonneg_orthant(n);
        const LcpInstance lcp = random_lcp(rng, n);
        for (const auto& s : enumerate_lcp_solutions(lcp, 1e-10)) {
            if (s.degenerate) continue;
            const Vector fx = lcp.m * s.x + lcp.q;
            REQUIRE(natural_residual(orthant, s.x, fx) <= 1e-8);
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("copositivity on the reference matrices") {
    CHECK(is_copositive(Matrix::Identity(3, 3)).status == CopositivityVerdict::Status::Copositive);

    const Matrix hard = (Matrix(2, 2) << 1.0, -2.0, -2.0, 1.0).finished();
    const auto verdict = is_copositive(hard);
    REQUIRE(verdict.status == CopositivityVerdict::Status::NotCopositive);
    CHECK(verdict.witness.minCoeff() >= 0.0);
    CHECK(verdict.witness.lpNorm<1>() == doctest::Approx(1.0));
    CHECK(verdict.witness_value == doctest::Approx(-0.5));
    CHECK(verdict.witness.dot(hard * verdict.witness) == doctest::Approx(verdict.witness_value));

    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        Matrix m(3, 3);
        for (Index i = 0; i < 3; ++i)
            for (Index j = 0; j < 3; ++j) m(i, j) = rng.uniform(0.0, 2.0);
        const auto v = is_copositive(m);
        CHECK(v.status == CopositivityVerdict::Status::Copositive);
        CHECK(v.leaves == 1);
    }
}

TEST_CASE("symmetric PSD matrices are copositive") {
    Rng rng(6);
    for (int t = 0; t < 50; ++t) {
        Matrix a(3, 3);
        for (Index i = 0; i < 3; ++i)
            for (Index j = 0; j < 3; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
        const Matrix psd = a.transpose() * a;
        CHECK(is_copositive(psd).status == CopositivityVerdict::Status::Copositive);
    }
}

TEST_CASE("copositivity agrees with the dense grid oracle") {
    Rng rng(314159);
    const double tol = 1e-8;
    for (int t = 0; t < 200; ++t) {
        const Matrix m = random_symmetric(rng, 3);
        const double scale = m.cwiseAbs().maxCoeff();
        const auto verdict = is_copositive(m, 12, tol);
        const double grid_min = simplex_grid_min(m, 100000, 1000 + t);
        if (grid_min < -10.0 * tol * scale) {
            REQUIRE(verdict.status != CopositivityVerdict::Status::Copositive);
        }
        if (verdict.status == CopositivityVerdict::Status::NotCopositive) {
            REQUIRE(verdict.witness.dot(m * verdict.witness) < -tol * scale);
        }
    }
}

TEST_CASE("verdicts are invariant under positive scaling") {
    Rng rng(2718);
    for (int t = 0; t < 60; ++t) {
        const Matrix m = random_symmetric(rng, 1 + static_cast<Index>(rng.canonical() * 3));
        const auto base_cop = is_copositive(m).status;
        const auto base_r0 = is_r0_pair(m).status;
        for (const double beta : {1e-3, 1.0, 1e3}) {
            CHECK(is_copositive(beta * m).status == base_cop);
            CHECK(is_r0_pair(beta * m).status == base_r0);
        }
    }
}

TEST_CASE("R0 verdicts on the reference matrices") {
    CHECK(is_r0_pair(Matrix::Identity(3, 3)).status == R0Verdict::Status::R0);
    CHECK(is_r0_pair((Matrix(2, 2) << 2.0, 1.0, 1.0, 2.0).finished()).status == R0Verdict::Status::R0);

    const auto verdict = is_r0_pair((Matrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished());
    REQUIRE(verdict.status == R0Verdict::Status::NotR0);
    const Vector d = verdict.witness;
    CHECK(d.minCoeff() >= -1e-12);
    CHECK(d.lpNorm<1>() == doctest::Approx(1.0));
    const Matrix m = (Matrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished();
    CHECK((m * d).minCoeff() >= -1e-10);
    CHECK(std::abs(d.dot(m * d)) <= 1e-10);
}

TEST_CASE("R0 witnesses satisfy the kernel contract on random matrices") {
    Rng rng(31337);
    for (int t = 0; t < 100; ++t) {
        const Index n = 1 + static_cast<Index>(rng.canonical() * 4);
        const Matrix m = random_symmetric(rng, n);
        const auto verdict = is_r0_pair(m);
        if (verdict.status == R0Verdict::Status::NotR0) {
            const Vector& d = verdict.witness;
            const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
            REQUIRE(d.lpNorm<1>() == doctest::Approx(1.0));
            REQUIRE(d.minCoeff() >= -1e-10);
            REQUIRE((m * d).minCoeff() >= -1e-9 * scale);
            REQUIRE(std::abs(d.dot(m * d)) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("spectral rescaling") {
    auto [m2, beta2] = normalize_scale(2.0 * Matrix::Identity(2, 2));
    CHECK(beta2 == doctest::Approx(0.5));
    CHECK((m2 - Matrix::Identity(2, 2)).norm() <= 1e-14);

    auto [mex, betaex] = normalize_scale((Matrix(2, 2) << 2.0, 1.0, 1.0, 2.0).finished());
    CHECK(betaex == doctest::Approx(1.0 / 3.0)); // eigenvalues 1 and 3
    (void)mex;

    CHECK_THROWS_AS((void)normalize_scale(Matrix::Zero(2, 2)), std::invalid_argument);

    Rng rng(100);
    for (int t = 0; t < 100; ++t) {
        const Index n = 1 + static_cast<Index>(rng.canonical() * 4);
        Matrix m(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) m(i, j) = rng.uniform(-3.0, 3.0);
        if (m.cwiseAbs().maxCoeff() == 0.0) continue;
        auto [mbar, beta] = normalize_scale(m);
        Eigen::SelfAdjointEigenSolver<Matrix> es(mbar.transpose() * mbar);
        CHECK(std::sqrt(es.eigenvalues().maxCoeff()) == doctest::Approx(1.0));
        CHECK(beta > 0.0);
    }
}
