#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "svi/problem.hpp"
#include "svi/rng.hpp"

using namespace svi;

TEST_CASE("projection onto the basic sets") {
    const GroundSet orthant = GroundSet::nonneg_orthant(2);
    CHECK(orthant.project((Vector(2) << -1.0, 3.0).finished()) == (Vector(2) << 0.0, 3.0).finished());

    const GroundSet box = GroundSet::box(Vector::Zero(2), Vector::Ones(2));
    CHECK(box.project((Vector(2) << 2.0, -2.0).finished()) == (Vector(2) << 1.0, 0.0).finished());

    std::vector<GroundSet> blocks;
    blocks.push_back(GroundSet::nonneg_orthant(1));
    blocks.push_back(GroundSet::box((Vector(1) << -1.0).finished(), (Vector(1) << 1.0).finished()));
    const GroundSet cart = GroundSet::cartesian(std::move(blocks));
    CHECK(cart.project((Vector(2) << -5.0, 5.0).finished()) == (Vector(2) << 0.0, 1.0).finished());

    CHECK_THROWS_AS((void)orthant.project(Vector::Zero(3)), std::invalid_argument);
    CHECK_THROWS_AS((void)GroundSet::box(Vector::Ones(2), Vector::Zero(2)), std::invalid_argument);
}

TEST_CASE("projection with infinite box bounds and mixed partitions") {
    const GroundSet half = GroundSet::box((Vector(2) << 0.0, -kInf).finished(), (Vector(2) << kInf, 2.0).finished());
    CHECK(half.project((Vector(2) << -3.0, -9.0).finished()) == (Vector(2) << 0.0, -9.0).finished());
    CHECK(half.project((Vector(2) << 7.0, 9.0).finished()) == (Vector(2) << 7.0, 2.0).finished());

    const GroundSet mixed = GroundSet::mixed_partition(2, 1);
    CHECK(mixed.project((Vector(3) << -1.0, 1.0, -5.0).finished()) == (Vector(3) << 0.0, 1.0, -5.0).finished());
}

namespace {

GroundSet random_set(Rng& rng, Index n) {
    const double pick = rng.canonical();
    if (pick < 0.4) return GroundSet::nonneg_orthant(n);
    if (pick < 0.8) {
        Vector lo(n), hi(n);
        for (Index i = 0; i < n; ++i) {
            lo[i] = rng.uniform(-2.0, 0.0);
            hi[i] = lo[i] + rng.uniform(0.0, 3.0);
            if (rng.canonical() < 0.2) lo[i] = -kInf;
            if (rng.canonical() < 0.2) hi[i] = kInf;
        }
        return GroundSet::box(lo, hi);
    }
    std::vector<GroundSet> blocks;
    blocks.push_back(GroundSet::nonneg_orthant(1));
    blocks.push_back(GroundSet::box(-Vector::Ones(n - 1), Vector::Ones(n - 1)));
    return GroundSet::cartesian(std::move(blocks));
}

} // namespace

TEST_CASE("projection is idempotent and nonexpansive on random triples") {
    Rng rng(20240901);
    for (int trial = 0; trial < 10000; ++trial) {
        const Index n = 2 + static_cast<Index>(rng.canonical() * 3);
        const GroundSet set = random_set(rng, n);
        Vector x(n), y(n);
        for (Index i = 0; i < n; ++i) {
            x[i] = rng.uniform(-5.0, 5.0);
            y[i] = rng.uniform(-5.0, 5.0);
        }
        const Vector px = set.project(x);
        const Vector py = set.project(y);
        REQUIRE((set.project(px) - px).norm() == 0.0);
        REQUIRE((px - py).norm() <= (x - y).norm() + 1e-12);
    }
}

TEST_CASE("scenario model invariants") {
    CHECK_THROWS_AS(ScenarioModel::finite_discrete({Outcome{Vector::Zero(1), 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(ScenarioModel::finite_discrete({Outcome{Vector::Zero(1), -0.2}, Outcome{Vector::Zero(1), 1.2}}),
                    std::invalid_argument);

    const auto model = fixtures::example1_model();
    const auto a = sample_scenarios(model, 4, 7);
    const auto b = sample_scenarios(model, 4, 7);
    REQUIRE(a.size() == 4);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    // inverse-CDF frequencies: binomial CLT band around 1/2
    const auto draws = sample_scenarios(model, 100000, 11);
    Index count1 = 0;
    for (const auto& w : draws)
        if (w[0] > 0.0) ++count1;
    const double freq = static_cast<double>(count1) / 100000.0;
    CHECK(std::abs(freq - 0.5) < 0.01);
}

TEST_CASE("sampler reproducibility and mean") {
    std::vector<CoordDist> coords{{DistKind::Uniform, -1.0, 3.0}, {DistKind::Normal, 2.0, 0.5}};
    const auto model = ScenarioModel::sampler(coords, 99);
    const auto a = model.sample(16, 5);
    const auto b = model.sample(16, 5);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    CHECK(model.mean_omega()[0] == doctest::Approx(1.0));
    CHECK(model.mean_omega()[1] == doctest::Approx(2.0));

    const auto draws = model.sample(200000, 13);
    Vector mean = Vector::Zero(2);
    for (const auto& w : draws) mean += w;
    mean /= 200000.0;
    CHECK(mean[0] == doctest::Approx(1.0).epsilon(0.02));
    CHECK(mean[1] == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("eval_map on the two-firm example") {
    const auto problem = fixtures::example1_problem();
    const Vector x = (Vector(2) << 0.0, 2.0).finished();
    const Vector w1 = (Vector(2) << 1.0, 1.0).finished();
    CHECK(eval_map(problem, x, w1) == (Vector(2) << 1.0, 1.0).finished());
    CHECK(eval_map(problem, Vector::Zero(2), Vector::Zero(2)) == (Vector(2) << -2.0, -4.0).finished());

    // purity: identical bits on repeated evaluation
    const Vector once = eval_map(problem, x, w1);
    const Vector twice = eval_map(problem, x, w1);
    CHECK(once == twice);
}

TEST_CASE("eval_map spot value against hand evaluation") {
    RandomAffine m;
    m.m_base = (Matrix(2, 2) << 1.0, -0.5, 0.25, 3.0).finished();
    m.q_base = (Vector(2) << 0.5, -1.5).finished();
    m.q_coeff = (Matrix(2, 2) << 2.0, 0.0, 1.0, -1.0).finished();
    const ScenarioMap map(m);
    const Vector x = (Vector(2) << 1.5, -2.0).finished();
    const Vector omega = (Vector(2) << 0.25, 4.0).finished();

    // independent componentwise evaluation
    Vector expected(2);
    expected[0] = 1.0 * 1.5 + (-0.5) * (-2.0) + 0.5 + 2.0 * 0.25 + 0.0 * 4.0;
    expected[1] = 0.25 * 1.5 + 3.0 * (-2.0) + (-1.5) + 1.0 * 0.25 + (-1.0) * 4.0;
    CHECK((map.eval(x, omega) - expected).norm() <= 1e-15);
}

TEST_CASE("eval_selection reads interval endpoints") {
    // constant interval [-3, -1] in one dimension
    RandomAffine lo;
    lo.m_base = Matrix::Zero(1, 1);
    lo.q_base = (Vector(1) << -3.0).finished();
    lo.q_coeff = Matrix::Zero(1, 0);
    RandomAffine hi = lo;
    hi.q_base[0] = -1.0;
    const ScenarioMap map(IntervalMap{lo, hi});

    const Vector x = Vector::Zero(1);
    const Vector omega = Vector::Zero(1);
    CHECK(map.eval_selection(x, omega, {Selector::Lower})[0] == -3.0);
    CHECK(map.eval_selection(x, omega, {Selector::Upper})[0] == -1.0);
    CHECK_THROWS_AS((void)map.eval(x, omega), std::invalid_argument);

    // singleton interval: lower == upper
    const ScenarioMap singleton(IntervalMap{lo, lo});
    auto [l, u] = singleton.eval_interval(x, omega);
    CHECK(l == u);
}

TEST_CASE("expected_map exact and Monte Carlo") {
    const auto problem = fixtures::example1_problem();
    const Vector x = (Vector(2) << 0.0, 2.0).finished();

    const auto exact = expected_map(problem, x, ExpectationMode::exact());
    CHECK(exact.value.norm() <= 1e-15); // (1,1)/2 + (-1,-1)/2 = 0

    const auto at_zero = expected_map(problem, Vector::Zero(2), ExpectationMode::exact());
    CHECK(at_zero.value == (Vector(2) << -2.0, -4.0).finished());

    // Monte Carlo vs closed-form mean of an affine-in-omega map
    std::vector<CoordDist> coords{{DistKind::Uniform, 0.0, 2.0}, {DistKind::Uniform, -1.0, 1.0}};
    auto sampler_problem = make_problem(ProblemKind::Svi, GroundSet::nonneg_orthant(2),
                                        ScenarioMap(fixtures::example1_map()), ScenarioModel::sampler(coords, 3));
    const Vector mean_omega = sampler_problem.scenarios.mean_omega();
    const auto [mbar, qbar] = fixtures::example1_map().mean_parts(mean_omega);
    const Vector closed_form = mbar * x + qbar;
    const auto mc = expected_map(sampler_problem, x, ExpectationMode::monte_carlo(100000, 21));
    for (Index i = 0; i < 2; ++i) {
        CHECK(std::abs(mc.value[i] - closed_form[i]) <= 4.0 * mc.stderr_[i] + 1e-12);
    }

    CHECK_THROWS_AS((void)expected_map(sampler_problem, x, ExpectationMode::exact()), std::invalid_argument);
}

TEST_CASE("natural residual") {
    const auto problem = fixtures::example1_problem();
    const Vector star = (Vector(2) << 0.0, 2.0).finished();
    const Vector f_star = expected_map(problem, star, ExpectationMode::exact()).value;
    CHECK(natural_residual(problem, star, f_star) <= 1e-15);

    const Vector zero = Vector::Zero(2);
    const Vector fz = (Vector(2) << -2.0, -4.0).finished();
    CHECK(natural_residual(problem, zero, fz) == doctest::Approx(std::sqrt(20.0)));

    const Vector non_solution = (Vector(2) << 1.0, 1.0).finished();
    const Vector fns = expected_map(problem, non_solution, ExpectationMode::exact()).value;
    CHECK(natural_residual(problem, non_solution, fns) > 0.1);
}

TEST_CASE("Fischer-Burmeister residual values") {
    CHECK(fb_residual((Vector(1) << 0.0).finished(), (Vector(1) << 1.0).finished())[0] == 0.0);
    CHECK(fb_residual((Vector(1) << 3.0).finished(), (Vector(1) << 0.0).finished())[0] == 0.0);

    // x = (0,2), F(x; omega^2) = (-1,-1)
    const Vector r = fb_residual((Vector(2) << 0.0, 2.0).finished(), (Vector(2) << -1.0, -1.0).finished());
    CHECK(r[0] == doctest::Approx(2.0));
    CHECK(r[1] == doctest::Approx(std::sqrt(5.0) - 1.0));
}

TEST_CASE("FB residual vanishes exactly on complementary pairs") {
    Rng rng(424242);
    for (int trial = 0; trial < 2000; ++trial) {
        const double mag = std::exp(rng.uniform(-3.0, 3.0));
        double a, b;
        const double pick = rng.canonical();
        if (pick < 0.34) {
            a = 0.0;
            b = mag;
        } else if (pick < 0.67) {
            a = mag;
            b = 0.0;
        } else {
            a = 0.0;
            b = 0.0;
        }
        const double phi = fb_residual((Vector(1) << a).finished(), (Vector(1) << b).finished())[0];
        REQUIRE(std::abs(phi) <= 1e-12);

        // non-complementary draws stay bounded away from zero
        const double an = rng.uniform(-2.0, 2.0);
        const double bn = rng.uniform(-2.0, 2.0);
        const double phin = fb_residual((Vector(1) << an).finished(), (Vector(1) << bn).finished())[0];
        const bool complementary = an >= -1e-12 && bn >= -1e-12 && std::abs(an * bn) <= 1e-12;
        if (std::abs(phin) <= 1e-12) REQUIRE(complementary);
        if (complementary) REQUIRE(std::abs(phin) <= 1e-10);
    }
}

TEST_CASE("instance invariants are enforced") {
    CHECK_THROWS_AS(make_problem(ProblemKind::Scp, GroundSet::box(Vector::Zero(2), Vector::Ones(2)),
                                 ScenarioMap(fixtures::example1_map()), fixtures::example1_model()),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_problem(ProblemKind::Svi, GroundSet::nonneg_orthant(3),
                                 ScenarioMap(fixtures::example1_map()), fixtures::example1_model()),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_problem(ProblemKind::Svi, GroundSet::mixed_partition(1, 1),
                                 ScenarioMap(fixtures::example1_map()), fixtures::example1_model()),
                    std::invalid_argument);
}

TEST_CASE("moving set projections") {
    // K(x) = x/4 + [0, inf)
    const auto ms = MovingSet::translated(GroundSet::nonneg_orthant(1), (Matrix(1, 1) << 0.25).finished(),
                                          Vector::Zero(1));
    const Vector x = (Vector(1) << 2.0).finished();
    CHECK(ms.project_at(x, (Vector(1) << 0.1).finished())[0] == doctest::Approx(0.5));
    CHECK(ms.project_at(x, (Vector(1) << 3.0).finished())[0] == doctest::Approx(3.0));
    CHECK(ms.member(x, x));

    // shared-capacity box
    const auto agg = MovingSet::aggregate_capacity_box(2, 10.0);
    const Vector y = (Vector(2) << 4.0, 4.0).finished();
    CHECK(agg.project_at(y, (Vector(2) << 9.0, 1.0).finished()) == (Vector(2) << 6.0, 1.0).finished());
    CHECK(agg.member(y, y));
    CHECK_FALSE(agg.member((Vector(2) << 8.0, 8.0).finished(), (Vector(2) << 8.0, 8.0).finished()));
}
