#include "svi/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace svi {

MovingSet MovingSet::translated(GroundSet base, Matrix c_lin, Vector c_const) {
    const Index n = base.dim();
    if (c_lin.rows() != n || c_lin.cols() != n) throw std::invalid_argument("MovingSet: c linear part must be n x n");
    if (c_const.size() != n) throw std::invalid_argument("MovingSet: c constant part must have length n");
    MovingSet ms(std::move(base));
    ms.kind_ = Kind::Translated;
    ms.dim_ = n;
    ms.c_lin_ = std::move(c_lin);
    ms.c_const_ = std::move(c_const);
    return ms;
}

MovingSet MovingSet::aggregate_capacity_box(Index n, double total_capacity) {
    if (n < 1) throw std::invalid_argument("MovingSet: dimension must be >= 1");
    if (!(total_capacity > 0.0)) throw std::invalid_argument("MovingSet: total capacity must be positive");
    MovingSet ms(GroundSet::nonneg_orthant(n));
    ms.kind_ = Kind::AggregateCapacityBox;
    ms.dim_ = n;
    ms.total_capacity_ = total_capacity;
    return ms;
}

Vector MovingSet::translation(const Vector& x) const {
    if (kind_ != Kind::Translated) throw std::logic_error("MovingSet: translation only defined for translated sets");
    return c_lin_ * x + c_const_;
}

namespace {
GroundSet capacity_box(const Vector& x, double total, Index n) {
    Vector lower = Vector::Zero(n);
    Vector upper(n);
    const double sum = x.sum();
    for (Index i = 0; i < n; ++i) upper[i] = std::max(0.0, total - (sum - x[i]));
    return GroundSet::box(lower, upper);
}
} // namespace

Vector MovingSet::project_at(const Vector& x, const Vector& z) const {
    if (kind_ == Kind::Translated) {
        const Vector c = translation(x);
        return c + base_.project(z - c);
    }
    return capacity_box(x, total_capacity_, dim_).project(z);
}

bool MovingSet::member(const Vector& x, const Vector& z, double tol) const {
    return (z - project_at(x, z)).norm() <= tol;
}

Vector MovingSet::sample_point(const Vector& x, Rng& rng, double radius) const {
    Vector z(dim_);
    for (Index i = 0; i < dim_; ++i) z[i] = rng.uniform(-radius, radius);
    return project_at(x, z);
}

ProblemInstance::ProblemInstance(ProblemKind kind_in, GroundSet set_in, std::optional<MovingSet> moving,
                                 ScenarioMap map_in, ScenarioModel scenarios_in)
    : kind(kind_in),
      set(std::move(set_in)),
      moving_set(std::move(moving)),
      map(std::move(map_in)),
      scenarios(std::move(scenarios_in)),
      dim(set.dim()) {
    if (map.dim() != dim) throw std::invalid_argument("ProblemInstance: map dimension does not match the set");
    if (kind == ProblemKind::Scp && set.kind() != SetKind::NonnegOrthant)
        throw std::invalid_argument("ProblemInstance: SCP requires a nonnegative-orthant set");
    if (kind == ProblemKind::MixedScp && set.kind() != SetKind::MixedPartition)
        throw std::invalid_argument("ProblemInstance: MixedSCP requires a mixed-partition set");
    if (set.kind() == SetKind::MixedPartition && kind != ProblemKind::MixedScp)
        throw std::invalid_argument("ProblemInstance: mixed partitions are only valid for MixedSCP");
    if (kind == ProblemKind::Sqvi) {
        if (!moving_set) throw std::invalid_argument("ProblemInstance: SQVI requires a moving-set descriptor");
        if (moving_set->dim() != dim) throw std::invalid_argument("ProblemInstance: moving set dimension mismatch");
    } else if (moving_set) {
        throw std::invalid_argument("ProblemInstance: moving set supplied for a non-SQVI kind");
    }
}

ProblemInstance make_problem(ProblemKind kind, GroundSet set, ScenarioMap map, ScenarioModel scenarios) {
    return ProblemInstance(kind, std::move(set), std::nullopt, std::move(map), std::move(scenarios));
}

ProblemInstance make_sqvi(MovingSet moving, ScenarioMap map, ScenarioModel scenarios) {
    GroundSet base = moving.base();
    return ProblemInstance(ProblemKind::Sqvi, std::move(base), std::move(moving), std::move(map), std::move(scenarios));
}

Vector eval_map(const ProblemInstance& problem, const Vector& x, const Vector& omega) {
    if (x.size() != problem.dim) throw std::invalid_argument("eval_map: x dimension mismatch");
    return problem.map.eval(x, omega);
}

ExpectationEstimate expected_map(const ProblemInstance& problem, const Vector& x, const ExpectationMode& mode) {
    ExpectationEstimate est;
    est.kind = mode.kind;
    if (mode.kind == ExpectationKind::ExactFiniteSum) {
        if (!problem.scenarios.is_finite())
            throw std::invalid_argument("expected_map: ExactFiniteSum requires a finite discrete model");
        Vector acc = Vector::Zero(problem.dim);
        for (const auto& o : problem.scenarios.outcomes()) acc += o.prob * problem.map.eval(x, o.omega);
        est.value = acc;
        est.n = static_cast<Index>(problem.scenarios.outcomes().size());
        return est;
    }
    if (mode.n < 1) throw std::invalid_argument("expected_map: MonteCarlo requires N >= 1");
    const auto draws = problem.scenarios.sample(mode.n, mode.seed);
    Vector mean = Vector::Zero(problem.dim);
    Vector m2 = Vector::Zero(problem.dim);
    Index count = 0;
    for (const auto& w : draws) {
        const Vector f = problem.map.eval(x, w);
        ++count;
        const Vector delta = f - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta.cwiseProduct(f - mean);
    }
    est.value = mean;
    est.n = mode.n;
    est.seed = mode.seed;
    if (mode.n > 1) {
        est.stderr_ = (m2 / static_cast<double>(mode.n - 1)).cwiseSqrt() / std::sqrt(static_cast<double>(mode.n));
    } else {
        est.stderr_ = Vector::Zero(problem.dim);
    }
    return est;
}

double natural_residual(const GroundSet& set, const Vector& x, const Vector& fx) {
    return (x - set.project(x - fx)).norm();
}

double natural_residual(const ProblemInstance& problem, const Vector& x, const Vector& fx) {
    return natural_residual(problem.set, x, fx);
}

Vector fb_residual(const Vector& x, const Vector& fx) {
    if (x.size() != fx.size()) throw std::invalid_argument("fb_residual: length mismatch");
    Vector out(x.size());
    for (Index i = 0; i < x.size(); ++i) {
        out[i] = std::sqrt(x[i] * x[i] + fx[i] * fx[i]) - (x[i] + fx[i]);
    }
    return out;
}

AveragedMap AveragedMap::exact(ScenarioMap map, const ScenarioModel& model) {
    if (!model.is_finite()) throw std::invalid_argument("AveragedMap: exact weights require a finite model");
    AveragedMap am(std::move(map));
    for (const auto& o : model.outcomes()) {
        am.omegas_.push_back(o.omega);
        am.weights_.push_back(o.prob);
    }
    return am;
}

AveragedMap AveragedMap::frozen(ScenarioMap map, std::vector<Vector> draws) {
    if (draws.empty()) throw std::invalid_argument("AveragedMap: empty sample");
    AveragedMap am(std::move(map));
    const double w = 1.0 / static_cast<double>(draws.size());
    am.omegas_ = std::move(draws);
    am.weights_.assign(am.omegas_.size(), w);
    return am;
}

AveragedMap AveragedMap::single(ScenarioMap map, Vector omega) {
    AveragedMap am(std::move(map));
    am.omegas_.push_back(std::move(omega));
    am.weights_.push_back(1.0);
    return am;
}

Vector AveragedMap::operator()(const Vector& x) const {
    Vector acc = Vector::Zero(dim());
    for (std::size_t k = 0; k < omegas_.size(); ++k) acc += weights_[k] * map_.eval(x, omegas_[k]);
    return acc;
}

Matrix AveragedMap::jacobian(const Vector& x) const {
    if (const auto* ra = map_.as_random_affine()) {
        Matrix acc = Matrix::Zero(dim(), dim());
        for (std::size_t k = 0; k < omegas_.size(); ++k) acc += weights_[k] * ra->matrix_at(omegas_[k]);
        return acc;
    }
    // central differences; adequate for the piecewise-smooth grammar a.e.
    const Index n = dim();
    Matrix jac(n, n);
    const double h0 = 1e-6;
    for (Index j = 0; j < n; ++j) {
        const double h = h0 * (1.0 + std::abs(x[j]));
        Vector xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        jac.col(j) = ((*this)(xp) - (*this)(xm)) / (2.0 * h);
    }
    return jac;
}

std::optional<Matrix> AveragedMap::constant_jacobian() const {
    if (const auto* ra = map_.as_random_affine()) {
        Matrix acc = Matrix::Zero(dim(), dim());
        for (std::size_t k = 0; k < omegas_.size(); ++k) acc += weights_[k] * ra->matrix_at(omegas_[k]);
        return acc;
    }
    return std::nullopt;
}

} // namespace svi
