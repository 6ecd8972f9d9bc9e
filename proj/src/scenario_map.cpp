#include "svi/scenario_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svi {

namespace {
constexpr double kKinkSnap = 1e-12;
} // namespace

void PiecewiseAffine::validate() const {
    if (slopes.empty()) throw std::invalid_argument("PiecewiseAffine: needs at least one segment");
    if (kinks.size() + 1 != slopes.size())
        throw std::invalid_argument("PiecewiseAffine: kink count must be segment count - 1");
    double prev = 0.0;
    for (double k : kinks) {
        if (!(k > prev)) throw std::invalid_argument("PiecewiseAffine: kinks must be strictly increasing and positive");
        prev = k;
    }
    if (blend_eps < 0.0) throw std::invalid_argument("PiecewiseAffine: blend_eps must be >= 0");
    if (blend_eps > 0.0) {
        double min_gap = kinks.empty() ? kInf : kinks.front();
        for (std::size_t j = 1; j < kinks.size(); ++j) min_gap = std::min(min_gap, kinks[j] - kinks[j - 1]);
        if (!(2.0 * blend_eps < min_gap))
            throw std::invalid_argument("PiecewiseAffine: blend windows must not overlap");
    }
}

double PiecewiseAffine::intercept(Index j, const Vector& omega) const {
    double a = intercept0.at(omega);
    for (Index k = 0; k < j; ++k) {
        const double bk = slope(k, omega);
        const double bk1 = slope(k + 1, omega);
        a += (bk1 - bk) * kinks[static_cast<std::size_t>(k)];
    }
    return a;
}

Index PiecewiseAffine::segment_at(double t) const {
    const auto it = std::lower_bound(kinks.begin(), kinks.end(), t);
    return static_cast<Index>(it - kinks.begin());
}

double PiecewiseAffine::value(double t, const Vector& omega) const {
    if (blend_eps > 0.0) {
        for (std::size_t j = 0; j < kinks.size(); ++j) {
            const double kappa = kinks[j];
            if (t >= kappa - blend_eps && t <= kappa + blend_eps) {
                const double t0 = kappa - blend_eps;
                const double s0 = -slope(static_cast<Index>(j), omega);
                const double s1 = -slope(static_cast<Index>(j) + 1, omega);
                const double v0 = intercept(static_cast<Index>(j), omega) - (-s0) * t0;
                const double A = (s1 - s0) / (4.0 * blend_eps);
                const double B = s0 - 2.0 * A * t0;
                const double C = v0 - A * t0 * t0 - B * t0;
                return A * t * t + B * t + C;
            }
        }
    }
    const Index j = segment_at(t);
    return intercept(j, omega) - slope(j, omega) * t;
}

double PiecewiseAffine::derivative(double t, const Vector& omega, KinkSide side) const {
    if (blend_eps > 0.0) {
        for (std::size_t j = 0; j < kinks.size(); ++j) {
            const double kappa = kinks[j];
            if (t >= kappa - blend_eps && t <= kappa + blend_eps) {
                const double t0 = kappa - blend_eps;
                const double s0 = -slope(static_cast<Index>(j), omega);
                const double s1 = -slope(static_cast<Index>(j) + 1, omega);
                const double A = (s1 - s0) / (4.0 * blend_eps);
                const double B = s0 - 2.0 * A * t0;
                return 2.0 * A * t + B;
            }
        }
        return -slope(segment_at(t), omega);
    }
    for (std::size_t j = 0; j < kinks.size(); ++j) {
        if (std::abs(t - kinks[j]) <= kKinkSnap) {
            const Index seg = side == KinkSide::Left ? static_cast<Index>(j) : static_cast<Index>(j) + 1;
            return -slope(seg, omega);
        }
    }
    return -slope(segment_at(t), omega);
}

Interval PiecewiseAffine::derivative_interval(double t, const Vector& omega) const {
    if (blend_eps == 0.0) {
        for (std::size_t j = 0; j < kinks.size(); ++j) {
            if (std::abs(t - kinks[j]) <= kKinkSnap) {
                const double dl = -slope(static_cast<Index>(j), omega);
                const double dr = -slope(static_cast<Index>(j) + 1, omega);
                return Interval{std::min(dl, dr), std::max(dl, dr)};
            }
        }
    }
    const double d = derivative(t, omega, KinkSide::Left);
    return Interval{d, d};
}

void RandomAffine::validate() const {
    const Index n = q_base.size();
    if (n < 1) throw std::invalid_argument("RandomAffine: dimension must be >= 1");
    if (m_base.rows() != n || m_base.cols() != n) throw std::invalid_argument("RandomAffine: M base must be n x n");
    for (const auto& mc : m_coeff) {
        if (mc.rows() != n || mc.cols() != n) throw std::invalid_argument("RandomAffine: M coefficient must be n x n");
    }
    if (q_coeff.size() > 0 && q_coeff.rows() != n) throw std::invalid_argument("RandomAffine: q coefficient rows must equal n");
}

Matrix RandomAffine::matrix_at(const Vector& omega) const {
    Matrix m = m_base;
    for (std::size_t k = 0; k < m_coeff.size(); ++k) {
        if (static_cast<Index>(k) < omega.size()) m += omega[static_cast<Index>(k)] * m_coeff[k];
    }
    return m;
}

Vector RandomAffine::offset_at(const Vector& omega) const {
    Vector q = q_base;
    if (q_coeff.cols() > 0) q += q_coeff * omega.head(q_coeff.cols());
    return q;
}

Vector RandomAffine::eval(const Vector& x, const Vector& omega) const {
    return matrix_at(omega) * x + offset_at(omega);
}

std::pair<Matrix, Vector> RandomAffine::mean_parts(const Vector& mean_omega) const {
    return {matrix_at(mean_omega), offset_at(mean_omega)};
}

void SmoothMap::validate() const {
    if (dim_n < 1) throw std::invalid_argument("SmoothMap: dimension must be >= 1");
    if (static_cast<Index>(components.size()) != dim_n)
        throw std::invalid_argument("SmoothMap: one component per output coordinate required");
    for (const auto& p : pieces) p.validate();
    for (const auto& c : components) {
        for (const auto& m : c.monomials) {
            for (const auto& [var, pow] : m.powers) {
                if (var < 0 || var >= dim_n) throw std::invalid_argument("SmoothMap: monomial variable out of range");
                if (pow < 1) throw std::invalid_argument("SmoothMap: monomial exponent must be >= 1");
            }
        }
        for (const auto& t : c.piecewise) {
            if (t.pw_index < 0 || t.pw_index >= static_cast<Index>(pieces.size()))
                throw std::invalid_argument("SmoothMap: piecewise term references unknown piece");
            if (t.agg_weights.size() != dim_n) throw std::invalid_argument("SmoothMap: aggregate weights must have length n");
            if (t.x_index >= dim_n) throw std::invalid_argument("SmoothMap: x factor index out of range");
        }
    }
}

Vector SmoothMap::eval(const Vector& x, const Vector& omega) const {
    Vector out = Vector::Zero(dim_n);
    for (Index i = 0; i < dim_n; ++i) {
        const auto& comp = components[static_cast<std::size_t>(i)];
        double v = 0.0;
        for (const auto& m : comp.monomials) {
            double term = m.coeff.at(omega);
            for (const auto& [var, pow] : m.powers) {
                for (int p = 0; p < pow; ++p) term *= x[var];
            }
            v += term;
        }
        for (const auto& t : comp.piecewise) {
            const auto& pw = pieces[static_cast<std::size_t>(t.pw_index)];
            const double agg = t.agg_weights.dot(x);
            double term = t.use_derivative ? pw.derivative(agg, omega, t.kink_side) : pw.value(agg, omega);
            if (t.x_index >= 0) term *= x[t.x_index];
            v += t.scale * term;
        }
        out[i] = v;
    }
    return out;
}

Index single_map_dim(const SingleMap& m) {
    return std::visit([](const auto& mm) { return mm.dim(); }, m);
}

Vector eval_single(const SingleMap& m, const Vector& x, const Vector& omega) {
    return std::visit([&](const auto& mm) { return mm.eval(x, omega); }, m);
}

void ScenarioMap::check() const {
    if (const auto* ra = std::get_if<RandomAffine>(&v_)) ra->validate();
    if (const auto* sm = std::get_if<SmoothMap>(&v_)) sm->validate();
    if (const auto* iv = std::get_if<IntervalMap>(&v_)) {
        std::visit([](const auto& m) { m.validate(); }, iv->sel_a);
        std::visit([](const auto& m) { m.validate(); }, iv->sel_b);
        if (single_map_dim(iv->sel_a) != single_map_dim(iv->sel_b))
            throw std::invalid_argument("IntervalMap: selection maps must agree in dimension");
    }
}

Index ScenarioMap::dim() const {
    if (const auto* iv = std::get_if<IntervalMap>(&v_)) return single_map_dim(iv->sel_a);
    return std::visit([](const auto& m) -> Index {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, IntervalMap>) return 0;
        else return m.dim();
    }, v_);
}

Vector ScenarioMap::eval(const Vector& x, const Vector& omega) const {
    if (interval_valued())
        throw std::invalid_argument("eval_map: map is interval-valued; use eval_selection");
    if (const auto* ra = std::get_if<RandomAffine>(&v_)) return ra->eval(x, omega);
    return std::get<SmoothMap>(v_).eval(x, omega);
}

std::pair<Vector, Vector> ScenarioMap::eval_interval(const Vector& x, const Vector& omega) const {
    const auto* iv = std::get_if<IntervalMap>(&v_);
    if (!iv) throw std::invalid_argument("eval_interval: map is single-valued");
    Vector a = eval_single(iv->sel_a, x, omega);
    Vector b = eval_single(iv->sel_b, x, omega);
    return {a.cwiseMin(b), a.cwiseMax(b)};
}

namespace {
Matrix smooth_jacobian(const SmoothMap& sm, const Vector& x, const Vector& omega) {
    const Index n = sm.dim();
    Matrix jac(n, n);
    const double h0 = 1e-6;
    for (Index j = 0; j < n; ++j) {
        const double h = h0 * (1.0 + std::abs(x[j]));
        Vector xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        jac.col(j) = (sm.eval(xp, omega) - sm.eval(xm, omega)) / (2.0 * h);
    }
    return jac;
}
} // namespace

Matrix single_map_jacobian(const SingleMap& m, const Vector& x, const Vector& omega) {
    if (const auto* ra = std::get_if<RandomAffine>(&m)) return ra->matrix_at(omega);
    return smooth_jacobian(std::get<SmoothMap>(m), x, omega);
}

Matrix ScenarioMap::jacobian(const Vector& x, const Vector& omega) const {
    if (const auto* ra = std::get_if<RandomAffine>(&v_)) return ra->matrix_at(omega);
    if (const auto* sm = std::get_if<SmoothMap>(&v_)) return smooth_jacobian(*sm, x, omega);
    throw std::invalid_argument("jacobian: map is interval-valued");
}

Vector ScenarioMap::eval_selection(const Vector& x, const Vector& omega, const std::vector<Selector>& sel) const {
    auto [lo, hi] = eval_interval(x, omega);
    if (static_cast<Index>(sel.size()) != lo.size())
        throw std::invalid_argument("eval_selection: selector count must equal dimension");
    Vector out(lo.size());
    for (Index i = 0; i < lo.size(); ++i) out[i] = sel[static_cast<std::size_t>(i)] == Selector::Lower ? lo[i] : hi[i];
    return out;
}

namespace {

AffineInOmega scale_aff(const AffineInOmega& a, double c) {
    return AffineInOmega{c * a.base, c * a.coeff};
}

RandomAffine scale_single(const RandomAffine& ra, double c) {
    RandomAffine out = ra;
    out.m_base *= c;
    for (auto& mk : out.m_coeff) mk *= c;
    out.q_base *= c;
    out.q_coeff *= c;
    return out;
}

SmoothMap scale_single(const SmoothMap& sm, double c) {
    SmoothMap out = sm;
    for (auto& comp : out.components) {
        for (auto& m : comp.monomials) m.coeff = scale_aff(m.coeff, c);
        for (auto& t : comp.piecewise) t.scale *= c;
    }
    return out;
}

SingleMap scale_single_variant(const SingleMap& m, double c) {
    if (const auto* ra = std::get_if<RandomAffine>(&m)) return scale_single(*ra, c);
    return scale_single(std::get<SmoothMap>(m), c);
}

} // namespace

ScenarioMap scale_map(const ScenarioMap& map, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("scale_map: factor must be positive");
    if (const auto* ra = map.as_random_affine()) return ScenarioMap(scale_single(*ra, factor));
    if (const auto* sm = map.as_smooth()) return ScenarioMap(scale_single(*sm, factor));
    const auto* iv = map.as_interval();
    return ScenarioMap(IntervalMap{scale_single_variant(iv->sel_a, factor), scale_single_variant(iv->sel_b, factor)});
}

} // namespace svi
