#ifndef SVI_SCENARIO_MAP_HPP
#define SVI_SCENARIO_MAP_HPP

#include <utility>
#include <variant>
#include <vector>

#include "svi/types.hpp"

namespace svi {

/// Scalar coefficient affine in the scenario vector: base + coeff . omega.
struct AffineInOmega {
    double base = 0.0;
    Vector coeff; // may be size 0 (constant)

    double at(const Vector& omega) const {
        double v = base;
        if (coeff.size() > 0) v += coeff.dot(omega.head(coeff.size()));
        return v;
    }
    static AffineInOmega constant(double c) { return AffineInOmega{c, Vector()}; }
};

/// Which one-sided slope a piecewise-affine evaluation uses exactly at a kink.
enum class KinkSide { Left, Right };

/// Continuous, piecewise-affine scalar function of t >= 0:
///   segment j has value a_j(omega) - b_j(omega) * t,
/// with kinks at the given abscissae and intercepts a_j solved from continuity.
/// blend_eps > 0 replaces each kink by a C1 quadratic blend on [kink-eps, kink+eps].
struct PiecewiseAffine {
    std::vector<double> kinks;            // strictly increasing, > 0; size = segments - 1
    AffineInOmega intercept0;             // a_1(omega)
    std::vector<AffineInOmega> slopes;    // b_j(omega), one per segment
    double blend_eps = 0.0;

    void validate() const;
    Index segment_count() const { return static_cast<Index>(slopes.size()); }

    /// a_j(omega) from the continuity recursion a_{j+1} = a_j + (b_{j+1} - b_j) * kink_j.
    double intercept(Index j, const Vector& omega) const;
    double slope(Index j, const Vector& omega) const { return slopes[static_cast<std::size_t>(j)].at(omega); }

    /// Segment index whose affine piece is active at t (kinks assigned to the left piece).
    Index segment_at(double t) const;

    double value(double t, const Vector& omega) const;
    /// Derivative; at a kink (within snap tolerance 1e-12, blend_eps == 0) returns the
    /// one-sided slope chosen by `side`.
    double derivative(double t, const Vector& omega, KinkSide side) const;
    /// Clarke interval of the derivative at t (blend treated as smooth when blend_eps > 0).
    Interval derivative_interval(double t, const Vector& omega) const;
};

/// F(x; omega) = M(omega) x + q(omega) with M, q affine in omega.
struct RandomAffine {
    Matrix m_base;                 // n x n
    std::vector<Matrix> m_coeff;   // per omega coordinate, n x n (may be empty)
    Vector q_base;                 // n
    Matrix q_coeff;                // n x omega_dim (may be 0 columns)

    Index dim() const { return q_base.size(); }
    void validate() const;
    Matrix matrix_at(const Vector& omega) const;
    Vector offset_at(const Vector& omega) const;
    Vector eval(const Vector& x, const Vector& omega) const;
    /// Exact expectation given E[omega]: (E[M], E[q]).
    std::pair<Matrix, Vector> mean_parts(const Vector& mean_omega) const;
};

/// One product term of a smooth-map component:
///   coeff(omega) * prod_k x_{var_k}^{pow_k}.
struct MonomialTerm {
    AffineInOmega coeff;
    std::vector<std::pair<Index, int>> powers; // (variable index, exponent >= 1)
};

/// One piecewise-affine term of a smooth-map component:
///   scale * [x_{x_index}] * P^(r)(agg . x; omega)
/// where P is an entry of the shared PiecewiseAffine pool, r in {value, derivative},
/// and the x factor is optional (x_index = -1).
struct PiecewiseTerm {
    double scale = 1.0;
    Index x_index = -1;
    bool use_derivative = false;
    Vector agg_weights;  // length n
    Index pw_index = 0;  // into SmoothMap::pieces
    KinkSide kink_side = KinkSide::Left;
};

/// Single-valued map assembled from a fixed expression grammar: polynomial
/// monomials plus piecewise-affine compositions of linear aggregates.
struct SmoothMap {
    Index dim_n = 0;
    Index omega_dim = 0;
    std::vector<PiecewiseAffine> pieces;
    struct Component {
        std::vector<MonomialTerm> monomials;
        std::vector<PiecewiseTerm> piecewise;
    };
    std::vector<Component> components;

    Index dim() const { return dim_n; }
    void validate() const;
    Vector eval(const Vector& x, const Vector& omega) const;
};

using SingleMap = std::variant<RandomAffine, SmoothMap>;

Index single_map_dim(const SingleMap& m);
Vector eval_single(const SingleMap& m, const Vector& x, const Vector& omega);

/// Interval-valued (Clarke) map: two extremal-selection maps whose componentwise
/// min/max give the interval endpoints wherever evaluated.
struct IntervalMap {
    SingleMap sel_a;
    SingleMap sel_b;
};

enum class Selector { Lower, Upper };

/// d F(x; omega) / dx for a single-valued map: analytic for random-affine maps,
/// central differences otherwise (an element of the generalized Jacobian a.e.).
Matrix single_map_jacobian(const SingleMap& m, const Vector& x, const Vector& omega);

class ScenarioMap;

/// The map multiplied by a positive constant (used by scale-robustness checks).
ScenarioMap scale_map(const ScenarioMap& map, double factor);

/// A scenario-based map F(x; omega): random-affine, composed smooth, or
/// interval-valued. Evaluation is pure: identical (x, omega) give identical bits.
class ScenarioMap {
public:
    ScenarioMap(RandomAffine m) : v_(std::move(m)) { check(); }
    ScenarioMap(SmoothMap m) : v_(std::move(m)) { check(); }
    ScenarioMap(IntervalMap m) : v_(std::move(m)) { check(); }

    Index dim() const;
    bool interval_valued() const { return std::holds_alternative<IntervalMap>(v_); }

    /// Single-valued evaluation; throws if the map is interval-valued.
    Vector eval(const Vector& x, const Vector& omega) const;

    /// Componentwise interval endpoints (lo, hi); throws if single-valued.
    std::pair<Vector, Vector> eval_interval(const Vector& x, const Vector& omega) const;

    /// Chosen endpoint selection of an interval-valued map.
    Vector eval_selection(const Vector& x, const Vector& omega, const std::vector<Selector>& sel) const;

    /// Jacobian of a single-valued map at (x, omega).
    Matrix jacobian(const Vector& x, const Vector& omega) const;

    const RandomAffine* as_random_affine() const { return std::get_if<RandomAffine>(&v_); }
    const SmoothMap* as_smooth() const { return std::get_if<SmoothMap>(&v_); }
    const IntervalMap* as_interval() const { return std::get_if<IntervalMap>(&v_); }

private:
    void check() const;
    std::variant<RandomAffine, SmoothMap, IntervalMap> v_;
};

} // namespace svi

#endif
