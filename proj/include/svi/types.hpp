#ifndef SVI_TYPES_HPP
#define SVI_TYPES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace svi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Default tolerance for residual-based "is a solution" checks.
inline constexpr double kSolutionTol = 1e-8;

/// Closed scalar interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool is_singleton(double tol = 0.0) const { return hi - lo <= tol; }
    double width() const { return hi - lo; }
};

} // namespace svi

#endif
