#include "svi/ground_set.hpp"

#include <stdexcept>

namespace svi {

GroundSet GroundSet::nonneg_orthant(Index n) {
    if (n < 1) throw std::invalid_argument("NonnegOrthant: dimension must be >= 1");
    GroundSet s;
    s.kind_ = SetKind::NonnegOrthant;
    s.dim_ = n;
    return s;
}

GroundSet GroundSet::box(Vector lower, Vector upper) {
    if (lower.size() != upper.size()) throw std::invalid_argument("Box: bound dimensions differ");
    if (lower.size() < 1) throw std::invalid_argument("Box: dimension must be >= 1");
    for (Index i = 0; i < lower.size(); ++i) {
        if (!(lower[i] <= upper[i])) throw std::invalid_argument("Box: requires lower <= upper componentwise");
    }
    GroundSet s;
    s.kind_ = SetKind::Box;
    s.dim_ = lower.size();
    s.lower_ = std::move(lower);
    s.upper_ = std::move(upper);
    return s;
}

GroundSet GroundSet::cartesian(std::vector<GroundSet> blocks) {
    if (blocks.empty()) throw std::invalid_argument("Cartesian: needs at least one block");
    GroundSet s;
    s.kind_ = SetKind::Cartesian;
    s.dim_ = 0;
    for (const auto& b : blocks) s.dim_ += b.dim();
    s.blocks_ = std::move(blocks);
    return s;
}

GroundSet GroundSet::mixed_partition(Index nonneg_dim, Index free_dim) {
    if (nonneg_dim < 0 || free_dim < 0 || nonneg_dim + free_dim < 1)
        throw std::invalid_argument("MixedPartition: dims must be nonnegative and sum to >= 1");
    GroundSet s;
    s.kind_ = SetKind::MixedPartition;
    s.dim_ = nonneg_dim + free_dim;
    s.nonneg_dim_ = nonneg_dim;
    s.free_dim_ = free_dim;
    return s;
}

Index GroundSet::block_offset(Index nu) const {
    Index off = 0;
    for (Index k = 0; k < nu; ++k) off += blocks_[static_cast<std::size_t>(k)].dim();
    return off;
}

Vector GroundSet::project(const Vector& x) const {
    if (x.size() != dim_) throw std::invalid_argument("project: dimension mismatch");
    switch (kind_) {
    case SetKind::NonnegOrthant:
        return x.cwiseMax(0.0);
    case SetKind::Box: {
        Vector y = x;
        for (Index i = 0; i < dim_; ++i) {
            if (lower_[i] > -kInf && y[i] < lower_[i]) y[i] = lower_[i];
            if (upper_[i] < kInf && y[i] > upper_[i]) y[i] = upper_[i];
        }
        return y;
    }
    case SetKind::Cartesian: {
        Vector y(dim_);
        Index off = 0;
        for (const auto& b : blocks_) {
            y.segment(off, b.dim()) = b.project(x.segment(off, b.dim()));
            off += b.dim();
        }
        return y;
    }
    case SetKind::MixedPartition: {
        Vector y = x;
        y.head(nonneg_dim_) = y.head(nonneg_dim_).cwiseMax(0.0);
        return y;
    }
    }
    throw std::logic_error("unreachable");
}

bool GroundSet::contains(const Vector& x, double tol) const {
    return (x - project(x)).norm() <= tol;
}

Vector project(const GroundSet& set, const Vector& x) { return set.project(x); }

} // namespace svi
