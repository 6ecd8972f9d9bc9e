#ifndef SVI_GROUND_SET_HPP
#define SVI_GROUND_SET_HPP

#include <memory>
#include <vector>

#include "svi/types.hpp"

namespace svi {

enum class SetKind { NonnegOrthant, Box, Cartesian, MixedPartition };

/// The feasible region K: nonnegative orthant, box (entries may be +-inf),
/// Cartesian product of blocks, or a mixed cone (nonnegative block + free block).
class GroundSet {
public:
    static GroundSet nonneg_orthant(Index n);
    static GroundSet box(Vector lower, Vector upper);
    static GroundSet cartesian(std::vector<GroundSet> blocks);
    static GroundSet mixed_partition(Index nonneg_dim, Index free_dim);

    SetKind kind() const { return kind_; }
    Index dim() const { return dim_; }

    /// Euclidean projection onto the set. Idempotent and 1-Lipschitz.
    Vector project(const Vector& x) const;

    bool contains(const Vector& x, double tol = 1e-10) const;

    /// True for the cone variants admissible as complementarity ground sets.
    bool is_cone() const { return kind_ == SetKind::NonnegOrthant || kind_ == SetKind::MixedPartition; }

    // Box accessors (valid only for SetKind::Box).
    const Vector& lower() const { return lower_; }
    const Vector& upper() const { return upper_; }

    // Cartesian accessors.
    const std::vector<GroundSet>& blocks() const { return blocks_; }
    Index block_count() const { return static_cast<Index>(blocks_.size()); }
    /// Offset of block nu in the ambient vector.
    Index block_offset(Index nu) const;

    // MixedPartition accessors.
    Index nonneg_dim() const { return nonneg_dim_; }
    Index free_dim() const { return free_dim_; }

private:
    GroundSet() = default;

    SetKind kind_ = SetKind::NonnegOrthant;
    Index dim_ = 0;
    Vector lower_, upper_;          // Box
    std::vector<GroundSet> blocks_; // Cartesian
    Index nonneg_dim_ = 0, free_dim_ = 0; // MixedPartition
};

/// Euclidean projection of x onto the set; throws on dimension mismatch.
Vector project(const GroundSet& set, const Vector& x);

} // namespace svi

#endif
