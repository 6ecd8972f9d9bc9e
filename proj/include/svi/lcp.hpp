#ifndef SVI_LCP_HPP
#define SVI_LCP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svi/types.hpp"

namespace svi {

/// Linear complementarity instance: 0 <= x  perp  M x + q >= 0.
struct LcpInstance {
    Matrix m;
    Vector q;

    Index dim() const { return q.size(); }
    void validate() const;
};

struct LemkeResult {
    enum class Status { Solution, RayTermination };
    Status status = Status::RayTermination;
    Vector x;          // valid when status == Solution
    Index pivots = 0;
};

/// Lemke's complementary pivoting with an all-ones covering vector and
/// lexicographic tie-breaking (deterministic pivot path). RayTermination
/// signals inapplicability, not unsolvability in general.
LemkeResult lemke_solve(const LcpInstance& lcp);

struct LcpSolution {
    Vector x;
    std::uint32_t support = 0; // bitmask of positive components
    bool degenerate = false;   // from a singular principal submatrix
    std::string note;
};

/// Exhaustive complementary-support enumeration (the ground-truth oracle for
/// small instances, n <= 12). Singular supports contribute consistent
/// least-squares representatives and normalized 1-d kernel rays, flagged
/// degenerate; inconsistent singular supports are skipped.
std::vector<LcpSolution> enumerate_lcp_solutions(const LcpInstance& lcp, double tol = 1e-9);

struct CopositivityVerdict {
    enum class Status { Copositive, NotCopositive, Undecided };
    Status status = Status::Undecided;
    Vector witness;        // x >= 0, ||x||_1 = 1, x^T M x < -tol_effective
    double witness_value = 0.0;
    Index leaves = 0;
};

/// Simplicial-subdivision test of x^T M x >= 0 on the nonnegative orthant.
/// `tol` is relative to max|M_ij| so verdicts are invariant under positive
/// scaling of M. Undecided is returned when the depth cap exhausts before the
/// bound certifies every leaf.
CopositivityVerdict is_copositive(const Matrix& m, int max_depth = 12, double tol = 1e-8);

struct R0Verdict {
    enum class Status { R0, NotR0 };
    Status status = Status::R0;
    Vector witness; // d >= 0, Md >= 0, d^T M d = 0, ||d||_1 = 1
};

/// R0-pair test for (nonnegative orthant, M) by support enumeration of
/// CP(K, 0, M) with ||d||_1 = 1 normalization. n <= 12.
R0Verdict is_r0_pair(const Matrix& m, double tol = 1e-10);

/// beta = 1 / ||M||_2 and the rescaled matrix beta * M with unit spectral norm.
std::pair<Matrix, double> normalize_scale(const Matrix& m);

} // namespace svi

#endif
