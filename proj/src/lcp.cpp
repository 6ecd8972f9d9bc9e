#include "svi/lcp.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svi {

void LcpInstance::validate() const {
    if (q.size() < 1) throw std::invalid_argument("LcpInstance: dimension must be >= 1");
    if (m.rows() != q.size() || m.cols() != q.size()) throw std::invalid_argument("LcpInstance: M must be square n x n");
    if (!m.allFinite() || !q.allFinite()) throw std::invalid_argument("LcpInstance: entries must be finite");
}

namespace {

/// Lexicographic comparison of candidate pivot rows r, s for the ratio test:
/// compares (rhs, B^-1 rows) scaled by the pivot column entries.
bool lex_smaller(const Matrix& tableau, const Vector& rhs, Index r, Index s, Index col, Index n) {
    const double ar = tableau(r, col);
    const double as = tableau(s, col);
    double vr = rhs[r] / ar;
    double vs = rhs[s] / as;
    if (std::abs(vr - vs) > 1e-12 * (1.0 + std::abs(vr) + std::abs(vs))) return vr < vs;
    for (Index j = 0; j < n; ++j) { // w columns carry B^-1
        vr = tableau(r, j) / ar;
        vs = tableau(s, j) / as;
        if (std::abs(vr - vs) > 1e-12 * (1.0 + std::abs(vr) + std::abs(vs))) return vr < vs;
    }
    return false;
}

/// Re-solve the complementary support exactly for a clean solution.
std::optional<Vector> refine_support(const LcpInstance& lcp, const std::vector<Index>& support) {
    const Index n = lcp.dim();
    const Index k = static_cast<Index>(support.size());
    Vector x = Vector::Zero(n);
    if (k > 0) {
        Matrix sub(k, k);
        Vector rhs(k);
        for (Index a = 0; a < k; ++a) {
            rhs[a] = -lcp.q[support[static_cast<std::size_t>(a)]];
            for (Index b = 0; b < k; ++b)
                sub(a, b) = lcp.m(support[static_cast<std::size_t>(a)], support[static_cast<std::size_t>(b)]);
        }
        Eigen::FullPivLU<Matrix> lu(sub);
        if (!lu.isInvertible()) return std::nullopt;
        const Vector xa = lu.solve(rhs);
        for (Index a = 0; a < k; ++a) x[support[static_cast<std::size_t>(a)]] = xa[a];
    }
    const Vector w = lcp.m * x + lcp.q;
    if (x.minCoeff() < -1e-9 || w.minCoeff() < -1e-9) return std::nullopt;
    if (std::abs(x.dot(w)) > 1e-9 * (1.0 + x.norm() * w.norm())) return std::nullopt;
    return x;
}

} // namespace

LemkeResult lemke_solve(const LcpInstance& lcp) {
    lcp.validate();
    const Index n = lcp.dim();
    LemkeResult result;

    if (lcp.q.minCoeff() >= 0.0) {
        result.status = LemkeResult::Status::Solution;
        result.x = Vector::Zero(n);
        return result;
    }

    // Tableau for w - M z - d z0 = q, columns [w | z | z0], d = ones.
    Matrix tableau(n, 2 * n + 1);
    tableau.leftCols(n) = Matrix::Identity(n, n);
    tableau.middleCols(n, n) = -lcp.m;
    tableau.col(2 * n) = -Vector::Ones(n);
    Vector rhs = lcp.q;
    std::vector<Index> basis(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) basis[static_cast<std::size_t>(i)] = i; // w_i basic

    auto pivot = [&](Index row, Index col) {
        const double p = tableau(row, col);
        tableau.row(row) /= p;
        rhs[row] /= p;
        for (Index i = 0; i < n; ++i) {
            if (i == row) continue;
            const double f = tableau(i, col);
            if (f != 0.0) {
                tableau.row(i) -= f * tableau.row(row);
                rhs[i] -= f * rhs[row];
            }
        }
        basis[static_cast<std::size_t>(row)] = col;
    };

    // Bring z0 in at the most negative rhs row.
    Index start = 0;
    for (Index i = 1; i < n; ++i)
        if (rhs[i] < rhs[start]) start = i;
    Index leaving_var = basis[static_cast<std::size_t>(start)];
    pivot(start, 2 * n);

    const Index z0_col = 2 * n;
    const Index max_pivots = 2000 + 200 * n;
    for (result.pivots = 1; result.pivots <= max_pivots; ++result.pivots) {
        // entering variable: complement of what just left
        const Index entering = leaving_var < n ? leaving_var + n : leaving_var - n;

        Index row = -1;
        for (Index i = 0; i < n; ++i) {
            if (tableau(i, entering) > 1e-11) {
                if (row < 0 || lex_smaller(tableau, rhs, i, row, entering, n)) row = i;
            }
        }
        if (row < 0) {
            result.status = LemkeResult::Status::RayTermination;
            return result;
        }

        leaving_var = basis[static_cast<std::size_t>(row)];
        pivot(row, entering);

        if (leaving_var == z0_col) {
            Vector x = Vector::Zero(n);
            std::vector<Index> support;
            for (Index i = 0; i < n; ++i) {
                const Index b = basis[static_cast<std::size_t>(i)];
                if (b >= n && b < 2 * n) {
                    x[b - n] = rhs[i];
                    if (rhs[i] > 1e-11) support.push_back(b - n);
                }
            }
            if (auto refined = refine_support(lcp, support)) x = *refined;
            result.status = LemkeResult::Status::Solution;
            result.x = x;
            return result;
        }
    }
    result.status = LemkeResult::Status::RayTermination;
    return result;
}

std::vector<LcpSolution> enumerate_lcp_solutions(const LcpInstance& lcp, double tol) {
    lcp.validate();
    const Index n = lcp.dim();
    if (n > 12) throw std::invalid_argument("enumerate_lcp_solutions: n must be <= 12");
    const double scale = std::max(1.0, std::max(lcp.m.cwiseAbs().maxCoeff(), lcp.q.cwiseAbs().maxCoeff()));

    std::vector<LcpSolution> found;
    auto feasible = [&](const Vector& x) {
        const Vector w = lcp.m * x + lcp.q;
        for (Index i = 0; i < n; ++i) {
            if (x[i] < -tol * scale || w[i] < -tol * scale) return false;
            if (std::abs(x[i] * w[i]) > tol * scale * (1.0 + scale)) return false;
        }
        return true;
    };
    auto push_candidate = [&](Vector x, std::uint32_t mask, bool degenerate, std::string note) {
        if (!x.allFinite() || !feasible(x)) return;
        for (const auto& s : found)
            if ((s.x - x).lpNorm<Eigen::Infinity>() <= 1e-8) return;
        found.push_back(LcpSolution{std::move(x), mask, degenerate, std::move(note)});
    };

    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<Index> support;
        for (Index i = 0; i < n; ++i)
            if (mask & (1u << i)) support.push_back(i);
        const Index k = static_cast<Index>(support.size());

        if (k == 0) {
            push_candidate(Vector::Zero(n), mask, false, "");
            continue;
        }

        Matrix sub(k, k);
        Vector rhs(k);
        for (Index a = 0; a < k; ++a) {
            rhs[a] = -lcp.q[support[static_cast<std::size_t>(a)]];
            for (Index b = 0; b < k; ++b)
                sub(a, b) = lcp.m(support[static_cast<std::size_t>(a)], support[static_cast<std::size_t>(b)]);
        }

        Eigen::FullPivLU<Matrix> lu(sub);
        if (lu.isInvertible()) {
            const Vector xa = lu.solve(rhs);
            Vector x = Vector::Zero(n);
            for (Index a = 0; a < k; ++a) x[support[static_cast<std::size_t>(a)]] = xa[a];
            push_candidate(std::move(x), mask, false, "");
            continue;
        }

        // Degenerate support: least-squares representative if consistent.
        Eigen::CompleteOrthogonalDecomposition<Matrix> cod(sub);
        const Vector xa = cod.solve(rhs);
        if ((sub * xa - rhs).norm() <= tol * scale * std::sqrt(static_cast<double>(k))) {
            Vector x = Vector::Zero(n);
            for (Index a = 0; a < k; ++a) x[support[static_cast<std::size_t>(a)]] = xa[a];
            push_candidate(std::move(x), mask, true, "degenerate support");
        } else {
            continue; // inconsistent singular support: skipped
        }

        // Normalized kernel ray representative (solution continuum direction).
        const Matrix kern = lu.kernel();
        if (kern.cols() == 1) {
            Vector d = kern.col(0);
            if (d.sum() < 0.0) d = -d;
            const double s1 = d.lpNorm<1>();
            if (s1 > 1e-12) {
                d /= s1;
                Vector x = Vector::Zero(n);
                for (Index a = 0; a < k; ++a) x[support[static_cast<std::size_t>(a)]] = d[a];
                push_candidate(std::move(x), mask, true, "degenerate support (kernel ray)");
            }
        }
    }
    return found;
}

namespace {

struct CopoSearch {
    const Matrix* sym;
    double tol_eff;
    int max_depth;
    bool undecided = false;
    Index leaves = 0;
    std::optional<std::pair<Vector, double>> witness;

    void visit(const Matrix& vertices, const Matrix& form, int depth) {
        if (witness) return;
        const Index k = form.rows();
        Index wi = -1;
        double wmin = -tol_eff;
        for (Index i = 0; i < k; ++i) {
            if (form(i, i) < wmin) {
                wmin = form(i, i);
                wi = i;
            }
        }
        if (wi >= 0) {
            witness = {vertices.col(wi), form(wi, wi)};
            return;
        }
        Index bi = 0, bj = 0;
        double bmin = form(0, 0);
        for (Index i = 0; i < k; ++i) {
            for (Index j = i; j < k; ++j) {
                if (form(i, j) < bmin) {
                    bmin = form(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bmin >= -tol_eff) {
            ++leaves; // certified: min entry bounds the form from below on this simplex
            return;
        }
        if (depth >= max_depth) {
            undecided = true;
            ++leaves;
            return;
        }
        const Vector mid = 0.5 * (vertices.col(bi) + vertices.col(bj));
        for (const Index replace : {bi, bj}) {
            Matrix v2 = vertices;
            v2.col(replace) = mid;
            Matrix f2 = form;
            const Vector cross = vertices.transpose() * ((*sym) * mid);
            f2.row(replace) = cross.transpose();
            f2.col(replace) = cross;
            f2(replace, replace) = mid.dot((*sym) * mid);
            // keep the untouched rows/cols consistent with the new vertex set
            for (Index i = 0; i < k; ++i) {
                for (Index j = 0; j < k; ++j) {
                    if (i != replace && j != replace) f2(i, j) = form(i, j);
                }
            }
            visit(v2, f2, depth + 1);
            if (witness) return;
        }
    }
};

} // namespace

CopositivityVerdict is_copositive(const Matrix& m, int max_depth, double tol) {
    if (m.rows() != m.cols() || m.rows() < 1) throw std::invalid_argument("is_copositive: M must be square");
    const Index n = m.rows();
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    const Matrix sym = 0.5 * (m + m.transpose());

    CopoSearch search;
    search.sym = &sym;
    search.tol_eff = tol * scale;
    search.max_depth = max_depth;
    search.visit(Matrix::Identity(n, n), sym, 0);

    CopositivityVerdict verdict;
    verdict.leaves = search.leaves;
    if (search.witness) {
        verdict.status = CopositivityVerdict::Status::NotCopositive;
        verdict.witness = search.witness->first;
        verdict.witness_value = search.witness->second;
    } else if (search.undecided) {
        verdict.status = CopositivityVerdict::Status::Undecided;
    } else {
        verdict.status = CopositivityVerdict::Status::Copositive;
    }
    return verdict;
}

R0Verdict is_r0_pair(const Matrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() < 1) throw std::invalid_argument("is_r0_pair: M must be square");
    const Index n = m.rows();
    if (n > 12) throw std::invalid_argument("is_r0_pair: n must be <= 12");
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    const double eff = tol * std::max(scale, 1.0);

    auto try_witness = [&](const std::vector<Index>& support, Vector da) -> std::optional<Vector> {
        const double s1 = da.lpNorm<1>();
        if (s1 <= 1e-12) return std::nullopt;
        if (da.sum() < 0.0) da = -da;
        da /= da.lpNorm<1>();
        for (Index a = 0; a < da.size(); ++a)
            if (da[a] < -1e-10) return std::nullopt;
        Vector d = Vector::Zero(n);
        for (Index a = 0; a < da.size(); ++a) d[support[static_cast<std::size_t>(a)]] = std::max(0.0, da[a]);
        const Vector md = m * d;
        for (Index i = 0; i < n; ++i)
            if (md[i] < -eff) return std::nullopt;
        if (std::abs(d.dot(md)) > eff) return std::nullopt;
        return d;
    };

    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<Index> support;
        for (Index i = 0; i < n; ++i)
            if (mask & (1u << i)) support.push_back(i);
        const Index k = static_cast<Index>(support.size());

        Matrix sub(k, k);
        for (Index a = 0; a < k; ++a)
            for (Index b = 0; b < k; ++b)
                sub(a, b) = m(support[static_cast<std::size_t>(a)], support[static_cast<std::size_t>(b)]);

        Eigen::FullPivLU<Matrix> lu(sub);
        lu.setThreshold(1e-10);
        if (lu.isInvertible()) continue;
        const Matrix kern = lu.kernel();
        for (Index c = 0; c < kern.cols(); ++c) {
            for (const double sgn : {1.0, -1.0}) {
                if (auto w = try_witness(support, sgn * kern.col(c))) {
                    return R0Verdict{R0Verdict::Status::NotR0, *w};
                }
            }
        }
    }
    return R0Verdict{R0Verdict::Status::R0, Vector()};
}

std::pair<Matrix, double> normalize_scale(const Matrix& m) {
    if (m.rows() < 1 || m.cols() < 1) throw std::invalid_argument("normalize_scale: empty matrix");
    if (m.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("normalize_scale: zero matrix");
    Eigen::JacobiSVD<Matrix> svd(m);
    const double spectral = svd.singularValues()[0];
    const double beta = 1.0 / spectral;
    return {beta * m, beta};
}

} // namespace svi
