#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mploss/common.hpp"
#include "mploss/errors.hpp"

namespace mploss {

/// Inequality-form linear program: min c'x subject to G x <= h, x free.
/// Equality constraints are encoded as +/- row pairs.
struct DenseLp {
    Vector c;
    Matrix G;
    Vector h;

    Index num_vars() const { return G.cols(); }
    Index num_rows() const { return G.rows(); }

    void validate() const {
        if (G.rows() < 1 || G.cols() < 1)
            throw InvalidSpec("DenseLp: constraint matrix must be nonempty");
        if (c.size() != G.cols())
            throw DimensionMismatch("DenseLp: cost length != column count");
        if (h.size() != G.rows())
            throw DimensionMismatch("DenseLp: rhs length != row count");
        if (!c.allFinite() || !G.allFinite() || !h.allFinite())
            throw InvalidSpec("DenseLp: non-finite entry");
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Vector x;                   // optimal primal point (valid on Optimal)
    double objective = 0.0;
    std::vector<Index> active;  // sorted tight-row indices
    Vector dual;                // one multiplier per row, >= 0, G' dual = -c
};

struct SolveOptions {
    double feas_tol = 1e-8;   // scaled by (1 + |h_j|)
    double act_tol = 1e-7;    // scaled by (1 + |h_j|)
    double pivot_tol = 1e-9;
};

/// Sorted indices of rows tight at x within tol_act*(1+|h_j|).
inline std::vector<Index> active_set(const DenseLp& lp, const Vector& x,
                                     double tol_act = 1e-7) {
    std::vector<Index> idx;
    Vector r = lp.G * x - lp.h;
    for (Index j = 0; j < lp.num_rows(); ++j)
        if (std::abs(r[j]) <= tol_act * (1.0 + std::abs(lp.h[j]))) idx.push_back(j);
    return idx;
}

/// partner[i] = j when rows i and j encode an equality as a +/- pair, else -1.
/// Pairs are produced by our own constructors with exact negation, so the
/// match is tested tightly.
inline std::vector<Index> equality_pairs(const DenseLp& lp) {
    const Index m = lp.num_rows();
    std::vector<Index> partner(m, -1);
    for (Index i = 0; i < m; ++i) {
        if (partner[i] >= 0) continue;
        for (Index j = i + 1; j < m; ++j) {
            if (partner[j] >= 0) continue;
            double scale = lp.G.row(i).cwiseAbs().maxCoeff() +
                           std::abs(lp.h[i]) + 1.0;
            if ((lp.G.row(i) + lp.G.row(j)).cwiseAbs().maxCoeff() <= 1e-12 * scale &&
                std::abs(lp.h[i] + lp.h[j]) <= 1e-12 * scale) {
                partner[i] = j;
                partner[j] = i;
                break;
            }
        }
    }
    return partner;
}

namespace detail {

// Dense two-phase tableau simplex on the split form
//   min c'(xp - xm)  s.t.  D G (xp - xm) + D s = D h,  xp, xm, s >= 0
// with D flipping rows so the rhs is nonnegative. Bland's rule (lowest
// eligible index) everywhere, which is deterministic and cycle-free.
class Simplex {
public:
    Simplex(const DenseLp& lp, const SolveOptions& opts)
        : lp_(lp), opts_(opts), m_(lp.num_rows()), n_(lp.num_vars()),
          ncols_(2 * n_ + m_) {}

    LpSolution run() {
        build();
        if (!phase1()) {
            LpSolution sol;
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        return phase2();
    }

private:
    const DenseLp& lp_;
    SolveOptions opts_;
    Index m_, n_, ncols_;
    Matrix T_;                 // m_+1 rows: constraints then reduced costs
    std::vector<Index> basis_;
    Vector dsign_;             // row flips applied to reach rhs >= 0

    Index total_cols() const { return ncols_ + m_; }  // + artificials
    double& rhs(Index i) { return T_(i, total_cols()); }

    void build() {
        dsign_ = Vector::Ones(m_);
        for (Index i = 0; i < m_; ++i)
            if (lp_.h[i] < 0) dsign_[i] = -1.0;

        T_ = Matrix::Zero(m_ + 1, total_cols() + 1);
        for (Index i = 0; i < m_; ++i) {
            T_.block(i, 0, 1, n_) = dsign_[i] * lp_.G.row(i);
            T_.block(i, n_, 1, n_) = -dsign_[i] * lp_.G.row(i);
            T_(i, 2 * n_ + i) = dsign_[i];
            T_(i, ncols_ + i) = 1.0;
            rhs(i) = dsign_[i] * lp_.h[i];
        }
        basis_.resize(m_);
        for (Index i = 0; i < m_; ++i) basis_[i] = ncols_ + i;

        // phase-1 reduced costs: cost 1 on artificials, priced out over the
        // artificial basis
        for (Index j = 0; j < total_cols(); ++j) {
            double r = (j >= ncols_) ? 1.0 : 0.0;
            r -= T_.col(j).head(m_).sum();
            T_(m_, j) = r;
        }
        T_(m_, total_cols()) = -T_.col(total_cols()).head(m_).sum();
    }

    void pivot(Index row, Index col) {
        T_.row(row) /= T_(row, col);
        for (Index i = 0; i <= m_; ++i) {
            if (i == row) continue;
            double f = T_(i, col);
            if (f != 0.0) T_.row(i) -= f * T_.row(row);
        }
        basis_[row] = col;
    }

    // Bland: entering = lowest eligible column, leaving = lowest basic index
    // among the ratio-test minimizers. Artificials never re-enter.
    // Returns false on unbounded.
    bool iterate() {
        for (;;) {
            Index enter = -1;
            for (Index j = 0; j < ncols_; ++j) {
                if (T_(m_, j) < -opts_.pivot_tol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;

            Index leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (Index i = 0; i < m_; ++i) {
                double a = T_(i, enter);
                if (a <= opts_.pivot_tol) continue;
                double ratio = rhs(i) / a;
                if (ratio < best - 1e-12 ||
                    (ratio <= best + 1e-12 && (leave < 0 || basis_[i] < basis_[leave])))
                {
                    if (ratio < best) best = ratio;
                    leave = i;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    bool phase1() {
        iterate();  // phase-1 objective is bounded below by 0
        double z1 = -T_(m_, total_cols());
        double scale = 1.0 + lp_.h.cwiseAbs().maxCoeff();
        if (z1 > opts_.feas_tol * scale) return false;

        // drive leftover artificials out of the basis where possible;
        // rows with no real pivot are redundant and keep a zero artificial
        for (Index i = 0; i < m_; ++i) {
            if (basis_[i] < ncols_) continue;
            for (Index j = 0; j < ncols_; ++j) {
                if (std::abs(T_(i, j)) > opts_.pivot_tol) {
                    pivot(i, j);
                    break;
                }
            }
        }
        return true;
    }

    LpSolution phase2() {
        // price the real objective out over the current basis
        Vector c2 = Vector::Zero(total_cols());
        c2.head(n_) = lp_.c;
        c2.segment(n_, n_) = -lp_.c;
        for (Index j = 0; j < total_cols(); ++j) {
            double r = c2[j];
            for (Index i = 0; i < m_; ++i) r -= c2[basis_[i]] * T_(i, j);
            T_(m_, j) = r;
        }
        double z = 0.0;
        for (Index i = 0; i < m_; ++i) z += c2[basis_[i]] * rhs(i);
        T_(m_, total_cols()) = -z;

        LpSolution sol;
        if (!iterate()) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }

        sol.status = LpStatus::Optimal;
        sol.x = Vector::Zero(n_);
        for (Index i = 0; i < m_; ++i) {
            if (basis_[i] < n_) sol.x[basis_[i]] += rhs(i);
            else if (basis_[i] < 2 * n_) sol.x[basis_[i] - n_] -= rhs(i);
        }
        sol.objective = lp_.c.dot(sol.x);
        sol.dual = extract_duals(c2);
        sol.active = active_set(lp_, sol.x, opts_.act_tol);
        return sol;
    }

    // Row multipliers from the final basis: solve B' pi = c_B on the
    // sign-flipped system, then dual_i = -dsign_i * pi_i. Basic slack rows
    // get an exact-zero reduced cost, so inactive-row duals vanish.
    Vector extract_duals(const Vector& c2) const {
        Matrix B(m_, m_);
        for (Index k = 0; k < m_; ++k) {
            Index j = basis_[k];
            Vector col = Vector::Zero(m_);
            if (j < n_) col = dsign_.asDiagonal() * lp_.G.col(j);
            else if (j < 2 * n_) col = -(dsign_.asDiagonal() * lp_.G.col(j - n_));
            else if (j < ncols_) col[j - 2 * n_] = dsign_[j - 2 * n_];
            else col[j - ncols_] = 1.0;
            B.col(k) = col;
        }
        Vector cb(m_);
        for (Index k = 0; k < m_; ++k) cb[k] = c2[basis_[k]];
        Vector pi = B.transpose().partialPivLu().solve(cb);
        return -(dsign_.asDiagonal() * pi);
    }
};

}  // namespace detail

/// Deterministic dense LP solve. Infeasible/unbounded instances are reported
/// through the status field, never thrown.
inline LpSolution solve(const DenseLp& lp, const SolveOptions& opts = {}) {
    lp.validate();
    return detail::Simplex(lp, opts).run();
}

struct DegeneracyReport {
    bool primal_degenerate = false;
    bool dual_degenerate = false;
    std::vector<Index> primal_detail;    // logical active rows of an over-tight vertex
    std::vector<Index> dual_detail;      // active rows droppable at zero cost change
    std::vector<Index> flat_directions;  // variables spanning a cost-flat feasible direction
};

/// Logical view of the active set: each +/- equality pair collapses to its
/// lower row index; remaining tight rows are plain inequalities.
struct LogicalActiveSet {
    std::vector<Index> eq_rows;    // representative row of each tight pair
    std::vector<Index> ineq_rows;  // tight non-pair rows

    Index count() const {
        return static_cast<Index>(eq_rows.size() + ineq_rows.size());
    }
    std::vector<Index> all() const {
        std::vector<Index> v(eq_rows);
        v.insert(v.end(), ineq_rows.begin(), ineq_rows.end());
        std::sort(v.begin(), v.end());
        return v;
    }
};

inline LogicalActiveSet logical_active_set(const DenseLp& lp,
                                           const std::vector<Index>& active) {
    std::vector<Index> partner = equality_pairs(lp);
    std::vector<bool> is_active(lp.num_rows(), false);
    for (Index j : active) is_active[j] = true;

    LogicalActiveSet las;
    for (Index j : active) {
        Index p = partner[j];
        if (p >= 0 && is_active[p]) {
            if (j < p) las.eq_rows.push_back(j);
        } else {
            las.ineq_rows.push_back(j);
        }
    }
    return las;
}

/// Diagnoses violations of the uniqueness assumption at an optimal solution.
/// Primal degeneracy: more logical constraints tight than variables.
/// Dual degeneracy: the optimum is not unique, certified either by a feasible
/// direction that leaves an active inequality at zero cost change (found by a
/// small probe LP) or by a rank-deficient active system (flat optimal face).
inline DegeneracyReport check_nondegenerate(const DenseLp& lp, const LpSolution& sol,
                                            const SolveOptions& opts = {}) {
    if (sol.status != LpStatus::Optimal)
        throw Error("check_nondegenerate: solution is not optimal");

    const Index n = lp.num_vars();
    DegeneracyReport rep;
    LogicalActiveSet las = logical_active_set(lp, sol.active);

    if (las.count() > n) {
        rep.primal_degenerate = true;
        rep.primal_detail = las.all();
    }

    const Index k_eq = static_cast<Index>(las.eq_rows.size());
    const Index k_in = static_cast<Index>(las.ineq_rows.size());
    Matrix M(k_eq + k_in, n);
    for (Index r = 0; r < k_eq; ++r) M.row(r) = lp.G.row(las.eq_rows[r]);
    for (Index r = 0; r < k_in; ++r) M.row(k_eq + r) = lp.G.row(las.ineq_rows[r]);

    Eigen::FullPivLU<Matrix> lu(M);
    lu.setThreshold(1e-9);
    if (lu.rank() < n) {
        // positive-dimensional optimal face; report the moving variables
        Matrix ker = lu.kernel();
        rep.dual_degenerate = true;
        for (Index i = 0; i < n; ++i)
            if (ker.row(i).cwiseAbs().maxCoeff() > 1e-9) rep.flat_directions.push_back(i);
        return rep;
    }
    if (k_in == 0) return rep;

    // probe LP over directions d in [-1,1]^n:
    //   min sum(M_in d)  s.t. M_eq d = 0, c'd = 0, M_in d <= 0
    // a strictly negative optimum certifies a second optimal point
    const Index rows = 2 * k_eq + 2 + k_in + 2 * n;
    DenseLp probe;
    probe.c = Vector::Zero(n);
    for (Index r = 0; r < k_in; ++r) probe.c += M.row(k_eq + r).transpose();
    probe.G = Matrix::Zero(rows, n);
    probe.h = Vector::Zero(rows);
    Index at = 0;
    for (Index r = 0; r < k_eq; ++r) {
        probe.G.row(at++) = M.row(r);
        probe.G.row(at++) = -M.row(r);
    }
    probe.G.row(at++) = lp.c.transpose();
    probe.G.row(at++) = -lp.c.transpose();
    for (Index r = 0; r < k_in; ++r) probe.G.row(at++) = M.row(k_eq + r);
    for (Index i = 0; i < n; ++i) {
        probe.G(at, i) = 1.0;
        probe.h(at++) = 1.0;
        probe.G(at, i) = -1.0;
        probe.h(at++) = 1.0;
    }

    LpSolution psol = solve(probe, opts);
    double scale = 1.0 + lp.c.cwiseAbs().maxCoeff();
    if (psol.status == LpStatus::Optimal && psol.objective < -1e-7 * scale) {
        rep.dual_degenerate = true;
        for (Index r = 0; r < k_in; ++r)
            if (M.row(k_eq + r).dot(psol.x) < -1e-9 * scale)
                rep.dual_detail.push_back(las.ineq_rows[r]);
    }
    return rep;
}

}  // namespace mploss
