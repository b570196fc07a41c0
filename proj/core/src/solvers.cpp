#include "folio/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace folio {

namespace {

bool finite(double v) { return std::isfinite(v); }

} // namespace

Eigen::MatrixXd solve_spd_system(const Eigen::MatrixXd& m, const Eigen::MatrixXd& rhs,
                                 const SolverConfig& cfg) {
    if (m.rows() != m.cols()) throw ParameterError("solve_spd_system: matrix must be square");
    if (m.rows() != rhs.rows()) throw ParameterError("solve_spd_system: rhs dimension mismatch");
    if (!m.isApprox(m.transpose(), 1e-12))
        throw ParameterError("solve_spd_system: matrix must be symmetric");

    Eigen::MatrixXd work = m;
    Eigen::LLT<Eigen::MatrixXd> llt(work);
    if (llt.info() != Eigen::Success) {
        const double n = static_cast<double>(work.rows());
        const double eps = cfg.ridge_rel * std::max(work.trace() / n, 1.0e-30);
        work.diagonal().array() += eps;
        llt.compute(work);
        if (llt.info() != Eigen::Success)
            throw SingularMatrixError("matrix not positive definite after ridge retry");
    }
    Eigen::MatrixXd x = llt.solve(rhs);
    // One step of iterative refinement keeps residuals near machine precision
    // even on mildly ill-conditioned windows.
    x += llt.solve(rhs - work * x);
    return x;
}

// ---------------------------------------------------------------------------
// Simplex
// ---------------------------------------------------------------------------

namespace {

// Standard-form image of a LinearProgram: min c·y, A y = b, y >= 0.
struct StandardForm {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::VectorXd c;

    // Original variable reconstruction: x = off + sign*y[col] (or y[col]-y[col2]).
    struct VarMap {
        enum Kind { fixed, shifted, mirrored, split } kind;
        int col = -1;
        int col2 = -1;
        double off = 0.0;
    };
    std::vector<VarMap> vmap;
};

StandardForm to_standard_form(const LinearProgram& lp) {
    const Eigen::Index n = lp.variables();
    const Eigen::Index m_eq = lp.eq_a.rows();

    int cols = 0;
    int bound_rows = 0;
    std::vector<StandardForm::VarMap> vmap(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        const double lo = lp.lo[j], hi = lp.hi[j];
        if (lo > hi) throw ParameterError("LinearProgram: lo > hi for a variable");
        auto& vm = vmap[static_cast<std::size_t>(j)];
        if (finite(lo) && finite(hi) && lo == hi) {
            vm = {StandardForm::VarMap::fixed, -1, -1, lo};
        } else if (finite(lo)) {
            vm = {StandardForm::VarMap::shifted, cols++, -1, lo};
            if (finite(hi)) ++bound_rows; // y <= hi - lo needs a slack row
        } else if (finite(hi)) {
            vm = {StandardForm::VarMap::mirrored, cols++, -1, hi};
        } else {
            vm = {StandardForm::VarMap::split, cols, cols + 1, 0.0};
            cols += 2;
        }
    }
    const int slack0 = cols;
    cols += bound_rows;

    StandardForm sf;
    sf.vmap = std::move(vmap);
    const Eigen::Index m = m_eq + bound_rows;
    sf.a = Eigen::MatrixXd::Zero(m, cols);
    sf.b = Eigen::VectorXd::Zero(m);
    sf.c = Eigen::VectorXd::Zero(cols);
    if (m_eq > 0) sf.b.head(m_eq) = lp.eq_b;

    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& vm = sf.vmap[static_cast<std::size_t>(j)];
        switch (vm.kind) {
        case StandardForm::VarMap::fixed:
            if (m_eq > 0) sf.b.head(m_eq) -= lp.eq_a.col(j) * vm.off;
            break;
        case StandardForm::VarMap::shifted:
            if (m_eq > 0) {
                sf.a.col(vm.col).head(m_eq) = lp.eq_a.col(j);
                sf.b.head(m_eq) -= lp.eq_a.col(j) * vm.off;
            }
            sf.c[vm.col] = lp.c[j];
            break;
        case StandardForm::VarMap::mirrored:
            if (m_eq > 0) {
                sf.a.col(vm.col).head(m_eq) = -lp.eq_a.col(j);
                sf.b.head(m_eq) -= lp.eq_a.col(j) * vm.off;
            }
            sf.c[vm.col] = -lp.c[j];
            break;
        case StandardForm::VarMap::split:
            if (m_eq > 0) {
                sf.a.col(vm.col).head(m_eq) = lp.eq_a.col(j);
                sf.a.col(vm.col2).head(m_eq) = -lp.eq_a.col(j);
            }
            sf.c[vm.col] = lp.c[j];
            sf.c[vm.col2] = -lp.c[j];
            break;
        }
    }

    // Upper-bound rows for two-sided variables: y + s = hi - lo.
    int row = static_cast<int>(m_eq);
    int slack = slack0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& vm = sf.vmap[static_cast<std::size_t>(j)];
        if (vm.kind == StandardForm::VarMap::shifted && finite(lp.hi[j]) && lp.hi[j] != lp.lo[j]) {
            sf.a(row, vm.col) = 1.0;
            sf.a(row, slack) = 1.0;
            sf.b[row] = lp.hi[j] - lp.lo[j];
            ++row;
            ++slack;
        }
    }
    return sf;
}

constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-9;

// Full-tableau two-phase simplex with Bland's rule.
// Returns status; on optimal fills y with the standard-form solution.
SolveStatus simplex_standard(StandardForm& sf, const SolverConfig& cfg, Eigen::VectorXd& y) {
    const int m = static_cast<int>(sf.a.rows());
    const int n = static_cast<int>(sf.a.cols());

    // Normalize rows so b >= 0.
    for (int i = 0; i < m; ++i) {
        if (sf.b[i] < 0) {
            sf.a.row(i) = -sf.a.row(i);
            sf.b[i] = -sf.b[i];
        }
    }

    // Crash basis: zero-cost singleton columns (slacks) before artificials.
    // A negative singleton is usable on a zero-rhs row by flipping the row.
    std::vector<int> basis(static_cast<std::size_t>(m), -1);
    {
        std::vector<int> col_nnz(static_cast<std::size_t>(n), 0);
        std::vector<int> col_row(static_cast<std::size_t>(n), -1);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < m; ++i) {
                if (sf.a(i, j) != 0.0) {
                    ++col_nnz[static_cast<std::size_t>(j)];
                    col_row[static_cast<std::size_t>(j)] = i;
                }
            }
        }
        for (int j = 0; j < n; ++j) {
            if (col_nnz[static_cast<std::size_t>(j)] != 1 || sf.c[j] != 0.0) continue;
            const int i = col_row[static_cast<std::size_t>(j)];
            if (basis[static_cast<std::size_t>(i)] >= 0) continue;
            const double a = sf.a(i, j);
            if (a > kPivotTol) {
                basis[static_cast<std::size_t>(i)] = j;
            } else if (std::abs(a) > kPivotTol && sf.b[i] == 0.0) {
                sf.a.row(i) = -sf.a.row(i);
                basis[static_cast<std::size_t>(i)] = j;
            }
        }
    }

    int n_art = 0;
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<std::size_t>(i)] < 0) ++n_art;

    const int n_tot = n + n_art;
    // Row-major: pivoting is row arithmetic and must stream contiguously.
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> tab(m, n_tot);
    tab.leftCols(n) = sf.a;
    tab.rightCols(n_art).setZero();
    Eigen::VectorXd b = sf.b;

    std::vector<int> art_rows;
    art_rows.reserve(static_cast<std::size_t>(n_art));
    int art = n;
    for (int i = 0; i < m; ++i) {
        if (basis[static_cast<std::size_t>(i)] < 0) {
            tab(i, art) = 1.0;
            basis[static_cast<std::size_t>(i)] = art;
            art_rows.push_back(i);
            ++art;
        }
    }

    // Scale crash-basis rows so basic columns are unit.
    for (int i = 0; i < m; ++i) {
        const int bj = basis[static_cast<std::size_t>(i)];
        if (bj < n) {
            const double piv = tab(i, bj);
            tab.row(i) /= piv;
            b[i] /= piv;
        }
    }

    // Reduced-cost rows for phase 1 (artificial cost) and phase 2.
    // neg_obj tracks the standard tableau quantity -z.
    Eigen::VectorXd d1 = Eigen::VectorXd::Zero(n_tot);
    for (int j = n; j < n_tot; ++j) d1[j] = 1.0;
    Eigen::VectorXd d2 = Eigen::VectorXd::Zero(n_tot);
    d2.head(n) = sf.c;
    double neg_obj1 = 0.0;

    auto price_out = [&](Eigen::VectorXd& d, double& neg_obj, int i) {
        const int bj = basis[static_cast<std::size_t>(i)];
        const double cost = d[bj];
        if (cost != 0.0) {
            d -= cost * tab.row(i).transpose();
            neg_obj -= cost * b[i];
        }
    };
    {
        double unused = 0.0;
        for (int i = 0; i < m; ++i) {
            price_out(d1, neg_obj1, i);
            price_out(d2, unused, i);
        }
    }

    auto pivot = [&](int row, int col) {
        const double piv = tab(row, col);
        tab.row(row) /= piv;
        b[row] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            const double f = tab(i, col);
            if (f != 0.0) {
                tab.row(i) -= f * tab.row(row);
                b[i] -= f * b[row];
                if (b[i] < 0 && b[i] > -1e-13) b[i] = 0.0;
            }
        }
        const double f1 = d1[col];
        if (f1 != 0.0) {
            d1 -= f1 * tab.row(row).transpose();
            neg_obj1 -= f1 * b[row];
        }
        const double f2 = d2[col];
        if (f2 != 0.0) d2 -= f2 * tab.row(row).transpose();
        basis[static_cast<std::size_t>(row)] = col;
    };

    // Bland ratio test: smallest ratio, ties broken by smallest basic index.
    auto leaving_row = [&](int col) {
        int row = -1;
        double best = 0.0;
        for (int i = 0; i < m; ++i) {
            const double a = tab(i, col);
            if (a <= kPivotTol) continue;
            const double ratio = b[i] / a;
            if (row < 0) {
                row = i;
                best = ratio;
                continue;
            }
            const double tie = 1e-12 * (1.0 + std::abs(best));
            if (ratio < best - tie) {
                best = ratio;
                row = i;
            } else if (ratio <= best + tie &&
                       basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(row)]) {
                row = i;
            }
        }
        return row;
    };

    const long cap = std::max<long>(2000, 200L * (m + static_cast<long>(n_tot)));
    long iter = 0;
    int degenerate_streak = 0;

    // Dantzig pricing until a degenerate stretch appears, then Bland's
    // smallest-index rule, whose finiteness guarantee breaks any cycle.
    auto entering_col = [&](const Eigen::VectorXd& d, int limit) {
        if (degenerate_streak < 12) {
            int enter = -1;
            double best = -kReducedCostTol;
            for (int j = 0; j < limit; ++j) {
                if (d[j] < best) {
                    best = d[j];
                    enter = j;
                }
            }
            return enter;
        }
        for (int j = 0; j < limit; ++j)
            if (d[j] < -kReducedCostTol) return j;
        return -1;
    };
    auto note_step = [&](int row) {
        if (b[row] <= 1e-12) {
            ++degenerate_streak;
        } else {
            degenerate_streak = 0;
        }
    };

    // Phase 1: minimize the artificial sum z1 = -neg_obj1.
    if (n_art > 0) {
        const double infeas_tol = cfg.feasibility_tol * (1.0 + sf.b.cwiseAbs().maxCoeff());
        while (-neg_obj1 > infeas_tol) {
            const int enter = entering_col(d1, n_tot);
            if (enter < 0) break;
            const int row = leaving_row(enter);
            if (row < 0) break; // phase-1 objective bounded below; numerical dead end
            note_step(row);
            pivot(row, enter);
            if (++iter > cap) return SolveStatus::max_iterations;
        }
        if (-neg_obj1 > infeas_tol) return SolveStatus::infeasible;
        // Drive remaining artificials out of the basis where possible.
        for (int i = 0; i < m; ++i) {
            if (basis[static_cast<std::size_t>(i)] >= n) {
                int col = -1;
                for (int j = 0; j < n; ++j) {
                    if (std::abs(tab(i, j)) > kPivotTol) {
                        col = j;
                        break;
                    }
                }
                if (col >= 0) pivot(i, col);
                // else: redundant row; the artificial stays basic at zero.
            }
        }
    }

    // Phase 2: artificial columns are never eligible to enter.
    degenerate_streak = 0;
    while (true) {
        const int enter = entering_col(d2, n);
        if (enter < 0) break;
        const int row = leaving_row(enter);
        if (row < 0) return SolveStatus::unbounded;
        note_step(row);
        pivot(row, enter);
        if (++iter > cap) return SolveStatus::max_iterations;
    }

    // Refactorize the final basis against the original data; hundreds of
    // rank-one pivot updates leave O(1e-8) drift in b that a fresh solve
    // removes entirely.
    if (m > 0) {
        Eigen::MatrixXd basis_mat = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            const int bj = basis[static_cast<std::size_t>(i)];
            if (bj < n) {
                basis_mat.col(i) = sf.a.col(bj);
            } else {
                basis_mat(art_rows[static_cast<std::size_t>(bj - n)], i) = 1.0;
            }
        }
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_mat);
        const Eigen::VectorXd exact = lu.solve(sf.b);
        const double res = (basis_mat * exact - sf.b).cwiseAbs().maxCoeff();
        if (res <= 1e-8 * (1.0 + sf.b.cwiseAbs().maxCoeff())) {
            for (int i = 0; i < m; ++i) b[i] = exact[i];
        }
    }

    y = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) {
        const int bj = basis[static_cast<std::size_t>(i)];
        if (bj < n) y[bj] = std::max(b[i], 0.0);
    }
    return SolveStatus::optimal;
}

} // namespace

SolverSolution solve_lp(const LinearProgram& lp, const SolverConfig& cfg) {
    const Eigen::Index n = lp.variables();
    if (lp.lo.size() != n || lp.hi.size() != n)
        throw ParameterError("LinearProgram: bounds dimension mismatch");
    if (lp.eq_a.rows() != lp.eq_b.size() || (lp.eq_a.rows() > 0 && lp.eq_a.cols() != n))
        throw ParameterError("LinearProgram: equality dimension mismatch");

    StandardForm sf = to_standard_form(lp);

    SolverSolution sol;
    Eigen::VectorXd y;
    sol.status = simplex_standard(sf, cfg, y);
    if (sol.status != SolveStatus::optimal) return sol;

    sol.x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& vm = sf.vmap[static_cast<std::size_t>(j)];
        switch (vm.kind) {
        case StandardForm::VarMap::fixed: sol.x[j] = vm.off; break;
        case StandardForm::VarMap::shifted: sol.x[j] = vm.off + y[vm.col]; break;
        case StandardForm::VarMap::mirrored: sol.x[j] = vm.off - y[vm.col]; break;
        case StandardForm::VarMap::split: sol.x[j] = y[vm.col] - y[vm.col2]; break;
        }
        // Sweep rounding dust back inside the box.
        if (finite(lp.lo[j]) && sol.x[j] < lp.lo[j]) sol.x[j] = lp.lo[j];
        if (finite(lp.hi[j]) && sol.x[j] > lp.hi[j]) sol.x[j] = lp.hi[j];
    }
    sol.objective_value = lp.c.dot(sol.x);
    return sol;
}

// ---------------------------------------------------------------------------
// Active-set QP
// ---------------------------------------------------------------------------

namespace {

// All inequality constraints of a QP in one list: in_a rows first, then
// finite bounds as coordinate rows.
struct IneqList {
    std::vector<Eigen::VectorXd> a;
    std::vector<double> b;
};

IneqList gather_inequalities(const QuadraticProgram& qp) {
    IneqList list;
    const Eigen::Index n = qp.variables();
    for (Eigen::Index r = 0; r < qp.in_a.rows(); ++r) {
        list.a.push_back(qp.in_a.row(r).transpose());
        list.b.push_back(qp.in_b[r]);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        if (finite(qp.lo[j])) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
            e[j] = 1.0;
            list.a.push_back(e);
            list.b.push_back(qp.lo[j]);
        }
        if (finite(qp.hi[j])) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
            e[j] = -1.0;
            list.a.push_back(e);
            list.b.push_back(-qp.hi[j]);
        }
    }
    return list;
}

bool qp_point_feasible(const QuadraticProgram& qp, const IneqList& ineq, const Eigen::VectorXd& x,
                       double tol) {
    if (x.size() != qp.variables()) return false;
    if (qp.eq_a.rows() > 0 && (qp.eq_a * x - qp.eq_b).cwiseAbs().maxCoeff() > tol) return false;
    for (std::size_t r = 0; r < ineq.a.size(); ++r)
        if (ineq.a[r].dot(x) < ineq.b[r] - tol) return false;
    return true;
}

// Phase 1: any feasible vertex via the LP kernel (zero objective).
SolverSolution qp_phase1(const QuadraticProgram& qp) {
    const Eigen::Index n = qp.variables();
    const Eigen::Index mi = qp.in_a.rows();
    LinearProgram lp;
    lp.c = Eigen::VectorXd::Zero(n + mi);
    lp.eq_a = Eigen::MatrixXd::Zero(qp.eq_a.rows() + mi, n + mi);
    lp.eq_b = Eigen::VectorXd::Zero(qp.eq_a.rows() + mi);
    if (qp.eq_a.rows() > 0) {
        lp.eq_a.topLeftCorner(qp.eq_a.rows(), n) = qp.eq_a;
        lp.eq_b.head(qp.eq_a.rows()) = qp.eq_b;
    }
    // a·x - s = b, s >= 0 encodes a·x >= b.
    for (Eigen::Index r = 0; r < mi; ++r) {
        lp.eq_a.row(qp.eq_a.rows() + r).head(n) = qp.in_a.row(r);
        lp.eq_a(qp.eq_a.rows() + r, n + r) = -1.0;
        lp.eq_b[qp.eq_a.rows() + r] = qp.in_b[r];
    }
    lp.lo = Eigen::VectorXd::Constant(n + mi, 0.0);
    lp.hi = Eigen::VectorXd::Constant(n + mi, kInf);
    lp.lo.head(n) = qp.lo;
    lp.hi.head(n) = qp.hi;

    SolverSolution s = solve_lp(lp);
    if (s.status == SolveStatus::optimal) s.x = s.x.head(n).eval();
    return s;
}

} // namespace

SolverSolution solve_qp(const QuadraticProgram& qp, const SolverConfig& cfg,
                        const std::optional<Eigen::VectorXd>& warm_start) {
    const Eigen::Index n = qp.variables();
    if (qp.hessian.rows() != n || qp.hessian.cols() != n)
        throw ParameterError("QuadraticProgram: hessian dimension mismatch");
    if (!qp.hessian.isApprox(qp.hessian.transpose(), 1e-10))
        throw ParameterError("QuadraticProgram: hessian must be symmetric");

    Eigen::MatrixXd q = 0.5 * (qp.hessian + qp.hessian.transpose());
    {
        Eigen::LLT<Eigen::MatrixXd> llt(q);
        if (llt.info() != Eigen::Success) {
            const double eps = cfg.ridge_rel * std::max(q.trace() / static_cast<double>(n), 1e-30);
            q.diagonal().array() += eps;
            llt.compute(q);
            if (llt.info() != Eigen::Success)
                throw SingularMatrixError("QP hessian not positive definite after ridge retry");
        }
    }

    const IneqList ineq = gather_inequalities(qp);
    const double act_tol = 10.0 * cfg.feasibility_tol;

    Eigen::VectorXd x;
    if (warm_start && qp_point_feasible(qp, ineq, *warm_start, cfg.feasibility_tol)) {
        x = *warm_start;
    } else {
        SolverSolution p1 = qp_phase1(qp);
        if (p1.status != SolveStatus::optimal) {
            SolverSolution out;
            out.status = p1.status == SolveStatus::unbounded ? SolveStatus::infeasible : p1.status;
            return out;
        }
        x = p1.x;
    }

    // Independent equality rows only; redundant ones would make every KKT
    // system singular.
    Eigen::MatrixXd eq_a = qp.eq_a;
    if (eq_a.rows() > 1) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(eq_a.transpose());
        qr.setThreshold(1e-12);
        if (qr.rank() < eq_a.rows()) {
            std::vector<Eigen::Index> keep;
            Eigen::MatrixXd acc(eq_a.cols(), 0);
            for (Eigen::Index r = 0; r < eq_a.rows(); ++r) {
                Eigen::MatrixXd trial(eq_a.cols(), acc.cols() + 1);
                trial << acc, eq_a.row(r).transpose();
                Eigen::ColPivHouseholderQR<Eigen::MatrixXd> t(trial);
                t.setThreshold(1e-12);
                if (t.rank() == trial.cols()) {
                    keep.push_back(r);
                    acc = trial;
                }
            }
            Eigen::MatrixXd reduced(static_cast<Eigen::Index>(keep.size()), eq_a.cols());
            for (std::size_t i = 0; i < keep.size(); ++i) reduced.row(static_cast<Eigen::Index>(i)) = eq_a.row(keep[i]);
            eq_a = reduced;
        }
    }
    const Eigen::Index n_eq = eq_a.rows();

    // Initial working set: active inequalities that extend the row rank.
    std::vector<int> working;
    {
        Eigen::MatrixXd acc(n, n_eq);
        acc = eq_a.transpose();
        for (std::size_t r = 0; r < ineq.a.size(); ++r) {
            if (ineq.a[r].dot(x) - ineq.b[r] > act_tol) continue;
            Eigen::MatrixXd trial(n, acc.cols() + 1);
            trial << acc, ineq.a[r];
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> t(trial);
            t.setThreshold(1e-12);
            if (t.rank() == trial.cols()) {
                working.push_back(static_cast<int>(r));
                acc = trial;
            }
        }
    }

    const long cap = std::max<long>(cfg.max_iter_factor * static_cast<long>(n), 50);
    SolverSolution out;

    for (long iter = 0; iter < cap; ++iter) {
        const Eigen::Index n_w = n_eq + static_cast<Eigen::Index>(working.size());
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + n_w, n + n_w);
        kkt.topLeftCorner(n, n) = q;
        if (n_eq > 0) {
            kkt.block(n, 0, n_eq, n) = eq_a;
            kkt.block(0, n, n, n_eq) = eq_a.transpose();
        }
        for (std::size_t i = 0; i < working.size(); ++i) {
            const auto& a = ineq.a[static_cast<std::size_t>(working[i])];
            kkt.block(n + n_eq + static_cast<Eigen::Index>(i), 0, 1, n) = a.transpose();
            kkt.block(0, n + n_eq + static_cast<Eigen::Index>(i), n, 1) = a;
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + n_w);
        const Eigen::VectorXd g = q * x + qp.c;
        rhs.head(n) = -g;

        const Eigen::VectorXd sol = Eigen::FullPivLU<Eigen::MatrixXd>(kkt).solve(rhs);
        const Eigen::VectorXd p = sol.head(n);

        if (p.cwiseAbs().maxCoeff() <= 1e-11 * (1.0 + x.cwiseAbs().maxCoeff())) {
            // Multipliers for working inequalities: lambda = -mu, need >= 0.
            int drop = -1;
            double worst = cfg.stationarity_tol;
            for (std::size_t i = 0; i < working.size(); ++i) {
                const double mu = sol[n + n_eq + static_cast<Eigen::Index>(i)];
                if (mu > worst) {
                    worst = mu;
                    drop = static_cast<int>(i);
                }
            }
            if (drop < 0) {
                out.x = x;
                out.objective_value = 0.5 * x.dot(q * x) + qp.c.dot(x);
                out.status = SolveStatus::optimal;
                return out;
            }
            working.erase(working.begin() + drop);
            continue;
        }

        // Step to the nearest blocking constraint.
        double alpha = 1.0;
        int blocking = -1;
        for (std::size_t r = 0; r < ineq.a.size(); ++r) {
            if (std::find(working.begin(), working.end(), static_cast<int>(r)) != working.end())
                continue;
            const double d = ineq.a[r].dot(p);
            if (d >= -1e-12) continue;
            const double t = (ineq.b[r] - ineq.a[r].dot(x)) / d;
            if (t < alpha - 1e-15) {
                alpha = t;
                blocking = static_cast<int>(r);
            }
        }
        if (alpha > 0) x += alpha * p;
        if (blocking >= 0 && alpha < 1.0) working.push_back(blocking);
    }

    out.x = x;
    out.objective_value = 0.5 * x.dot(q * x) + qp.c.dot(x);
    out.status = SolveStatus::max_iterations;
    return out;
}

} // namespace folio
