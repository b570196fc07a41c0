#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>

#include "folio/errors.hpp"

namespace folio {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Central tolerance record shared by the numerical kernels.
struct SolverConfig {
    double feasibility_tol = 1e-8;
    double stationarity_tol = 1e-8;
    /// Relative ridge added to the diagonal (once) when a Cholesky
    /// factorization fails: eps = ridge_rel * trace(M) / N.
    double ridge_rel = 1e-8;
    /// Iteration cap factor; the QP cap is max_iter_factor * N.
    int max_iter_factor = 100;
};

enum class SolveStatus { optimal, infeasible, unbounded, max_iterations };

struct SolverSolution {
    Eigen::VectorXd x;
    double objective_value = 0.0;
    SolveStatus status = SolveStatus::optimal;
};

/// minimize cᵀx  subject to  eq_a·x = eq_b  and  lo ≤ x ≤ hi.
/// Inequality rows are expressed by the caller through slack variables.
/// ±infinity bounds are allowed.
struct LinearProgram {
    Eigen::VectorXd c;
    Eigen::MatrixXd eq_a;
    Eigen::VectorXd eq_b;
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    Eigen::Index variables() const { return c.size(); }
};

/// minimize ½xᵀQx + cᵀx  subject to  eq_a·x = eq_b,  in_a·x ≥ in_b,
/// and lo ≤ x ≤ hi. Q must be symmetric positive semidefinite; a ridge
/// is applied once if the factorization fails.
struct QuadraticProgram {
    Eigen::MatrixXd hessian;
    Eigen::VectorXd c;
    Eigen::MatrixXd eq_a;
    Eigen::VectorXd eq_b;
    Eigen::MatrixXd in_a;  // zero rows when absent
    Eigen::VectorXd in_b;
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    Eigen::Index variables() const { return c.size(); }
};

/// Cholesky solve of M·X = B for symmetric positive definite M, with one
/// ridge retry. Throws SingularMatrixError if the ridged matrix still
/// fails to factorize.
Eigen::MatrixXd solve_spd_system(const Eigen::MatrixXd& m, const Eigen::MatrixXd& rhs,
                                 const SolverConfig& cfg = {});

/// Two-phase primal simplex with Bland's anti-cycling rule.
/// Infeasible and unbounded problems are reported through the status,
/// never by throwing.
SolverSolution solve_lp(const LinearProgram& lp, const SolverConfig& cfg = {});

/// Primal active-set method for convex QPs. The feasible starting point
/// comes from an LP phase 1 unless `warm_start` is given and feasible.
SolverSolution solve_qp(const QuadraticProgram& qp, const SolverConfig& cfg = {},
                        const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

} // namespace folio
