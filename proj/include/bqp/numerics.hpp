#pragma once
// Dense symmetric linear algebra shared by both ADMM engines: one-time
// eigendecomposition, shifted-inverse solves, small SPD solves and the
// spectral constants L1 / LH.

#include <Eigen/Core>

#include "bqp/graph.hpp"

namespace bqp {

// Eigendecomposition M = U Diag(lambda) U^T with eigenvalues ascending.
struct SymEigen {
  Eigen::MatrixXd U;
  Eigen::VectorXd lambda;
};

// Throws if M is not symmetric (checked to 1e-10 absolute) or the
// eigensolver fails to converge.
SymEigen sym_eigen(const Eigen::MatrixXd& M);

// Solves (rho*I + 2C) v = rhs through the cached decomposition of C:
// v = U (2*Lambda + rho*I)^{-1} U^T rhs. Throws when some |2*lambda_i + rho|
// is below 1e-12 (near-singular shift).
Eigen::VectorXd shifted_solve(const SymEigen& e, double rho,
                              const Eigen::VectorXd& rhs);

// Solves S * result = RHS for a small symmetric positive definite S (the
// I + X^T X systems). Throws if the Cholesky factorization detects loss of
// positive definiteness.
Eigen::MatrixXd small_spd_solve(const Eigen::MatrixXd& S,
                                const Eigen::MatrixXd& RHS);

// L1 / LH from an eigenvalue vector of C.
SpectralMeta spectral_bounds(const Eigen::VectorXd& eigenvalues);

// L1 = 2*max|lambda|, LH = max(0, -2*lambda_min); computed once per cost
// matrix and cached into it.
SpectralMeta spectral_constants(const CostMatrix& Cm);

}  // namespace bqp
