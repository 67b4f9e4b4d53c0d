#pragma once
// ADMM on the bilinear lifted form of min x^T C x over {-1,+1}^n:
//
//   min Tr(CZ)   s.t.  diag(Z) = 1,  Z = X Y^T,  X = Y
//
// with X, Y in R^{n x r}. r = 1 recovers the binary vector problem; the
// full mode r = ceil(sqrt(2n)) makes the factorization wide enough that
// r(r+1)/2 > n. Each iteration: closed-form Y-step via an r x r SPD solve,
// joint (Z, X)-step via a diagonal multiplier solve that enforces
// diag(Z) = 1 exactly, then dual ascent with geometric rho growth.

#include <cstdint>

#include "bqp/graph.hpp"
#include "bqp/trace.hpp"

namespace bqp {

enum class RankMode { one, full };

struct MatrixConfig {
  RankMode r_mode = RankMode::full;
  double rho0 = 1.0;
  double alpha = 1.1;  // must be > 1 (rho must grow for convergence)
  double eps = 1e-5;   // stop when max(||X-Y||_F, ||Z-XY^T||_F) <= eps
  int max_iter = 500;
  std::uint64_t seed = 0;
  double rho_cap = 1e10;
  // Multiplier norms above dual_bound_factor * max(1, initial norm) set the
  // dual_bound_exceeded flag in the trace.
  double dual_bound_factor = 1e6;
};

// Factor width for a given mode: 1, or ceil(sqrt(2n)).
int rank_for(RankMode mode, Eigen::Index n);

struct MatrixState {
  Eigen::MatrixXd Z;        // n x n (not kept symmetric mid-run)
  Eigen::MatrixXd X;        // n x r
  Eigen::MatrixXd Y;        // n x r
  Eigen::MatrixXd Lambda1;  // n x n dual of Z = XY^T
  Eigen::MatrixXd Lambda2;  // n x r dual of X = Y
  double rho = 0.0;
  int k = 0;
};

// Intermediates of the (Z, X)-step, exposed so stationarity of the
// constrained subproblem can be verified from outside:
//   D = (Lambda1*Y - Lambda2)/rho + Y
//   G_i = 1 + ||row i of Y||^2            (diagonal of the nu-system)
//   G nu = rho*(1 - diag(D Y^T)) + diag((C + Lambda1)(I + Y Y^T))
//   B = -(C - Diag(nu) + Lambda1)/rho
struct KKTWork {
  Eigen::VectorXd nu;
  Eigen::MatrixXd D;
  Eigen::VectorXd G;
  Eigen::MatrixXd B;
};

// Z0, X0, Lambda1_0, Lambda2_0 i.i.d. standard normal (drawn in that order,
// row-major); Y0 = X0 so the X = Y constraint starts satisfied; rho = rho0.
MatrixState init_matrix(const CostMatrix& Cm, const MatrixConfig& cfg);

// Y <- ((Lambda1^T X + Lambda2)/rho + Z^T X + X)(I + X^T X)^{-1}, the
// minimizer of ||Z - XY^T + Lambda1/rho||_F^2 + ||X - Y + Lambda2/rho||_F^2.
void update_Y(MatrixState& s);

// Joint minimizer of the augmented Lagrangian over (Z, X) subject to
// diag(Z) = 1: X = B Y + D, Z = X Y^T + B with the multiplier nu solved
// from the diagonal system above. Returns the intermediates.
KKTWork update_ZX(MatrixState& s, const CostMatrix& Cm);

// Lambda1 += rho*(Z - XY^T); Lambda2 += rho*(X - Y);
// rho <- min(alpha*rho, rho_cap); k++.
void update_duals_matrix(MatrixState& s, const MatrixConfig& cfg);

// Tr(CZ) + <Lambda2, X-Y> + <Lambda1, Z-XY^T>
//   + (rho/2)||X-Y||_F^2 + (rho/2)||Z-XY^T||_F^2.
double lagrangian_matrix(const MatrixState& s, const CostMatrix& Cm);

struct MatrixResult {
  MatrixState state;
  MatrixRunTrace trace;
  // Best sign rounding of the leading factor column seen along the run.
  Eigen::VectorXd best_rounded;
  double best_rounded_objective = 0.0;
  double setup_seconds = 0.0;
  double iter_seconds = 0.0;
};

// Full solve: repeat Y-step, (Z,X)-step, dual step until both coupling
// residuals fall below eps or max_iter. Requires alpha > 1.
MatrixResult solve_matrix(const CostMatrix& Cm, const MatrixConfig& cfg);

}  // namespace bqp
