#pragma once
// ADMM on the vector splitting of min x^T C x over {-1,+1}^n:
//
//   min x^T C x   s.t.  x = y,  y in {-1,+1}^n
//
// with augmented Lagrangian L = x^TCx + <mu, x-y> + (rho/2)||x-y||^2.
// Each iteration: sign-projection y-step, shifted linear solve x-step
// (through the one-time eigendecomposition of C), dual ascent, geometric
// rho growth clamped at rho_cap.

#include <cstdint>

#include "bqp/graph.hpp"
#include "bqp/numerics.hpp"
#include "bqp/trace.hpp"

namespace bqp {

struct VectorConfig {
  // rho0 <= 0 selects the automatic policy max(1.1 * rho_floor, 1), where
  // rho_floor is the positive root of rho^2 - LH*rho - (alpha+1)*L1^2 = 0;
  // only available with enforce_descent_bound (otherwise rho0 is required).
  double rho0 = 0.0;
  double alpha = 1.05;  // rho growth factor, >= 1 (1 = constant penalty)
  double eps = 1e-6;    // stop when ||x - y||_2 <= eps
  int max_iter = 2000;
  std::uint64_t seed = 0;
  double rho_cap = 1e8;  // geometric growth is clamped here
  // Validate at solve entry that rho0 satisfies the descent conditions
  // rho^2 - LH*rho - (alpha+1)*L1^2 > 0, rho > LH, rho > L1; the error
  // message names the failing clause.
  bool enforce_descent_bound = false;
};

struct VectorState {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd mu;
  double rho = 0.0;
  int k = 0;
};

// Stationarity diagnostics at the current iterate.
struct VectorKKTReport {
  double min_mu_sign_x = 0.0;  // min_i mu_i * sign(x_i)
  double rho = 0.0;
  bool complementarity_ok = false;  // min_mu_sign_x >= -rho (small slack)
  double stationarity_residual = 0.0;  // ||2Cx + mu||_2
  double primal_residual = 0.0;        // ||x - y||_2
};

// Positive root of rho^2 - LH*rho - (alpha+1)*L1^2 = 0; any rho above it
// keeps the augmented Lagrangian strictly decreasing.
double descent_rho_floor(const SpectralMeta& sm, double alpha);

// x0, y0, mu0 i.i.d. standard normal from the seeded stream (drawn in that
// order); rho = rho0 (resolved through the automatic policy when rho0 <= 0).
VectorState init_vector(const CostMatrix& Cm, const VectorConfig& cfg);

// y <- sign(x + mu/rho) elementwise, with sign(0) = +1.
void update_y(VectorState& s);

// x <- (rho*I + 2C)^{-1} (rho*y - mu), i.e. the minimizer of
// x^TCx + (rho/2)||x - y + mu/rho||^2. e must decompose the cost matrix.
void update_x(VectorState& s, const SymEigen& e);

// mu <- mu + rho*(x - y); rho <- min(alpha*rho, rho_cap); k++.
void update_dual(VectorState& s, const VectorConfig& cfg);

// x^TCx + <mu, x-y> + (rho/2)||x-y||^2 at the current iterate.
double lagrangian_vector(const VectorState& s, const CostMatrix& Cm);

VectorKKTReport kkt_report_vector(const VectorState& s, const CostMatrix& Cm);

struct VectorResult {
  VectorState state;
  RunTrace trace;
  // Best sign rounding seen along the run (the trace incumbent). On rugged
  // instances the final iterate can score far worse than points the
  // trajectory passed through, so both are reported.
  Eigen::VectorXd best_rounded;
  double best_rounded_objective = 0.0;
  double setup_seconds = 0.0;  // eigendecomposition + init
  double iter_seconds = 0.0;
};

// Full solve: repeat y-step, x-step, dual step until ||x - y||_2 <= eps or
// max_iter. One record per iteration; the record's rho is the penalty the
// iteration ran with, while its Lagrangian uses the already-grown rho (the
// monotone sequence of the descent bound).
VectorResult solve_vector(const CostMatrix& Cm, const VectorConfig& cfg);

}  // namespace bqp
