#pragma once
// Per-iteration run records emitted by both solvers; the test surface and the
// CLI trace output.

#include <vector>

namespace bqp {

enum class SolveStatus { converged, max_iter };

// One vector-ADMM iteration. dual_residual is ||2Cx + mu||_2, the quantity
// that vanishes identically after every dual step; dual_norm is ||mu||_2
// (the scale the residual is judged against). best_rounded_objective is the
// running minimum of sign(x)^T C sign(x), the incumbent a caller would plot.
struct VectorIterRecord {
  int k = 0;
  double objective = 0.0;
  double lagrangian = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double dual_norm = 0.0;
  double rho = 0.0;
  double best_rounded_objective = 0.0;
};

struct RunTrace {
  std::vector<VectorIterRecord> records;
  SolveStatus status = SolveStatus::max_iter;
  bool rho_cap_hit = false;
  // Iterates left the floating-point range (possible when rho sits in the
  // indefinite band of the shifted system); the run stopped early.
  bool nonfinite_abort = false;
};

// One matrix-ADMM iteration. objective is Tr(C Z); the two residuals are the
// Frobenius norms of the coupling constraints; best_rounded_objective tracks
// the incumbent sign(X col 1) rounding.
struct MatrixIterRecord {
  int k = 0;
  double objective = 0.0;
  double lagrangian = 0.0;
  double res_x_minus_y = 0.0;
  double res_z_minus_xyt = 0.0;
  double dual_norm_1 = 0.0;
  double dual_norm_2 = 0.0;
  double rho = 0.0;
  double best_rounded_objective = 0.0;
};

struct MatrixRunTrace {
  std::vector<MatrixIterRecord> records;
  SolveStatus status = SolveStatus::max_iter;
  bool rho_cap_hit = false;
  // Set when a dual norm grew past dual_bound_factor times its initial value
  // (the bounded-multiplier assumption is monitored, not enforced).
  bool dual_bound_exceeded = false;
  bool nonfinite_abort = false;
};

}  // namespace bqp
