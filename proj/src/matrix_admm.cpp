#include "bqp/matrix_admm.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bqp/numerics.hpp"
#include "bqp/rng.hpp"

namespace bqp {

namespace {

void validate(const MatrixConfig& cfg, bool require_growth) {
  if (!(cfg.rho0 > 0.0)) throw std::invalid_argument("matrix config: rho0 must be > 0");
  if (require_growth && !(cfg.alpha > 1.0))
    throw std::invalid_argument(
        "matrix config: alpha must be > 1 (rho must grow geometrically for "
        "the dual terms to stay summable)");
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("matrix config: eps must be > 0");
  if (cfg.max_iter <= 0) throw std::invalid_argument("matrix config: max_iter must be positive");
}

}  // namespace

int rank_for(RankMode mode, Eigen::Index n) {
  if (mode == RankMode::one) return 1;
  return static_cast<int>(std::ceil(std::sqrt(2.0 * static_cast<double>(n))));
}

MatrixState init_matrix(const CostMatrix& Cm, const MatrixConfig& cfg) {
  validate(cfg, /*require_growth=*/false);
  const Eigen::Index n = Cm.size();
  const int r = rank_for(cfg.r_mode, n);
  if (cfg.r_mode == RankMode::full &&
      static_cast<long long>(r) * (r + 1) / 2 <= n)
    throw std::logic_error("matrix init: full-mode width r(r+1)/2 must exceed n");
  Rng rng(cfg.seed);
  MatrixState s;
  s.Z = rng.normal_matrix(n, n);
  s.X = rng.normal_matrix(n, r);
  s.Lambda1 = rng.normal_matrix(n, n);
  s.Lambda2 = rng.normal_matrix(n, r);
  s.Y = s.X;  // start the X = Y constraint satisfied
  s.rho = cfg.rho0;
  s.k = 0;
  return s;
}

void update_Y(MatrixState& s) {
  if (!(s.rho > 0.0)) throw std::invalid_argument("update_Y: rho must be > 0");
  const Eigen::Index r = s.X.cols();
  const Eigen::MatrixXd S = Eigen::MatrixXd::Identity(r, r) + s.X.transpose() * s.X;
  const Eigen::MatrixXd rhs =
      (s.Lambda1.transpose() * s.X + s.Lambda2) / s.rho + s.Z.transpose() * s.X + s.X;
  // Y S = rhs with S symmetric, so solve S Y^T = rhs^T.
  s.Y = small_spd_solve(S, rhs.transpose()).transpose();
}

KKTWork update_ZX(MatrixState& s, const CostMatrix& Cm) {
  if (!(s.rho > 0.0)) throw std::invalid_argument("update_ZX: rho must be > 0");
  const Eigen::MatrixXd& C = Cm.matrix();
  const Eigen::Index n = C.rows();
  if (s.Z.rows() != n) throw std::invalid_argument("update_ZX: dimension mismatch");

  KKTWork w;
  w.D = (s.Lambda1 * s.Y - s.Lambda2) / s.rho + s.Y;
  w.G = Eigen::VectorXd::Ones(n) + s.Y.rowwise().squaredNorm();

  // diag((C + Lambda1)(I + Y Y^T)) without forming the n x n product.
  const Eigen::MatrixXd CpL = C + s.Lambda1;
  const Eigen::VectorXd t =
      CpL.diagonal() + ((CpL * s.Y).array() * s.Y.array()).rowwise().sum().matrix();
  const Eigen::VectorXd rhs =
      s.rho * (Eigen::VectorXd::Ones(n) -
               (w.D.array() * s.Y.array()).rowwise().sum().matrix()) +
      t;
  w.nu = rhs.cwiseQuotient(w.G);

  w.B = -CpL / s.rho;
  w.B.diagonal() += w.nu / s.rho;
  s.X = w.B * s.Y + w.D;
  s.Z = s.X * s.Y.transpose() + w.B;
  return w;
}

void update_duals_matrix(MatrixState& s, const MatrixConfig& cfg) {
  s.Lambda1 += s.rho * (s.Z - s.X * s.Y.transpose());
  s.Lambda2 += s.rho * (s.X - s.Y);
  s.rho = std::min(cfg.alpha * s.rho, cfg.rho_cap);
  s.k += 1;
}

double lagrangian_matrix(const MatrixState& s, const CostMatrix& Cm) {
  const Eigen::MatrixXd res1 = s.X - s.Y;
  const Eigen::MatrixXd res2 = s.Z - s.X * s.Y.transpose();
  // Tr(CZ) = sum_ij C_ij Z_ij for symmetric C even when Z is not symmetric.
  return Cm.matrix().cwiseProduct(s.Z).sum() +
         s.Lambda2.cwiseProduct(res1).sum() + s.Lambda1.cwiseProduct(res2).sum() +
         0.5 * s.rho * (res1.squaredNorm() + res2.squaredNorm());
}

MatrixResult solve_matrix(const CostMatrix& Cm, const MatrixConfig& cfg) {
  using clock = std::chrono::steady_clock;
  validate(cfg, /*require_growth=*/true);

  const auto t0 = clock::now();
  MatrixResult out;
  out.state = init_matrix(Cm, cfg);
  MatrixState& s = out.state;
  const double dual_bound_1 =
      cfg.dual_bound_factor * std::max(1.0, s.Lambda1.norm());
  const double dual_bound_2 =
      cfg.dual_bound_factor * std::max(1.0, s.Lambda2.norm());
  const auto t1 = clock::now();

  MatrixRunTrace& trace = out.trace;
  trace.records.reserve(cfg.max_iter);
  out.best_rounded_objective = std::numeric_limits<double>::infinity();
  for (int it = 0; it < cfg.max_iter; ++it) {
    update_Y(s);
    update_ZX(s, Cm);
    const double rho_used = s.rho;
    update_duals_matrix(s, cfg);
    if (!s.X.allFinite() || !s.Z.allFinite()) {
      trace.nonfinite_abort = true;
      break;
    }

    MatrixIterRecord rec;
    rec.k = s.k;
    rec.objective = Cm.matrix().cwiseProduct(s.Z).sum();
    rec.res_x_minus_y = (s.X - s.Y).norm();
    rec.res_z_minus_xyt = (s.Z - s.X * s.Y.transpose()).norm();
    rec.lagrangian = lagrangian_matrix(s, Cm);
    rec.dual_norm_1 = s.Lambda1.norm();
    rec.dual_norm_2 = s.Lambda2.norm();
    rec.rho = rho_used;
    const Eigen::VectorXd rounded =
        s.X.col(0).unaryExpr([](double t) { return t >= 0.0 ? 1.0 : -1.0; });
    const double rounded_obj = rounded.dot(Cm.matrix() * rounded);
    if (rounded_obj < out.best_rounded_objective) {
      out.best_rounded_objective = rounded_obj;
      out.best_rounded = rounded;
    }
    rec.best_rounded_objective = out.best_rounded_objective;
    trace.records.push_back(rec);
    if (s.rho >= cfg.rho_cap) trace.rho_cap_hit = true;
    if (rec.dual_norm_1 > dual_bound_1 || rec.dual_norm_2 > dual_bound_2)
      trace.dual_bound_exceeded = true;

    if (std::max(rec.res_x_minus_y, rec.res_z_minus_xyt) <= cfg.eps) {
      trace.status = SolveStatus::converged;
      break;
    }
  }
  if (out.best_rounded.size() == 0) {
    const Eigen::VectorXd rounded =
        s.X.col(0).unaryExpr([](double t) { return t >= 0.0 ? 1.0 : -1.0; });
    out.best_rounded = rounded;
    out.best_rounded_objective = rounded.dot(Cm.matrix() * rounded);
  }
  out.setup_seconds = std::chrono::duration<double>(t1 - t0).count();
  out.iter_seconds = std::chrono::duration<double>(clock::now() - t1).count();
  return out;
}

}  // namespace bqp
