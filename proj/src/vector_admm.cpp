#include "bqp/vector_admm.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bqp/rng.hpp"

namespace bqp {

namespace {

double sign_plus(double t) { return t >= 0.0 ? 1.0 : -1.0; }

void validate(const VectorConfig& cfg) {
  if (cfg.alpha < 1.0) throw std::invalid_argument("vector config: alpha must be >= 1");
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("vector config: eps must be > 0");
  if (cfg.max_iter <= 0) throw std::invalid_argument("vector config: max_iter must be positive");
  if (!(cfg.rho_cap > 0.0)) throw std::invalid_argument("vector config: rho_cap must be > 0");
}

// rho0 <= 0 selects max(1.1 * descent floor, 1); that needs the spectral
// constants, hence the enforce_descent_bound requirement.
double resolve_rho0(const CostMatrix& Cm, const VectorConfig& cfg) {
  if (cfg.rho0 > 0.0) return cfg.rho0;
  if (!cfg.enforce_descent_bound)
    throw std::invalid_argument(
        "vector config: rho0 must be > 0 (automatic rho0 requires "
        "enforce_descent_bound)");
  const SpectralMeta sm = spectral_constants(Cm);
  return std::max(1.1 * descent_rho_floor(sm, cfg.alpha), 1.0);
}

void check_descent_bound(double rho, const SpectralMeta& sm, double alpha) {
  const double slack = rho * rho - sm.LH * rho - (alpha + 1.0) * sm.L1 * sm.L1;
  std::ostringstream os;
  if (!(slack > 0.0)) {
    os << "descent bound violated: rho0^2 - LH*rho0 - (alpha+1)*L1^2 = "
       << slack << " (need > 0; rho0=" << rho << ", L1=" << sm.L1
       << ", LH=" << sm.LH << ")";
    throw std::invalid_argument(os.str());
  }
  if (!(rho > sm.LH)) {
    os << "descent bound violated: rho0 = " << rho << " <= LH = " << sm.LH;
    throw std::invalid_argument(os.str());
  }
  if (!(rho > sm.L1)) {
    os << "descent bound violated: rho0 = " << rho << " <= L1 = " << sm.L1;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

double descent_rho_floor(const SpectralMeta& sm, double alpha) {
  const double c = (alpha + 1.0) * sm.L1 * sm.L1;
  return 0.5 * (sm.LH + std::sqrt(sm.LH * sm.LH + 4.0 * c));
}

VectorState init_vector(const CostMatrix& Cm, const VectorConfig& cfg) {
  validate(cfg);
  const Eigen::Index n = Cm.size();
  Rng rng(cfg.seed);
  VectorState s;
  s.x = rng.normal_vector(n);
  s.y = rng.normal_vector(n);
  s.mu = rng.normal_vector(n);
  s.rho = resolve_rho0(Cm, cfg);
  s.k = 0;
  return s;
}

void update_y(VectorState& s) {
  if (!(s.rho > 0.0)) throw std::invalid_argument("update_y: rho must be > 0");
  s.y = (s.x + s.mu / s.rho).unaryExpr(&sign_plus);
}

void update_x(VectorState& s, const SymEigen& e) {
  s.x = shifted_solve(e, s.rho, s.rho * s.y - s.mu);
}

void update_dual(VectorState& s, const VectorConfig& cfg) {
  s.mu += s.rho * (s.x - s.y);
  s.rho = std::min(cfg.alpha * s.rho, cfg.rho_cap);
  s.k += 1;
}

double lagrangian_vector(const VectorState& s, const CostMatrix& Cm) {
  const Eigen::VectorXd diff = s.x - s.y;
  return s.x.dot(Cm.matrix() * s.x) + s.mu.dot(diff) +
         0.5 * s.rho * diff.squaredNorm();
}

VectorKKTReport kkt_report_vector(const VectorState& s, const CostMatrix& Cm) {
  VectorKKTReport r;
  r.rho = s.rho;
  r.min_mu_sign_x = (s.mu.array() * s.x.unaryExpr(&sign_plus).array()).minCoeff();
  r.complementarity_ok = r.min_mu_sign_x >= -s.rho - 1e-12 * (1.0 + s.rho);
  r.stationarity_residual = (2.0 * (Cm.matrix() * s.x) + s.mu).norm();
  r.primal_residual = (s.x - s.y).norm();
  return r;
}

VectorResult solve_vector(const CostMatrix& Cm, const VectorConfig& cfg) {
  using clock = std::chrono::steady_clock;
  validate(cfg);

  const auto t0 = clock::now();
  if (cfg.enforce_descent_bound) {
    const SpectralMeta sm = spectral_constants(Cm);
    check_descent_bound(resolve_rho0(Cm, cfg), sm, cfg.alpha);
  }
  const SymEigen e = sym_eigen(Cm.matrix());  // reused across every rho
  VectorResult out;
  out.state = init_vector(Cm, cfg);
  const auto t1 = clock::now();

  VectorState& s = out.state;
  RunTrace& trace = out.trace;
  trace.records.reserve(cfg.max_iter);
  out.best_rounded_objective = std::numeric_limits<double>::infinity();
  for (int it = 0; it < cfg.max_iter; ++it) {
    update_y(s);
    update_x(s, e);
    const double rho_used = s.rho;
    update_dual(s, cfg);
    if (!s.x.allFinite() || !s.mu.allFinite()) {
      trace.nonfinite_abort = true;
      break;
    }

    VectorIterRecord rec;
    rec.k = s.k;
    const Eigen::VectorXd Cx = Cm.matrix() * s.x;
    rec.objective = s.x.dot(Cx);
    const Eigen::VectorXd diff = s.x - s.y;
    rec.primal_residual = diff.norm();
    rec.lagrangian = rec.objective + s.mu.dot(diff) + 0.5 * s.rho * diff.squaredNorm();
    rec.dual_residual = (2.0 * Cx + s.mu).norm();
    rec.dual_norm = s.mu.norm();
    rec.rho = rho_used;
    const Eigen::VectorXd rounded =
        s.x.unaryExpr([](double t) { return t >= 0.0 ? 1.0 : -1.0; });
    const double rounded_obj = rounded.dot(Cm.matrix() * rounded);
    if (rounded_obj < out.best_rounded_objective) {
      out.best_rounded_objective = rounded_obj;
      out.best_rounded = rounded;
    }
    rec.best_rounded_objective = out.best_rounded_objective;
    trace.records.push_back(rec);
    if (s.rho >= cfg.rho_cap) trace.rho_cap_hit = true;

    if (rec.primal_residual <= cfg.eps) {
      trace.status = SolveStatus::converged;
      break;
    }
  }
  if (out.best_rounded.size() == 0) {  // aborted before the first record
    out.best_rounded = s.y;
    out.best_rounded_objective = s.y.dot(Cm.matrix() * s.y);
  }
  out.setup_seconds = std::chrono::duration<double>(t1 - t0).count();
  out.iter_seconds = std::chrono::duration<double>(clock::now() - t1).count();
  return out;
}

}  // namespace bqp
