#pragma once
// Independent oracles used by the test suites. Everything here recomputes
// results through a different route than the library (plain enumeration,
// double loops, finite differences, or a dense constrained-QP solve) so the
// checks do not share code with the implementation under test.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bqp/graph.hpp"
#include "bqp/matrix_admm.hpp"
#include "bqp/rng.hpp"
#include "bqp/vector_admm.hpp"

namespace oracles {

// x^T C x as an explicit double sum.
inline double double_sum_objective(const Eigen::MatrixXd& C,
                                   const Eigen::VectorXd& x) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < C.rows(); ++i)
    for (Eigen::Index j = 0; j < C.cols(); ++j) v += x[i] * C(i, j) * x[j];
  return v;
}

// Full 2^n enumeration of min x^T C x without the sign-symmetry reduction.
inline std::pair<Eigen::VectorXd, double> unreduced_brute_force(
    const Eigen::MatrixXd& C) {
  const Eigen::Index n = C.rows();
  if (n > 20) throw std::invalid_argument("oracle enumeration too large");
  Eigen::VectorXd best;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i)
      x[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    const double v = double_sum_objective(C, x);
    if (v < best_val) {
      best_val = v;
      best = x;
    }
  }
  return {best, best_val};
}

// 2 * ||C||_2 by power iteration on the symmetric matrix.
inline double power_iteration_l1(const Eigen::MatrixXd& C, std::uint64_t seed) {
  bqp::Rng rng(seed);
  Eigen::VectorXd v = rng.normal_vector(C.rows()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    Eigen::VectorXd w = C * v;
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    w /= next;
    if (std::abs(next - lambda) <= 1e-13 * std::max(1.0, std::abs(next)) &&
        it > 10) {
      lambda = next;
      break;
    }
    lambda = next;
    v = w;
  }
  return 2.0 * lambda;
}

// Minimizer of ||x - v + mu/rho||^2 over v in {-1,+1}^n by enumeration.
inline Eigen::VectorXd enumerate_y_step(const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& mu, double rho) {
  const Eigen::Index n = x.size();
  if (n > 16) throw std::invalid_argument("oracle enumeration too large");
  Eigen::VectorXd best;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
      v[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    const double val = (x - v + mu / rho).squaredNorm();
    if (val < best_val) {
      best_val = val;
      best = v;
    }
  }
  return best;
}

// Augmented Lagrangian of the vector splitting, term by scalar term.
inline double vector_lagrangian_terms(const bqp::VectorState& s,
                                      const Eigen::MatrixXd& C) {
  double quad = double_sum_objective(C, s.x);
  double inner = 0.0, penalty = 0.0;
  for (Eigen::Index i = 0; i < s.x.size(); ++i) {
    const double d = s.x[i] - s.y[i];
    inner += s.mu[i] * d;
    penalty += d * d;
  }
  return quad + inner + 0.5 * s.rho * penalty;
}

// Augmented Lagrangian of the lifted splitting, term by scalar term.
inline double matrix_lagrangian_terms(const bqp::MatrixState& s,
                                      const Eigen::MatrixXd& C) {
  const Eigen::Index n = s.Z.rows(), r = s.X.cols();
  double trace = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) trace += C(i, j) * s.Z(j, i);
  Eigen::MatrixXd XYt(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double acc = 0.0;
      for (Eigen::Index l = 0; l < r; ++l) acc += s.X(i, l) * s.Y(j, l);
      XYt(i, j) = acc;
    }
  double inner1 = 0.0, inner2 = 0.0, pen1 = 0.0, pen2 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = s.Z(i, j) - XYt(i, j);
      inner1 += s.Lambda1(i, j) * d;
      pen1 += d * d;
    }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index l = 0; l < r; ++l) {
      const double d = s.X(i, l) - s.Y(i, l);
      inner2 += s.Lambda2(i, l) * d;
      pen2 += d * d;
    }
  return trace + inner2 + inner1 + 0.5 * s.rho * (pen1 + pen2);
}

// The objective the Y-step minimizes, given the rest of the state.
inline double y_step_objective(const bqp::MatrixState& s,
                               const Eigen::MatrixXd& Y) {
  return (s.Z - s.X * Y.transpose() + s.Lambda1 / s.rho).squaredNorm() +
         (s.X - Y + s.Lambda2 / s.rho).squaredNorm();
}

// Central finite-difference gradient of the Y-step objective at s.Y.
inline Eigen::MatrixXd fd_gradient_y(const bqp::MatrixState& s, double h = 1e-6) {
  Eigen::MatrixXd grad(s.Y.rows(), s.Y.cols());
  Eigen::MatrixXd Y = s.Y;
  for (Eigen::Index i = 0; i < Y.rows(); ++i)
    for (Eigen::Index j = 0; j < Y.cols(); ++j) {
      const double orig = Y(i, j);
      Y(i, j) = orig + h;
      const double up = y_step_objective(s, Y);
      Y(i, j) = orig - h;
      const double dn = y_step_objective(s, Y);
      Y(i, j) = orig;
      grad(i, j) = (up - dn) / (2.0 * h);
    }
  return grad;
}

// Dense KKT solve of the (Z, X) subproblem: minimize
//   Tr(CZ) + <L2, X-Y> + <L1, Z-XY^T> + (rho/2)||X-Y||^2 + (rho/2)||Z-XY^T||^2
// over vec(Z), vec(X) subject to diag(Z) = 1, as one saddle linear system.
struct ZXOracle {
  Eigen::MatrixXd Z;
  Eigen::MatrixXd X;
};

inline ZXOracle kkt_zx_oracle(const Eigen::MatrixXd& C, const Eigen::MatrixXd& Y,
                              const Eigen::MatrixXd& L1, const Eigen::MatrixXd& L2,
                              double rho) {
  const Eigen::Index n = C.rows(), r = Y.cols();
  const Eigen::Index nz = n * n, nx = n * r, dim = nz + nx + n;

  // vec(XY^T) = K vec(X) with K[(q*n + p), (j*n + p)] = Y(q, j).
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nz, nx);
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index j = 0; j < r; ++j)
        K(q * n + p, j * n + p) = Y(q, j);

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  H.topLeftCorner(nz, nz) = rho * Eigen::MatrixXd::Identity(nz, nz);
  H.block(0, nz, nz, nx) = -rho * K;
  H.block(nz, 0, nx, nz) = -rho * K.transpose();
  H.block(nz, nz, nx, nx) =
      rho * (K.transpose() * K + Eigen::MatrixXd::Identity(nx, nx));

  Eigen::VectorXd g(nz + nx);
  Eigen::MatrixXd lin_z = C + L1;
  g.head(nz) = Eigen::Map<const Eigen::VectorXd>(lin_z.data(), nz);
  Eigen::VectorXd l1v = Eigen::Map<const Eigen::VectorXd>(L1.data(), nz);
  Eigen::VectorXd l2v = Eigen::Map<const Eigen::VectorXd>(L2.data(), nx);
  Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(Y.data(), nx);
  g.tail(nx) = l2v - K.transpose() * l1v - rho * yv;

  // diag(Z) = 1; Z(i,i) sits at column-major index i*n + i.
  for (Eigen::Index i = 0; i < n; ++i) {
    H(dim - n + i, i * n + i) = 1.0;
    H(i * n + i, dim - n + i) = 1.0;
  }

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  rhs.head(nz + nx) = -g;
  rhs.tail(n).setOnes();

  const Eigen::VectorXd sol = H.fullPivLu().solve(rhs);
  ZXOracle out;
  out.Z = Eigen::Map<const Eigen::MatrixXd>(sol.data(), n, n);
  out.X = Eigen::Map<const Eigen::MatrixXd>(sol.data() + nz, n, r);
  return out;
}

// Seeded Erdos-Renyi style graph with unit weights for small-instance tests.
inline bqp::Graph random_graph(int n, double edge_prob, std::uint64_t seed) {
  bqp::Rng rng(seed);
  std::vector<bqp::Edge> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (rng.bernoulli(edge_prob)) edges.push_back({i, j, 1.0});
  return bqp::Graph(n, std::move(edges));
}

// Exactly symmetric random matrix with entries on the scale of `scale`.
inline Eigen::MatrixXd random_symmetric(Eigen::Index n, std::uint64_t seed,
                                        double scale = 1.0) {
  bqp::Rng rng(seed);
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = scale * rng.normal();
      M(i, j) = v;
      M(j, i) = v;
    }
  return M;
}

}  // namespace oracles
