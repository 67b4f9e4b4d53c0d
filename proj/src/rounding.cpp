#include "bqp/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "bqp/rng.hpp"

namespace bqp {

namespace {
double sign_plus(double t) { return t >= 0.0 ? 1.0 : -1.0; }
}  // namespace

Partition sign_round(const Eigen::VectorXd& x) {
  return Partition(x.unaryExpr(&sign_plus));
}

Factor factor_from_symmetric(const Eigen::MatrixXd& Z) {
  if (Z.rows() != Z.cols())
    throw std::invalid_argument("factor: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (Z + Z.transpose()));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("factor: eigensolver failed to converge");
  const Eigen::VectorXd lambda = solver.eigenvalues();
  const Eigen::Index n = Z.rows();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(lambda[a]) > std::abs(lambda[b]);
  });

  Factor f;
  f.origin = FactorOrigin::eigen_symmetric;
  f.F.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    f.F.col(j) =
        solver.eigenvectors().col(order[j]) * std::sqrt(std::abs(lambda[order[j]]));
  return f;
}

Factor factor_from_rect(const Eigen::MatrixXd& X) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU);
  Factor f;
  f.origin = FactorOrigin::svd_rect;
  // Singular values already come out descending.
  f.F = svd.matrixU() * svd.singularValues().cwiseSqrt().asDiagonal();
  return f;
}

Partition randomized_round(const Factor& f, const CostMatrix& Cm, int trials,
                           std::uint64_t seed, RoundingStats* stats) {
  if (trials < 1) throw std::invalid_argument("randomized_round: trials must be >= 1");
  if (f.F.rows() != Cm.size())
    throw std::invalid_argument("randomized_round: dimension mismatch");
  const Eigen::Index width = f.F.cols();
  Rng rng(seed);

  Eigen::VectorXd best;
  double best_obj = 0.0;
  int count = 0;
  for (Eigen::Index k = 1; k <= width; ++k) {
    for (int t = 0; t < trials; ++t) {
      const Eigen::VectorXd z = rng.normal_vector(k);
      const Eigen::VectorXd cand = (f.F.leftCols(k) * z).unaryExpr(&sign_plus);
      const double obj = cand.dot(Cm.matrix() * cand);
      if (count == 0 || obj < best_obj) {
        best = cand;
        best_obj = obj;
      }
      ++count;
    }
  }
  if (stats != nullptr) {
    stats->candidates = count;
    stats->best_objective = best_obj;
  }
  return Partition(best);
}

}  // namespace bqp
