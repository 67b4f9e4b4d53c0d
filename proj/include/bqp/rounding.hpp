#pragma once
// Conversion of relaxed solutions to feasible partitions: elementwise sign
// rounding and scan-based randomized hyperplane rounding over a spectral
// factor.

#include <cstdint>

#include "bqp/graph.hpp"

namespace bqp {

enum class FactorOrigin { eigen_symmetric, svd_rect };

// Spectral factor with columns ordered by decreasing magnitude of the
// associated eigenvalue / singular value.
struct Factor {
  Eigen::MatrixXd F;
  FactorOrigin origin = FactorOrigin::eigen_symmetric;
};

// Elementwise sign with sign(0) = +1.
Partition sign_round(const Eigen::VectorXd& x);

// F = Q |Lambda|^{1/2} from the eigendecomposition of symmetric Z, columns
// sorted by |lambda| descending. Negative eigenvalues (possible mid-run)
// enter through their absolute value so F stays real.
Factor factor_from_symmetric(const Eigen::MatrixXd& Z);

// F = U Sigma^{1/2} from the thin SVD of X, singular values descending.
Factor factor_from_rect(const Eigen::MatrixXd& X);

struct RoundingStats {
  int candidates = 0;
  double best_objective = 0.0;
};

// Hyperplane scan: for every column prefix width k = 1..cols(F) and each of
// `trials` standard normal z of length k, the candidate sign(F_k z) is
// scored by x^T C x; the best candidate wins (first found on ties). z is
// drawn fresh per (k, t) from one seeded stream, k outer, t inner.
Partition randomized_round(const Factor& f, const CostMatrix& Cm,
                           int trials = 10, std::uint64_t seed = 0,
                           RoundingStats* stats = nullptr);

}  // namespace bqp
