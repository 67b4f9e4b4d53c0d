#pragma once
// Weighted undirected graphs, cost matrices for the binary quadratic problem
//   min x^T C x  over  x in {-1,+1}^n,
// and the basic quality metrics (objective, cut value, recovery rate).

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace bqp {

struct ImageFeatures;  // instances.hpp

// One undirected edge. Node indices are 1-based; a Graph stores every edge
// with u < v and at most one entry per unordered pair.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

class Graph {
 public:
  // Validates indices (1 <= u,v <= n, u != v), normalizes to u < v, and sums
  // duplicate pairs into one edge. Weights must be strictly positive unless
  // allow_nonpositive is set (signed instances such as the DIMACS torus
  // "pm" family carry +-1 weights).
  Graph(int n, std::vector<Edge> edges, bool allow_nonpositive = false);

  int node_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Dense symmetric adjacency matrix with zero diagonal.
  Eigen::MatrixXd adjacency() const;

  // Row sums of the adjacency matrix (weighted degrees).
  Eigen::VectorXd weighted_degrees() const;

  double total_weight() const;

 private:
  int n_;
  std::vector<Edge> edges_;
};

enum class CostKind { maxcut, community, custom };

// Spectral constants of a cost matrix: L1 = 2 * max_i |lambda_i(C)| (gradient
// Lipschitz constant of x^T C x) and LH = max(0, -2 * lambda_min(C)) (smallest
// nonnegative lower shift of the Hessian 2C).
struct SpectralMeta {
  double L1 = 0.0;
  double LH = 0.0;
};

// Dense symmetric cost matrix. Immutable after construction; the lazily
// computed spectral constants are cached behind a lock so instances can be
// shared across threads.
class CostMatrix {
 public:
  // Requires exact symmetry (C(i,j) == C(j,i) bit for bit).
  explicit CostMatrix(Eigen::MatrixXd C, CostKind kind = CostKind::custom);

  const Eigen::MatrixXd& matrix() const { return C_; }
  CostKind kind() const { return kind_; }
  Eigen::Index size() const { return C_.rows(); }

  // Cached spectral constants, if they have been computed.
  std::optional<SpectralMeta> spectral_meta() const;

  // Returns the cached constants, invoking compute() once on first use.
  const SpectralMeta& ensure_spectral(
      const std::function<SpectralMeta()>& compute) const;

 private:
  Eigen::MatrixXd C_;
  CostKind kind_;
  struct Cache {
    std::mutex mu;
    std::optional<SpectralMeta> meta;
  };
  std::shared_ptr<Cache> cache_;
};

// A feasible point of the binary problem: every entry exactly +-1.
class Partition {
 public:
  explicit Partition(Eigen::VectorXd signs);

  Eigen::Index size() const { return x_.size(); }
  double operator[](Eigen::Index i) const { return x_[i]; }
  const Eigen::VectorXd& values() const { return x_; }
  Partition flipped() const { return Partition(-x_); }

 private:
  Eigen::VectorXd x_;
};

// MAX-CUT cost C = (A - Diag(A*1)) / 4; minimizing x^T C x maximizes the cut.
CostMatrix build_maxcut_cost(const Graph& g);

// Two-community cost C = ((p+q)/2) * 1 1^T - A. Warns (stderr) when the
// usual regime 0 < q < p < 1 does not hold; the formula stays well defined.
CostMatrix build_community_cost(const Graph& g, double p, double q);

// Pixel affinity matrix A_{ij} = ||f_i - f_j||_2^2 over the concatenated
// feature rows [color, c * position]; dense with zero diagonal.
Eigen::MatrixXd image_affinity(const ImageFeatures& img, double c);

// Image segmentation cost. maxcut mode: C = A - Diag(A*1) (no /4; a positive
// scaling does not move the argmin over {-1,+1}^n). community mode:
// C = a * 1 1^T - A with a the mean entry of A. Rejects images above
// pixel_cap (dense n^2 storage guard).
CostMatrix build_image_cost(const ImageFeatures& img, double c, CostKind mode,
                            Eigen::Index pixel_cap = 4096);

// x^T C x. Throws on dimension mismatch.
double objective(const CostMatrix& Cm, const Partition& p);

// Total weight of severed edges. Equals -objective(build_maxcut_cost(g), p).
double cut_value(const Graph& g, const Partition& p);

// Cut value over a dense affinity matrix: (1^T A 1 - x^T A x) / 4.
double cut_value_dense(const Eigen::MatrixXd& A, const Partition& p);

// Agreement fraction up to a global sign flip: max(a, 1 - a) in [0.5, 1].
double recovery_rate(const Partition& p, const Partition& truth);

}  // namespace bqp
