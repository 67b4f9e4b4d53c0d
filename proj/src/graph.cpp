#include "bqp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "bqp/instances.hpp"

namespace bqp {

Graph::Graph(int n, std::vector<Edge> edges, bool allow_nonpositive) : n_(n) {
  if (n <= 0) throw std::invalid_argument("graph: node count must be positive");
  std::map<std::pair<int, int>, double> merged;
  for (const Edge& e : edges) {
    int u = e.u, v = e.v;
    if (u < 1 || u > n || v < 1 || v > n) {
      std::ostringstream os;
      os << "graph: edge (" << u << ", " << v << ") out of range 1.." << n;
      throw std::invalid_argument(os.str());
    }
    if (u == v) {
      std::ostringstream os;
      os << "graph: self-loop at node " << u;
      throw std::invalid_argument(os.str());
    }
    if (!allow_nonpositive && !(e.w > 0.0)) {
      std::ostringstream os;
      os << "graph: edge (" << u << ", " << v << ") has nonpositive weight "
         << e.w;
      throw std::invalid_argument(os.str());
    }
    if (u > v) std::swap(u, v);
    merged[{u, v}] += e.w;  // duplicates sum into one edge
  }
  edges_.reserve(merged.size());
  for (const auto& [key, w] : merged) edges_.push_back({key.first, key.second, w});
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    A(e.u - 1, e.v - 1) = e.w;
    A(e.v - 1, e.u - 1) = e.w;
  }
  return A;
}

Eigen::VectorXd Graph::weighted_degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n_);
  for (const Edge& e : edges_) {
    d[e.u - 1] += e.w;
    d[e.v - 1] += e.w;
  }
  return d;
}

double Graph::total_weight() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.w;
  return s;
}

CostMatrix::CostMatrix(Eigen::MatrixXd C, CostKind kind)
    : C_(std::move(C)), kind_(kind), cache_(std::make_shared<Cache>()) {
  if (C_.rows() != C_.cols())
    throw std::invalid_argument("cost matrix: must be square");
  for (Eigen::Index i = 0; i < C_.rows(); ++i)
    for (Eigen::Index j = i + 1; j < C_.cols(); ++j)
      if (C_(i, j) != C_(j, i))
        throw std::invalid_argument("cost matrix: must be exactly symmetric");
}

std::optional<SpectralMeta> CostMatrix::spectral_meta() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->meta;
}

const SpectralMeta& CostMatrix::ensure_spectral(
    const std::function<SpectralMeta()>& compute) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->meta) cache_->meta = compute();
  return *cache_->meta;
}

Partition::Partition(Eigen::VectorXd signs) : x_(std::move(signs)) {
  for (Eigen::Index i = 0; i < x_.size(); ++i)
    if (x_[i] != 1.0 && x_[i] != -1.0)
      throw std::invalid_argument("partition: entries must be exactly +-1");
}

CostMatrix build_maxcut_cost(const Graph& g) {
  Eigen::MatrixXd A = g.adjacency();
  Eigen::VectorXd d = g.weighted_degrees();
  Eigen::MatrixXd C = A;
  C.diagonal() -= d;
  C /= 4.0;
  return CostMatrix(std::move(C), CostKind::maxcut);
}

CostMatrix build_community_cost(const Graph& g, double p, double q) {
  if (!(0.0 < q && q < p && p < 1.0))
    std::cerr << "warning: community cost expects 0 < q < p < 1, got p=" << p
              << " q=" << q << "\n";
  const int n = g.node_count();
  const double a = (p + q) / 2.0;
  Eigen::MatrixXd C = Eigen::MatrixXd::Constant(n, n, a) - g.adjacency();
  return CostMatrix(std::move(C), CostKind::community);
}

Eigen::MatrixXd image_affinity(const ImageFeatures& img, double c) {
  const Eigen::Index n = img.n_pixels();
  Eigen::MatrixXd f(n, 5);
  f << img.colors, c * img.coords;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (f.row(i) - f.row(j)).squaredNorm();
      A(i, j) = d;
      A(j, i) = d;
    }
  return A;
}

CostMatrix build_image_cost(const ImageFeatures& img, double c, CostKind mode,
                            Eigen::Index pixel_cap) {
  const Eigen::Index n = img.n_pixels();
  if (n > pixel_cap) {
    std::ostringstream os;
    os << "image cost: " << n << " pixels exceeds cap " << pixel_cap
       << " (dense storage guard)";
    throw std::invalid_argument(os.str());
  }
  if (c < 0.0) throw std::invalid_argument("image cost: c must be >= 0");
  Eigen::MatrixXd A = image_affinity(img, c);
  if (mode == CostKind::maxcut) {
    Eigen::VectorXd d = A.rowwise().sum();
    Eigen::MatrixXd C = A;
    C.diagonal() -= d;
    return CostMatrix(std::move(C), CostKind::maxcut);
  }
  if (mode == CostKind::community) {
    const double a = A.sum() / (static_cast<double>(n) * static_cast<double>(n));
    Eigen::MatrixXd C = Eigen::MatrixXd::Constant(n, n, a) - A;
    return CostMatrix(std::move(C), CostKind::community);
  }
  throw std::invalid_argument("image cost: mode must be maxcut or community");
}

double objective(const CostMatrix& Cm, const Partition& p) {
  if (Cm.size() != p.size())
    throw std::invalid_argument("objective: dimension mismatch");
  const Eigen::VectorXd& x = p.values();
  return x.dot(Cm.matrix() * x);
}

double cut_value(const Graph& g, const Partition& p) {
  if (g.node_count() != p.size())
    throw std::invalid_argument("cut value: dimension mismatch");
  double cut = 0.0;
  for (const Edge& e : g.edges())
    if (p[e.u - 1] != p[e.v - 1]) cut += e.w;
  return cut;
}

double cut_value_dense(const Eigen::MatrixXd& A, const Partition& p) {
  if (A.rows() != p.size())
    throw std::invalid_argument("cut value: dimension mismatch");
  const Eigen::VectorXd& x = p.values();
  return (A.sum() - x.dot(A * x)) / 4.0;
}

double recovery_rate(const Partition& p, const Partition& truth) {
  if (p.size() != truth.size())
    throw std::invalid_argument("recovery rate: length mismatch");
  const Eigen::Index n = p.size();
  Eigen::Index agree = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (p[i] == truth[i]) ++agree;
  const double a = static_cast<double>(agree) / static_cast<double>(n);
  return std::max(a, 1.0 - a);
}

}  // namespace bqp
