#pragma once
// Seeded random streams used by solvers, generators and rounding.
//
// Draws go through explicit transforms on top of mt19937_64 (whose output is
// fully pinned by the standard) instead of std::*_distribution, so a fixed
// seed yields the same stream on every platform and standard library.

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace bqp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller. Two engine draws per sample, no cached
  // spare, so the stream position is a simple function of the sample count.
  double normal() {
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

  Eigen::VectorXd normal_vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  // Row-major fill; the draw order is part of the determinism contract.
  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal();
    return m;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bqp
