#pragma once
// Instance acquisition: stochastic block model generator, rudy/DIMACS
// MAX-CUT parsing, PGM/PPM image ingestion to pixel features, torus
// benchmark generation, and the exact brute-force oracle for desk-scale
// verification.

#include <cstdint>
#include <string>
#include <string_view>

#include "bqp/graph.hpp"

namespace bqp {

// Two planted communities: nodes 1..m on one side (m the smaller one,
// 2m <= n), intra-community edges with probability p, inter-community with
// probability q, all weights 1. Requires 0 < q < p < 1.
struct SBMSpec {
  int n = 0;
  int m = 0;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
};

struct SBMSample {
  Graph graph;
  Partition truth;  // +1 for nodes 1..m, -1 for the rest
};

SBMSample sbm_generate(const SBMSpec& spec);

// rudy text format: first nonblank line "n m_edges", then one nonblank line
// "i j w" per edge, indices 1-based. Duplicate pairs are summed. Nonpositive
// weights are accepted by default (the DIMACS "pm" instances carry +-1
// weights); pass false to insist on strictly positive weights. Errors name
// the offending line number.
Graph parse_rudy(std::string_view text, bool allow_nonpositive = true);

// Inverse of parse_rudy up to edge order: "n m" header plus one "u v w" line
// per stored edge (u < v, sorted), weights printed in full precision.
std::string serialize_rudy(const Graph& g);

// Per-pixel features: colors scaled to [0,1] (grayscale replicated to three
// channels), coordinates scaled to [0,1] per axis, stored raw; the position
// weight c is applied when the rows [f_color, c * f_position] are
// materialized.
struct ImageFeatures {
  int width = 0;
  int height = 0;
  Eigen::MatrixXd colors;  // n x 3
  Eigen::MatrixXd coords;  // n x 2, (x, y) = (col, row) scaled
  double c = 1.0;          // weight used by features()
  Eigen::Index n_pixels() const { return colors.rows(); }
  Eigen::MatrixXd features() const;  // n x 5
};

// Accepts PGM (P2 plain / P5 raw) and PPM (P3 plain / P6 raw), detected from
// the magic number; 8- and 16-bit samples, Unix or Windows line endings.
// Throws on malformed headers, truncated payloads, or pixel counts above
// pixel_cap.
ImageFeatures parse_pnm(std::string_view bytes, double c,
                        Eigen::Index pixel_cap = 4096);

// parse_pnm over a file; the error message names the path.
ImageFeatures load_image(const std::string& path, double c,
                         Eigen::Index pixel_cap = 4096);

struct BruteForceResult {
  Partition minimizer;
  double value = 0.0;
};

// Exact minimizer of x^T C x over {-1,+1}^n by enumeration with x_1 = +1
// fixed (global flips preserve the objective). Ties resolve to the
// lexicographically smallest partition. Hard cap n <= 22.
BruteForceResult brute_force(const CostMatrix& Cm);

enum class TorusWeights { pm_one, gaussian };

// 3D torus side^3 benchmark instances in the spirit of the DIMACS
// "torus" set: every node joined to its +1 neighbor along each axis
// (3 * side^3 edges). pm_one draws +-1 weights with equal probability;
// gaussian draws round(scale * N(0,1)) resampled away from zero.
Graph generate_torus3(int side, TorusWeights kind, std::uint64_t seed,
                      double scale = 1e5);

}  // namespace bqp
