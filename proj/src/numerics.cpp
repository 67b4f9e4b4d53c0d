#include "bqp/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace bqp {

SymEigen sym_eigen(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("sym_eigen: matrix must be square");
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    throw std::invalid_argument("sym_eigen: matrix not symmetric (max |M - M^T| = " +
                                std::to_string(asym) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("sym_eigen: eigensolver failed to converge");
  return SymEigen{solver.eigenvectors(), solver.eigenvalues()};
}

Eigen::VectorXd shifted_solve(const SymEigen& e, double rho,
                              const Eigen::VectorXd& rhs) {
  if (e.U.rows() != rhs.size())
    throw std::invalid_argument("shifted_solve: dimension mismatch");
  Eigen::VectorXd shifted = 2.0 * e.lambda.array() + rho;
  if (shifted.cwiseAbs().minCoeff() < 1e-12)
    throw std::runtime_error("shifted_solve: near-singular shift |2*lambda + rho| < 1e-12");
  return e.U * (e.U.transpose() * rhs).cwiseQuotient(shifted);
}

Eigen::MatrixXd small_spd_solve(const Eigen::MatrixXd& S,
                                const Eigen::MatrixXd& RHS) {
  if (S.rows() != S.cols() || S.rows() != RHS.rows())
    throw std::invalid_argument("small_spd_solve: dimension mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("small_spd_solve: matrix lost positive definiteness");
  return llt.solve(RHS);
}

SpectralMeta spectral_bounds(const Eigen::VectorXd& eigenvalues) {
  SpectralMeta sm;
  sm.L1 = 2.0 * eigenvalues.cwiseAbs().maxCoeff();
  sm.LH = std::max(0.0, -2.0 * eigenvalues.minCoeff());
  return sm;
}

SpectralMeta spectral_constants(const CostMatrix& Cm) {
  return Cm.ensure_spectral(
      [&Cm] { return spectral_bounds(sym_eigen(Cm.matrix()).lambda); });
}

}  // namespace bqp
