#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "sklab/errors.hpp"

namespace sklab {

using MatVec = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct ExtremalEig {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int iterations = 0;
};

/// Lanczos with full reorthogonalization for the extreme eigenvalues of a
/// symmetric operator given by its matrix-vector product. The start vector is
/// derived from a fixed seed, so results are reproducible. Convergence is
/// declared when the residual bounds of both extremal Ritz pairs fall below
/// tol*max(1, spectral radius estimate). Throws NoConvergence at the
/// iteration cap.
ExtremalEig lanczos_extremal(const MatVec& apply, Eigen::Index dim,
                             double tol = 1e-10, int max_iter = 0);

}  // namespace sklab
