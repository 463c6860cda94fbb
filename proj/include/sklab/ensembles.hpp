#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sklab/rng.hpp"
#include "sklab/sym_matrix.hpp"

namespace sklab {

/// GOE(N): diagonal entries N(0, 2/N), off-diagonal N(0, 1/N), the upper
/// triangle independent.
SymMatrix sample_goe(int n, Rng& rng);

/// Haar measure on Stief(N, r): r x N with orthonormal rows. Gaussian matrix,
/// thin QR, then the column signs are fixed so R has positive diagonal (the
/// standard Haar correction).
Eigen::MatrixXd sample_haar_stiefel(int n, int r, Rng& rng);

/// Haar-distributed N x N orthogonal matrix.
Eigen::MatrixXd sample_haar_orthogonal(int n, Rng& rng);

/// r x N matrix whose columns are independent uniform points of S^{r-1}.
Eigen::MatrixXd sample_iid_unit_vectors(int r, int n, Rng& rng);

struct MomentEstimate {
  std::string name;
  double estimate = 0.0;
  double target = 0.0;
  double std_error = 0.0;
  double z = 0.0;
};

struct HaarMomentReport {
  int n = 0;
  std::int64_t samples = 0;
  std::vector<MomentEstimate> moments;  // five closed-form moments + odd check
  double max_abs_z = 0.0;
};

/// Monte Carlo check of the degree-2/4 moments of Haar(O(N)) entries against
/// their closed forms, with a z-score per moment.
HaarMomentReport haar_moment_suite(int n, std::int64_t samples, Rng& rng);

}  // namespace sklab
