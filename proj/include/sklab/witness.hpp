#pragma once

#include <Eigen/Dense>
#include <utility>

#include "sklab/sym_matrix.hpp"

namespace sklab {

/// One degree-2 witness construction: the top-r eigenspace projector of W,
/// its diagonal, and the unit-diagonal rescaling M = D^{-1/2} P D^{-1/2}.
struct WitnessBundle {
  int n = 0;
  int r = 0;          // r = round(delta * n), recorded alongside the request
  double delta = 0.0;  // requested delta
  Eigen::MatrixXd V;   // r x N, rows are the top unit eigenvectors of W
  SymMatrix P;         // V^T V
  Eigen::VectorXd D;   // D_ii = P_ii
  SymMatrix M;         // D^{-1/2} P D^{-1/2}, diag set to exactly 1
  Eigen::MatrixXd Vhat;  // r x N, columns v_i / ||v_i||

  /// The realized subspace fraction r/N; equals delta whenever delta*N is
  /// integral. Frame constructions use this so their algebraic identities
  /// stay exact under rounding.
  double delta_eff() const { return static_cast<double>(r) / n; }
};

/// Rows of V are the r top unit eigenvectors of W (descending eigenvalues,
/// deterministic sign convention); P = V^T V. Throws DegenerateGap when
/// lambda_r and lambda_{r+1} are closer than 1e-10.
std::pair<Eigen::MatrixXd, SymMatrix> top_eigenprojector(const SymMatrix& w,
                                                         int r);

/// The full bundle for r = round(delta*N). Throws DegenerateDiagonal when
/// some P_ii <= 1e-12 (a measure-zero event for GOE input, kept as a hard
/// error so runs stay deterministic).
WitnessBundle montanari_sen_witness(const SymMatrix& w, double delta);

/// (1-alpha) M + alpha I with the unit diagonal restored exactly.
SymMatrix nudged_witness(const SymMatrix& m, double alpha);

/// (1/N) <W, M>.
double objective_value(const SymMatrix& m, const SymMatrix& w);

/// lambda_max(W).
double spectral_certificate(const SymMatrix& w);

struct MembershipVerdict {
  bool pass = false;
  double max_diag_dev = 0.0;
  double lambda_min = 0.0;
};

/// Unit diagonal within tol and lambda_min >= -tol.
MembershipVerdict check_degree2_membership(const SymMatrix& m, double tol);

}  // namespace sklab
