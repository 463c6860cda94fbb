#include "sklab/witness.hpp"

#include <cmath>

#include "sklab/errors.hpp"

namespace sklab {

std::pair<Eigen::MatrixXd, SymMatrix> top_eigenprojector(const SymMatrix& w,
                                                         int r) {
  const int n = static_cast<int>(w.n());
  if (r < 1 || r > n) throw InconsistentInputs("top_eigenprojector: 1 <= r <= n");
  const EigResult e = sym_eig(w);
  if (r < n && std::abs(e.eigenvalues[r - 1] - e.eigenvalues[r]) <= 1e-10)
    throw DegenerateGap("eigenvalues r and r+1 coincide; projector ill-defined");
  Eigen::MatrixXd v = e.eigenvectors.leftCols(r).transpose();
  SymMatrix p = SymMatrix::FromSymmetrized(v.transpose() * v);
  return {std::move(v), std::move(p)};
}

WitnessBundle montanari_sen_witness(const SymMatrix& w, double delta) {
  const int n = static_cast<int>(w.n());
  if (!(delta > 0.0 && delta < 1.0))
    throw InconsistentInputs("montanari_sen_witness: delta in (0,1) required");
  const int r = std::max(1, static_cast<int>(std::lround(delta * n)));
  if (r > n) throw InconsistentInputs("montanari_sen_witness: round(delta*N) > N");

  WitnessBundle b;
  b.n = n;
  b.r = r;
  b.delta = delta;
  std::tie(b.V, b.P) = top_eigenprojector(w, r);
  b.D = b.P.mat().diagonal();
  if (b.D.minCoeff() <= 1e-12)
    throw DegenerateDiagonal("projector diagonal entry vanished");

  const Eigen::VectorXd dinv_sqrt = b.D.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd m = dinv_sqrt.asDiagonal() * b.P.mat() * dinv_sqrt.asDiagonal();
  m.diagonal().setOnes();
  b.M = SymMatrix::FromSymmetrized(m);
  b.Vhat = b.V * dinv_sqrt.asDiagonal();
  return b;
}

SymMatrix nudged_witness(const SymMatrix& m, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw InconsistentInputs("nudged_witness: alpha in [0,1] required");
  Eigen::MatrixXd out = (1.0 - alpha) * m.mat();
  out.diagonal().array() += alpha;
  // (1-alpha)*1 + alpha can land an ulp off 1; keep unit diagonals exact.
  for (Eigen::Index i = 0; i < m.n(); ++i)
    if (m(i, i) == 1.0) out(i, i) = 1.0;
  return SymMatrix::FromExact(std::move(out));
}

double objective_value(const SymMatrix& m, const SymMatrix& w) {
  if (m.n() != w.n()) throw InconsistentInputs("objective_value: dimension mismatch");
  return m.mat().cwiseProduct(w.mat()).sum() / static_cast<double>(w.n());
}

double spectral_certificate(const SymMatrix& w) {
  return sym_eigenvalues(w)[0];
}

MembershipVerdict check_degree2_membership(const SymMatrix& m, double tol) {
  MembershipVerdict v;
  v.max_diag_dev = (m.mat().diagonal().array() - 1.0).abs().maxCoeff();
  v.lambda_min = min_eig(m, EigMethod::kDense);
  v.pass = v.max_diag_dev <= tol && v.lambda_min >= -tol;
  return v;
}

}  // namespace sklab
