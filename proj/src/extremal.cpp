#include "sklab/extremal.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace sklab {

namespace {

struct TridiagEig {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

TridiagEig tridiag_eig(const std::vector<double>& alpha,
                       const std::vector<double>& beta) {
  const auto m = static_cast<lapack_int>(alpha.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
  Eigen::VectorXd e(m > 1 ? m - 1 : 1);
  for (lapack_int i = 0; i + 1 < m; ++i) e[i] = beta[i];
  Eigen::MatrixXd z(m, m);
  const lapack_int info =
      LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', m, d.data(), e.data(), z.data(), m);
  if (info != 0)
    throw NoConvergence("dstev failed with info=" + std::to_string(info));
  return {d, z};
}

}  // namespace

ExtremalEig lanczos_extremal(const MatVec& apply, Eigen::Index dim, double tol,
                             int max_iter) {
  if (dim < 1) throw InconsistentInputs("lanczos_extremal: empty operator");
  if (dim == 1) {
    Eigen::VectorXd e0 = Eigen::VectorXd::Unit(1, 0);
    const double lam = apply(e0)[0];
    return {lam, lam, 1};
  }
  if (max_iter <= 0)
    max_iter = static_cast<int>(std::min<Eigen::Index>(dim, 600));

  // Fixed-seed start vector keeps every run reproducible.
  std::mt19937_64 gen(0x736b6c61625f6c7aULL);
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v[i] = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
  v.normalize();

  Eigen::MatrixXd basis(dim, max_iter);
  std::vector<double> alpha, beta;
  alpha.reserve(max_iter);
  beta.reserve(max_iter);

  basis.col(0) = v;
  for (int j = 0; j < max_iter; ++j) {
    Eigen::VectorXd w = apply(basis.col(j));
    if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
    const double a = basis.col(j).dot(w);
    alpha.push_back(a);
    w -= a * basis.col(j);
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd c = basis.leftCols(j + 1).transpose() * w;
      w -= basis.leftCols(j + 1) * c;
    }
    const double b = w.norm();

    const TridiagEig te = tridiag_eig(alpha, beta);
    const int m = static_cast<int>(alpha.size());
    const double lo = te.values[0];
    const double hi = te.values[m - 1];
    const double scale = std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    const double res_lo = b * std::abs(te.vectors(m - 1, 0));
    const double res_hi = b * std::abs(te.vectors(m - 1, m - 1));
    const bool converged = res_lo <= tol * scale && res_hi <= tol * scale;
    const bool exhausted = b <= 1e-14 * scale || j + 1 >= dim;
    if (converged || exhausted) return {lo, hi, m};

    beta.push_back(b);
    if (j + 1 < max_iter) basis.col(j + 1) = w / b;
  }
  throw NoConvergence("lanczos_extremal: no convergence after " +
                      std::to_string(max_iter) + " iterations");
}

}  // namespace sklab
