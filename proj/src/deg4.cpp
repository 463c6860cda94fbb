#include "sklab/deg4.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "sklab/errors.hpp"
#include "sklab/extremal.hpp"

namespace sklab {

namespace {

constexpr Eigen::Index kDenseCap = 8000;

void require_unit_diagonal(const SymMatrix& m, const char* who) {
  const double dev = (m.mat().diagonal().array() - 1.0).abs().maxCoeff();
  if (dev > 1e-10)
    throw InconsistentInputs(std::string(who) + ": diag(M) deviates from 1 by " +
                             std::to_string(dev));
}

double extremal_min(const SymMatrix& a) {
  if (a.n() <= kDenseCap) {
    const Eigen::VectorXd w = sym_eigenvalues(a);
    return w[w.size() - 1];
  }
  return min_eig(a, EigMethod::kIterative, 1e-10);
}

}  // namespace

Eigen::VectorXd SparseDelta::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
  for (std::int64_t a = 0; a < dim; ++a) {
    double acc = 0.0;
    for (const auto& [b, v] : rows[a]) acc += v * x[b];
    y[a] = acc;
  }
  return y;
}

SymMatrix SparseDelta::to_dense() const {
  SymMatrix d(dim);
  for (std::int64_t a = 0; a < dim; ++a)
    for (const auto& [b, v] : rows[a]) d.raw()(a, b) = v;
  return SymMatrix::FromExact(std::move(d.raw()));
}

SymMatrix heuristic_x22(const SymMatrix& m) {
  require_unit_diagonal(m, "heuristic_x22");
  const int n = static_cast<int>(m.n());
  const PairIndex pairs(n);
  const std::int64_t p = pairs.count();

  Eigen::MatrixXd h(p, n);
  for (std::int64_t a = 0; a < p; ++a) {
    const auto [i, j] = pairs.pair_at(a);
    h.row(a) = m.mat().row(i).cwiseProduct(m.mat().row(j));
  }

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(p, p);
  x.selfadjointView<Eigen::Lower>().rankUpdate(h, -2.0);
  for (std::int64_t a = 0; a < p; ++a) {
    const auto [i, j] = pairs.pair_at(a);
    for (std::int64_t b = 0; b <= a; ++b) {
      const auto [k, l] = pairs.pair_at(b);
      x(a, b) += m(i, j) * m(k, l) + m(i, k) * m(j, l) + m(i, l) * m(j, k);
    }
  }
  x.triangularView<Eigen::StrictlyUpper>() =
      x.triangularView<Eigen::StrictlyLower>().transpose();
  return SymMatrix::FromExact(std::move(x));
}

SparseDelta correction_delta_sparse(const SymMatrix& m) {
  require_unit_diagonal(m, "correction_delta");
  const int n = static_cast<int>(m.n());
  const PairIndex pairs(n);
  SparseDelta d;
  d.n = n;
  d.dim = pairs.count();
  d.rows.resize(d.dim);

  const Eigen::MatrixXd& mm = m.mat();
  Eigen::VectorXd u(n), w_i(n), w_j(n);
  for (std::int64_t a = 0; a < d.dim; ++a) {
    const auto [i, j] = pairs.pair_at(a);
    // w_i[k] = sum_m M_im^2 M_jm M_km  (includes m = i; subtracted below)
    u = mm.row(i).cwiseProduct(mm.row(i)).cwiseProduct(mm.row(j));
    w_i = mm * u;
    u = mm.row(j).cwiseProduct(mm.row(j)).cwiseProduct(mm.row(i));
    w_j = mm * u;

    // Diagonal entry, viewed from the repeated index i.
    d.rows[a].emplace_back(a, w_i[j] - mm(i, j) * mm(i, j));
    // Neighbors sharing i or j; keep b > a only, mirrored afterwards so the
    // matrix is exactly symmetric.
    for (int k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      const std::int64_t bi = pairs.position(i, k);
      if (bi > a) d.rows[a].emplace_back(bi, w_i[k] - mm(i, j) * mm(i, k));
      const std::int64_t bj = pairs.position(j, k);
      if (bj > a) d.rows[a].emplace_back(bj, w_j[k] - mm(i, j) * mm(j, k));
    }
  }
  for (std::int64_t a = 0; a < d.dim; ++a)
    for (const auto& [b, v] : d.rows[a])
      if (b > a) d.rows[b].emplace_back(a, v);
  for (auto& row : d.rows)
    std::sort(row.begin(), row.end());
  return d;
}

SymMatrix correction_delta(const SymMatrix& m) {
  return correction_delta_sparse(m).to_dense();
}

Deg4Pseudomoments assemble_z(const SymMatrix& m, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw InconsistentInputs("assemble_z: alpha in [0,1) required");
  require_unit_diagonal(m, "assemble_z");

  Deg4Pseudomoments z;
  z.n = static_cast<int>(m.n());
  z.alpha = alpha;
  z.z02 = (1.0 - alpha) * offdiag(m);
  z.z11 = nudged_witness(m, alpha);

  SymMatrix x22 = heuristic_x22(m);
  Eigen::MatrixXd& w = x22.raw();
  w *= (1.0 - alpha);
  const SparseDelta delta = correction_delta_sparse(m);
  const double c = 2.0 * (1.0 - alpha);
  for (std::int64_t a = 0; a < delta.dim; ++a)
    for (const auto& [b, v] : delta.rows[a]) w(a, b) += c * v;
  w.diagonal().array() += alpha;
  w.diagonal().setOnes();  // exact by construction up to roundoff; pin it
  z.z22 = SymMatrix::FromExact(std::move(w));
  return z;
}

ConstraintReport verify_constraints(const Deg4Pseudomoments& z, double /*tol*/) {
  const int n = z.n;
  const PairIndex pairs(n);
  ConstraintReport rep;

  // c2: unit normalization. Z00 is structurally 1.
  for (int i = 0; i < n; ++i) {
    const double v = std::abs(z.z11(i, i) - 1.0);
    if (v > rep.c2_normalization) {
      rep.c2_normalization = v;
      rep.worst_c2 = {i, i, -1, -1};
    }
  }
  for (std::int64_t a = 0; a < pairs.count(); ++a) {
    const double v = std::abs(z.z22(a, a) - 1.0);
    if (v > rep.c2_normalization) {
      const auto [i, j] = pairs.pair_at(a);
      rep.c2_normalization = v;
      rep.worst_c2 = {i, j, i, j};
    }
  }

  // c3: the odd-overlap blocks are not materialized, hence exactly zero.
  rep.c3_reduction = 0.0;

  // c4: Z_{{i,j},{i,k}} = Z_{{j,k},{}} = Z_{{j},{k}} for distinct i,j,k.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = j + 1; k < n; ++k) {
        if (k == i) continue;
        const double v22 = z.z22(pairs.position(i, j), pairs.position(i, k));
        const double v02 = z.z02[pairs.position(j, k)];
        const double v11 = z.z11(j, k);
        const double v = std::max({std::abs(v22 - v02), std::abs(v22 - v11),
                                   std::abs(v02 - v11)});
        if (v > rep.c4_consistency) {
          rep.c4_consistency = v;
          rep.worst_c4 = {i, j, k, -1};
        }
      }
    }

  // c5: the three pairings of any 4 distinct indices agree.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const double v1 = z.z22(pairs.position(i, j), pairs.position(k, l));
          const double v2 = z.z22(pairs.position(i, k), pairs.position(j, l));
          const double v3 = z.z22(pairs.position(i, l), pairs.position(j, k));
          const double v = std::max({std::abs(v1 - v2), std::abs(v1 - v3),
                                     std::abs(v2 - v3)});
          if (v > rep.c5_permutation) {
            rep.c5_permutation = v;
            rep.worst_c5 = {i, j, k, l};
          }
        }
  return rep;
}

Eigen::MatrixXd reduce_pseudomoments(const Eigen::MatrixXd& zfull) {
  if (zfull.rows() != zfull.cols())
    throw InconsistentInputs("reduce_pseudomoments: square input required");
  const std::int64_t side = zfull.rows();
  const std::int64_t tri = side - 1;  // n + n(n-1)/2 = n(n+1)/2
  const std::int64_t n =
      static_cast<std::int64_t>(std::llround((std::sqrt(8.0 * tri + 1.0) - 1.0) / 2.0));
  if (n < 1 || 1 + n * (n + 1) / 2 != side)
    throw InconsistentInputs("reduce_pseudomoments: side is not 1+n(n+1)/2");
  Eigen::MatrixXd out = zfull;
  // Odd symmetric differences are exactly the (sets of size 0 or 2) x (size 1)
  // cross blocks.
  out.block(0, 1, 1, n).setZero();
  out.block(1, 0, n, 1).setZero();
  out.block(1, 1 + n, n, side - 1 - n).setZero();
  out.block(1 + n, 1, side - 1 - n, n).setZero();
  return out;
}

SchurPieces schur_split(const Deg4Pseudomoments& z, const SymMatrix& m,
                        double alpha) {
  if (z.alpha != alpha)
    throw InconsistentInputs("schur_split: alpha does not match the assembly");
  if (m.n() != z.n) throw InconsistentInputs("schur_split: dimension mismatch");
  const SymMatrix expected_z11 = nudged_witness(m, alpha);
  if ((expected_z11.mat() - z.z11.mat()).cwiseAbs().maxCoeff() > 1e-12)
    throw InconsistentInputs("schur_split: Z was not assembled from this M");

  SchurPieces out;
  const Eigen::VectorXd o = offdiag(m);

  SymMatrix z1a = heuristic_x22(m);
  z1a.raw().selfadjointView<Eigen::Lower>().rankUpdate(o, -(1.0 - alpha));
  z1a.raw().triangularView<Eigen::StrictlyUpper>() =
      z1a.raw().triangularView<Eigen::StrictlyLower>().transpose();
  out.z1a = std::move(z1a);

  const SparseDelta delta = correction_delta_sparse(m);
  SymMatrix z2 = delta.to_dense();
  z2.raw() *= 2.0 * (1.0 - alpha);
  z2.raw().diagonal().array() += 0.5 * alpha;
  out.z2 = SymMatrix::FromExact(std::move(z2.raw()));
  out.minor11 = z.z11;

  // Z22 - z02 z02^T = alpha/2 I + (1-alpha) Z1a + Z2, entrywise.
  const std::int64_t p = z.pair_count();
  double worst = 0.0;
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b <= a; ++b) {
      const double lhs = z.z22(a, b) - z.z02[a] * z.z02[b];
      double rhs = (1.0 - alpha) * out.z1a(a, b) + out.z2(a, b);
      if (a == b) rhs += 0.5 * alpha;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  if (worst > 1e-10)
    throw InconsistentInputs("schur_split: reconstruction identity fails by " +
                             std::to_string(worst));

  out.lambda_min_z1a = extremal_min(out.z1a);
  out.lambda_min_minor11 = extremal_min(out.minor11);
  // lambda_min(Z2) through the affine spectral map of Delta.
  double delta_min;
  if (delta.dim <= kDenseCap) {
    delta_min = extremal_min(out.z2);
    out.lambda_min_z2 = delta_min;
  } else {
    const auto apply = [&delta](const Eigen::VectorXd& x) { return delta.apply(x); };
    delta_min = lanczos_extremal(apply, delta.dim, 1e-10).lambda_min;
    out.lambda_min_z2 = 0.5 * alpha + 2.0 * (1.0 - alpha) * delta_min;
  }
  return out;
}

SymMatrix minor_empty_pairs(const Deg4Pseudomoments& z) {
  const std::int64_t p = z.pair_count();
  SymMatrix minor(1 + p);
  Eigen::MatrixXd& w = minor.raw();
  w(0, 0) = 1.0;
  w.block(0, 1, 1, p) = z.z02.transpose();
  w.block(1, 0, p, 1) = z.z02;
  w.block(1, 1, p, p) = z.z22.mat();
  return SymMatrix::FromExact(std::move(w));
}

PsdVerdict certify_psd(const Deg4Pseudomoments& z, double tol, PsdMethod method) {
  PsdVerdict v;
  const Eigen::VectorXd w11 = sym_eigenvalues(z.z11);
  const double min11 = w11[w11.size() - 1];
  const double op11 = std::max(std::abs(w11[0]), std::abs(min11));

  if (method == PsdMethod::kFull) {
    const SymMatrix minor = minor_empty_pairs(z);
    double min_minor, op_minor;
    if (minor.n() <= kDenseCap) {
      const Eigen::VectorXd w = sym_eigenvalues(minor);
      min_minor = w[w.size() - 1];
      op_minor = std::max(std::abs(w[0]), std::abs(min_minor));
    } else {
      const Eigen::MatrixXd& mm = minor.mat();
      const auto apply = [&mm](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return mm.selfadjointView<Eigen::Lower>() * x;
      };
      const ExtremalEig e = lanczos_extremal(apply, minor.n(), 1e-10);
      min_minor = e.lambda_min;
      op_minor = std::max(std::abs(e.lambda_min), std::abs(e.lambda_max));
    }
    v.lambda_min = std::min(min11, min_minor);
    v.op_norm_z = std::max(op11, op_minor);
    v.threshold = tol * std::max(1.0, v.op_norm_z);
    v.status = v.lambda_min >= -v.threshold ? PsdStatus::kPass : PsdStatus::kFail;
    return v;
  }

  // Split certificate. Recover M from the degree-2 block, bound
  // lambda_min(Z/Z00) >= lambda_min(Z1) + lambda_min(Z2).
  Eigen::MatrixXd mrec = (z.z11.mat() - z.alpha * Eigen::MatrixXd::Identity(z.n, z.n)) /
                         (1.0 - z.alpha);
  mrec.diagonal().setOnes();
  const SymMatrix m = SymMatrix::FromSymmetrized(mrec);

  SymMatrix z1a = heuristic_x22(m);
  const Eigen::VectorXd o = offdiag(m);
  z1a.raw().selfadjointView<Eigen::Lower>().rankUpdate(o, -(1.0 - z.alpha));
  z1a.raw().triangularView<Eigen::StrictlyUpper>() =
      z1a.raw().triangularView<Eigen::StrictlyLower>().transpose();
  const double min1a = extremal_min(z1a);

  const SparseDelta delta = correction_delta_sparse(m);
  const auto apply = [&delta](const Eigen::VectorXd& x) { return delta.apply(x); };
  const double min_delta = lanczos_extremal(apply, delta.dim, 1e-10).lambda_min;

  const double schur_bound = 0.5 * z.alpha + (1.0 - z.alpha) * min1a +
                             0.5 * z.alpha + 2.0 * (1.0 - z.alpha) * min_delta;
  v.lambda_min = std::min(min11, schur_bound);
  // Conservative scale: ||Z11|| is a lower bound on ||Z||, so the PASS
  // threshold is at least as strict as with the true operator norm.
  v.op_norm_z = op11;
  v.threshold = tol * std::max(1.0, v.op_norm_z);
  v.status = v.lambda_min >= -v.threshold ? PsdStatus::kPass
                                          : PsdStatus::kInconclusive;
  return v;
}

}  // namespace sklab
