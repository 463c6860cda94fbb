#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "sklab/sym_matrix.hpp"

namespace sklab {

/// Reduced degree-4 extension of a unit-diagonal M, stored by blocks over
/// index sets of size 0, 1 and 2 (pair block in PairIndex order). The size-0/1
/// and 1/2 cross blocks are identically zero and are not materialized.
struct Deg4Pseudomoments {
  int n = 0;
  double alpha = 0.0;
  Eigen::VectorXd z02;  // row Z[set {}, pairs] = (1-alpha) * offdiag(M)
  SymMatrix z11;        // (1-alpha) M + alpha I
  SymMatrix z22;        // pair block, unit diagonal

  std::int64_t pair_count() const {
    return static_cast<std::int64_t>(n) * (n - 1) / 2;
  }
  std::int64_t full_side() const { return 1 + n + pair_count(); }
};

/// Overlapping-pair correction, kept sparse: row {i,j} touches only pairs
/// sharing an index. Row adjacency is stored explicitly for Gershgorin
/// statistics and matrix-free eigensolves.
struct SparseDelta {
  int n = 0;
  std::int64_t dim = 0;
  std::vector<std::vector<std::pair<std::int64_t, double>>> rows;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  SymMatrix to_dense() const;
};

/// Pair block of the heuristic extension:
///   X_{{i,j},{k,l}} = M_ij M_kl + M_ik M_jl + M_il M_jk
///                     - 2 sum_m M_im M_jm M_km M_lm.
/// The quartic sum is assembled as H H^T with H_{{i,j},m} = M_im M_jm, one
/// level-3 product instead of a per-entry loop.
SymMatrix heuristic_x22(const SymMatrix& m);

/// Delta_{{i,k},{i,l}} = sum_{m != i} M_im^2 M_km M_lm on pairs sharing the
/// index i, zero when all four indices are distinct.
SparseDelta correction_delta_sparse(const SymMatrix& m);
SymMatrix correction_delta(const SymMatrix& m);

/// Z = (1-alpha) Y + alpha I with Y22 = X22 + 2 Delta; diagonal set to
/// exactly 1.
Deg4Pseudomoments assemble_z(const SymMatrix& m, double alpha);

struct ConstraintReport {
  double c2_normalization = 0.0;  // unit entries on the diagonal chain
  double c3_reduction = 0.0;      // odd-overlap blocks vanish
  double c4_consistency = 0.0;    // Z_{{i,j},{i,k}} = Z_{{j,k},{}} = Z_{{j},{k}}
  double c5_permutation = 0.0;    // invariance under index permutations
  std::array<int, 4> worst_c2{{-1, -1, -1, -1}};
  std::array<int, 4> worst_c4{{-1, -1, -1, -1}};
  std::array<int, 4> worst_c5{{-1, -1, -1, -1}};
  double max_violation() const {
    return std::max(std::max(c2_normalization, c3_reduction),
                    std::max(c4_consistency, c5_permutation));
  }
};

/// Maximum absolute violation of each linear-constraint class, over all index
/// tuples (c4 over all distinct i,j,k; c5 over all pairings of 4 distinct
/// indices). tol is recorded for reporting; violations are returned raw.
ConstraintReport verify_constraints(const Deg4Pseudomoments& z, double tol);

/// Sign-symmetrization: out_{ST} = (1 + (-1)^{|S xor T|})/2 * in_{ST}. Zeroes
/// every odd-overlap entry, preserves PSD, leaves the degree-2 minor alone.
/// Input is the full matrix over sets of size <= 2 (side 1 + N + N(N-1)/2).
Eigen::MatrixXd reduce_pseudomoments(const Eigen::MatrixXd& zfull);

struct SchurPieces {
  SymMatrix z1a;      // X22 - (1-alpha) offdiag(M) offdiag(M)^T
  SymMatrix z2;       // alpha/2 I + 2(1-alpha) Delta
  SymMatrix minor11;  // (1-alpha) M + alpha I
  double lambda_min_z1a = 0.0;
  double lambda_min_z2 = 0.0;
  double lambda_min_minor11 = 0.0;
};

/// Splits the Schur complement Z/Z00 = alpha/2 I + (1-alpha) Z1a + Z2 and
/// checks that identity to 1e-10 max-entry (InconsistentInputs otherwise).
SchurPieces schur_split(const Deg4Pseudomoments& z, const SymMatrix& m,
                        double alpha);

enum class PsdMethod { kFull, kSplit };

enum class PsdStatus { kPass, kFail, kInconclusive };

struct PsdVerdict {
  PsdStatus status = PsdStatus::kInconclusive;
  double lambda_min = 0.0;  // full: exact; split: certified lower bound
  double op_norm_z = 0.0;
  double threshold = 0.0;   // -tol * max(1, ||Z||_op)
};

/// Full method: lambda_min of the direct sum of Z11 and the minor over
/// {empty set} union pairs (dense up to side 8000, Lanczos beyond). Split
/// method: certifies through the Schur pieces; sufficient but may return
/// INCONCLUSIVE when a piece is negative while the full matrix still passes.
PsdVerdict certify_psd(const Deg4Pseudomoments& z, double tol, PsdMethod method);

/// The principal minor indexed by {empty set} union pairs (side 1 + N(N-1)/2).
SymMatrix minor_empty_pairs(const Deg4Pseudomoments& z);

}  // namespace sklab
