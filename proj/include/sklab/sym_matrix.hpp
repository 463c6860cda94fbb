#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sklab/errors.hpp"

namespace sklab {

/// Dense real symmetric matrix. Full square storage, but symmetry is an
/// invariant: every constructor and mutator keeps entries(i,j) == entries(j,i)
/// bit-exactly.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Eigen::Index n) : m_(Eigen::MatrixXd::Zero(n, n)) {}

  static SymMatrix Identity(Eigen::Index n) {
    SymMatrix s(n);
    s.m_.setIdentity();
    return s;
  }

  /// Accepts a matrix that is already exactly symmetric (cheap check only in
  /// debug); use this for products of the form B^T B, A + A^T etc.
  static SymMatrix FromExact(Eigen::MatrixXd a);

  /// Symmetrizes 0.5*(A + A^T); the result is exactly symmetric in IEEE
  /// arithmetic.
  static SymMatrix FromSymmetrized(const Eigen::MatrixXd& a);

  /// Validates |a_ij - a_ji| <= tol everywhere, then symmetrizes exactly.
  static SymMatrix FromDense(const Eigen::MatrixXd& a, double tol = 1e-12);

  Eigen::Index n() const { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const Eigen::MatrixXd& mat() const { return m_; }

  /// Direct storage access for bulk writers. The caller must restore exact
  /// symmetry before handing the matrix to anyone else.
  Eigen::MatrixXd& raw() { return m_; }

 private:
  Eigen::MatrixXd m_;
};

/// Bijection between unordered pairs {i,j}, i<j, of [0,N) and flat positions
/// 0..N(N-1)/2-1, ordered lexicographically by (i,j). This matches the
/// ordering of index sets by size then lexicographic rank used throughout.
class PairIndex {
 public:
  explicit PairIndex(int n);

  int n() const { return n_; }
  std::int64_t count() const { return count_; }

  std::int64_t position(int i, int j) const;
  std::pair<int, int> pair_at(std::int64_t pos) const { return pairs_[pos]; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

 private:
  int n_ = 0;
  std::int64_t count_ = 0;
  std::vector<std::pair<int, int>> pairs_;
};

/// Full spectral decomposition. Eigenvalues sorted descending; eigenvector
/// columns aligned with them, each flipped so its first nonzero coordinate is
/// positive (fixes the sign ambiguity and makes runs reproducible).
struct EigResult {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

enum class EigMethod { kDense, kIterative };

/// Isometric vectorization [diag(A); sqrt(2)*offdiag(A)]: preserves the
/// Frobenius inner product.
Eigen::VectorXd isovec(const SymMatrix& a);
Eigen::VectorXd isovec(const Eigen::MatrixXd& sym_a);

/// Inverse of isovec. Throws LengthNotTriangular if the length is not
/// n(n+1)/2 for any integer n.
SymMatrix isovec_inverse(const Eigen::VectorXd& x);

/// Strict upper triangle in lexicographic pair order, unscaled.
Eigen::VectorXd offdiag(const SymMatrix& a);
Eigen::VectorXd offdiag(const Eigen::MatrixXd& sym_a);

/// Full decomposition via LAPACK (divide and conquer). Deterministic for a
/// fixed input. Throws NoConvergence if the backend fails.
EigResult sym_eig(const SymMatrix& a);

/// Eigenvalues only (descending), same backend family as sym_eig but without
/// accumulating eigenvectors. Use for large matrices where only the spectrum
/// is needed.
Eigen::VectorXd sym_eigenvalues(const SymMatrix& a);

/// Smallest eigenvalue. Dense mode routes through sym_eig, so it equals the
/// minimum of sym_eig's eigenvalue list exactly. Iterative mode runs the
/// Lanczos extremal solver and agrees with dense within tol*max(1,||A||_op).
double min_eig(const SymMatrix& a, EigMethod method = EigMethod::kDense,
               double tol = 1e-10);

/// Largest singular value.
double op_norm(const Eigen::MatrixXd& a);
double op_norm(const SymMatrix& a);

SymMatrix hadamard_square(const SymMatrix& a);

/// Text dump: line 1 "SYM n", then n rows of n values. The reader validates
/// symmetry within 1e-12 and returns an exactly symmetric matrix.
void write_sym_matrix(std::ostream& os, const SymMatrix& a);
SymMatrix read_sym_matrix(std::istream& is);
void write_sym_matrix_file(const std::string& path, const SymMatrix& a);
SymMatrix read_sym_matrix_file(const std::string& path);

}  // namespace sklab
