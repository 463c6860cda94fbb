#include "sklab/sym_matrix.hpp"

#include <lapacke.h>

#include <cassert>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "sklab/extremal.hpp"

namespace sklab {

namespace {
// Dense eigensolves above this dimension are out of desk budget; callers fall
// back to the iterative extremal solver.
constexpr Eigen::Index kDenseCap = 8000;
}  // namespace

SymMatrix SymMatrix::FromExact(Eigen::MatrixXd a) {
  assert(a.rows() == a.cols());
  SymMatrix s;
  s.m_ = std::move(a);
  return s;
}

SymMatrix SymMatrix::FromSymmetrized(const Eigen::MatrixXd& a) {
  SymMatrix s;
  s.m_ = 0.5 * (a + a.transpose());
  return s;
}

SymMatrix SymMatrix::FromDense(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols()) throw InconsistentInputs("matrix is not square");
  const double dev = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (dev > tol)
    throw InconsistentInputs("matrix is not symmetric: max deviation " +
                             std::to_string(dev));
  return FromSymmetrized(a);
}

PairIndex::PairIndex(int n) : n_(n) {
  if (n < 1) throw InconsistentInputs("PairIndex needs n >= 1");
  count_ = static_cast<std::int64_t>(n) * (n - 1) / 2;
  pairs_.reserve(count_);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
}

std::int64_t PairIndex::position(int i, int j) const {
  if (i > j) std::swap(i, j);
  assert(0 <= i && i < j && j < n_);
  return static_cast<std::int64_t>(i) * n_ - static_cast<std::int64_t>(i) * (i + 1) / 2 +
         (j - i - 1);
}

Eigen::VectorXd isovec(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd x(n * (n + 1) / 2);
  x.head(n) = a.diagonal();
  Eigen::Index p = n;
  const double s = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) x[p++] = s * a(i, j);
  return x;
}

Eigen::VectorXd isovec(const SymMatrix& a) { return isovec(a.mat()); }

SymMatrix isovec_inverse(const Eigen::VectorXd& x) {
  const std::int64_t len = x.size();
  // n(n+1)/2 = len  =>  n = (-1 + sqrt(1 + 8 len)) / 2
  const std::int64_t n =
      static_cast<std::int64_t>(std::llround((std::sqrt(8.0 * len + 1.0) - 1.0) / 2.0));
  if (n < 1 || n * (n + 1) / 2 != len)
    throw LengthNotTriangular("length " + std::to_string(len) +
                              " is not n(n+1)/2 for any n");
  SymMatrix a(n);
  for (Eigen::Index i = 0; i < n; ++i) a.set(i, i, x[i]);
  Eigen::Index p = n;
  const double inv_s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) a.set(i, j, inv_s * x[p++]);
  return a;
}

Eigen::VectorXd offdiag(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd x(n * (n - 1) / 2);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) x[p++] = a(i, j);
  return x;
}

Eigen::VectorXd offdiag(const SymMatrix& a) { return offdiag(a.mat()); }

namespace {

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

EigResult sym_eig(const SymMatrix& a) {
  const auto n = static_cast<lapack_int>(a.n());
  Eigen::MatrixXd work = a.mat();
  Eigen::VectorXd w(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, work.data(), n, w.data());
  if (info != 0)
    throw NoConvergence("dsyevd failed with info=" + std::to_string(info));
  EigResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (lapack_int k = 0; k < n; ++k) {
    out.eigenvalues[k] = w[n - 1 - k];
    out.eigenvectors.col(k) = work.col(n - 1 - k);
    fix_sign(out.eigenvectors.col(k));
  }
  return out;
}

Eigen::VectorXd sym_eigenvalues(const SymMatrix& a) {
  const auto n = static_cast<lapack_int>(a.n());
  Eigen::MatrixXd work = a.mat();
  Eigen::VectorXd w(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, w.data());
  if (info != 0)
    throw NoConvergence("dsyevd failed with info=" + std::to_string(info));
  return w.reverse();
}

double min_eig(const SymMatrix& a, EigMethod method, double tol) {
  if (method == EigMethod::kDense) {
    const EigResult e = sym_eig(a);
    return e.eigenvalues[e.eigenvalues.size() - 1];
  }
  const Eigen::MatrixXd& m = a.mat();
  const auto apply = [&m](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return m.selfadjointView<Eigen::Lower>() * x;
  };
  return lanczos_extremal(apply, a.n(), tol).lambda_min;
}

double op_norm(const SymMatrix& a) {
  if (a.n() <= kDenseCap) {
    const Eigen::VectorXd w = sym_eigenvalues(a);
    return std::max(std::abs(w[0]), std::abs(w[w.size() - 1]));
  }
  const Eigen::MatrixXd& m = a.mat();
  const auto apply = [&m](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return m.selfadjointView<Eigen::Lower>() * x;
  };
  const ExtremalEig e = lanczos_extremal(apply, a.n(), 1e-10);
  return std::max(std::abs(e.lambda_min), std::abs(e.lambda_max));
}

double op_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == a.cols() && a == a.transpose())
    return op_norm(SymMatrix::FromExact(a));
  // Largest singular value via the smaller Gram matrix.
  SymMatrix gram = (a.rows() <= a.cols())
                       ? SymMatrix::FromSymmetrized(a * a.transpose())
                       : SymMatrix::FromSymmetrized(a.transpose() * a);
  if (gram.n() > kDenseCap)
    throw InconsistentInputs("op_norm: Gram side exceeds dense cap");
  const Eigen::VectorXd w = sym_eigenvalues(gram);
  return std::sqrt(std::max(0.0, w[0]));
}

SymMatrix hadamard_square(const SymMatrix& a) {
  return SymMatrix::FromExact(a.mat().cwiseProduct(a.mat()));
}

void write_sym_matrix(std::ostream& os, const SymMatrix& a) {
  const Eigen::Index n = a.n();
  os << "SYM " << n << "\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j) os << ' ';
      os << a(i, j);
    }
    os << '\n';
  }
}

SymMatrix read_sym_matrix(std::istream& is) {
  std::string tag;
  Eigen::Index n = 0;
  if (!(is >> tag >> n) || tag != "SYM" || n < 1)
    throw InconsistentInputs("bad SYM header");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (!(is >> m(i, j))) throw InconsistentInputs("truncated SYM body");
  return SymMatrix::FromDense(m, 1e-12);
}

void write_sym_matrix_file(const std::string& path, const SymMatrix& a) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open " + path + " for writing");
  write_sym_matrix(f, a);
}

SymMatrix read_sym_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  return read_sym_matrix(f);
}

}  // namespace sklab
