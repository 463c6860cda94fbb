#include "sklab/ensembles.hpp"

#include <cmath>

#include "sklab/errors.hpp"

namespace sklab {

SymMatrix sample_goe(int n, Rng& rng) {
  if (n < 1) throw InconsistentInputs("sample_goe: n >= 1 required");
  const double sd_diag = std::sqrt(2.0 / n);
  const double sd_off = std::sqrt(1.0 / n);
  SymMatrix w(n);
  for (int i = 0; i < n; ++i) {
    w.set(i, i, sd_diag * rng.normal());
    for (int j = i + 1; j < n; ++j) w.set(i, j, sd_off * rng.normal());
  }
  return w;
}

Eigen::MatrixXd sample_haar_stiefel(int n, int r, Rng& rng) {
  if (r < 1 || r > n) throw InconsistentInputs("sample_haar_stiefel: 1 <= r <= n");
  Eigen::MatrixXd g(n, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
  const Eigen::MatrixXd& qrm = qr.matrixQR();
  for (int k = 0; k < r; ++k)
    if (qrm(k, k) < 0.0) q.col(k) = -q.col(k);
  return q.transpose();
}

Eigen::MatrixXd sample_haar_orthogonal(int n, Rng& rng) {
  return sample_haar_stiefel(n, n, rng);
}

Eigen::MatrixXd sample_iid_unit_vectors(int r, int n, Rng& rng) {
  if (r < 1) throw InconsistentInputs("sample_iid_unit_vectors: r >= 1");
  Eigen::MatrixXd v(r, n);
  for (int j = 0; j < n; ++j) {
    do {
      for (int i = 0; i < r; ++i) v(i, j) = rng.normal();
    } while (v.col(j).norm() == 0.0);
    v.col(j).normalize();
  }
  return v;
}

namespace {

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
  }
  MomentEstimate finish(const std::string& name, double target,
                        std::int64_t m) const {
    MomentEstimate e;
    e.name = name;
    e.target = target;
    e.estimate = sum / m;
    const double var = std::max(0.0, sum_sq / m - e.estimate * e.estimate);
    e.std_error = std::sqrt(var / m);
    e.z = e.std_error > 0.0 ? (e.estimate - target) / e.std_error : 0.0;
    return e;
  }
};

}  // namespace

HaarMomentReport haar_moment_suite(int n, std::int64_t samples, Rng& rng) {
  if (n < 2) throw InconsistentInputs("haar_moment_suite: n >= 2 required");
  if (samples < 1) throw InconsistentInputs("haar_moment_suite: samples >= 1");
  Accumulator q11_sq, q11_4, q11_q12, q11_q22, cross, odd;
  for (std::int64_t s = 0; s < samples; ++s) {
    const Eigen::MatrixXd q = sample_haar_orthogonal(n, rng);
    const double a = q(0, 0), b = q(0, 1), c = q(1, 0), d = q(1, 1);
    q11_sq.add(a * a);
    q11_4.add(a * a * a * a);
    q11_q12.add(a * a * b * b);
    q11_q22.add(a * a * d * d);
    cross.add(a * b * c * d);
    odd.add(a);
  }
  const double nn = n;
  HaarMomentReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.moments = {
      q11_sq.finish("E Q11^2", 1.0 / nn, samples),
      q11_4.finish("E Q11^4", 3.0 / (nn * (nn + 2)), samples),
      q11_q12.finish("E Q11^2 Q12^2", 1.0 / (nn * (nn + 2)), samples),
      q11_q22.finish("E Q11^2 Q22^2", (nn + 1) / ((nn - 1) * nn * (nn + 2)), samples),
      cross.finish("E Q11 Q12 Q21 Q22", -1.0 / ((nn - 1) * nn * (nn + 2)), samples),
      odd.finish("E Q11", 0.0, samples),
  };
  for (const auto& m : rep.moments)
    rep.max_abs_z = std::max(rep.max_abs_z, std::abs(m.z));
  return rep;
}

}  // namespace sklab
