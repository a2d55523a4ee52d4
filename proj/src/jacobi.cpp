#include "pgst/jacobi.hpp"

#include <cmath>

#include "pgst/error.hpp"

namespace pgst {
namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

}  // namespace

JacobiResult jacobi_eigen(const Eigen::MatrixXd& input, double tolerance) {
  if (input.rows() != input.cols()) throw Error(ErrorCode::kNotSymmetric, "matrix is not square");
  const Eigen::Index n = input.rows();
  const double scale = std::max(1.0, input.norm());
  if ((input - input.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::kNotSymmetric, "matrix is not symmetric");
  }

  JacobiResult r;
  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double target = tolerance * scale;

  r.off_norm = off_diagonal_norm(a);
  while (r.off_norm >= target) {
    if (r.sweeps == kMaxSweeps) {
      throw Error(ErrorCode::kNormalization, "Jacobi iteration did not converge");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // A <- J^T A J on columns, then rows.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    ++r.sweeps;
    r.off_norm = off_diagonal_norm(a);
  }
  r.values = a.diagonal();
  r.vectors = std::move(v);
  return r;
}

}  // namespace pgst
