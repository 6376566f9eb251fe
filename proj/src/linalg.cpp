#include "lnfade/linalg.hpp"

#include <cmath>

#include "lnfade/errors.hpp"

namespace lnfade {

namespace {

double off_diagonal_norm2(const auto& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return s;
}

}  // namespace

template <typename Scalar>
EigenPairs<Scalar> jacobi_eigen(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& input,
                                double tol, int max_sweeps) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (input.rows() != input.cols()) throw DomainError("jacobi_eigen: matrix not square");
  const Eigen::Index n = input.rows();

  // Symmetrize to remove rounding asymmetry from the caller.
  Mat a = (input + input.adjoint()) / Scalar(2.0);
  Mat v = Mat::Identity(n, n);
  const double scale2 = a.squaredNorm();
  const double target2 = tol * tol * (scale2 > 0.0 ? scale2 : 1.0);

  EigenPairs<Scalar> out;
  for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
    if (off_diagonal_norm2(a) <= target2) {
      out.sweeps = sweep;
      out.values.resize(n);
      for (Eigen::Index i = 0; i < n; ++i) out.values(i) = std::real(a(i, i));
      out.vectors = std::move(v);
      return out;
    }
    if (sweep == max_sweeps) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;

        if constexpr (!std::is_same_v<Scalar, double>) {
          // Rotate the phase of basis vector q so that a(p, q) becomes real.
          const Scalar phase = std::conj(a(p, q)) / r;  // e^{-i phi}
          a.col(q) *= phase;
          a.row(q) *= std::conj(phase);
          v.col(q) *= phase;
          a(p, q) = r;
          a(q, p) = r;
        }

        // Real from here on; signed in the real case.
        const double apq = std::real(a(p, q));
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // A <- R^T A R with R the (p, q) plane rotation [[c, s], [-s, c]].
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = Scalar(0.0);
        a(q, p) = Scalar(0.0);
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  throw ConvergenceError("jacobi_eigen: off-diagonal residual above tolerance after sweep cap");
}

template EigenPairs<double> jacobi_eigen<double>(const Eigen::MatrixXd&, double, int);
template EigenPairs<std::complex<double>> jacobi_eigen<std::complex<double>>(
    const Eigen::MatrixXcd&, double, int);

}  // namespace lnfade
