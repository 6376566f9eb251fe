#include "lnfade/precode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "lnfade/errors.hpp"
#include "lnfade/linalg.hpp"

namespace lnfade {

Eigen::MatrixXcd dft_matrix(Eigen::Index k) {
  Eigen::MatrixXcd f(k, k);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  for (Eigen::Index p = 0; p < k; ++p) {
    for (Eigen::Index q = 0; q < k; ++q) {
      // Reduce pq mod k before forming the angle to keep it small.
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((p * q) % k) /
                           static_cast<double>(k);
      f(p, q) = std::polar(scale, angle);
    }
  }
  return f;
}

Decomposition decompose_correlation(const CorrelationMatrix& c) {
  const auto eig = jacobi_eigen<double>(c.entries(), 1e-15, kPrecodeMaxSweeps);
  const Eigen::Index k = c.dim();
  if (eig.values.minCoeff() < -1e-10) {
    throw DomainError("decompose_correlation: matrix is not positive semi-definite");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return eig.values(a) > eig.values(b); });

  Decomposition d;
  d.u.resize(k, k);
  d.sigma_c = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index col = 0; col < k; ++col) {
    const Eigen::Index src = order[static_cast<std::size_t>(col)];
    d.u.col(col) = eig.vectors.col(src);
    d.sigma_c(col, col) = std::max(0.0, eig.values(src));
  }
  d.f = dft_matrix(k);
  d.sigma_h = d.f.adjoint() * d.sigma_c.cast<std::complex<double>>() * d.f;
  d.sweeps = eig.sweeps;
  return d;
}

Eigen::MatrixXcd build_precoder(const Decomposition& d, const Eigen::VectorXd& pt,
                                const PrecoderOptions& options) {
  const Eigen::Index k = d.u.rows();
  if (pt.size() != k) throw DomainError("build_precoder: power vector dimension mismatch");
  if ((pt.array() < 0.0).any()) throw DomainError("build_precoder: negative stream power");

  Eigen::VectorXd scale = pt;
  if (options.scaling == PowerScaling::Sqrt) scale = pt.array().sqrt();
  const Eigen::MatrixXcd diag = scale.cast<std::complex<double>>().asDiagonal();
  const Eigen::MatrixXcd left = d.u.cast<std::complex<double>>() * d.f * diag;

  Eigen::MatrixXcd vp;
  if (options.vp) {
    vp = *options.vp;
    if (vp.rows() != k || vp.cols() != k) throw DomainError("build_precoder: Vp dimension mismatch");
    const double err = (vp.adjoint() * vp - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
    if (err > 1e-10) throw DomainError("build_precoder: Vp is not unitary");
  } else {
    // P^H C P = Vp (D Sh D) Vp^H; with D Sh D = W L W^H choose Vp = W^H.
    const Eigen::MatrixXcd inner = diag * d.sigma_h * diag;
    const auto eig = jacobi_eigen<std::complex<double>>(inner, 1e-15, kPrecodeMaxSweeps);
    vp = eig.vectors.adjoint();
  }
  return left * vp.adjoint();
}

Eigen::MatrixXcd transformed_covariance(const Eigen::MatrixXcd& precoder,
                                        const CorrelationMatrix& c) {
  if (precoder.rows() != c.dim()) throw DomainError("transformed_covariance: dimension mismatch");
  return precoder.adjoint() * c.entries().cast<std::complex<double>>() * precoder;
}

double max_off_diagonal(const Eigen::MatrixXcd& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

}  // namespace lnfade
