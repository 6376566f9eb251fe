#pragma once

#include <Eigen/Dense>
#include <complex>

namespace lnfade {

template <typename Scalar>
struct EigenPairs {
  Eigen::VectorXd values;                                  // unsorted, column order of vectors
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns are eigenvectors
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a real symmetric or complex Hermitian
/// matrix. Iterates until the off-diagonal Frobenius norm falls below
/// tol * ||A||_F, or throws ConvergenceError after max_sweeps sweeps.
///
/// Pairs (p, q) with a zero off-diagonal entry are never rotated, so a row
/// and column that are identically zero stay on their own basis vector.
template <typename Scalar>
EigenPairs<Scalar> jacobi_eigen(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                                double tol = 1e-15, int max_sweeps = 100);

extern template EigenPairs<double> jacobi_eigen<double>(const Eigen::MatrixXd&, double, int);
extern template EigenPairs<std::complex<double>> jacobi_eigen<std::complex<double>>(
    const Eigen::MatrixXcd&, double, int);

}  // namespace lnfade
