#pragma once

// Correlation-matrix factorization C = U Sc U^T = U F Sh F^H U^T and the
// precoder P = U F diag(p) Vp^H built from it.

#include <Eigen/Dense>
#include <optional>

#include "lnfade/link.hpp"

namespace lnfade {

struct Decomposition {
  Eigen::MatrixXd u;         // orthonormal eigenvectors of C, columns
  Eigen::MatrixXd sigma_c;   // diagonal eigenvalues, descending
  Eigen::MatrixXcd f;        // unitary DFT, f(p, q) = e^{-2 pi i pq / k} / sqrt(k)
  Eigen::MatrixXcd sigma_h;  // F^H Sc F
  int sweeps = 0;            // Jacobi sweeps used
};

/// Sweep cap for the symmetric Jacobi iteration.
inline constexpr int kPrecodeMaxSweeps = 100;

Eigen::MatrixXcd dft_matrix(Eigen::Index k);

Decomposition decompose_correlation(const CorrelationMatrix& c);

enum class PowerScaling {
  Linear,  // diag(p)
  Sqrt,    // diag(sqrt(p)), amplitude scaling
};

struct PrecoderOptions {
  PowerScaling scaling = PowerScaling::Linear;
  /// Right rotation Vp. Unset selects the unitary that diagonalizes
  /// P^H C P; pass the identity for the bare U F diag(p) structure.
  std::optional<Eigen::MatrixXcd> vp;
};

Eigen::MatrixXcd build_precoder(const Decomposition& d, const Eigen::VectorXd& pt,
                                const PrecoderOptions& options = {});

/// P^H C P.
Eigen::MatrixXcd transformed_covariance(const Eigen::MatrixXcd& precoder,
                                        const CorrelationMatrix& c);

/// Largest off-diagonal magnitude of a square matrix.
double max_off_diagonal(const Eigen::MatrixXcd& m);

}  // namespace lnfade
