#pragma once

// Scalar standard-normal tail functions shared by the channel and link code.

namespace lnfade {

/// Standard normal upper-tail probability, Q(x) = erfc(x / sqrt 2) / 2.
double q_function(double x);

/// Inverse of q_function on (0, 1). Throws DomainError outside that range.
double q_inverse(double p);

/// Standard normal lower-tail probability, 1 - Q(x) evaluated without cancellation.
inline double normal_cdf(double x) { return q_function(-x); }

/// Standard normal density.
double normal_pdf(double x);

}  // namespace lnfade
