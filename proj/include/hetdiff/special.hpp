#pragma once

namespace hetdiff {

/// Complementary error function. Relative error below 1e-12 on |z| <= 10;
/// underflows gracefully for large positive z.
double erfc(double z);

/// Heat kernel of the half line with an absorbing endpoint at 0
/// (difference of the direct and reflected Gaussians):
///   Phi(t, x, xi) = (exp(-(x-xi)^2/4t) - exp(-(x+xi)^2/4t)) / (2 sqrt(pi t)).
/// Requires t > 0.
double phi_kernel(double t, double x, double xi);

} // namespace hetdiff
