#pragma once

#include <functional>
#include <vector>

namespace hetdiff {

/// Accuracy control shared by the adaptive quadrature routines.
/// Convergence means successive refinements differ by at most
/// rel_tol * max(|I|, abs_floor); refinement past max_levels throws
/// accuracy_error.
struct QuadratureControl {
    double rel_tol = 1e-12;
    double abs_floor = 1e-300;
    int max_levels = 12;
};

/// Integrate f over [a, b] by composite 16-point Gauss-Legendre with
/// panel doubling until converged.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureControl& ctl = {});

/// Integrate f over [0, inf) where |f| is dominated by a Gaussian
/// envelope ~ exp(-xi^2 / (4 t_scale)) times a bounded factor.
/// The tail beyond xi_max = 2 sqrt(t_scale * ln(1/tail_tol)) is dropped
/// and the rest handled by integrate_adaptive.
double integrate_gaussian_halfline(const std::function<double(double)>& f, double t_scale,
                                   double tail_tol = 1e-12, const QuadratureControl& ctl = {});

/// Time mesh on [0, t] graded geometrically toward both endpoints with
/// ratio r in (0, 1): the union of {t r^j} and {t (1 - r^j)} down to a
/// relative floor, plus the endpoints. Sorted ascending.
std::vector<double> graded_mesh(double t, double ratio, double rel_floor = 1e-15);

/// Product integration of the weakly singular memory integral
///   integral_0^t g(tau) / sqrt(pi (t - tau)) dtau,
/// treating g as piecewise linear on a graded mesh with the weight
/// (t-tau)^(-1/2) integrated exactly per subinterval. The mesh ratio
/// starts at 0.85 and is refined (r -> sqrt(r), node count doubles)
/// with Richardson extrapolation until converged. Tolerances tighter
/// than the scheme's certification floor of about 5e-10 relative are
/// capped at that floor.
/// g must be finite on (0, t]; g(0) is taken as the limit value covered
/// by evaluating at the first positive mesh point.
double product_integrate_abel(const std::function<double(double)>& g, double t,
                              const QuadratureControl& ctl = {});

/// Product integration of the bounded memory integral
///   integral_0^t g(tau) erfc(c / (2 sqrt(t - tau))) dtau
/// on the same refined graded meshes: g piecewise linear, the erfc
/// factor integrated per subinterval by 8-point Gauss-Legendre. The
/// same 5e-10 relative tolerance floor applies.
/// Requires c >= 0 (the erfc argument's numerator).
double product_integrate_erfc(const std::function<double(double)>& g, double t, double c,
                              const QuadratureControl& ctl = {});

} // namespace hetdiff
