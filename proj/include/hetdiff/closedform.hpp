#pragma once

#include "hetdiff/model.hpp"
#include "hetdiff/quadrature.hpp"

namespace hetdiff {

/// Exact pressure for a unit density point mass at x0 > 0 (pressure
/// Dirac at y0 = x0): a full-line Gaussian plus a reflected image on
/// y > 0, a single stretched Gaussian on y <= 0. At y = 0 both branches
/// give the common interface value. Requires t > 0.
double fundamental_solution(double x0, const ModelParams& params, double t, double y);

/// Exact pressure for step density data (a on x > 0, b on x < 0):
/// each side relaxes through a complementary error function toward the
/// constant interface value (a + sqrt(eps) b) / (1 + sqrt(sigma)).
/// Requires t > 0.
double step_solution(double a, double b, const ModelParams& params, double t, double y);

/// Interface pressure trace h(t) and its time derivative. Dirac and
/// Step data use the exact formulas; Sampled data is integrated against
/// the Gaussian averaging kernel with tail truncation.
class InterfaceValue {
public:
    InterfaceValue(const ModelParams& params, PressureData init, QuadratureControl ctl = {});

    const ModelParams& params() const noexcept { return params_; }
    const PressureData& data() const noexcept { return init_; }

    /// Interface pressure h(t) for t > 0.
    double value(double t) const;

    /// d/dt of value(t) for t > 0.
    double derivative(double t) const;

    /// One-sided limit h(0+): 0 for Dirac data, the exact constant for
    /// Step data, value(1e-8) for Sampled data.
    double value_at_zero_plus() const;

private:
    ModelParams params_;
    PressureData init_;
    QuadratureControl ctl_;
};

/// Free-function forms of the interface trace.
double interface_value(const PressureData& init, const ModelParams& params, double t);
double interface_value_derivative(const PressureData& init, const ModelParams& params, double t);

/// One-sided second derivatives of the pressure at the interface and
/// the analytic time derivative of the interface value they must both
/// equal.
struct CurvatureIdentity {
    double left;   ///< sigma * p_yy(t, 0-), finite-difference ladder estimate
    double right;  ///< p_yy(t, 0+), finite-difference ladder estimate
    double hprime; ///< d/dt interface value, analytic
};

/// Evaluator for the exact pressure solution over the flattened
/// coordinate y, with one-sided interface fluxes. Pure after
/// construction; safe for concurrent evaluation.
class ClosedFormSolution {
public:
    /// Auto dispatches Dirac and Step data to the explicit solution
    /// formulas; ForceQuadrature runs the integral representation for
    /// every datum (testing hook for cross-validation).
    enum class Path { Auto, ForceQuadrature };

    ClosedFormSolution(const ModelParams& params, PressureData init,
                       Path path = Path::Auto, QuadratureControl ctl = {});

    /// Convenience: density-space initial data, transformed through
    /// initial_pressure.
    ClosedFormSolution(const ModelParams& params, const InitialData& init,
                       Path path = Path::Auto, QuadratureControl ctl = {});

    const ModelParams& params() const noexcept { return params_; }
    const InterfaceValue& interface() const noexcept { return iv_; }

    /// Pressure p(t, y) for t > 0. At y = 0 returns the interface value.
    double eval_pressure(double t, double y) const;

    /// Density u(t, x) for t > 0, x != 0.
    double eval_density(double t, double x) const;

    /// One-sided pressure gradient at the interface, right side:
    /// d/dy p(t, 0+). The memory integral is evaluated by product
    /// integration of the interface derivative against the exact
    /// moments of the (t - tau)^(-1/2) weight.
    double flux_right(double t) const;

    /// One-sided pressure gradient at the interface, left side:
    /// d/dy p(t, 0-). Satisfies sigma * flux_left = flux_right.
    double flux_left(double t) const;

    /// Finite-difference ladder estimates of the one-sided second
    /// derivatives at the interface against the analytic interface
    /// derivative.
    CurvatureIdentity second_derivative_identity(double t) const;

    /// Total density mass integral of u over x (equals the integral of
    /// p over y). Supported for Dirac data only.
    double total_mass(double t) const;

private:
    double quadrature_pressure(double t, double y) const;
    double memory_term(double t, double w) const;
    double abel_memory(double t) const;
    double convolution(double t, double w, bool right_side) const;
    double data_moment(double t, bool right_side) const;
    double curvature_ladder(double t, double spacing, double side) const;

    ModelParams params_;
    PressureData init_;
    Path path_;
    QuadratureControl ctl_;
    InterfaceValue iv_;
};

} // namespace hetdiff
