#pragma once

#include <functional>
#include <variant>

namespace hetdiff {

/// Validation bounds for the diffusivity contrast eps.
struct EpsLimits {
    double lo = 1e-12;
    double hi = 10.0;
};

/// Parameters of the piecewise medium: diffusivity eps on x<0 and 1 on
/// x>0, with diffusion-law exponent q in [0,1] (q=0 gradient of the
/// density, q=1 gradient of the pressure, q=0.5 the symmetric law).
class ModelParams {
public:
    ModelParams(double eps, double q, EpsLimits limits = {});

    double eps() const noexcept { return eps_; }
    double q() const noexcept { return q_; }

    /// Contrast parameter sigma = eps^(1-2q) of the pressure equation.
    double sigma() const noexcept { return sigma_; }

private:
    double eps_;
    double q_;
    double sigma_;
};

/// sigma = eps^(1-2q); throws std::overflow_error if it is not finite
/// or underflows to zero.
double sigma_of(double eps, double q);

/// Piecewise diffusivity D(x); x = 0 is an invalid point.
double diffusivity(const ModelParams& params, double x);

/// Interface-flattening coordinate: y = x for x >= 0, eps^(-q) x for x < 0.
double x_to_y(const ModelParams& params, double x);

/// Inverse of x_to_y.
double y_to_x(const ModelParams& params, double y);

/// Pressure from density at a point: p = D(x)^q u; x = 0 is invalid.
double u_to_p(const ModelParams& params, double u_value, double x);

/// Density from pressure at a point: u = D(x)^(-q) p; x = 0 is invalid.
double p_to_u(const ModelParams& params, double p_value, double x);

/// Unit point mass at x0 > 0.
struct DiracInit {
    double x0;
};

/// Piecewise-constant density: a on x>0, b on x<0.
struct StepInit {
    double a;
    double b;
};

/// Density sampled from a callable; must be bounded and piecewise
/// continuous. It is only ever evaluated at x != 0, so a jump at the
/// interface is represented by the one-sided values near 0.
struct SampledInit {
    std::function<double(double)> phi;
};

using InitialData = std::variant<DiracInit, StepInit, SampledInit>;

/// Initial pressure over the flattened coordinate y.
struct PressureDirac {
    double y0;
};
struct PressureStep {
    double right_value; ///< value for y > 0
    double left_value;  ///< value for y < 0
};
struct PressureSampled {
    std::function<double(double)> p0; ///< evaluated at y != 0
};

using PressureData = std::variant<PressureDirac, PressureStep, PressureSampled>;

/// Transform a density initial datum to pressure space over y:
/// right branch unchanged, left branch scaled by eps^q and
/// reparameterized through x = eps^q y. A Dirac at x0 > 0 keeps its
/// location and unit weight.
PressureData initial_pressure(const ModelParams& params, const InitialData& init);

/// Evaluate a non-Dirac pressure datum at y != 0 (Dirac data has no
/// pointwise values; passing it throws std::invalid_argument).
double pressure_data_at(const PressureData& data, double y);

} // namespace hetdiff
