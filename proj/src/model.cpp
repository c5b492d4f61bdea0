#include "hetdiff/model.hpp"

#include "hetdiff/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hetdiff {

ModelParams::ModelParams(double eps, double q, EpsLimits limits) : eps_(eps), q_(q) {
    if (!std::isfinite(eps) || eps <= limits.lo || eps >= limits.hi)
        throw std::domain_error("ModelParams: eps = " + std::to_string(eps) +
                                " outside (" + std::to_string(limits.lo) + ", " +
                                std::to_string(limits.hi) + ")");
    if (!std::isfinite(q) || q < 0.0 || q > 1.0)
        throw std::domain_error("ModelParams: q = " + std::to_string(q) + " outside [0, 1]");
    sigma_ = sigma_of(eps, q);
}

double sigma_of(double eps, double q) {
    double s = std::pow(eps, 1.0 - 2.0 * q);
    if (!std::isfinite(s) || s <= 0.0)
        throw std::overflow_error("sigma_of: eps^(1-2q) not representable for eps = " +
                                  std::to_string(eps) + ", q = " + std::to_string(q));
    return s;
}

double diffusivity(const ModelParams& params, double x) {
    if (x == 0.0) throw invalid_point_error("diffusivity: undefined at the interface x = 0");
    return x < 0.0 ? params.eps() : 1.0;
}

double x_to_y(const ModelParams& params, double x) {
    if (x >= 0.0) return x;
    return std::pow(params.eps(), -params.q()) * x;
}

double y_to_x(const ModelParams& params, double y) {
    if (y >= 0.0) return y;
    return std::pow(params.eps(), params.q()) * y;
}

double u_to_p(const ModelParams& params, double u_value, double x) {
    if (x == 0.0) throw invalid_point_error("u_to_p: undefined at the interface x = 0");
    if (x > 0.0) return u_value;
    return std::pow(params.eps(), params.q()) * u_value;
}

double p_to_u(const ModelParams& params, double p_value, double x) {
    if (x == 0.0) throw invalid_point_error("p_to_u: undefined at the interface x = 0");
    if (x > 0.0) return p_value;
    return std::pow(params.eps(), -params.q()) * p_value;
}

PressureData initial_pressure(const ModelParams& params, const InitialData& init) {
    const double eq = std::pow(params.eps(), params.q());
    if (const auto* d = std::get_if<DiracInit>(&init)) {
        if (!(d->x0 > 0.0))
            throw std::domain_error("initial_pressure: Dirac location must satisfy x0 > 0");
        return PressureDirac{d->x0};
    }
    if (const auto* s = std::get_if<StepInit>(&init)) {
        return PressureStep{s->a, eq * s->b};
    }
    const auto& phi = std::get<SampledInit>(init).phi;
    if (!phi) throw std::domain_error("initial_pressure: sampled datum has no callable");
    return PressureSampled{[phi, eq](double y) {
        return y > 0.0 ? phi(y) : eq * phi(eq * y);
    }};
}

double pressure_data_at(const PressureData& data, double y) {
    if (std::holds_alternative<PressureDirac>(data))
        throw std::invalid_argument("pressure_data_at: Dirac datum has no pointwise values");
    if (y == 0.0)
        throw invalid_point_error("pressure_data_at: undefined at the interface y = 0");
    if (const auto* s = std::get_if<PressureStep>(&data))
        return y > 0.0 ? s->right_value : s->left_value;
    return std::get<PressureSampled>(data).p0(y);
}

} // namespace hetdiff
