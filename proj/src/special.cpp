#include "hetdiff/special.hpp"

#include <cmath>
#include <stdexcept>

namespace hetdiff {

double erfc(double z) { return std::erfc(z); }

double phi_kernel(double t, double x, double xi) {
    if (!(t > 0.0)) throw std::domain_error("phi_kernel: requires t > 0");
    const double norm = 0.5 / std::sqrt(M_PI * t);
    const double dm = x - xi;
    const double dp = x + xi;
    return norm * (std::exp(-dm * dm / (4.0 * t)) - std::exp(-dp * dp / (4.0 * t)));
}

} // namespace hetdiff
