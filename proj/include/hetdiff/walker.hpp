#pragma once

#include "hetdiff/model.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hetdiff {

/// Position-jump rule of the heterogeneous walk: jump length ell*delta
/// with ell = eta left of the interface and 1 right of it, sojourn time
/// tau*delta^2 with tau = zeta/2 on the left and 1/2 on the right.
/// Positions within interface_band() of 0 are the interface point
/// itself: it sojourns at the right-side rate and resolves its jump by
/// direction, +delta up and -eta*delta down, staying on the two-sided
/// lattice. The derived diffusivities are eta^2/zeta on the left and
/// exactly 1 on the right, so their ratio is the model contrast eps.
struct WalkRule {
    double delta;
    double eta;
    double zeta;

    /// Half-width of the tie band around x = 0: far below either jump
    /// length, far above the rounding dither of lattice positions.
    double interface_band() const noexcept {
        return 1e-6 * delta * (eta < 1.0 ? eta : 1.0);
    }
    bool left_of_interface(double x) const noexcept { return x < -interface_band(); }
    bool at_interface(double x) const noexcept {
        return x >= -interface_band() && x <= interface_band();
    }
    double jump(double x, bool up) const noexcept {
        if (left_of_interface(x) || (at_interface(x) && !up)) return eta * delta;
        return delta;
    }
    double sojourn(double x) const noexcept {
        return 0.5 * (left_of_interface(x) ? zeta : 1.0) * delta * delta;
    }
    double diffusivity_left() const noexcept { return eta * eta / zeta; }
};

/// Rule matching a parameter set: eta = eps^(1-q), zeta = eps^(1-2q).
WalkRule walk_rule_from_params(const ModelParams& params, double delta);

/// Final particle states of a simulated ensemble. `mass` is the total
/// density mass the ensemble represents (1 for Dirac data, the
/// truncated profile integral otherwise).
struct Ensemble {
    std::vector<double> positions;
    std::vector<double> clocks;
    std::uint64_t seed = 0;
    double horizon = 0.0;
    double mass = 1.0;
};

/// Run n_particles independent walkers to horizon T: each waits its
/// local sojourn time and jumps its local length left or right with
/// probability 1/2, using departure-point values; the recorded position
/// is the one at the last jump time <= T. Deterministic given seed and
/// independent of worker count (per-particle counter-based RNG streams).
/// Step and Sampled data are first sampled from the profile truncated
/// to a span wide enough that the cut cannot reach the interface region
/// within the horizon.
Ensemble simulate(const WalkRule& rule, const InitialData& init, std::size_t n_particles,
                  double T, std::uint64_t seed);

/// Normalized histogram of the ensemble at its horizon: values are
/// density estimates (count * mass / (n * bin width)) over the given
/// strictly increasing bin edges.
struct DensityEstimate {
    std::vector<double> edges;
    std::vector<double> values;
    double horizon = 0.0;
};

DensityEstimate density(const Ensemble& ens, const std::vector<double>& edges);

/// Uniform bin edges: n bins over [lo, hi].
std::vector<double> uniform_bins(double lo, double hi, std::size_t n);

/// Fraction of particles at x < 0.
double left_mass_fraction(const Ensemble& ens);

} // namespace hetdiff
