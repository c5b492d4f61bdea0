#pragma once

#include "hetdiff/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hetdiff {

/// Which machinery produces the observable for a sweep.
enum class SweepSource {
    closed_form,
    fd_solver_y,
    fd_solver_x,
    walker,
};

/// Which boundary quantity is recorded at the observation time.
enum class Observable {
    boundary_value,
    boundary_slope,
};

/// Default grid of conductivity contrasts: 50 points log-spaced
/// across [1e-4, 1], placed at cell midpoints.
std::vector<double> default_eps_grid();

/// Everything needed to run one small-contrast sweep at fixed q.
struct SweepSpec {
    double q = 0.5;
    std::vector<double> eps_grid = default_eps_grid();
    SweepSource source = SweepSource::closed_form;
    Observable observable = Observable::boundary_value;
    double t_obs = 0.01;
    InitialData init = DiracInit{1.0};
    double fd_delta = 0.002;
    double walker_delta = 0.02;
    std::size_t walker_particles = 200000;
    std::uint64_t seed = 20260816;
};

struct SweepRow {
    double eps = 0.0;
    double sigma = 0.0;
    double value = 0.0;
};

struct SweepFailure {
    double eps = 0.0;
    std::string message;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
    std::vector<SweepFailure> failures;
};

/// Evaluates the requested observable across the contrast grid.
/// Per-point failures are recorded in the result, not rethrown.
SweepResult run_sweep(const SweepSpec& spec);

struct FitWindow {
    double eps_min = 0.0;
    double eps_max = 0.0;
};

struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    FitWindow window;
    double residual = 0.0;
    std::size_t points_used = 0;
};

/// Least-squares fit of value ~ prefactor * eps^exponent over the
/// rows whose eps lies inside the window and whose value is positive.
PowerLawFit fit_power_law(const SweepResult& sweep, const FitWindow& window);

struct ExponentPoint {
    double q = 0.0;
    Observable observable = Observable::boundary_value;
    double exponent = 0.0;
    double residual = 0.0;
};

/// Fitted decay exponent across a grid of q values, picking the
/// observable that stays informative on each side of q = 1/2.
std::vector<ExponentPoint> exponent_curve(const std::vector<double>& q_grid,
                                          const SweepSpec& base, const FitWindow& window);

} // namespace hetdiff
