// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned
// below next to each check. Exits nonzero if any criterion fails.

#include "hetdiff/analysis.hpp"
#include "hetdiff/closedform.hpp"
#include "hetdiff/fdsolver.hpp"
#include "hetdiff/model.hpp"
#include "hetdiff/walker.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

using namespace hetdiff;

namespace {

int g_failures = 0;

void report(int index, bool pass, const std::string& detail) {
    std::printf("AC%d %s %s\n", index, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++g_failures;
    }
}

void info(const std::string& detail) {
    std::printf("INFO %s\n", detail.c_str());
    std::fflush(stdout);
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) /
                                    static_cast<double>(n - 1));
    }
    return out;
}

std::vector<double> log_midpoints(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::pow(10.0, a + (b - a) * (static_cast<double>(i) + 0.5) /
                                    static_cast<double>(n));
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// --- criterion 1: one-sided fluxes satisfy sigma * flux_left = flux_right

void criterion_flux_continuity() {
    const double tol = 1e-8;
    double worst = 0.0;
    const std::vector<InitialData> data{DiracInit{1.0}, StepInit{1.0, 1.0}};
    for (const InitialData& init : data) {
        for (double eps : {1e-3, 1e-2, 1e-1}) {
            for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                ModelParams params(eps, q);
                ClosedFormSolution sol(params, init);
                for (double t : logspace(1e-3, 10.0, 9)) {
                    const double fr = sol.flux_right(t);
                    const double fl = sol.flux_left(t);
                    const double dev =
                        std::abs(params.sigma() * fl - fr) / (1.0 + std::abs(fr));
                    worst = std::max(worst, dev);
                }
            }
        }
    }
    report(1, worst <= tol,
           "flux continuity: worst |sigma*fl - fr|/(1+|fr|) = " + fmt(worst) +
               " (tol " + fmt(tol) + ")");
}

// --- criterion 2: forced-quadrature path against the point-mass formula

void criterion_quadrature_path() {
    const double tol = 1e-6;
    double worst = 0.0;
    const struct {
        double eps, q;
    } cases[] = {{1e-3, 0.25}, {1e-2, 0.6}, {1e-1, 0.9}};
    for (const auto& c : cases) {
        ModelParams params(c.eps, c.q);
        ClosedFormSolution quad(params, InitialData(DiracInit{1.0}),
                                ClosedFormSolution::Path::ForceQuadrature);
        const double s = std::sqrt(params.sigma());
        for (double t : {0.01, 0.1, 1.0}) {
            for (int k = -8; k <= 8; ++k) {
                // four diffusion lengths per side, each side in its own
                // length scale
                const double y = 0.5 * k * std::sqrt(t) * (k < 0 ? s : 1.0);
                const double exact = fundamental_solution(1.0, params, t, y);
                const double rel = std::abs(quad.eval_pressure(t, y) - exact) /
                                   std::abs(exact);
                worst = std::max(worst, rel);
            }
        }
    }
    report(2, worst <= tol,
           "quadrature path vs point-mass formula: worst rel = " + fmt(worst) +
               " (tol " + fmt(tol) + ")");
}

// --- criterion 3: q = 1/2 collapses to the heat kernel independently of eps

void criterion_symmetric_reduction() {
    const double tol = 1e-10;
    ClosedFormSolution first(ModelParams(0.3, 0.5), InitialData(DiracInit{1.0}));
    ClosedFormSolution second(ModelParams(0.7, 0.5), InitialData(DiracInit{1.0}));
    const double pi = std::acos(-1.0);
    double worst = 0.0;
    bool identical = true;
    for (double t : {0.01, 0.25, 1.0}) {
        for (double y : {-1.5, -0.6, -0.1, 0.0, 0.3, 0.9, 1.7, 2.5}) {
            const double gauss =
                std::exp(-(y - 1.0) * (y - 1.0) / (4.0 * t)) / (2.0 * std::sqrt(pi * t));
            const double a = first.eval_pressure(t, y);
            const double b = second.eval_pressure(t, y);
            worst = std::max(worst, std::abs(a - gauss) / (1.0 + gauss));
            identical = identical && (a == b);
        }
    }
    report(3, worst <= tol && identical,
           "symmetric law: worst kernel deviation = " + fmt(worst) + " (tol " + fmt(tol) +
               "), bit-identical across eps = " + (identical ? "yes" : "no"));
}

// --- criterion 4: FD step accuracy and spatial order

double fd_step_error(const ModelParams& params, double delta, double t) {
    Scheme scheme;
    scheme.form = Form::pressure_y;
    scheme.theta = 1.0;
    scheme.dt = delta * delta;
    const Grid1D grid = make_uniform_grid(truncation_extent(params, t, 1e-8), delta);
    const SolutionField field = solve(StepInit{1.0, 1.0}, params, scheme, t, grid);
    double worst = 0.0;
    for (std::size_t i = grid.interface_index(); i < grid.size(); ++i) {
        const double exact =
            step_solution(1.0, 1.0, params, field.times.back(), grid.center(i));
        worst = std::max(worst, std::abs(field.values.back()[i] - exact));
    }
    return worst;
}

void criterion_fd_step() {
    ModelParams params(0.25, 0.75);
    const double t = 0.01;
    std::vector<double> errors;
    for (double delta : {0.008, 0.004, 0.002}) {
        errors.push_back(fd_step_error(params, delta, t));
    }
    const double order = std::log2(errors[1] / errors[2]);
    const bool pass = errors[2] <= 1e-3 && order >= 1.8;
    report(4, pass,
           "FD step run: Linf(y>0) = " + fmt(errors[2]) + " (tol 1e-3), order = " +
               fmt(order) + " (min 1.8)");
}

// --- criterion 5: fitted decay exponents of the interface observables

double sweep_exponent(double q, const std::vector<double>& grid, Observable obs,
                      double t_obs, const InitialData& init) {
    SweepSpec spec;
    spec.q = q;
    spec.eps_grid = grid;
    spec.source = SweepSource::closed_form;
    spec.observable = obs;
    spec.t_obs = t_obs;
    spec.init = init;
    const SweepResult sweep = run_sweep(spec);
    return fit_power_law(sweep, {grid.front(), grid.back()}).exponent;
}

void criterion_decay_exponents() {
    const std::vector<double> window = log_midpoints(1e-6, 1e-3, 50);
    const std::vector<double> deep = log_midpoints(1e-11, 1e-8, 50);
    bool pass = true;
    std::ostringstream detail;
    detail << "exponent fits over [1e-6,1e-3] (tol 0.02):";
    for (double q : {0.6, 0.75, 0.9, 0.1, 0.25, 0.4}) {
        const Observable obs =
            q > 0.5 ? Observable::boundary_value : Observable::boundary_slope;
        const double k = sweep_exponent(q, window, obs, 0.01, DiracInit{1.0});
        const double dev = std::abs(k - std::abs(q - 0.5));
        pass = pass && dev <= 0.02;
        detail << " q=" << q << " k=" << fmt(k) << (dev <= 0.02 ? "" : "(off)");
        const double deep_k = sweep_exponent(q, deep, obs, 0.01, DiracInit{1.0});
        info("AC5 deep-window [1e-11,1e-8] fit: q=" + fmt(q) + " k=" + fmt(deep_k) +
             " dev=" + fmt(std::abs(deep_k - std::abs(q - 0.5))));
    }

    const std::vector<double> full = default_eps_grid();
    const double k_step =
        sweep_exponent(0.9, full, Observable::boundary_value, 0.01, StepInit{1.0, 1.0});
    const bool step_ok = std::abs(k_step - 0.39) <= 0.05;
    pass = pass && step_ok;
    detail << "; full-window step q=0.9 k=" << fmt(k_step) << " (0.39+-0.05)";

    const InitialData wave = SampledInit{[](double x) { return 1.0 + std::sin(x); }};
    const double k_wave =
        sweep_exponent(0.1, full, Observable::boundary_slope, 0.1, wave);
    const bool wave_ok = std::abs(k_wave - 0.34) <= 0.05;
    pass = pass && wave_ok;
    detail << "; full-window 1+sin q=0.1 k=" << fmt(k_wave) << " (0.34+-0.05)";

    report(5, pass, detail.str());
}

// --- criterion 6: boundary-condition dichotomy along a dyadic contrast ladder

void criterion_dichotomy() {
    const double t = 0.1;
    const double x0 = 1.0;
    const double pi = std::acos(-1.0);
    std::ostringstream detail;
    bool pass = true;

    for (double q : {0.1, 0.9}) {
        std::vector<double> values;
        std::vector<double> slopes;
        for (int k = 1; k <= 17; ++k) {
            const double eps = std::ldexp(1.0, -k);
            ModelParams params(eps, q);
            ClosedFormSolution sol(params, InitialData(DiracInit{x0}));
            values.push_back(sol.eval_pressure(t, 0.0));
            slopes.push_back(sol.flux_right(t));
        }
        bool value_monotone = true;
        bool slope_monotone = true;
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (q < 0.5) {
                value_monotone = value_monotone && values[i] > values[i - 1];
                slope_monotone = slope_monotone && slopes[i] < slopes[i - 1];
            } else {
                value_monotone = value_monotone && values[i] < values[i - 1];
                slope_monotone = slope_monotone && slopes[i] > slopes[i - 1];
            }
        }
        if (q < 0.5) {
            // reflecting limit: value approaches the free half-line trace,
            // slope dies out
            const double limit = std::exp(-x0 * x0 / (4.0 * t)) / std::sqrt(pi * t);
            const bool ok = value_monotone && slope_monotone &&
                            std::abs(values.back() / limit - 1.0) <= 0.02 &&
                            slopes.back() <= 0.03 * slopes.front();
            pass = pass && ok;
            detail << "q=0.1: value->" << fmt(values.back()) << " (limit " << fmt(limit)
                   << "), slope ratio " << fmt(slopes.back() / slopes.front());
        } else {
            // absorbing limit: value dies out, slope approaches the
            // free odd-extension gradient
            const double limit = x0 * std::exp(-x0 * x0 / (4.0 * t)) /
                                 (2.0 * std::sqrt(pi * t) * t);
            const bool ok = value_monotone && slope_monotone &&
                            values.back() <= 0.03 * values.front() &&
                            std::abs(slopes.back() / limit - 1.0) <= 0.02;
            pass = pass && ok;
            detail << "; q=0.9: value ratio " << fmt(values.back() / values.front())
                   << ", slope->" << fmt(slopes.back()) << " (limit " << fmt(limit)
                   << ")";
        }
    }
    report(6, pass, "dichotomy on dyadic ladder: " + detail.str());
}

// --- criterion 7: conservation of the original-coordinate form

void criterion_conservation() {
    ModelParams params(0.25, 0.75);
    const double eq = std::pow(params.eps(), params.q());

    Scheme scheme;
    scheme.form = Form::pressure_x;
    scheme.theta = 1.0;
    // conservation is structural (telescoping fluxes), so the measured
    // drift is tridiagonal-solve roundoff accumulating per step; a
    // moderate step count keeps that below the criterion scale
    scheme.dt = 1e-3;
    Extents ext = truncation_extent(params, 0.1, 1e-8);
    ext.left *= eq;
    const Grid1D grid = make_uniform_grid(ext, 0.01);
    const SolutionField field = solve(StepInit{1.0, 0.5}, params, scheme, 0.1, grid);
    const double m0 = total_mass(field, params, 0);
    const double m1 = total_mass(field, params, field.times.size() - 1);
    const double rate = std::abs(m1 - m0) / (field.times.back() - field.times.front());
    const bool conserved = rate <= 1e-12 * std::max(1.0, std::abs(m0));

    Scheme dscheme;
    dscheme.form = Form::pressure_x;
    dscheme.theta = 1.0;
    dscheme.dt = 2.5e-5;
    Extents dext = truncation_extent(params, 1.0, 1e-8);
    dext.left *= eq;
    dext.right += 1.0;
    const Grid1D dgrid = make_uniform_grid(dext, 0.005);
    const SolutionField dirac =
        solve(DiracInit{1.0}, params, dscheme, 1.0, dgrid, {0.01, 0.1});
    double worst = 0.0;
    for (std::size_t i = dirac.times.size() - 3; i < dirac.times.size(); ++i) {
        worst = std::max(worst, std::abs(total_mass(dirac, params, i) - 1.0));
    }
    report(7, conserved && worst <= 1e-6,
           "x-form conservation: drift rate " + fmt(rate) +
               " (tol 1e-12/unit time), point-mass total within " + fmt(worst) +
               " of 1 (tol 1e-6)");
}

// --- criterion 8: pressure continuity read from the x-form density

void criterion_pressure_continuity() {
    ModelParams params(0.0625, 0.9);
    const double eq = std::pow(params.eps(), params.q());
    Scheme scheme;
    scheme.form = Form::pressure_x;
    scheme.theta = 1.0;
    scheme.dt = 4e-6;
    Extents ext = truncation_extent(params, 0.01, 1e-8);
    ext.left *= eq;
    const Grid1D grid = make_uniform_grid(ext, 0.002);
    const SolutionField field = solve(StepInit{1.0, 0.5}, params, scheme, 0.01, grid);
    const BoundaryReadouts rd = boundary_readouts(field, params);
    const double rel = std::abs(eq * rd.u_minus - rd.u_plus) / std::abs(rd.u_plus);
    report(8, rel <= 1e-3,
           "x-form pressure continuity: |eps^q u(0-) - u(0+)|/|u(0+)| = " + fmt(rel) +
               " (tol 1e-3)");
}

// --- criterion 9: one-sided curvatures match the interface derivative

void criterion_curvature() {
    ModelParams params(0.25, 0.75);
    ClosedFormSolution sol(params, InitialData(DiracInit{1.0}));
    const CurvatureIdentity id = sol.second_derivative_identity(0.05);
    const double rel = std::max(std::abs(id.left / id.hprime - 1.0),
                                std::abs(id.right / id.hprime - 1.0));
    report(9, rel <= 1e-4,
           "curvature identity: worst one-sided relative deviation = " + fmt(rel) +
               " (tol 1e-4, h'(t) = " + fmt(id.hprime) + ")");
}

// --- criterion 10: walker densities against the exact profiles

double gaussian_bin_average(double a, double b, double x0, double t) {
    const double s = std::sqrt(4.0 * t);
    return 0.5 * (std::erf((b - x0) / s) - std::erf((a - x0) / s)) / (b - a);
}

double walker_l1_homogeneous(std::size_t n, double delta, std::uint64_t seed) {
    const double T = 0.1;
    const WalkRule rule = walk_rule_from_params(ModelParams(1.0, 0.5), delta);
    const Ensemble ens = simulate(rule, DiracInit{1.0}, n, T, seed);
    const double w = 4.0 * delta;
    const std::size_t bins = static_cast<std::size_t>(std::lround(5.76 / w));
    // edges sit at half-integer multiples of delta from the start, so
    // lattice positions fall strictly inside bins instead of rounding
    // across edges
    const DensityEstimate est = density(
        ens, uniform_bins(1.0 - 2.88 + 0.5 * delta, 1.0 + 2.88 + 0.5 * delta, bins));
    double l1 = 0.0;
    for (std::size_t i = 0; i < est.values.size(); ++i) {
        const double a = est.edges[i];
        const double b = est.edges[i + 1];
        l1 += std::abs(est.values[i] - gaussian_bin_average(a, b, 1.0, T)) * (b - a);
    }
    return l1;
}

double walker_l1_hetero(double q, std::uint64_t seed) {
    const double T = 0.1;
    ModelParams params(0.25, q);
    const WalkRule rule = walk_rule_from_params(params, 0.01);
    const Ensemble ens = simulate(rule, DiracInit{1.0}, 1000000, T, seed);
    // half-delta edge offset keeps right-side lattice positions strictly
    // inside bins
    const DensityEstimate est = density(ens, uniform_bins(-1.595, 3.885, 137));
    ClosedFormSolution sol(params, InitialData(DiracInit{1.0}));
    double l1 = 0.0;
    for (std::size_t i = 0; i < est.values.size(); ++i) {
        const double a = est.edges[i];
        const double b = est.edges[i + 1];
        const double nudge = 1e-9 * (b - a);
        const double avg = (sol.eval_density(T, a + nudge) +
                            4.0 * sol.eval_density(T, 0.5 * (a + b)) +
                            sol.eval_density(T, b - nudge)) /
                           6.0;
        l1 += std::abs(est.values[i] - avg) * (b - a);
    }
    return l1;
}

void criterion_walker() {
    const std::uint64_t seed = 20260816;
    const double hom = walker_l1_homogeneous(1000000, 0.01, seed);
    const double het_low = walker_l1_hetero(0.1, seed + 1);
    const double het_high = walker_l1_hetero(0.9, seed + 2);

    const double rung0 = walker_l1_homogeneous(62500, 0.04, seed + 3);
    const double rung1 = walker_l1_homogeneous(250000, 0.02, seed + 4);
    const double rung2 = walker_l1_homogeneous(1000000, 0.01, seed + 5);
    const bool ladder = rung0 > rung1 && rung1 > rung2;

    const bool pass = hom <= 0.05 && het_low <= 0.08 && het_high <= 0.08 && ladder;
    report(10, pass,
           "walker L1: homogeneous " + fmt(hom) + " (tol 0.05), eps=0.25 q=0.1 " +
               fmt(het_low) + ", q=0.9 " + fmt(het_high) + " (tol 0.08), ladder " +
               fmt(rung0) + " > " + fmt(rung1) + " > " + fmt(rung2) +
               (ladder ? " monotone" : " NOT monotone"));
}

} // namespace

int main() {
    criterion_flux_continuity();
    criterion_quadrature_path();
    criterion_symmetric_reduction();
    criterion_fd_step();
    criterion_decay_exponents();
    criterion_dichotomy();
    criterion_conservation();
    criterion_pressure_continuity();
    criterion_curvature();
    criterion_walker();
    std::printf("%d of 10 criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
