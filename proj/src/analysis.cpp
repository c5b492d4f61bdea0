#include "hetdiff/analysis.hpp"

#include "hetdiff/closedform.hpp"
#include "hetdiff/fdsolver.hpp"
#include "hetdiff/parallel.hpp"
#include "hetdiff/walker.hpp"

#include <cmath>
#include <stdexcept>

namespace hetdiff {

namespace {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rms = 0.0;
};

LineFit least_squares_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw std::domain_error("fit abscissas are degenerate");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

double closed_form_observable(const SweepSpec& spec, const ModelParams& params) {
    ClosedFormSolution sol(params, spec.init);
    if (spec.observable == Observable::boundary_value) {
        return sol.eval_pressure(spec.t_obs, 0.0);
    }
    return sol.flux_right(spec.t_obs);
}

double fd_observable(const SweepSpec& spec, const ModelParams& params, Form form) {
    const Extents trunc = truncation_extent(params, spec.t_obs, 1e-8);
    double right = trunc.right;
    double left = trunc.left;
    if (const auto* d = std::get_if<DiracInit>(&spec.init)) {
        right += d->x0;
    }
    if (form == Form::pressure_x) {
        left *= std::pow(params.eps(), params.q());
    }
    const Grid1D grid = make_uniform_grid(Extents{left, right}, spec.fd_delta);
    Scheme scheme;
    scheme.form = form;
    scheme.theta = 1.0;
    scheme.dt = spec.fd_delta * spec.fd_delta;
    const SolutionField field = solve(spec.init, params, scheme, spec.t_obs, grid);
    const BoundaryReadouts b = boundary_readouts(field, params);
    return spec.observable == Observable::boundary_value ? b.u_plus : b.du_plus;
}

double walker_observable(const SweepSpec& spec, const ModelParams& params) {
    if (params.eps() < 1e-2) {
        throw std::domain_error("walker sweeps need a contrast of at least 1e-2");
    }
    const WalkRule rule = walk_rule_from_params(params, spec.walker_delta);
    const Ensemble ens =
        simulate(rule, spec.init, spec.walker_particles, spec.t_obs, spec.seed);
    const double w =
        std::max(2.0 * spec.walker_delta, 0.05 * std::sqrt(spec.t_obs));
    const DensityEstimate est = density(ens, uniform_bins(0.0, 4.0 * w, 4));
    std::vector<double> centers(4);
    for (std::size_t i = 0; i < 4; ++i) {
        centers[i] = 0.5 * (est.edges[i] + est.edges[i + 1]);
    }
    const LineFit fit = least_squares_line(centers, est.values);
    return spec.observable == Observable::boundary_value ? fit.intercept : fit.slope;
}

double evaluate_point(const SweepSpec& spec, double eps) {
    const ModelParams params(eps, spec.q);
    switch (spec.source) {
    case SweepSource::closed_form:
        return closed_form_observable(spec, params);
    case SweepSource::fd_solver_y:
        return fd_observable(spec, params, Form::pressure_y);
    case SweepSource::fd_solver_x:
        return fd_observable(spec, params, Form::pressure_x);
    case SweepSource::walker:
        return walker_observable(spec, params);
    }
    throw std::logic_error("unknown sweep source");
}

} // namespace

std::vector<double> default_eps_grid() {
    std::vector<double> grid(50);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double frac = (static_cast<double>(i) + 0.5) / static_cast<double>(grid.size());
        grid[i] = std::pow(10.0, -4.0 + 4.0 * frac);
    }
    return grid;
}

SweepResult run_sweep(const SweepSpec& spec) {
    if (!(spec.t_obs > 0.0)) {
        throw std::domain_error("observation time must be positive");
    }
    if (spec.eps_grid.empty()) {
        throw std::domain_error("contrast grid is empty");
    }
    struct PointOutcome {
        bool ok = false;
        SweepRow row;
        std::string message;
    };
    std::vector<PointOutcome> outcomes(spec.eps_grid.size());
    parallel_for(spec.eps_grid.size(), [&](std::size_t i) {
        const double eps = spec.eps_grid[i];
        PointOutcome& out = outcomes[i];
        out.row.eps = eps;
        try {
            out.row.sigma = sigma_of(eps, spec.q);
            out.row.value = evaluate_point(spec, eps);
            out.ok = true;
        } catch (const std::exception& e) {
            out.message = e.what();
        }
    });
    SweepResult result;
    result.spec = spec;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].ok) {
            result.rows.push_back(outcomes[i].row);
        } else {
            result.failures.push_back(SweepFailure{spec.eps_grid[i], outcomes[i].message});
        }
    }
    return result;
}

PowerLawFit fit_power_law(const SweepResult& sweep, const FitWindow& window) {
    if (!(window.eps_min > 0.0 && window.eps_max > window.eps_min)) {
        throw std::domain_error("fit window must satisfy 0 < eps_min < eps_max");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const SweepRow& row : sweep.rows) {
        if (row.eps < window.eps_min || row.eps > window.eps_max) {
            continue;
        }
        if (!(row.value > 0.0) || !std::isfinite(row.value)) {
            continue;
        }
        xs.push_back(std::log(row.eps));
        ys.push_back(std::log(row.value));
    }
    if (xs.size() < 5) {
        throw std::domain_error("need at least 5 positive points inside the fit window");
    }
    const LineFit line = least_squares_line(xs, ys);
    PowerLawFit fit;
    fit.exponent = line.slope;
    fit.prefactor = std::exp(line.intercept);
    fit.window = window;
    fit.residual = line.rms;
    fit.points_used = xs.size();
    return fit;
}

std::vector<ExponentPoint> exponent_curve(const std::vector<double>& q_grid,
                                          const SweepSpec& base, const FitWindow& window) {
    if (q_grid.empty()) {
        throw std::domain_error("q grid is empty");
    }
    for (double q : q_grid) {
        if (std::abs(q - 0.5) < 0.02) {
            throw std::domain_error("q grid must stay at least 0.02 away from 1/2");
        }
    }
    std::vector<ExponentPoint> points;
    points.reserve(q_grid.size());
    for (double q : q_grid) {
        SweepSpec spec = base;
        spec.q = q;
        spec.observable =
            q > 0.5 ? Observable::boundary_value : Observable::boundary_slope;
        const SweepResult sweep = run_sweep(spec);
        const PowerLawFit fit = fit_power_law(sweep, window);
        ExponentPoint pt;
        pt.q = q;
        pt.observable = spec.observable;
        pt.exponent = fit.exponent;
        pt.residual = fit.residual;
        points.push_back(pt);
    }
    return points;
}

} // namespace hetdiff
