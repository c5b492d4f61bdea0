#include "hetdiff/analysis.hpp"
#include "hetdiff/closedform.hpp"
#include "hetdiff/errors.hpp"
#include "hetdiff/fdsolver.hpp"
#include "hetdiff/model.hpp"
#include "hetdiff/table.hpp"
#include "hetdiff/version.hpp"
#include "hetdiff/walker.hpp"

#include "expr.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace {

using namespace hetdiff;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

double parse_strict_double(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty()) {
        throw std::invalid_argument("malformed " + what + ": '" + text + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t at = text.find(sep, start);
        if (at == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, at - start));
        start = at + 1;
    }
}

InitialData parse_init(const std::string& text) {
    if (text.rfind("dirac:", 0) == 0) {
        return DiracInit{parse_strict_double(text.substr(6), "dirac location")};
    }
    if (text.rfind("step:", 0) == 0) {
        const auto parts = split(text.substr(5), ':');
        if (parts.size() != 2) {
            throw std::invalid_argument("step data needs the form step:a:b");
        }
        return StepInit{parse_strict_double(parts[0], "step value"),
                        parse_strict_double(parts[1], "step value")};
    }
    auto expr = cli::Expression::parse(text);
    return SampledInit{expr.as_function()};
}

struct Range3 {
    double lo;
    double hi;
    std::size_t n;
};

Range3 parse_range3(const std::string& text, const std::string& what) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw std::invalid_argument(what + " needs the form lo:hi:count");
    }
    Range3 r;
    r.lo = parse_strict_double(parts[0], what);
    r.hi = parse_strict_double(parts[1], what);
    const double n = parse_strict_double(parts[2], what);
    if (!(n >= 1.0) || n != std::floor(n)) {
        throw std::invalid_argument(what + " count must be a positive integer");
    }
    r.n = static_cast<std::size_t>(n);
    return r;
}

std::pair<double, double> parse_range2(const std::string& text, const std::string& what) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) {
        throw std::invalid_argument(what + " needs the form lo:hi");
    }
    return {parse_strict_double(parts[0], what), parse_strict_double(parts[1], what)};
}

/// Log-spaced midpoint grid over [lo, hi], matching the default sweep
/// grid when called with (1e-4, 1, 50).
std::vector<double> log_midpoint_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > lo) || n == 0) {
        throw std::invalid_argument("grid needs 0 < lo < hi and a positive count");
    }
    std::vector<double> grid(n);
    const double llo = std::log10(lo);
    const double lhi = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i) {
        const double frac = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        grid[i] = std::pow(10.0, llo + (lhi - llo) * frac);
    }
    return grid;
}

struct OutputOptions {
    std::string out;
    std::string format; // "", "csv", "json"
};

std::string resolved_format(const OutputOptions& opts) {
    if (!opts.format.empty()) {
        return opts.format;
    }
    const std::string& p = opts.out;
    if (p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0) {
        return "json";
    }
    return "csv";
}

/// Writes the table (and its sidecar manifest) atomically. The digest
/// recorded in the manifest covers the serialized table bytes.
void emit_output(OutputTable& table, RunManifest& manifest, const OutputOptions& opts,
                 std::chrono::steady_clock::time_point started) {
    const std::string format = resolved_format(opts);
    if (format != "csv" && format != "json") {
        throw std::invalid_argument("format must be csv or json");
    }
    const std::string serialized = format == "csv" ? table.to_csv() : table.to_json();
    manifest.output_digests.emplace_back(
        std::filesystem::path(opts.out).filename().string(),
        hex64(fnv1a64(serialized)));
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (format == "json") {
        write_text_atomic(opts.out, combined_json(manifest, table));
    } else {
        write_text_atomic(opts.out, serialized);
    }
    write_text_atomic(opts.out + ".manifest.json", manifest.to_json() + "\n");
    std::printf("wrote %s (%zu rows)\n", opts.out.c_str(), table.rows().size());
}

void add_param(RunManifest& m, const std::string& key, const std::string& value) {
    m.parameters.emplace_back(key, value);
}

void add_param(RunManifest& m, const std::string& key, double value) {
    m.parameters.emplace_back(key, format_compact(value));
}

std::string init_label(const InitialData& init) {
    if (const auto* d = std::get_if<DiracInit>(&init)) {
        return "dirac:" + format_compact(d->x0);
    }
    if (const auto* s = std::get_if<StepInit>(&init)) {
        return "step:" + format_compact(s->a) + ":" + format_compact(s->b);
    }
    return "expr";
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    std::string source = "closed";
    std::string init_text = "dirac:1";
    double eps = 0.0;
    double q = 0.0;
    std::vector<double> times;
    double dx = 0.002;
    double theta = 1.0;
    double dt = 0.0;
    double xmin = 0.0;
    double xmax = 0.0;
    bool have_xmin = false;
    bool have_xmax = false;
    std::size_t points = 401;
    std::string variable = "u";
    std::string coords = "x";
    OutputOptions output;
};

double nudged_density(const ClosedFormSolution& sol, double t, double x, double toward) {
    if (x == 0.0) {
        x = toward >= 0.0 ? 1e-14 : -1e-14;
    }
    return sol.eval_density(t, x);
}

int run_solve(const SolveArgs& args, RunManifest manifest,
              std::chrono::steady_clock::time_point started) {
    const ModelParams params(args.eps, args.q);
    const InitialData init = parse_init(args.init_text);
    std::vector<double> times = args.times;
    std::sort(times.begin(), times.end());
    if (times.empty() || !(times.front() > 0.0)) {
        throw std::invalid_argument("need at least one positive time");
    }
    const bool want_u = args.variable == "u";
    const bool want_x = args.coords == "x";
    if (!want_u && args.variable != "p") {
        throw std::invalid_argument("variable must be u or p");
    }
    if (!want_x && args.coords != "y") {
        throw std::invalid_argument("coords must be x or y");
    }

    add_param(manifest, "source", args.source);
    add_param(manifest, "init", init_label(init));
    add_param(manifest, "eps", args.eps);
    add_param(manifest, "q", args.q);
    for (double t : times) {
        add_param(manifest, "t", t);
    }
    add_param(manifest, "variable", args.variable);
    add_param(manifest, "coords", args.coords);

    OutputTable table({"t", args.coords, args.variable});
    table.set_metadata("command", "solve");
    table.set_metadata("source", args.source);
    table.set_metadata("init", init_label(init));
    table.set_metadata("eps", format_compact(args.eps));
    table.set_metadata("q", format_compact(args.q));
    table.set_metadata("variable", args.variable);
    table.set_metadata("coords", args.coords);

    const double t_max = times.back();
    if (args.source == "closed") {
        const ClosedFormSolution sol(params, init);
        double hi = 6.0 * std::sqrt(t_max) + 0.05;
        if (const auto* d = std::get_if<DiracInit>(&init)) {
            hi += d->x0;
        }
        double lo = -(6.0 * std::sqrt(std::max(args.eps, 1.0) * t_max) + 0.05);
        if (args.have_xmin) {
            lo = args.xmin;
        }
        if (args.have_xmax) {
            hi = args.xmax;
        }
        if (!(hi > lo) || args.points == 0) {
            throw std::invalid_argument("sampling range must be nonempty");
        }
        add_param(manifest, "xmin", lo);
        add_param(manifest, "xmax", hi);
        add_param(manifest, "points", static_cast<double>(args.points));
        for (double t : times) {
            for (std::size_t i = 0; i < args.points; ++i) {
                const double frac =
                    (static_cast<double>(i) + 0.5) / static_cast<double>(args.points);
                const double c = lo + (hi - lo) * frac;
                const double x = want_x ? c : y_to_x(params, c);
                double value;
                if (want_u) {
                    value = nudged_density(sol, t, x, 1.0);
                } else {
                    value = sol.eval_pressure(t, want_x ? x_to_y(params, c) : c);
                }
                table.add_row({t, c, value});
            }
        }
    } else if (args.source == "fd-y" || args.source == "fd-x") {
        const Form form = args.source == "fd-y" ? Form::pressure_y : Form::pressure_x;
        Extents ext = truncation_extent(params, t_max, 1e-8);
        if (const auto* d = std::get_if<DiracInit>(&init)) {
            ext.right += d->x0;
        }
        if (form == Form::pressure_x) {
            ext.left *= std::pow(args.eps, args.q);
        }
        const Grid1D grid = make_uniform_grid(ext, args.dx);
        Scheme scheme;
        scheme.form = form;
        scheme.theta = args.theta;
        scheme.dt = args.dt > 0.0 ? args.dt : args.dx * args.dx;
        add_param(manifest, "dx", args.dx);
        add_param(manifest, "theta", scheme.theta);
        add_param(manifest, "dt", scheme.dt);
        const SolutionField field = solve(init, params, scheme, t_max, grid, times);
        for (std::size_t k = 0; k < field.times.size(); ++k) {
            // the field always records the start state; emit it only when a
            // requested time falls on it
            if (field.times[k] + 0.5 * scheme.dt < times.front()) continue;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double c = grid.center(i);
                const double x = form == Form::pressure_x ? c : y_to_x(params, c);
                const double y = form == Form::pressure_x ? x_to_y(params, c) : c;
                const double p = field.values[k][i];
                const double value = want_u ? p_to_u(params, p, x) : p;
                table.add_row({field.times[k], want_x ? x : y, value});
            }
        }
    } else {
        throw std::invalid_argument("source must be closed, fd-y, or fd-x");
    }
    emit_output(table, manifest, args.output, started);
    return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    bool curve = false;
    double q = -1.0;
    bool have_q = false;
    std::string q_range;
    std::string observable; // "", "value", "slope"
    std::string source = "closed";
    double eps_min = 1e-4;
    double eps_max = 1.0;
    std::size_t eps_count = 50;
    double t = 0.0;
    bool have_t = false;
    std::string init_text; // empty means the per-observable default
    double dx = 0.002;
    double delta = 0.02;
    std::size_t particles = 200000;
    std::uint64_t seed = 20260816;
    std::string window;
    OutputOptions output;
};

SweepSource parse_source(const std::string& text) {
    if (text == "closed") {
        return SweepSource::closed_form;
    }
    if (text == "fd-y") {
        return SweepSource::fd_solver_y;
    }
    if (text == "fd-x") {
        return SweepSource::fd_solver_x;
    }
    if (text == "walker") {
        return SweepSource::walker;
    }
    throw std::invalid_argument("source must be closed, fd-y, fd-x, or walker");
}

void record_fit(OutputTable& table, RunManifest& manifest, const std::string& tag,
                const SweepResult& sweep, const FitWindow& window) {
    PowerLawFit fit;
    try {
        fit = fit_power_law(sweep, window);
    } catch (const std::domain_error& e) {
        throw accuracy_error(std::string("power-law fit (") + tag + "): " + e.what(), 5.0,
                             0.0);
    }
    table.set_metadata("fit_" + tag + "_k", format_compact(fit.exponent));
    table.set_metadata("fit_" + tag + "_c", format_compact(fit.prefactor));
    table.set_metadata("fit_" + tag + "_residual", format_compact(fit.residual));
    table.set_metadata("fit_" + tag + "_window",
                       format_compact(window.eps_min) + ":" + format_compact(window.eps_max));
    table.set_metadata("fit_" + tag + "_points", std::to_string(fit.points_used));
    add_param(manifest, "fit_" + tag + "_k", fit.exponent);
}

int run_sweep_cmd(const SweepArgs& args, RunManifest manifest,
                  std::chrono::steady_clock::time_point started) {
    SweepSpec base;
    base.source = parse_source(args.source);
    base.eps_grid = log_midpoint_grid(args.eps_min, args.eps_max, args.eps_count);
    base.fd_delta = args.dx;
    base.walker_delta = args.delta;
    base.walker_particles = args.particles;
    base.seed = args.seed;

    add_param(manifest, "source", args.source);
    add_param(manifest, "eps_min", args.eps_min);
    add_param(manifest, "eps_max", args.eps_max);
    add_param(manifest, "eps_count", static_cast<double>(args.eps_count));
    manifest.seed = args.seed;

    if (args.curve) {
        const Range3 r = parse_range3(args.q_range, "q range");
        std::vector<double> q_grid;
        std::size_t skipped = 0;
        for (std::size_t i = 0; i < r.n; ++i) {
            const double frac = (static_cast<double>(i) + 0.5) / static_cast<double>(r.n);
            const double q = r.lo + (r.hi - r.lo) * frac;
            if (std::abs(q - 0.5) < 0.02) {
                ++skipped;
            } else {
                q_grid.push_back(q);
            }
        }
        if (q_grid.empty()) {
            throw std::invalid_argument("q range leaves no usable points");
        }
        base.init = parse_init(args.init_text.empty() ? "step:1:1" : args.init_text);
        base.t_obs = args.have_t ? args.t : 0.01;
        FitWindow window{args.eps_min, args.eps_max};
        if (!args.window.empty()) {
            const auto [lo, hi] = parse_range2(args.window, "window");
            if (!(lo > 0.0 && hi > lo)) {
                throw std::invalid_argument("window needs 0 < lo < hi");
            }
            window = FitWindow{lo, hi};
        }
        add_param(manifest, "q_range", args.q_range);
        add_param(manifest, "init", init_label(base.init));
        add_param(manifest, "t", base.t_obs);
        std::vector<ExponentPoint> points;
        try {
            points = exponent_curve(q_grid, base, window);
        } catch (const std::domain_error& e) {
            throw accuracy_error(std::string("exponent curve: ") + e.what(), 5.0, 0.0);
        }
        OutputTable table({"q", "exponent", "residual", "observable_is_value"});
        table.set_metadata("command", "sweep");
        table.set_metadata("mode", "curve");
        table.set_metadata("source", args.source);
        table.set_metadata("init", init_label(base.init));
        table.set_metadata("t", format_compact(base.t_obs));
        table.set_metadata("window",
                           format_compact(window.eps_min) + ":" + format_compact(window.eps_max));
        if (skipped > 0) {
            table.set_metadata("skipped_near_half", std::to_string(skipped));
        }
        for (const ExponentPoint& pt : points) {
            table.add_row({pt.q, pt.exponent, pt.residual,
                           pt.observable == Observable::boundary_value ? 1.0 : 0.0});
        }
        emit_output(table, manifest, args.output, started);
        return 0;
    }

    if (!args.have_q) {
        throw std::invalid_argument("sweep needs --q (or --curve with --q-range)");
    }
    base.q = args.q;
    if (args.observable.empty()) {
        base.observable =
            args.q > 0.5 ? Observable::boundary_value : Observable::boundary_slope;
    } else if (args.observable == "value") {
        base.observable = Observable::boundary_value;
    } else if (args.observable == "slope") {
        base.observable = Observable::boundary_slope;
    } else {
        throw std::invalid_argument("observable must be value or slope");
    }
    base.t_obs = args.have_t
                     ? args.t
                     : (base.observable == Observable::boundary_value ? 0.01 : 0.1);
    base.init = parse_init(
        args.init_text.empty()
            ? (base.observable == Observable::boundary_value ? "step:1:1" : "dirac:1")
            : args.init_text);
    const std::string obs_name =
        base.observable == Observable::boundary_value ? "value" : "slope";
    add_param(manifest, "q", args.q);
    add_param(manifest, "observable", obs_name);
    add_param(manifest, "init", init_label(base.init));
    add_param(manifest, "t", base.t_obs);

    const SweepResult sweep = run_sweep(base);
    OutputTable table({"eps", "sigma", "value", "log10_eps", "log10_value"});
    table.set_metadata("command", "sweep");
    table.set_metadata("q", format_compact(args.q));
    table.set_metadata("observable", obs_name);
    table.set_metadata("source", args.source);
    table.set_metadata("t", format_compact(base.t_obs));
    table.set_metadata("init", init_label(base.init));
    std::size_t dropped = 0;
    for (const SweepRow& row : sweep.rows) {
        if (!(row.value > 0.0)) {
            ++dropped;
            continue;
        }
        table.add_row(
            {row.eps, row.sigma, row.value, std::log10(row.eps), std::log10(row.value)});
    }
    if (dropped > 0) {
        table.set_metadata("dropped_nonpositive", std::to_string(dropped));
    }
    if (!sweep.failures.empty()) {
        table.set_metadata("failed_points", std::to_string(sweep.failures.size()));
        table.set_metadata("first_failure", sweep.failures.front().message);
    }

    record_fit(table, manifest, "full", sweep, FitWindow{args.eps_min, args.eps_max});
    const double asym_hi = std::min(args.eps_max, 100.0 * args.eps_min);
    if (asym_hi > args.eps_min) {
        record_fit(table, manifest, "asymptotic", sweep, FitWindow{args.eps_min, asym_hi});
    }
    if (!args.window.empty()) {
        const auto [lo, hi] = parse_range2(args.window, "window");
        if (!(lo > 0.0 && hi > lo)) {
            throw std::invalid_argument("window needs 0 < lo < hi");
        }
        record_fit(table, manifest, "window", sweep, FitWindow{lo, hi});
    }
    emit_output(table, manifest, args.output, started);
    return 0;
}

// ---------------------------------------------------------------- walk

struct WalkArgs {
    double eps = 0.0;
    double q = 0.0;
    double delta = 0.01;
    std::size_t n = 1000000;
    double t = 0.1;
    std::uint64_t seed = 1;
    std::string init_text = "dirac:1";
    std::size_t bins = 0;
    std::string bin_range;
    OutputOptions output;
};

int run_walk(const WalkArgs& args, RunManifest manifest,
             std::chrono::steady_clock::time_point started) {
    const ModelParams params(args.eps, args.q);
    const InitialData init = parse_init(args.init_text);
    const WalkRule rule = walk_rule_from_params(params, args.delta);
    const Ensemble ens = simulate(rule, init, args.n, args.t, args.seed);

    double hi = 8.0 * std::sqrt(2.0 * args.t);
    double lo = -8.0 * std::sqrt(2.0 * std::max(rule.diffusivity_left(), 1.0) * args.t);
    if (const auto* d = std::get_if<DiracInit>(&init)) {
        hi += d->x0;
    }
    if (!args.bin_range.empty()) {
        const auto [blo, bhi] = parse_range2(args.bin_range, "bin range");
        lo = blo;
        hi = bhi;
    }
    std::size_t nbins = args.bins;
    if (nbins == 0) {
        nbins = static_cast<std::size_t>(std::ceil((hi - lo) / (4.0 * args.delta)));
        nbins = std::max<std::size_t>(nbins, 10);
    }
    const DensityEstimate est = density(ens, uniform_bins(lo, hi, nbins));

    const ClosedFormSolution sol(params, init);
    const double lmf = left_mass_fraction(ens);
    std::vector<double> cf(nbins);
    double l1 = 0.0;
    for (std::size_t i = 0; i < nbins; ++i) {
        const double a = est.edges[i];
        const double b = est.edges[i + 1];
        const double w = b - a;
        const double fa = nudged_density(sol, args.t, a + 1e-9 * w, 1.0);
        const double fm = nudged_density(sol, args.t, 0.5 * (a + b), 1.0);
        const double fb = nudged_density(sol, args.t, b - 1e-9 * w, -1.0);
        cf[i] = (fa + 4.0 * fm + fb) / 6.0;
        l1 += std::abs(est.values[i] - cf[i]) * w;
    }

    add_param(manifest, "eps", args.eps);
    add_param(manifest, "q", args.q);
    add_param(manifest, "delta", args.delta);
    add_param(manifest, "n", static_cast<double>(args.n));
    add_param(manifest, "t", args.t);
    add_param(manifest, "init", init_label(init));
    add_param(manifest, "bins", static_cast<double>(nbins));
    add_param(manifest, "bin_range", format_compact(lo) + ":" + format_compact(hi));
    add_param(manifest, "l1_distance", l1);
    manifest.seed = args.seed;

    OutputTable table({"x_left", "x_right", "x_center", "density", "closed_form_density",
                       "abs_error", "l1_distance", "left_mass_fraction"});
    table.set_metadata("command", "walk");
    table.set_metadata("eps", format_compact(args.eps));
    table.set_metadata("q", format_compact(args.q));
    table.set_metadata("delta", format_compact(args.delta));
    table.set_metadata("n", std::to_string(args.n));
    table.set_metadata("t", format_compact(args.t));
    table.set_metadata("seed", std::to_string(args.seed));
    table.set_metadata("init", init_label(init));
    table.set_metadata("ensemble_mass", format_compact(ens.mass));
    for (std::size_t i = 0; i < nbins; ++i) {
        table.add_row({est.edges[i], est.edges[i + 1], 0.5 * (est.edges[i] + est.edges[i + 1]),
                       est.values[i], cf[i], std::abs(est.values[i] - cf[i]), l1, lmf});
    }
    emit_output(table, manifest, args.output, started);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    const auto started = std::chrono::steady_clock::now();
    CLI::App app{
        "Heterogeneous diffusion toolkit: closed-form, finite-difference, and random-walk "
        "solvers for a piecewise-constant medium.\nThe environment variable HETDIFF_THREADS "
        "caps internal parallelism."};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hetdiff::version_string));

    SolveArgs solve_args;
    CLI::App* solve_cmd =
        app.add_subcommand("solve", "Evaluate one solution and write a snapshot table");
    solve_cmd->add_option("--source", solve_args.source,
                          "Solution machinery: closed, fd-y, or fd-x")
        ->capture_default_str();
    solve_cmd->add_option("--init", solve_args.init_text,
                          "Initial density: dirac:x0, step:a:b, or an expression in x")
        ->capture_default_str();
    solve_cmd->add_option("--eps", solve_args.eps, "Diffusivity on x<0")->required();
    solve_cmd->add_option("--q", solve_args.q, "Diffusion-law exponent in [0,1]")->required();
    solve_cmd->add_option("--t", solve_args.times, "Snapshot time(s), positive")
        ->required()
        ->expected(-1);
    solve_cmd->add_option("--dx", solve_args.dx, "Grid spacing for fd sources")
        ->capture_default_str();
    solve_cmd->add_option("--theta", solve_args.theta,
                          "Time-weighting in [0.5,1] for fd sources")
        ->capture_default_str();
    solve_cmd->add_option("--dt", solve_args.dt, "Time step for fd sources (default dx^2)");
    solve_cmd->add_option("--xmin", solve_args.xmin, "Sampling range start (closed source)");
    solve_cmd->add_option("--xmax", solve_args.xmax, "Sampling range end (closed source)");
    solve_cmd->add_option("--points", solve_args.points, "Sample count (closed source)")
        ->capture_default_str();
    solve_cmd->add_option("--variable", solve_args.variable, "Reported variable: u or p")
        ->capture_default_str();
    solve_cmd->add_option("--coords", solve_args.coords, "Reported coordinate: x or y")
        ->capture_default_str();
    solve_args.output.out = "solve.csv";
    solve_cmd->add_option("--out", solve_args.output.out, "Output file")
        ->capture_default_str();
    solve_cmd->add_option("--format", solve_args.output.format,
                          "Output format: csv or json (default from extension)");

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Sweep the contrast eps, fit power laws, and write the table");
    sweep_cmd->add_option("--q", sweep_args.q, "Diffusion-law exponent");
    sweep_cmd->add_flag("--curve", sweep_args.curve,
                        "Fit the exponent across a q grid instead of one sweep");
    sweep_cmd->add_option("--q-range", sweep_args.q_range,
                          "q grid for --curve as lo:hi:count (open-interval midpoints)");
    sweep_cmd->add_option("--observable", sweep_args.observable,
                          "Boundary observable: value or slope (default by side of 1/2)");
    sweep_cmd->add_option("--source", sweep_args.source,
                          "closed, fd-y, fd-x, or walker")
        ->capture_default_str();
    sweep_cmd->add_option("--eps-min", sweep_args.eps_min, "Smallest contrast")
        ->capture_default_str();
    sweep_cmd->add_option("--eps-max", sweep_args.eps_max, "Largest contrast")
        ->capture_default_str();
    sweep_cmd->add_option("--eps-count", sweep_args.eps_count, "Grid size")
        ->capture_default_str();
    sweep_cmd->add_option("--t", sweep_args.t,
                          "Observation time (default 0.01 for value, 0.1 for slope)");
    sweep_cmd->add_option("--init", sweep_args.init_text,
                          "Initial density (default step:1:1 for value, dirac:1 for slope)");
    sweep_cmd->add_option("--dx", sweep_args.dx, "Grid spacing for fd sources")
        ->capture_default_str();
    sweep_cmd->add_option("--delta", sweep_args.delta, "Walk scale for the walker source")
        ->capture_default_str();
    sweep_cmd->add_option("--n", sweep_args.particles, "Particles for the walker source")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_args.seed, "Walker seed")->capture_default_str();
    sweep_cmd->add_option("--window", sweep_args.window,
                          "Extra fit window as lo:hi (full and asymptotic fits are "
                          "always reported)");
    sweep_args.output.out = "sweep.csv";
    sweep_cmd->add_option("--out", sweep_args.output.out, "Output file")
        ->capture_default_str();
    sweep_cmd->add_option("--format", sweep_args.output.format,
                          "Output format: csv or json (default from extension)");

    WalkArgs walk_args;
    CLI::App* walk_cmd = app.add_subcommand(
        "walk", "Simulate the position-jump walk and compare to the closed form");
    walk_cmd->add_option("--eps", walk_args.eps, "Diffusivity on x<0")->required();
    walk_cmd->add_option("--q", walk_args.q, "Diffusion-law exponent")->required();
    walk_cmd->add_option("--delta", walk_args.delta, "Base jump length")
        ->capture_default_str();
    walk_cmd->add_option("--n", walk_args.n, "Particle count")->capture_default_str();
    walk_cmd->add_option("--t", walk_args.t, "Horizon")->capture_default_str();
    walk_cmd->add_option("--seed", walk_args.seed, "RNG seed")->capture_default_str();
    walk_cmd->add_option("--init", walk_args.init_text, "Initial density")
        ->capture_default_str();
    walk_cmd->add_option("--bins", walk_args.bins,
                         "Histogram bin count (default: 4*delta wide bins)");
    walk_cmd->add_option("--bin-range", walk_args.bin_range, "Histogram range as lo:hi");
    walk_args.output.out = "walk.csv";
    walk_cmd->add_option("--out", walk_args.output.out, "Output file")
        ->capture_default_str();
    walk_cmd->add_option("--format", walk_args.output.format,
                         "Output format: csv or json (default from extension)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    solve_args.have_xmin = solve_cmd->count("--xmin") > 0;
    solve_args.have_xmax = solve_cmd->count("--xmax") > 0;
    sweep_args.have_q = sweep_cmd->count("--q") > 0;
    sweep_args.have_t = sweep_cmd->count("--t") > 0;

    RunManifest manifest;
    manifest.version = hetdiff::version_string;
    manifest.argv.assign(argv, argv + argc);

    try {
        if (solve_cmd->parsed()) {
            manifest.command = "solve";
            return run_solve(solve_args, std::move(manifest), started);
        }
        if (sweep_cmd->parsed()) {
            manifest.command = "sweep";
            return run_sweep_cmd(sweep_args, std::move(manifest), started);
        }
        manifest.command = "walk";
        return run_walk(walk_args, std::move(manifest), started);
    } catch (const hetdiff::io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const hetdiff::accuracy_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
}
