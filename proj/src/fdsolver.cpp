#include "hetdiff/fdsolver.hpp"

#include "hetdiff/closedform.hpp"
#include "hetdiff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hetdiff {

namespace {

struct StepContext {
    std::vector<double> face_g;  ///< conductance per interior face, 0 at the ends
    std::vector<double> massw;   ///< cell mass coefficient times cell width
    std::vector<double> diag;
    std::vector<double> rhs;
    std::vector<double> scratch;
};

void validate_scheme(const Scheme& scheme) {
    if (!(scheme.theta >= 0.5 && scheme.theta <= 1.0)) {
        throw std::domain_error("theta must lie in [0.5, 1]");
    }
    if (!(scheme.dt > 0.0)) {
        throw std::domain_error("dt must be positive");
    }
}

double side_conductance(const ModelParams& params, Form form, bool left) {
    if (!left) {
        return 1.0;
    }
    return form == Form::pressure_y ? params.sigma()
                                    : std::pow(params.eps(), 1.0 - params.q());
}

double side_mass(const ModelParams& params, Form form, bool left) {
    if (!left || form == Form::pressure_y) {
        return 1.0;
    }
    return std::pow(params.eps(), -params.q());
}

StepContext make_context(const Grid1D& grid, const ModelParams& params, Form form) {
    const std::size_t n = grid.size();
    StepContext ctx;
    ctx.face_g.assign(n + 1, 0.0);
    ctx.massw.resize(n);
    ctx.diag.resize(n);
    ctx.rhs.resize(n);
    ctx.scratch.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool left = grid.center(i) < 0.0;
        ctx.massw[i] = side_mass(params, form, left) * grid.width(i);
    }
    for (std::size_t j = 1; j < n; ++j) {
        const bool left_a = grid.center(j - 1) < 0.0;
        const bool left_b = grid.center(j) < 0.0;
        const double ca = side_conductance(params, form, left_a);
        const double cb = side_conductance(params, form, left_b);
        ctx.face_g[j] = 1.0 / (0.5 * grid.width(j - 1) / ca + 0.5 * grid.width(j) / cb);
    }
    return ctx;
}

/// One theta-weighted finite-volume step of the values in place.
void step_once(std::vector<double>& p, StepContext& ctx, const Scheme& scheme) {
    const std::size_t n = p.size();
    const double th = scheme.theta;
    const double ex = 1.0 - th;
    for (std::size_t i = 0; i < n; ++i) {
        const double gl = ctx.face_g[i];
        const double gr = ctx.face_g[i + 1];
        const double flux_in = gr * ((i + 1 < n ? p[i + 1] : p[i]) - p[i]) -
                               gl * (p[i] - (i > 0 ? p[i - 1] : p[i]));
        ctx.diag[i] = ctx.massw[i] / scheme.dt + th * (gl + gr);
        ctx.rhs[i] = ctx.massw[i] / scheme.dt * p[i] + ex * flux_in;
    }
    // Thomas elimination; sub/super diagonals are -theta * face_g.
    double* cp = ctx.scratch.data();
    cp[0] = -th * ctx.face_g[1] / ctx.diag[0];
    ctx.rhs[0] /= ctx.diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double a = -th * ctx.face_g[i];
        const double m = ctx.diag[i] - a * cp[i - 1];
        if (m == 0.0) {
            throw accuracy_error("tridiagonal elimination broke down", 0.0, 0.0);
        }
        cp[i] = -th * ctx.face_g[i + 1] / m;
        ctx.rhs[i] = (ctx.rhs[i] - a * ctx.rhs[i - 1]) / m;
    }
    p[n - 1] = ctx.rhs[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        p[i] = ctx.rhs[i] - cp[i] * p[i + 1];
    }
}

std::vector<double> initial_values(const InitialData& init, const ModelParams& params,
                                   const Grid1D& grid, Form form, double t_start) {
    std::vector<double> p(grid.size());
    if (const auto* d = std::get_if<DiracInit>(&init)) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double c = grid.center(i);
            const double y = form == Form::pressure_y ? c : x_to_y(params, c);
            p[i] = fundamental_solution(d->x0, params, t_start, y);
        }
        return p;
    }
    const PressureData data = initial_pressure(params, init);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double c = grid.center(i);
        const double y = form == Form::pressure_y ? c : x_to_y(params, c);
        p[i] = pressure_data_at(data, y);
    }
    return p;
}

} // namespace

Grid1D::Grid1D(double left_extent, double right_extent, std::size_t n_left, std::size_t n_right)
    : left_extent_(left_extent),
      right_extent_(right_extent),
      n_left_(n_left),
      n_right_(n_right) {
    if (!(left_extent > 0.0) || !(right_extent > 0.0)) {
        throw std::domain_error("grid extents must be positive");
    }
    if (n_left == 0 || n_right == 0) {
        throw std::domain_error("grid needs at least one cell per side");
    }
    dx_left_ = left_extent_ / static_cast<double>(n_left_);
    dx_right_ = right_extent_ / static_cast<double>(n_right_);
}

double Grid1D::width(std::size_t i) const {
    return i < n_left_ ? dx_left_ : dx_right_;
}

double Grid1D::center(std::size_t i) const {
    if (i < n_left_) {
        return -(static_cast<double>(n_left_ - i) - 0.5) * dx_left_;
    }
    return (static_cast<double>(i - n_left_) + 0.5) * dx_right_;
}

double Grid1D::face(std::size_t i) const {
    if (i <= n_left_) {
        return -static_cast<double>(n_left_ - i) * dx_left_;
    }
    return static_cast<double>(i - n_left_) * dx_right_;
}

Extents truncation_extent(const ModelParams& params, double t_final, double tol) {
    if (!(t_final > 0.0)) {
        throw std::domain_error("t_final must be positive");
    }
    if (!(tol > 0.0 && tol < 1.0)) {
        throw std::domain_error("tol must lie in (0, 1)");
    }
    const double factor = std::max(6.0, 2.0 * std::sqrt(std::log(1.0 / tol)));
    Extents out;
    out.right = factor * std::sqrt(t_final);
    out.left = factor * std::sqrt(t_final * std::max(params.sigma(), 1.0));
    return out;
}

Grid1D make_uniform_grid(const Extents& extents, double delta) {
    if (!(delta > 0.0)) {
        throw std::domain_error("cell width must be positive");
    }
    const auto n_left = static_cast<std::size_t>(std::ceil(extents.left / delta - 1e-12));
    const auto n_right = static_cast<std::size_t>(std::ceil(extents.right / delta - 1e-12));
    return Grid1D(static_cast<double>(n_left) * delta, static_cast<double>(n_right) * delta,
                  n_left, n_right);
}

void assemble_and_step(SolutionField& field, const ModelParams& params, const Scheme& scheme) {
    validate_scheme(scheme);
    if (field.values.empty()) {
        throw std::invalid_argument("field has no time levels to advance");
    }
    StepContext ctx = make_context(field.grid, params, field.variable);
    std::vector<double> p = field.values.back();
    step_once(p, ctx, scheme);
    field.times.push_back(field.times.back() + scheme.dt);
    field.values.push_back(std::move(p));
}

SolutionField solve(const InitialData& init, const ModelParams& params, const Scheme& scheme,
                    double t_final, const Grid1D& grid,
                    const std::vector<double>& snapshot_times) {
    validate_scheme(scheme);
    if (!(t_final > 0.0)) {
        throw std::domain_error("t_final must be positive");
    }
    const bool dirac = std::holds_alternative<DiracInit>(init);
    const double t_start = dirac ? 10.0 * scheme.dt : 0.0;
    if (t_final < t_start) {
        throw std::domain_error("t_final is smaller than the Dirac warm-start time 10*dt");
    }
    const auto steps = static_cast<std::size_t>(
        std::llround(std::ceil((t_final - t_start) / scheme.dt - 1e-9)));

    std::set<std::size_t> marks;
    for (double t : snapshot_times) {
        const double k = std::round((t - t_start) / scheme.dt);
        marks.insert(static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(steps))));
    }
    marks.insert(steps);

    SolutionField field{scheme.form, grid, {}, {}};
    std::vector<double> p = initial_values(init, params, grid, scheme.form, t_start);
    StepContext ctx = make_context(grid, params, scheme.form);
    auto record = [&](std::size_t k) {
        field.times.push_back(t_start + static_cast<double>(k) * scheme.dt);
        field.values.push_back(p);
    };
    // the start state (t=0, or the warm-start time for point data) is always
    // the first snapshot so the field carries its own initial condition
    record(0);
    for (std::size_t k = 1; k <= steps; ++k) {
        step_once(p, ctx, scheme);
        if (marks.count(k) != 0) {
            record(k);
        }
    }
    return field;
}

BoundaryReadouts boundary_readouts(const SolutionField& field, const ModelParams& params,
                                   std::size_t time_index) {
    const Grid1D& grid = field.grid;
    if (grid.n_left() < 3 || grid.n_right() < 3) {
        throw std::domain_error("boundary readouts need at least three cells per side");
    }
    if (time_index >= field.values.size()) {
        throw std::out_of_range("time index past the recorded snapshots");
    }
    const std::vector<double>& v = field.values[time_index];
    const std::size_t r = grid.interface_index();
    // Density equals the solved pressure on the right side in both
    // forms; on the left it is eps^(-q) times the pressure.
    const double scale = std::pow(params.eps(), -params.q());
    const double r1 = v[r];
    const double r2 = v[r + 1];
    const double r3 = v[r + 2];
    const double l1 = scale * v[r - 1];
    const double l2 = scale * v[r - 2];
    const double l3 = scale * v[r - 3];
    BoundaryReadouts out;
    out.u_plus = (15.0 * r1 - 10.0 * r2 + 3.0 * r3) / 8.0;
    out.du_plus = (-2.0 * r1 + 3.0 * r2 - r3) / grid.width(r);
    out.u_minus = (15.0 * l1 - 10.0 * l2 + 3.0 * l3) / 8.0;
    return out;
}

BoundaryReadouts boundary_readouts(const SolutionField& field, const ModelParams& params) {
    if (field.values.empty()) {
        throw std::invalid_argument("field has no recorded snapshots");
    }
    return boundary_readouts(field, params, field.values.size() - 1);
}

double total_mass(const SolutionField& field, const ModelParams& params, std::size_t time_index) {
    if (time_index >= field.values.size()) {
        throw std::out_of_range("time index past the recorded snapshots");
    }
    const Grid1D& grid = field.grid;
    const std::vector<double>& v = field.values[time_index];
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const bool left = grid.center(i) < 0.0;
        sum += side_mass(params, field.variable, left) * grid.width(i) * v[i];
    }
    return sum;
}

} // namespace hetdiff
