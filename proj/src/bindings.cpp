#include "hetdiff/analysis.hpp"
#include "hetdiff/closedform.hpp"
#include "hetdiff/fdsolver.hpp"
#include "hetdiff/model.hpp"
#include "hetdiff/special.hpp"
#include "hetdiff/version.hpp"
#include "hetdiff/walker.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace hetdiff;

namespace {

Form parse_form(const std::string& name) {
    if (name == "pressure_y") {
        return Form::pressure_y;
    }
    if (name == "pressure_x") {
        return Form::pressure_x;
    }
    throw std::invalid_argument("form must be pressure_y or pressure_x");
}

std::vector<double> grid_centers(const Grid1D& grid) {
    std::vector<double> centers(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        centers[i] = grid.center(i);
    }
    return centers;
}

} // namespace

PYBIND11_MODULE(_hetdiff, m) {
    m.doc() = "Heterogeneous diffusion with a piecewise-constant medium: closed-form, "
              "finite-difference, and random-walk solvers.";
    m.attr("__version__") = version_string;

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, double>(), py::arg("eps"), py::arg("q"))
        .def_property_readonly("eps", &ModelParams::eps)
        .def_property_readonly("q", &ModelParams::q)
        .def_property_readonly("sigma", &ModelParams::sigma);

    m.def("sigma_of", &sigma_of, py::arg("eps"), py::arg("q"));
    m.def("diffusivity", &diffusivity, py::arg("params"), py::arg("x"));
    m.def("x_to_y", &x_to_y, py::arg("params"), py::arg("x"));
    m.def("y_to_x", &y_to_x, py::arg("params"), py::arg("y"));
    m.def("u_to_p", &u_to_p, py::arg("params"), py::arg("u"), py::arg("x"));
    m.def("p_to_u", &p_to_u, py::arg("params"), py::arg("p"), py::arg("x"));
    m.def("erfc", [](double x) { return hetdiff::erfc(x); }, py::arg("x"));
    m.def("phi_kernel", &phi_kernel, py::arg("t"), py::arg("x"), py::arg("xi"));

    // InitialData crosses the boundary as whichever alternative is
    // active, so each alternative is a registered type
    py::class_<DiracInit>(m, "DiracInit").def_readonly("x0", &DiracInit::x0);
    py::class_<StepInit>(m, "StepInit")
        .def_readonly("a", &StepInit::a)
        .def_readonly("b", &StepInit::b);
    py::class_<SampledInit>(m, "SampledInit");
    m.def("dirac_init", [](double x0) { return InitialData(DiracInit{x0}); }, py::arg("x0"));
    m.def(
        "step_init", [](double a, double b) { return InitialData(StepInit{a, b}); },
        py::arg("a"), py::arg("b"));
    m.def(
        "sampled_init",
        [](std::function<double(double)> phi) {
            return InitialData(SampledInit{std::move(phi)});
        },
        py::arg("phi"));

    m.def("fundamental_solution", &fundamental_solution, py::arg("x0"), py::arg("params"),
          py::arg("t"), py::arg("y"));
    m.def("step_solution", &step_solution, py::arg("a"), py::arg("b"), py::arg("params"),
          py::arg("t"), py::arg("y"));

    py::class_<ClosedFormSolution>(m, "ClosedFormSolution")
        .def(py::init([](const ModelParams& params, const InitialData& init,
                         bool force_quadrature) {
                 return ClosedFormSolution(params, init,
                                           force_quadrature
                                               ? ClosedFormSolution::Path::ForceQuadrature
                                               : ClosedFormSolution::Path::Auto);
             }),
             py::arg("params"), py::arg("init"), py::arg("force_quadrature") = false)
        .def("eval_pressure", &ClosedFormSolution::eval_pressure, py::arg("t"), py::arg("y"))
        .def("eval_density", &ClosedFormSolution::eval_density, py::arg("t"), py::arg("x"))
        .def("flux_right", &ClosedFormSolution::flux_right, py::arg("t"))
        .def("flux_left", &ClosedFormSolution::flux_left, py::arg("t"))
        .def("total_mass", &ClosedFormSolution::total_mass, py::arg("t"))
        .def(
            "interface_value",
            [](const ClosedFormSolution& sol, double t) { return sol.interface().value(t); },
            py::arg("t"))
        .def(
            "interface_derivative",
            [](const ClosedFormSolution& sol, double t) {
                return sol.interface().derivative(t);
            },
            py::arg("t"))
        .def(
            "second_derivative_identity",
            [](const ClosedFormSolution& sol, double t) {
                const CurvatureIdentity id = sol.second_derivative_identity(t);
                return py::make_tuple(id.left, id.right, id.hprime);
            },
            py::arg("t"));

    py::class_<SolutionField>(m, "SolutionField")
        .def_readonly("times", &SolutionField::times)
        .def_readonly("values", &SolutionField::values)
        .def_property_readonly("centers",
                               [](const SolutionField& f) { return grid_centers(f.grid); });

    m.def(
        "fd_solve",
        [](const InitialData& init, const ModelParams& params, double t_final,
           const std::string& form, double delta, double theta, std::optional<double> dt,
           const std::vector<double>& snapshot_times) {
            Scheme scheme;
            scheme.form = parse_form(form);
            scheme.theta = theta;
            scheme.dt = dt ? *dt : delta * delta;
            Extents ext = truncation_extent(params, t_final, 1e-8);
            if (const auto* d = std::get_if<DiracInit>(&init)) {
                ext.right += d->x0;
            }
            if (scheme.form == Form::pressure_x) {
                ext.left *= std::pow(params.eps(), params.q());
            }
            const Grid1D grid = make_uniform_grid(ext, delta);
            return solve(init, params, scheme, t_final, grid, snapshot_times);
        },
        py::arg("init"), py::arg("params"), py::arg("t_final"),
        py::arg("form") = "pressure_y", py::arg("delta") = 0.002, py::arg("theta") = 1.0,
        py::arg("dt") = std::nullopt, py::arg("snapshot_times") = std::vector<double>{},
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "fd_boundary_readouts",
        [](const SolutionField& field, const ModelParams& params) {
            const BoundaryReadouts b = boundary_readouts(field, params);
            return py::make_tuple(b.u_plus, b.du_plus, b.u_minus);
        },
        py::arg("field"), py::arg("params"));

    m.def(
        "fd_total_mass",
        [](const SolutionField& field, const ModelParams& params, std::size_t time_index) {
            return total_mass(field, params, time_index);
        },
        py::arg("field"), py::arg("params"), py::arg("time_index"));

    py::class_<WalkRule>(m, "WalkRule")
        .def_readonly("delta", &WalkRule::delta)
        .def_readonly("eta", &WalkRule::eta)
        .def_readonly("zeta", &WalkRule::zeta)
        .def("interface_band", &WalkRule::interface_band)
        .def("jump", &WalkRule::jump, py::arg("x"), py::arg("up"))
        .def("sojourn", &WalkRule::sojourn, py::arg("x"))
        .def("diffusivity_left", &WalkRule::diffusivity_left);

    m.def("walk_rule_from_params", &walk_rule_from_params, py::arg("params"),
          py::arg("delta"));

    py::class_<Ensemble>(m, "Ensemble")
        .def_readonly("positions", &Ensemble::positions)
        .def_readonly("clocks", &Ensemble::clocks)
        .def_readonly("seed", &Ensemble::seed)
        .def_readonly("horizon", &Ensemble::horizon)
        .def_readonly("mass", &Ensemble::mass);

    m.def("simulate", &simulate, py::arg("rule"), py::arg("init"), py::arg("n_particles"),
          py::arg("T"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());

    py::class_<DensityEstimate>(m, "DensityEstimate")
        .def_readonly("edges", &DensityEstimate::edges)
        .def_readonly("values", &DensityEstimate::values)
        .def_readonly("horizon", &DensityEstimate::horizon);

    m.def("density", &density, py::arg("ensemble"), py::arg("edges"));
    m.def("uniform_bins", &uniform_bins, py::arg("lo"), py::arg("hi"), py::arg("n"));
    m.def("left_mass_fraction", &left_mass_fraction, py::arg("ensemble"));

    py::enum_<SweepSource>(m, "SweepSource")
        .value("closed_form", SweepSource::closed_form)
        .value("fd_solver_y", SweepSource::fd_solver_y)
        .value("fd_solver_x", SweepSource::fd_solver_x)
        .value("walker", SweepSource::walker);

    py::enum_<Observable>(m, "Observable")
        .value("boundary_value", Observable::boundary_value)
        .value("boundary_slope", Observable::boundary_slope);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("q", &SweepSpec::q)
        .def_readwrite("eps_grid", &SweepSpec::eps_grid)
        .def_readwrite("source", &SweepSpec::source)
        .def_readwrite("observable", &SweepSpec::observable)
        .def_readwrite("t_obs", &SweepSpec::t_obs)
        .def_readwrite("init", &SweepSpec::init)
        .def_readwrite("fd_delta", &SweepSpec::fd_delta)
        .def_readwrite("walker_delta", &SweepSpec::walker_delta)
        .def_readwrite("walker_particles", &SweepSpec::walker_particles)
        .def_readwrite("seed", &SweepSpec::seed);

    m.def("default_eps_grid", &default_eps_grid);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("eps", &SweepRow::eps)
        .def_readonly("sigma", &SweepRow::sigma)
        .def_readonly("value", &SweepRow::value);

    py::class_<SweepFailure>(m, "SweepFailure")
        .def_readonly("eps", &SweepFailure::eps)
        .def_readonly("message", &SweepFailure::message);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("failures", &SweepResult::failures);

    m.def("run_sweep", &run_sweep, py::arg("spec"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<PowerLawFit>(m, "PowerLawFit")
        .def_readonly("exponent", &PowerLawFit::exponent)
        .def_readonly("prefactor", &PowerLawFit::prefactor)
        .def_readonly("residual", &PowerLawFit::residual)
        .def_readonly("points_used", &PowerLawFit::points_used);

    m.def(
        "fit_power_law",
        [](const SweepResult& sweep, double eps_min, double eps_max) {
            return fit_power_law(sweep, FitWindow{eps_min, eps_max});
        },
        py::arg("sweep"), py::arg("eps_min"), py::arg("eps_max"));

    py::class_<ExponentPoint>(m, "ExponentPoint")
        .def_readonly("q", &ExponentPoint::q)
        .def_readonly("observable", &ExponentPoint::observable)
        .def_readonly("exponent", &ExponentPoint::exponent)
        .def_readonly("residual", &ExponentPoint::residual);

    m.def(
        "exponent_curve",
        [](const std::vector<double>& q_grid, const SweepSpec& base, double eps_min,
           double eps_max) {
            return exponent_curve(q_grid, base, FitWindow{eps_min, eps_max});
        },
        py::arg("q_grid"), py::arg("base"), py::arg("eps_min"), py::arg("eps_max"),
        py::call_guard<py::gil_scoped_release>());
}
