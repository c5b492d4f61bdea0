#pragma once

#include "hetdiff/model.hpp"

#include <cstddef>
#include <vector>

namespace hetdiff {

/// Finite-volume grid with uniform cells per side (widths may differ
/// across sides) and the interface x=0 exactly on a cell face.
class Grid1D {
public:
    Grid1D(double left_extent, double right_extent, std::size_t n_left, std::size_t n_right);

    double left_extent() const noexcept { return left_extent_; }
    double right_extent() const noexcept { return right_extent_; }
    std::size_t n_left() const noexcept { return n_left_; }
    std::size_t n_right() const noexcept { return n_right_; }
    std::size_t size() const noexcept { return n_left_ + n_right_; }

    /// Uniform cell width on the side of cell i.
    double width(std::size_t i) const;
    /// Center coordinate of cell i (never 0).
    double center(std::size_t i) const;
    /// Face coordinate, i in [0, size()]; face(n_left()) == 0 exactly.
    double face(std::size_t i) const;
    /// Index of the first cell right of the interface.
    std::size_t interface_index() const noexcept { return n_left_; }

private:
    double left_extent_;
    double right_extent_;
    std::size_t n_left_;
    std::size_t n_right_;
    double dx_left_;
    double dx_right_;
};

/// Which form of the pressure equation is stepped: the flattened-
/// coordinate form (coefficient sigma left of 0, 1 right of it, unit
/// cell mass) or the original-coordinate form (conductance D^(1-q),
/// cell mass D^(-q)).
enum class Form { pressure_y, pressure_x };

/// Time-stepping parameters: theta-weighting in [0.5, 1] (1 = implicit
/// Euler, 0.5 = Crank-Nicolson) and the fixed step dt.
struct Scheme {
    Form form = Form::pressure_y;
    double theta = 1.0;
    double dt = 4e-6;
};

/// Solved snapshots over the grid cell centers.
struct SolutionField {
    Form variable;
    Grid1D grid;
    std::vector<double> times;
    std::vector<std::vector<double>> values;
};

/// Domain extents (in the solved variable) for truncating the infinite
/// line, per side.
struct Extents {
    double left;
    double right;
};

/// Extents such that homogeneous-Neumann truncation perturbs interface
/// values by less than tol (Gaussian tail rule, at least 6 diffusion
/// lengths per side). Returned in the flattened coordinate y; for the
/// pressure_x form scale the left extent by eps^q.
Extents truncation_extent(const ModelParams& params, double t_final, double tol);

/// Grid covering [-extents.left, extents.right] with cells of width at
/// most delta per side (extents rounded up to whole cells).
Grid1D make_uniform_grid(const Extents& extents, double delta);

/// Advance the field's last snapshot by one theta-weighted step of
/// scheme.dt, appending the new time level.
void assemble_and_step(SolutionField& field, const ModelParams& params, const Scheme& scheme);

/// Time-step the problem to t_final with fixed dt, recording snapshots
/// at the step times nearest the requested ones (always including the
/// start state and the final time). Dirac data is warm-started from the
/// exact solution at t0 = 10*dt; other data starts at t = 0 from
/// cell-center samples.
SolutionField solve(const InitialData& init, const ModelParams& params, const Scheme& scheme,
                    double t_final, const Grid1D& grid,
                    const std::vector<double>& snapshot_times = {});

/// One-sided interface readouts of the density: u(t,0+), its x-slope,
/// and u(t,0-), by quadratic extrapolation over the first three cells
/// per side.
struct BoundaryReadouts {
    double u_plus;
    double du_plus;
    double u_minus;
};

BoundaryReadouts boundary_readouts(const SolutionField& field, const ModelParams& params,
                                   std::size_t time_index);
BoundaryReadouts boundary_readouts(const SolutionField& field, const ModelParams& params);

/// Conserved discrete total: sum of cell mass-coefficient * value *
/// width, equal to the density mass integral in both forms.
double total_mass(const SolutionField& field, const ModelParams& params, std::size_t time_index);

} // namespace hetdiff
