#pragma once

#include "mbl/flux.hpp"
#include "mbl/operators.hpp"
#include "mbl/scheme2.hpp"

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace mbl {

struct Reconstruction {
    std::vector<double> a_coef;
    std::vector<double> b_coef;   // slope per unit length
    std::vector<double> c_coef;   // curvature
    std::vector<std::array<double, 3>> weights;   // (w_L, w_C, w_R) per cell
    std::vector<double> w_minus;   // interface i+1/2 seen from cell i
    std::vector<double> w_plus;    // interface i+1/2 seen from cell i+1
};

/// CWENO(3) reconstruction from cell averages. One ghost average is copied at each end,
/// so w_minus/w_plus cover the n-1 interfaces between consecutive cells.
Reconstruction cweno_reconstruct(std::span<const double> wbar, double dx);

double local_speed(double u_minus, double u_plus, const FluxModel& model);
double numerical_flux(double u_minus, double u_plus, double w_minus, double w_plus, const FluxModel& model);

/// Fourth-order Q_j; see d2_fourth for the boundary closures.
std::vector<double> diffusion_q(std::span<const double> u, double dx);

struct Scheme3Context {
    GridSpec grid;
    MBLParams params;
    FluxModel model;
    Boundary bc;
};

/// Cell averages of w at the nodes (cell j = [x_j - dx/2, x_j + dx/2]). The entries 0
/// and n_cells are boundary cells held at the Dirichlet data.
struct Scheme3State {
    Field wbar;
    Scheme3Context ctx;
    double min_cfl_margin = 0.5;
    long guard_violations = 0;
};

/// Time derivative of the interior cell averages; the two end entries are zero.
std::vector<double> semidiscrete_rhs(std::span<const double> wbar, double t, const Scheme3Context& ctx);

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Classical four-stage Runge-Kutta step.
std::vector<double> rk4_step(std::span<const double> y, double t, double dt, const OdeRhs& f);
std::vector<double> rk4_step(std::span<const double> wbar, double t, double dt, const Scheme3Context& ctx);

/// Cell averages of a function over node-centered cells, five-point Gauss per cell.
std::vector<double> cell_averages(const GridSpec& grid, const std::function<double(double)>& u0);

/// Fourth-order conversion of cell averages to point values (interior); ends copied.
std::vector<double> cell_to_point(std::span<const double> avg);

/// State from cell averages of u (length n_cells+1); w-averages come from the order-4 operator.
Scheme3State make_scheme3_state(const Scheme3Context& ctx, std::span<const double> ubar0);

/// Cell averages of u recovered from the state.
Field scheme3_u(const Scheme3State& state);

/// Integrates to each snapshot time (and t_final); returns cell averages of u.
std::vector<Field> run(Scheme3State& state, double t_final, std::span<const double> snapshot_times);

/// Workspace-owning evaluator used by run(); one per thread.
class Scheme3Integrator {
public:
    explicit Scheme3Integrator(const Scheme3Context& ctx);
    ~Scheme3Integrator();

    void rhs(double t, std::span<const double> wbar, std::span<double> out);
    void step(std::vector<double>& wbar, double t, double dt);
    /// u from w-averages with the boundary data at time t; valid until the next call.
    const std::vector<double>& to_u(std::span<const double> wbar, double t);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace mbl
