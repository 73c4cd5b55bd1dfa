#pragma once

#include "mbl/flux.hpp"
#include "mbl/operators.hpp"

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace mbl {

enum class Variant { trapezoid, midpoint };

/// Dirichlet data u(x0, t) = g(t), u(x0 + L, t) = h(t).
struct Boundary {
    std::function<double(double)> g = [](double) { return 0.0; };
    std::function<double(double)> h = [](double) { return 0.0; };

    static Boundary constant(double left, double right);
};

struct Scheme2State {
    Field u;
    Field w;
    GridSpec grid;
    MBLParams params;
    FluxModel model;
    Variant variant = Variant::trapezoid;
    Boundary bc;
    long guard_violations = 0;   // steps that left u in [-0.1, 1.1] violated
    double min_cfl_margin = 0.5;
};

double minmod(double a, double b);

/// Minmod-limited undivided differences; one-sided differences at the two ends.
std::vector<double> slopes(std::span<const double> values);

struct CflResult {
    bool ok;
    double margin;   // 1/2 - lambda max|f'|
};
CflResult cfl_check(std::span<const double> u, const GridSpec& grid, const FluxModel& model);

/// Integer-grid state from node samples u0 (length n_cells+1); the two ends are
/// overwritten with the boundary data at t = 0.
Scheme2State make_scheme2_state(const GridSpec& grid, const MBLParams& params, const FluxModel& model,
                                Variant variant, Boundary bc, std::span<const double> u0);

/// w at t + dt/2 on the state's grid, including the boundary/ghost entries.
std::vector<double> predictor(const Scheme2State& state);

Scheme2State step_trapezoid(const Scheme2State& state);
Scheme2State step_midpoint(const Scheme2State& state);

/// Advances by step pairs so that every returned field lies on the integer grid.
/// The last pair before each target time shrinks dt to land exactly.
std::vector<Field> run(Scheme2State& state, double t_final, std::span<const double> snapshot_times);

/// Reusable workspace for one run; owns factorizations of the elliptic operators.
class Scheme2Stepper {
public:
    Scheme2Stepper(const GridSpec& grid, const MBLParams& params, const FluxModel& model, Variant variant);
    ~Scheme2Stepper();

    /// One staggered step of size dt; toggles state.u.phase and advances time.
    void step(Scheme2State& state, double dt);

    /// Extended array [g(t), values..., h(t)] for a half-grid field, or the
    /// integer-grid field with its ends reset to the boundary data.
    static std::vector<double> extended(const Field& u, const Boundary& bc);

private:
    struct Cache;
    std::unique_ptr<Cache> cache_;
    GridSpec grid_;
    MBLParams params_;
    FluxModel model_;
    Variant variant_;
    std::vector<double> E_, wE_, s_, wbar_, ubar_, wp_, up_, sp_, ubp_, out_;
};

} // namespace mbl
