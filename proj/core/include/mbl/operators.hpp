#pragma once

#include "mbl/banded.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mbl {

/// epsilon: viscous coefficient, tau: dynamic capillarity coefficient.
struct MBLParams {
    double epsilon = 0.005;
    double tau = 0.0;

    double kappa() const { return epsilon * epsilon * tau; }   // eps^2 tau
    double scale() const;                                      // eps sqrt(tau)
    void validate() const;
};

/// Uniform grid on [x0, x0+L] with n_cells cells; nodes x_j = x0 + j dx, j = 0..n_cells.
struct GridSpec {
    double x0 = 0.0;
    double L = 1.0;
    int n_cells = 4;
    double dx = 0.25;
    double lambda = 0.1;   // dt/dx

    static GridSpec make(double L, int n_cells, double lambda, double x0 = 0.0);
    double node(int j) const { return x0 + j * dx; }
    std::vector<double> nodes() const;
    void validate() const;
};

enum class Phase { integer_grid, half_grid };

/// Node values (integer grid, n_cells+1 entries including both boundary nodes)
/// or staggered values (half grid, n_cells entries at x_{j+1/2}).
struct Field {
    std::vector<double> values;
    Phase phase = Phase::integer_grid;
    double time = 0.0;
};

bool all_finite(std::span<const double> v);

/// Three-point second difference. Entry 0 and n-1 use the supplied ghost values
/// as their outer neighbours.
std::vector<double> d2_central(std::span<const double> v, double dx, double ghost_left, double ghost_right);

/// Five-point fourth-order second difference on rows 2..n-3, shifted one-sided
/// five-point closures (third order) on rows 1 and n-2. Rows 0 and n-1 are zero.
std::vector<double> d2_fourth(std::span<const double> v, double dx);

/// w = u - eps^2 tau D^2 u on interior nodes; w = u at the two boundary nodes.
std::vector<double> helmholtz_apply(std::span<const double> u, const MBLParams& params, double dx, int order);

/// Solves (I - eps^2 tau D^2) u = w on interior nodes with u(first) = bc_left,
/// u(last) = bc_right. The entries w[0] and w[n-1] are ignored.
std::vector<double> helmholtz_solve(std::span<const double> w, double bc_left, double bc_right,
                                    const MBLParams& params, double dx, int order);

/// Factored (I - kappa D^2) on n nodes (n-2 unknowns). Reusable by one thread at a time.
class HelmholtzSolver {
public:
    HelmholtzSolver(int n_nodes, double kappa, double dx, int order);

    int nodes() const { return n_; }
    double kappa() const { return kappa_; }
    double dx() const { return dx_; }
    int order() const { return order_; }

    /// In place: on entry v holds w (ends ignored), on exit u with the given ends.
    void solve(std::span<double> v, double bc_left, double bc_right) const;

private:
    int n_;
    double kappa_, dx_;
    int order_;
    TridiagonalFactor tri_;
    std::optional<BandedLU> band_;
};

/// sqrt( sum_j [ y_j^2 + (eps sqrt(tau) (y_{j+1}-y_j)/dx)^2 ] dx ), with trapezoid
/// weights on the y^2 term and forward differences on the derivative term.
double weighted_h1_norm(std::span<const double> y, const MBLParams& params, double dx);

} // namespace mbl
