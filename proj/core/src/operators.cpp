#include "mbl/operators.hpp"

#include "mbl/errors.hpp"

#include <cmath>
#include <string>

namespace mbl {

double MBLParams::scale() const { return epsilon * std::sqrt(tau); }

void MBLParams::validate() const
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw ValidationError("epsilon must be positive");
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw ValidationError("tau must be nonnegative");
}

GridSpec GridSpec::make(double L, int n_cells, double lambda, double x0)
{
    GridSpec g;
    g.x0 = x0;
    g.L = L;
    g.n_cells = n_cells;
    g.dx = L / n_cells;
    g.lambda = lambda;
    g.validate();
    return g;
}

std::vector<double> GridSpec::nodes() const
{
    std::vector<double> x(std::size_t(n_cells) + 1);
    for (int j = 0; j <= n_cells; ++j)
        x[j] = node(j);
    return x;
}

void GridSpec::validate() const
{
    if (!(L > 0.0))
        throw ValidationError("grid: L must be positive");
    if (n_cells < 4)
        throw ValidationError("grid: need at least 4 cells");
    if (std::abs(dx * n_cells - L) > 1e-12 * L)
        throw ValidationError("grid: dx * n_cells != L");
    if (!(lambda > 0.0))
        throw ValidationError("grid: lambda must be positive");
}

bool all_finite(std::span<const double> v)
{
    for (double x : v)
        if (!std::isfinite(x))
            return false;
    return true;
}

std::vector<double> d2_central(std::span<const double> v, double dx, double ghost_left, double ghost_right)
{
    const std::size_t n = v.size();
    if (n < 3)
        throw ValidationError("d2_central: need at least 3 entries");
    const double r = 1.0 / (dx * dx);
    std::vector<double> out(n);
    out[0] = (ghost_left - 2.0 * v[0] + v[1]) * r;
    for (std::size_t j = 1; j + 1 < n; ++j)
        out[j] = (v[j - 1] - 2.0 * v[j] + v[j + 1]) * r;
    out[n - 1] = (v[n - 2] - 2.0 * v[n - 1] + ghost_right) * r;
    return out;
}

std::vector<double> d2_fourth(std::span<const double> v, double dx)
{
    const std::size_t n = v.size();
    if (n < 5)
        throw ValidationError("d2_fourth: need at least 5 entries");
    const double r = 1.0 / (12.0 * dx * dx);
    std::vector<double> out(n, 0.0);
    out[1] = (11.0 * v[0] - 20.0 * v[1] + 6.0 * v[2] + 4.0 * v[3] - v[4]) * r;
    for (std::size_t j = 2; j + 2 < n; ++j)
        out[j] = (-v[j - 2] + 16.0 * v[j - 1] - 30.0 * v[j] + 16.0 * v[j + 1] - v[j + 2]) * r;
    out[n - 2] = (11.0 * v[n - 1] - 20.0 * v[n - 2] + 6.0 * v[n - 3] + 4.0 * v[n - 4] - v[n - 5]) * r;
    return out;
}

std::vector<double> helmholtz_apply(std::span<const double> u, const MBLParams& params, double dx, int order)
{
    if (order != 2 && order != 4)
        throw ValidationError("helmholtz: order must be 2 or 4");
    const double k = params.kappa();
    const std::size_t n = u.size();
    std::vector<double> w(u.begin(), u.end());
    if (order == 2) {
        if (n < 3)
            throw ValidationError("helmholtz_apply: need at least 3 nodes");
        const double r = k / (dx * dx);
        for (std::size_t j = 1; j + 1 < n; ++j)
            w[j] = u[j] - r * (u[j - 1] - 2.0 * u[j] + u[j + 1]);
    } else {
        const auto q = d2_fourth(u, dx);
        for (std::size_t j = 1; j + 1 < n; ++j)
            w[j] = u[j] - k * q[j];
    }
    return w;
}

HelmholtzSolver::HelmholtzSolver(int n_nodes, double kappa, double dx, int order)
    : n_(n_nodes), kappa_(kappa), dx_(dx), order_(order)
{
    if (order != 2 && order != 4)
        throw ValidationError("helmholtz: order must be 2 or 4");
    if (n_nodes < (order == 2 ? 3 : 6))
        throw ValidationError("helmholtz_solve: too few nodes (" + std::to_string(n_nodes) + ")");
    if (!(kappa >= 0.0))
        throw ValidationError("helmholtz_solve: eps^2 tau must be nonnegative");
    const int m = n_nodes - 2;
    if (order == 2) {
        const double r = kappa / (dx * dx);
        tri_ = TridiagonalFactor(m, -r, 1.0 + 2.0 * r, -r);
        return;
    }
    const double r = kappa / (12.0 * dx * dx);
    BandedLU lu(m, 3, 3);
    for (int k = 0; k < m; ++k) {
        const int i = k + 1;   // node index
        if (i == 1 || i == n_nodes - 2) {
            const int s = (i == 1) ? 1 : -1;
            // unknown columns relative to node i: 0, s, 2s, 3s (node i-s is the boundary)
            lu.at(k, k) = 1.0 + 20.0 * r;
            lu.at(k, k + s) = -6.0 * r;
            lu.at(k, k + 2 * s) = -4.0 * r;
            lu.at(k, k + 3 * s) = r;
            continue;
        }
        lu.at(k, k) = 1.0 + 30.0 * r;
        for (int d : {-2, -1, 1, 2}) {
            const int c = k + d;
            if (c < 0 || c >= m)
                continue;
            lu.at(k, c) = (std::abs(d) == 1) ? -16.0 * r : r;
        }
    }
    lu.factor();
    band_.emplace(std::move(lu));
}

void HelmholtzSolver::solve(std::span<double> v, double bc_left, double bc_right) const
{
    const int n = n_;
    auto x = v.subspan(1, std::size_t(n - 2));
    if (order_ == 2) {
        const double r = kappa_ / (dx_ * dx_);
        x[0] += r * bc_left;
        x[n - 3] += r * bc_right;
        tri_.solve(x);
    } else {
        const double r = kappa_ / (12.0 * dx_ * dx_);
        // boundary node coefficients: closure rows 11, second rows -1
        x[0] += 11.0 * r * bc_left;
        x[1] -= r * bc_left;
        x[n - 3] += 11.0 * r * bc_right;
        x[n - 4] -= r * bc_right;
        band_->solve(x);
    }
    v[0] = bc_left;
    v[n - 1] = bc_right;
}

std::vector<double> helmholtz_solve(std::span<const double> w, double bc_left, double bc_right,
                                    const MBLParams& params, double dx, int order)
{
    HelmholtzSolver solver(int(w.size()), params.kappa(), dx, order);
    std::vector<double> u(w.begin(), w.end());
    solver.solve(u, bc_left, bc_right);
    return u;
}

double weighted_h1_norm(std::span<const double> y, const MBLParams& params, double dx)
{
    const std::size_t n = y.size();
    if (n < 2)
        throw ValidationError("weighted_h1_norm: need at least 2 nodes");
    const double e = params.scale();
    double s = 0.5 * (y[0] * y[0] + y[n - 1] * y[n - 1]);
    for (std::size_t j = 1; j + 1 < n; ++j)
        s += y[j] * y[j];
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double d = e * (y[j + 1] - y[j]) / dx;
        s += d * d;
    }
    return std::sqrt(s * dx);
}

} // namespace mbl
