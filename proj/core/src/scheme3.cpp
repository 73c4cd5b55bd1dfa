#include "mbl/scheme3.hpp"

#include "mbl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mbl {

namespace {

constexpr double kCL = 0.25, kCC = 0.5, kCR = 0.25;
constexpr double kEps0 = 1e-6;

struct CellCoef {
    double a, b, c;
    double wl, wc, wr;
};

inline CellCoef cweno_cell(double wm, double w0, double wp, double dx)
{
    const double d2 = wp - 2.0 * w0 + wm;
    const double isl = (w0 - wm) * (w0 - wm);
    const double isr = (wp - w0) * (wp - w0);
    const double isc = 13.0 / 3.0 * d2 * d2 + 0.25 * (wp - wm) * (wp - wm);
    const double al = kCL / ((kEps0 + isl) * (kEps0 + isl));
    const double ac = kCC / ((kEps0 + isc) * (kEps0 + isc));
    const double ar = kCR / ((kEps0 + isr) * (kEps0 + isr));
    const double sum = al + ac + ar;
    CellCoef k;
    k.wl = al / sum;
    k.wc = ac / sum;
    k.wr = ar / sum;
    k.a = w0 - k.wc / 12.0 * d2;
    k.b = (k.wr * (wp - w0) + k.wc * 0.5 * (wp - wm) + k.wl * (w0 - wm)) / dx;
    k.c = 2.0 * k.wc * d2 / (dx * dx);
    return k;
}

} // namespace

Reconstruction cweno_reconstruct(std::span<const double> wbar, double dx)
{
    const std::size_t n = wbar.size();
    if (n < 5)
        throw ValidationError("cweno_reconstruct: need at least 5 cells");
    Reconstruction r;
    r.a_coef.resize(n);
    r.b_coef.resize(n);
    r.c_coef.resize(n);
    r.weights.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double wm = wbar[j == 0 ? 0 : j - 1];
        const double wp = wbar[j + 1 == n ? j : j + 1];
        const auto k = cweno_cell(wm, wbar[j], wp, dx);
        r.a_coef[j] = k.a;
        r.b_coef[j] = k.b;
        r.c_coef[j] = k.c;
        r.weights[j] = {k.wl, k.wc, k.wr};
    }
    r.w_minus.resize(n - 1);
    r.w_plus.resize(n - 1);
    const double h = 0.5 * dx, q = dx * dx / 8.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        r.w_minus[i] = r.a_coef[i] + h * r.b_coef[i] + q * r.c_coef[i];
        r.w_plus[i] = r.a_coef[i + 1] - h * r.b_coef[i + 1] + q * r.c_coef[i + 1];
    }
    return r;
}

double local_speed(double u_minus, double u_plus, const FluxModel& model)
{
    return std::max(flux_deriv(u_minus, model), flux_deriv(u_plus, model));
}

double numerical_flux(double u_minus, double u_plus, double w_minus, double w_plus, const FluxModel& model)
{
    const double a = local_speed(u_minus, u_plus, model);
    return 0.5 * (flux(u_plus, model) + flux(u_minus, model)) - 0.5 * a * (w_plus - w_minus);
}

std::vector<double> diffusion_q(std::span<const double> u, double dx) { return d2_fourth(u, dx); }

struct Scheme3Integrator::Impl {
    Scheme3Context ctx;
    HelmholtzSolver nodes_solver;       // n_cells + 1 nodes
    HelmholtzSolver interface_solver;   // n_cells interfaces plus two ghosts
    std::vector<double> W, wm, wp, um, up, ub, H;
    std::vector<double> k1, k2, k3, k4, tmp;

    explicit Impl(const Scheme3Context& c)
        : ctx(c),
          nodes_solver(c.grid.n_cells + 1, c.params.kappa(), c.grid.dx, 4),
          interface_solver(c.grid.n_cells + 2, c.params.kappa(), c.grid.dx, 4)
    {
    }
};

Scheme3Integrator::Scheme3Integrator(const Scheme3Context& ctx) : impl_(std::make_unique<Impl>(ctx)) {}

Scheme3Integrator::~Scheme3Integrator() = default;

void Scheme3Integrator::rhs(double t, std::span<const double> wbar, std::span<double> out)
{
    auto& s = *impl_;
    const int N = s.ctx.grid.n_cells;
    const double dx = s.ctx.grid.dx;
    const double eps = s.ctx.params.epsilon;
    const double g = s.ctx.bc.g(t), h = s.ctx.bc.h(t);
    const auto& model = s.ctx.model;

    s.W.assign(wbar.begin(), wbar.end());
    s.W[0] = g;
    s.W[N] = h;

    // reconstruction with copied ghosts, interfaces 1/2 .. N-1/2
    s.wm.resize(N + 2);
    s.wp.resize(N + 2);
    {
        const double hh = 0.5 * dx, q = dx * dx / 8.0;
        CellCoef prev = cweno_cell(s.W[0], s.W[0], s.W[1], dx);
        for (int j = 0; j < N; ++j) {
            const double wr = (j + 2 <= N) ? s.W[j + 2] : s.W[N];
            const CellCoef next = cweno_cell(s.W[j], s.W[j + 1], wr, dx);
            s.wm[j + 1] = prev.a + hh * prev.b + q * prev.c;
            s.wp[j + 1] = next.a - hh * next.b + q * next.c;
            prev = next;
        }
    }
    s.um = s.wm;
    s.up = s.wp;
    s.interface_solver.solve(s.um, g, h);
    s.interface_solver.solve(s.up, g, h);

    s.H.resize(N);
    for (int i = 0; i < N; ++i)
        s.H[i] = numerical_flux(s.um[i + 1], s.up[i + 1], s.wm[i + 1], s.wp[i + 1], model);

    s.ub = s.W;
    s.nodes_solver.solve(s.ub, g, h);

    const double r = eps / (12.0 * dx * dx);
    const auto& u = s.ub;
    out[0] = 0.0;
    out[N] = 0.0;
    out[1] = -(s.H[1] - s.H[0]) / dx + r * (11.0 * u[0] - 20.0 * u[1] + 6.0 * u[2] + 4.0 * u[3] - u[4]);
    for (int j = 2; j <= N - 2; ++j)
        out[j] = -(s.H[j] - s.H[j - 1]) / dx
                 + r * (-u[j - 2] + 16.0 * u[j - 1] - 30.0 * u[j] + 16.0 * u[j + 1] - u[j + 2]);
    out[N - 1] = -(s.H[N - 1] - s.H[N - 2]) / dx
                 + r * (11.0 * u[N] - 20.0 * u[N - 1] + 6.0 * u[N - 2] + 4.0 * u[N - 3] - u[N - 4]);
}

const std::vector<double>& Scheme3Integrator::to_u(std::span<const double> wbar, double t)
{
    auto& s = *impl_;
    s.ub.assign(wbar.begin(), wbar.end());
    s.nodes_solver.solve(s.ub, s.ctx.bc.g(t), s.ctx.bc.h(t));
    return s.ub;
}

void Scheme3Integrator::step(std::vector<double>& y, double t, double dt)
{
    auto& s = *impl_;
    const std::size_t n = y.size();
    s.k1.resize(n);
    s.k2.resize(n);
    s.k3.resize(n);
    s.k4.resize(n);
    s.tmp.resize(n);
    rhs(t, y, s.k1);
    for (std::size_t i = 0; i < n; ++i)
        s.tmp[i] = y[i] + 0.5 * dt * s.k1[i];
    rhs(t + 0.5 * dt, s.tmp, s.k2);
    for (std::size_t i = 0; i < n; ++i)
        s.tmp[i] = y[i] + 0.5 * dt * s.k2[i];
    rhs(t + 0.5 * dt, s.tmp, s.k3);
    for (std::size_t i = 0; i < n; ++i)
        s.tmp[i] = y[i] + dt * s.k3[i];
    rhs(t + dt, s.tmp, s.k4);
    for (std::size_t i = 0; i < n; ++i)
        y[i] += dt / 6.0 * (s.k1[i] + 2.0 * s.k2[i] + 2.0 * s.k3[i] + s.k4[i]);
    y.front() = s.ctx.bc.g(t + dt);
    y.back() = s.ctx.bc.h(t + dt);
}

std::vector<double> semidiscrete_rhs(std::span<const double> wbar, double t, const Scheme3Context& ctx)
{
    if (wbar.size() != std::size_t(ctx.grid.n_cells) + 1)
        throw ValidationError("semidiscrete_rhs: expected n_cells+1 cell averages");
    Scheme3Integrator integ(ctx);
    std::vector<double> out(wbar.size());
    integ.rhs(t, wbar, out);
    return out;
}

std::vector<double> rk4_step(std::span<const double> y, double t, double dt, const OdeRhs& f)
{
    const std::size_t n = y.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n), out(y.begin(), y.end());
    f(t, y, k1);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + 0.5 * dt * k1[i];
    f(t + 0.5 * dt, tmp, k2);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + 0.5 * dt * k2[i];
    f(t + 0.5 * dt, tmp, k3);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + dt * k3[i];
    f(t + dt, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

std::vector<double> rk4_step(std::span<const double> wbar, double t, double dt, const Scheme3Context& ctx)
{
    Scheme3Integrator integ(ctx);
    std::vector<double> y(wbar.begin(), wbar.end());
    integ.step(y, t, dt);
    return y;
}

std::vector<double> cell_averages(const GridSpec& grid, const std::function<double(double)>& u0)
{
    // five-point Gauss-Legendre on [-1/2, 1/2]
    static constexpr std::array<double, 5> xg = {-0.4530899229693320, -0.2692346550528416, 0.0,
                                                 0.2692346550528416, 0.4530899229693320};
    static constexpr std::array<double, 5> wg = {0.1184634425280945, 0.2393143352496832, 0.2844444444444444,
                                                 0.2393143352496832, 0.1184634425280945};
    std::vector<double> avg(std::size_t(grid.n_cells) + 1);
    for (int j = 0; j <= grid.n_cells; ++j) {
        double s = 0.0;
        for (int q = 0; q < 5; ++q)
            s += wg[q] * u0(grid.node(j) + xg[q] * grid.dx);
        avg[j] = s;
    }
    return avg;
}

std::vector<double> cell_to_point(std::span<const double> avg)
{
    std::vector<double> p(avg.begin(), avg.end());
    for (std::size_t j = 1; j + 1 < avg.size(); ++j)
        p[j] = avg[j] - (avg[j - 1] - 2.0 * avg[j] + avg[j + 1]) / 24.0;
    return p;
}

Scheme3State make_scheme3_state(const Scheme3Context& ctx, std::span<const double> ubar0)
{
    ctx.grid.validate();
    ctx.params.validate();
    if (ubar0.size() != std::size_t(ctx.grid.n_cells) + 1)
        throw ValidationError("scheme3: initial data must have n_cells+1 cell averages");
    if (ctx.grid.n_cells < 5)
        throw ValidationError("scheme3: need at least 5 cells");
    std::vector<double> u(ubar0.begin(), ubar0.end());
    u.front() = ctx.bc.g(0.0);
    u.back() = ctx.bc.h(0.0);
    Scheme3State s{.wbar = {}, .ctx = ctx};
    s.wbar.values = helmholtz_apply(u, ctx.params, ctx.grid.dx, 4);
    s.wbar.phase = Phase::integer_grid;
    s.wbar.time = 0.0;
    return s;
}

Field scheme3_u(const Scheme3State& state)
{
    const auto& c = state.ctx;
    Field u = state.wbar;
    u.values = helmholtz_solve(state.wbar.values, c.bc.g(u.time), c.bc.h(u.time), c.params, c.grid.dx, 4);
    return u;
}

std::vector<Field> run(Scheme3State& st, double t_final, std::span<const double> snapshot_times)
{
    if (!(t_final > 0.0))
        throw ValidationError("run: t_final must be positive");
    if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end()))
        throw ValidationError("run: snapshot times must be sorted");
    std::vector<double> targets;
    for (double ts : snapshot_times) {
        if (ts < st.wbar.time - 1e-12 || ts > t_final + 1e-12)
            throw ValidationError("run: snapshot time outside [t0, t_final]");
        targets.push_back(std::min(ts, t_final));
    }
    if (targets.empty() || targets.back() < t_final - 1e-12)
        targets.push_back(t_final);

    const auto& ctx = st.ctx;
    Scheme3Integrator integ(ctx);
    const double dt = ctx.grid.lambda * ctx.grid.dx;
    std::vector<Field> out;
    auto& y = st.wbar.values;
    for (double target : targets) {
        const double remaining = target - st.wbar.time;
        if (remaining > 1e-14 * std::max(1.0, target)) {
            const long steps = std::max(1L, long(std::ceil(remaining / dt - 1e-9)));
            for (long k = 0; k < steps; ++k) {
                const double h = (k == steps - 1) ? target - st.wbar.time : dt;
                const auto& u = integ.to_u(y, st.wbar.time);
                double fmax = 0.0;
                bool guard = false;
                for (double x : u) {
                    fmax = std::max(fmax, flux_deriv(x, ctx.model));
                    guard = guard || x < -0.1 || x > 1.1;
                }
                st.guard_violations += guard ? 1 : 0;
                const double margin = 0.5 - (h / ctx.grid.dx) * fmax;
                if (!(margin > 0.0)) {
                    std::ostringstream os;
                    os << "CFL violated: lambda*max|f'| = " << 0.5 - margin << " >= 0.5";
                    throw NumericalError(os.str());
                }
                st.min_cfl_margin = std::min(st.min_cfl_margin, margin);
                integ.step(y, st.wbar.time, h);
                st.wbar.time += h;
                if (!all_finite(y))
                    throw NumericalError("scheme3: non-finite value at t = " + std::to_string(st.wbar.time));
            }
            st.wbar.time = target;
        }
        out.push_back(scheme3_u(st));
    }
    return out;
}

} // namespace mbl
