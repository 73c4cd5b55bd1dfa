#include "mbl/scheme2.hpp"

#include "mbl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

namespace mbl {

Boundary Boundary::constant(double left, double right)
{
    Boundary b;
    b.g = [left](double) { return left; };
    b.h = [right](double) { return right; };
    return b;
}

double minmod(double a, double b)
{
    if (a > 0.0 && b > 0.0)
        return std::min(a, b);
    if (a < 0.0 && b < 0.0)
        return std::max(a, b);
    return 0.0;
}

std::vector<double> slopes(std::span<const double> v)
{
    const std::size_t n = v.size();
    if (n < 3)
        throw ValidationError("slopes: need at least 3 values");
    std::vector<double> s(n);
    s[0] = v[1] - v[0];
    for (std::size_t j = 1; j + 1 < n; ++j)
        s[j] = minmod(v[j + 1] - v[j], v[j] - v[j - 1]);
    s[n - 1] = v[n - 1] - v[n - 2];
    return s;
}

namespace {

double max_abs_deriv(std::span<const double> u, const FluxModel& model)
{
    double m = 0.0;
    for (double x : u)
        m = std::max(m, std::abs(flux_deriv(x, model)));
    return m;
}

// Limited slopes with ghost copies of the end values (zero slope at both ends).
void ghost_slopes(std::span<const double> v, std::span<double> s)
{
    const std::size_t n = v.size();
    s[0] = 0.0;
    s[n - 1] = 0.0;
    for (std::size_t j = 1; j + 1 < n; ++j)
        s[j] = minmod(v[j + 1] - v[j], v[j] - v[j - 1]);
}

} // namespace

CflResult cfl_check(std::span<const double> u, const GridSpec& grid, const FluxModel& model)
{
    const double margin = 0.5 - grid.lambda * max_abs_deriv(u, model);
    return {margin > 0.0, margin};
}

Scheme2State make_scheme2_state(const GridSpec& grid, const MBLParams& params, const FluxModel& model,
                                Variant variant, Boundary bc, std::span<const double> u0)
{
    grid.validate();
    params.validate();
    if (u0.size() != std::size_t(grid.n_cells) + 1)
        throw ValidationError("scheme2: initial data must have n_cells+1 node values");
    Scheme2State s{.u = {}, .w = {}, .grid = grid, .params = params, .model = model, .variant = variant,
                   .bc = std::move(bc)};
    s.u.values.assign(u0.begin(), u0.end());
    s.u.values.front() = s.bc.g(0.0);
    s.u.values.back() = s.bc.h(0.0);
    s.u.phase = Phase::integer_grid;
    s.u.time = 0.0;
    s.w = s.u;
    s.w.values = helmholtz_apply(s.u.values, params, grid.dx, 2);
    return s;
}

struct Scheme2Stepper::Cache {
    std::map<std::pair<int, double>, std::unique_ptr<HelmholtzSolver>> solvers;

    const HelmholtzSolver& get(int n, double kappa, double dx)
    {
        auto& slot = solvers[{n, kappa}];
        if (!slot)
            slot = std::make_unique<HelmholtzSolver>(n, kappa, dx, 2);
        return *slot;
    }
};

Scheme2Stepper::Scheme2Stepper(const GridSpec& grid, const MBLParams& params, const FluxModel& model,
                               Variant variant)
    : cache_(std::make_unique<Cache>()), grid_(grid), params_(params), model_(model), variant_(variant)
{
}

Scheme2Stepper::~Scheme2Stepper() = default;

std::vector<double> Scheme2Stepper::extended(const Field& u, const Boundary& bc)
{
    std::vector<double> e;
    if (u.phase == Phase::integer_grid) {
        e = u.values;
    } else {
        e.reserve(u.values.size() + 2);
        e.push_back(0.0);
        e.insert(e.end(), u.values.begin(), u.values.end());
        e.push_back(0.0);
    }
    e.front() = bc.g(u.time);
    e.back() = bc.h(u.time);
    return e;
}

void Scheme2Stepper::step(Scheme2State& st, double dt)
{
    const double dx = grid_.dx;
    const double eps = params_.epsilon;
    const double kappa = params_.kappa();
    const double lam = dt / dx;
    const double t = st.u.time;
    const bool to_half = st.u.phase == Phase::integer_grid;

    E_ = extended(st.u, st.bc);
    const int m = int(E_.size());
    // midpoints k in [k0, k1) become the new interior values
    const int k0 = to_half ? 0 : 1;
    const int k1 = to_half ? m - 1 : m - 2;
    const int mo = k1 - k0 + 2;

    const double margin = 0.5 - lam * max_abs_deriv(E_, model_);
    if (!(margin > 0.0)) {
        std::ostringstream os;
        os << "CFL violated: lambda*max|f'| = " << lam * max_abs_deriv(E_, model_) << " >= 0.5";
        throw NumericalError(os.str());
    }
    st.min_cfl_margin = std::min(st.min_cfl_margin, margin);

    const double g0 = st.bc.g(t), h0 = st.bc.h(t);
    const double gh = st.bc.g(t + 0.5 * dt), hh = st.bc.h(t + 0.5 * dt);
    const double g1 = st.bc.g(t + dt), h1 = st.bc.h(t + dt);
    const double r = 1.0 / (dx * dx);

    // w(t) on the current grid; w = u at the ends
    wE_.resize(m);
    wE_[0] = E_[0];
    wE_[m - 1] = E_[m - 1];
    for (int j = 1; j < m - 1; ++j)
        wE_[j] = E_[j] - kappa * r * (E_[j - 1] - 2.0 * E_[j] + E_[j + 1]);

    // staggered averages of w(t) and their u-counterparts
    s_.resize(m);
    ghost_slopes(wE_, s_);
    wbar_.resize(mo);
    for (int k = k0; k < k1; ++k)
        wbar_[k - k0 + 1] = 0.5 * (wE_[k] + wE_[k + 1]) + 0.125 * (s_[k] - s_[k + 1]);
    ubar_ = wbar_;
    cache_->get(mo, kappa, dx).solve(ubar_, g0, h0);

    // predictor: w and u at t + dt/2 on the current grid
    wp_.resize(m);
    {
        double fm = flux(E_[0], model_);
        double f0 = flux(E_[1], model_);
        for (int j = 1; j < m - 1; ++j) {
            const double fp = flux(E_[j + 1], model_);
            const double fprime = minmod(fp - f0, f0 - fm);
            wp_[j] = wE_[j] + 0.5 * eps * dt * r * (E_[j - 1] - 2.0 * E_[j] + E_[j + 1]) - 0.5 * lam * fprime;
            fm = f0;
            f0 = fp;
        }
    }
    wp_[0] = gh;
    wp_[m - 1] = hh;
    up_ = wp_;
    cache_->get(m, kappa, dx).solve(up_, gh, hh);

    out_.resize(mo);
    if (variant_ == Variant::trapezoid) {
        const double kp = kappa + 0.5 * eps * dt;
        for (int k = k0; k < k1; ++k) {
            const int i = k - k0 + 1;
            const double d2 = r * (ubar_[i - 1] - 2.0 * ubar_[i] + ubar_[i + 1]);
            const double df = flux(up_[k + 1], model_) - flux(up_[k], model_);
            out_[i] = wbar_[i] + 0.5 * eps * dt * d2 - lam * df;
        }
        cache_->get(mo, kp, dx).solve(out_, g1, h1);
    } else {
        sp_.resize(m);
        ghost_slopes(wp_, sp_);
        ubp_.resize(mo);
        for (int k = k0; k < k1; ++k)
            ubp_[k - k0 + 1] = 0.5 * (wp_[k] + wp_[k + 1]) + 0.125 * (sp_[k] - sp_[k + 1]);
        cache_->get(mo, kappa, dx).solve(ubp_, gh, hh);
        for (int k = k0; k < k1; ++k) {
            const int i = k - k0 + 1;
            const double d2 = r * (ubp_[i - 1] - 2.0 * ubp_[i] + ubp_[i + 1]);
            const double df = flux(up_[k + 1], model_) - flux(up_[k], model_);
            out_[i] = wbar_[i] - lam * df + eps * dt * d2;
        }
        cache_->get(mo, kappa, dx).solve(out_, g1, h1);
    }

    if (!all_finite(out_))
        throw NumericalError("scheme2: non-finite value at t = " + std::to_string(t + dt));
    for (int i = 1; i < mo - 1; ++i) {
        if (out_[i] < -0.1 || out_[i] > 1.1) {
            ++st.guard_violations;
            break;
        }
    }

    st.u.time = t + dt;
    if (to_half) {
        st.u.values.assign(out_.begin() + 1, out_.end() - 1);
        st.u.phase = Phase::half_grid;
    } else {
        st.u.values = out_;
        st.u.phase = Phase::integer_grid;
    }
}

namespace {

void refresh_w(Scheme2State& st)
{
    auto e = Scheme2Stepper::extended(st.u, st.bc);
    auto w = helmholtz_apply(e, st.params, st.grid.dx, 2);
    st.w.phase = st.u.phase;
    st.w.time = st.u.time;
    if (st.u.phase == Phase::integer_grid)
        st.w.values = std::move(w);
    else
        st.w.values.assign(w.begin() + 1, w.end() - 1);
}

Scheme2State single_step(const Scheme2State& state, Variant v)
{
    Scheme2State next = state;
    next.variant = v;
    Scheme2Stepper stepper(state.grid, state.params, state.model, v);
    stepper.step(next, state.grid.lambda * state.grid.dx);
    refresh_w(next);
    return next;
}

} // namespace

std::vector<double> predictor(const Scheme2State& st)
{
    const double dx = st.grid.dx;
    const double dt = st.grid.lambda * dx;
    const auto E = Scheme2Stepper::extended(st.u, st.bc);
    const auto wE = helmholtz_apply(E, st.params, dx, 2);
    const int m = int(E.size());
    std::vector<double> f(m);
    for (int j = 0; j < m; ++j)
        f[j] = flux(E[j], st.model);
    std::vector<double> wp(m);
    for (int j = 1; j < m - 1; ++j) {
        const double d2 = (E[j - 1] - 2.0 * E[j] + E[j + 1]) / (dx * dx);
        wp[j] = wE[j] + (st.params.epsilon * dx * d2 - minmod(f[j + 1] - f[j], f[j] - f[j - 1])) * st.grid.lambda / 2.0;
    }
    wp[0] = st.bc.g(st.u.time + 0.5 * dt);
    wp[m - 1] = st.bc.h(st.u.time + 0.5 * dt);
    return wp;
}

Scheme2State step_trapezoid(const Scheme2State& state) { return single_step(state, Variant::trapezoid); }

Scheme2State step_midpoint(const Scheme2State& state) { return single_step(state, Variant::midpoint); }

std::vector<Field> run(Scheme2State& st, double t_final, std::span<const double> snapshot_times)
{
    if (!(t_final > 0.0))
        throw ValidationError("run: t_final must be positive");
    if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end()))
        throw ValidationError("run: snapshot times must be sorted");
    if (st.u.phase != Phase::integer_grid)
        throw ValidationError("run: state must start on the integer grid");

    std::vector<double> targets;
    for (double ts : snapshot_times) {
        if (ts < st.u.time - 1e-12 || ts > t_final + 1e-12)
            throw ValidationError("run: snapshot time outside [t0, t_final]");
        targets.push_back(std::min(ts, t_final));
    }
    if (targets.empty() || targets.back() < t_final - 1e-12)
        targets.push_back(t_final);

    Scheme2Stepper stepper(st.grid, st.params, st.model, st.variant);
    const double dt = st.grid.lambda * st.grid.dx;
    std::vector<Field> out;
    for (double target : targets) {
        const double remaining = target - st.u.time;
        if (remaining > 1e-14 * std::max(1.0, target)) {
            const long pairs = std::max(1L, long(std::ceil(remaining / (2.0 * dt) - 1e-9)));
            for (long p = 0; p < pairs; ++p) {
                const double h = (p == pairs - 1) ? 0.5 * (target - st.u.time) : dt;
                stepper.step(st, h);
                stepper.step(st, h);
            }
            st.u.time = target;
        }
        out.push_back(st.u);
    }
    refresh_w(st);
    return out;
}

} // namespace mbl
