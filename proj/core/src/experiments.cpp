#include "mbl/experiments.hpp"

#include "mbl/errors.hpp"
#include "mbl/scheme2.hpp"
#include "mbl/scheme3.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <thread>

namespace mbl {

double smooth_ramp_ic(double x, double u_B)
{
    constexpr double xi = 5.0;
    const double y = x - 5.0;
    double H;
    if (y < -xi)
        H = 1.0;
    else if (y > xi)
        H = 0.0;
    else
        H = 1.0 - 0.5 * (1.0 + y / xi + std::sin(std::numbers::pi * y / xi) / std::numbers::pi);
    return u_B * H;
}

RunOutput simulate(SchemeKind scheme, const GridSpec& grid, const MBLParams& params, const FluxModel& model,
                   const std::function<double(double)>& u0, double left, double right, double t_final,
                   std::span<const double> snapshot_times)
{
    RunOutput out;
    out.grid = grid;
    const Boundary bc = Boundary::constant(left, right);
    if (scheme == SchemeKind::third_order) {
        const Scheme3Context ctx{grid, params, model, bc};
        auto st = make_scheme3_state(ctx, cell_averages(grid, u0));
        out.snapshots = run(st, t_final, snapshot_times);
        for (auto& f : out.snapshots)
            f.values = cell_to_point(f.values);
        out.guard_violations = st.guard_violations;
        out.min_cfl_margin = st.min_cfl_margin;
        return out;
    }
    std::vector<double> nodes(std::size_t(grid.n_cells) + 1);
    for (int j = 0; j <= grid.n_cells; ++j)
        nodes[j] = u0(grid.node(j));
    const Variant v = scheme == SchemeKind::trapezoid ? Variant::trapezoid : Variant::midpoint;
    auto st = make_scheme2_state(grid, params, model, v, bc, nodes);
    out.snapshots = run(st, t_final, snapshot_times);
    out.guard_violations = st.guard_violations;
    out.min_cfl_margin = st.min_cfl_margin;
    return out;
}

RunOutput simulate(const RunManifest& m)
{
    m.validate();
    const FluxModel model(m.M);
    const double u_B = m.u_B, L0 = m.L0;
    std::function<double(double)> u0;
    if (m.ic_kind == IcKind::riemann)
        u0 = [u_B, L0](double x) { return x <= L0 ? u_B : 0.0; };
    else
        u0 = [u_B](double x) { return smooth_ramp_ic(x, u_B); };
    auto out = simulate(m.scheme, m.grid(), m.params(), model, u0, u_B, 0.0, m.t_final, m.snapshot_times);
    out.warnings = m.warnings();
    return out;
}

std::vector<OrderRow> order_table(SchemeKind scheme, double tau, double u_B, std::span<const int> levels,
                                  const OrderTestConfig& cfg)
{
    if (levels.empty())
        throw ValidationError("order_table: no levels");
    const FluxModel model(cfg.M);
    const MBLParams params{cfg.epsilon, tau};
    auto u0 = [u_B](double x) { return smooth_ramp_ic(x, u_B); };

    std::map<int, std::vector<double>> sol;
    auto solve = [&](int N) -> const std::vector<double>& {
        auto it = sol.find(N);
        if (it != sol.end())
            return it->second;
        const auto grid = GridSpec::make(cfg.L, N, cfg.lambda, cfg.x0);
        auto r = simulate(scheme, grid, params, model, u0, u0(cfg.x0), u0(cfg.x0 + cfg.L), cfg.t_final, {});
        return sol.emplace(N, r.final().values).first->second;
    };

    std::vector<OrderRow> rows;
    for (int N : levels) {
        const auto& c = solve(N);
        const auto& f = solve(2 * N);
        const double dx = cfg.L / N;
        OrderRow row{N, 0.0, 0.0, 0.0, {}, {}, {}};
        for (int j = 0; j <= N; ++j) {
            const double d = std::abs(c[j] - f[2 * j]);
            row.l1 += d * dx;
            row.l2 += d * d * dx;
            row.linf = std::max(row.linf, d);
        }
        row.l2 = std::sqrt(row.l2);
        if (!rows.empty() && rows.back().N * 2 == N) {
            const auto& p = rows.back();
            row.order_l1 = std::log2(p.l1 / row.l1);
            row.order_l2 = std::log2(p.l2 / row.l2);
            row.order_linf = std::log2(p.linf / row.linf);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::pair<double, double>> reference_nine_cells(const FluxModel& model)
{
    std::vector<std::pair<double, double>> p;
    for (double tau : {0.2, 1.0, 5.0})
        for (double u : {0.9, model.alpha(), 0.75})
            p.emplace_back(tau, u);
    return p;
}

std::vector<std::pair<double, double>> default_sweep_pairs(const FluxModel& model)
{
    auto p = reference_nine_cells(model);
    for (double u : {0.99, 0.98, 0.97})
        p.emplace_back(5.0, u);
    for (double u : {0.70, 0.69, 0.68, 0.67, 0.66})
        p.emplace_back(5.0, u);
    for (double tau : {0.2, 1.0, 5.0})
        p.emplace_back(tau, 0.6);
    return p;
}

void parallel_for(int n, int threads, const std::function<void(int)>& job)
{
    if (threads <= 0)
        threads = int(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i)
            job(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++)
                job(i);
        });
}

std::vector<SweepEntry> bifurcation_sweep(std::span<const std::pair<double, double>> pairs, const RunManifest& base,
                                          int threads)
{
    std::vector<SweepEntry> out(pairs.size());
    parallel_for(int(pairs.size()), threads, [&](int i) {
        SweepEntry& e = out[i];
        e.tau = pairs[i].first;
        e.u_B = pairs[i].second;
        try {
            RunManifest m = base;
            m.tau = e.tau;
            m.u_B = e.u_B;
            m.snapshot_times.clear();
            const auto r = simulate(m);
            e.x = r.grid.nodes();
            e.u = r.final().values;
            e.report = classify_profile(e.u, r.grid.dx, e.u_B, classify_options(base.epsilon, r.grid.dx));
        } catch (const std::exception& ex) {
            e.error = ex.what();
        }
    });
    std::sort(out.begin(), out.end(), [](const SweepEntry& a, const SweepEntry& b) {
        return std::pair(a.tau, a.u_B) < std::pair(b.tau, b.u_B);
    });
    return out;
}

namespace {

double min_bound(const RunManifest& m, double L, double t, double* best_lambda)
{
    if (!(m.tau > 0.0))
        return std::numeric_limits<double>::infinity();
    BoundParams p;
    p.C_u = m.u_B;
    p.g_sup = m.u_B;
    p.L0 = m.L0;
    p.L = L;
    p.M = m.M;
    p.epsilon = m.epsilon;
    p.tau = m.tau;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 20; ++k) {
        p.lambda = 0.05 * k;
        const double b = bound_constants(p, t).bound;
        if (b < best) {
            best = b;
            if (best_lambda)
                *best_lambda = p.lambda;
        }
    }
    return best;
}

struct Diff {
    double sup, h1;
};

Diff restricted_diff(std::span<const double> small, std::span<const double> large, const MBLParams& params,
                     double dx)
{
    std::vector<double> d(small.size());
    double sup = 0.0;
    for (std::size_t j = 0; j < small.size(); ++j) {
        d[j] = small[j] - large[j];
        sup = std::max(sup, std::abs(d[j]));
    }
    return {sup, weighted_h1_norm(d, params, dx)};
}

} // namespace

DomainComparison compare_domains(const RunManifest& base, double L_small, double L_large, double t)
{
    if (!(L_small > base.L0) || !(L_large >= L_small))
        throw ValidationError("compare_domains: need L0 < L_small <= L_large");
    RunManifest a = base, b = base;
    a.L = L_small;
    b.L = L_large;
    a.t_final = b.t_final = t;
    a.snapshot_times.clear();
    b.snapshot_times.clear();
    const auto ra = simulate(a);
    const auto rb = simulate(b);
    if (std::abs(ra.grid.dx - rb.grid.dx) > 1e-12 * ra.grid.dx)
        throw ValidationError("compare_domains: both domains must share dx");
    const auto diff = restricted_diff(ra.final().values, rb.final().values, base.params(), ra.grid.dx);
    DomainComparison c{diff.h1, diff.sup, 0.0, 0.0};
    c.bound = min_bound(base, L_small, t, &c.bound_lambda);
    return c;
}

std::vector<DomainStudyRow> domain_study(const RunManifest& base, std::span<const double> L_values,
                                         std::span<const double> times)
{
    if (L_values.empty() || times.empty())
        throw ValidationError("domain_study: need L values and times");
    std::vector<double> Ls(L_values.begin(), L_values.end());
    std::sort(Ls.begin(), Ls.end());
    std::vector<double> ts(times.begin(), times.end());
    std::sort(ts.begin(), ts.end());

    std::vector<RunOutput> runs(Ls.size());
    std::vector<std::string> errors(Ls.size());
    parallel_for(int(Ls.size()), 0, [&](int i) {
        RunManifest m = base;
        m.L = Ls[i];
        m.t_final = ts.back();
        m.snapshot_times = ts;
        try {
            runs[i] = simulate(m);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty())
            throw NumericalError("domain_study: " + e);

    const auto& ref = runs.back();
    std::vector<DomainStudyRow> rows;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const auto& uref = ref.snapshots[k].values;
        const double lead = classify_profile(uref, ref.grid.dx, base.u_B, classify_options(base.epsilon, ref.grid.dx)).leading_shock;
        for (std::size_t i = 0; i < Ls.size(); ++i) {
            const auto& u = runs[i].snapshots[k].values;
            const auto d = restricted_diff(u, uref, base.params(), runs[i].grid.dx);
            DomainStudyRow row{};
            row.t = ts[k];
            row.L = Ls[i];
            row.sup_diff = d.sup;
            row.h1_diff = d.h1;
            row.bound = min_bound(base, Ls[i], ts[k], nullptr);
            row.truncated = classify_profile(u, runs[i].grid.dx, base.u_B, classify_options(base.epsilon, runs[i].grid.dx)).classification
                            == ProfileClass::truncated_invalid;
            row.sizing_ok = Ls[i] > lead && !row.truncated;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<EpsRow> epsilon_sweep(const RunManifest& base, std::span<const double> eps_values, int threads)
{
    std::vector<EpsRow> rows(eps_values.size());
    std::vector<std::string> errors(eps_values.size());
    parallel_for(int(eps_values.size()), threads, [&](int i) {
        RunManifest m = base;
        m.epsilon = eps_values[i];
        m.snapshot_times.clear();
        try {
            const auto r = simulate(m);
            const auto rep = classify_profile(r.final().values, r.grid.dx, m.u_B, classify_options(m.epsilon, r.grid.dx));
            const double post = rep.plateau_value.value_or(m.u_B);
            rows[i] = {m.epsilon, transition_width(r.final().values, r.grid.dx, post), rep.plateau_value,
                       rep.classification};
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty())
            throw NumericalError("epsilon_sweep: " + e);
    std::sort(rows.begin(), rows.end(), [](const EpsRow& a, const EpsRow& b) { return a.epsilon < b.epsilon; });
    return rows;
}

} // namespace mbl
