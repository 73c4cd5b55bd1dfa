#include "mbl/classify.hpp"
#include "mbl/errors.hpp"
#include "mbl/experiments.hpp"
#include "mbl/export.hpp"
#include "mbl/manifest.hpp"
#include "mbl/theory.hpp"
#include "mbl/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace mbl;
using nlohmann::json;

namespace {

// Manifest file plus per-field overrides, merged before validation.
struct ManifestArgs {
    std::string path;
    std::optional<std::string> scheme, ic_kind, output_dir, u_B;
    std::optional<double> M, epsilon, tau, L, L0, dx, lambda, t_final;
    std::optional<std::vector<double>> snapshot_times;

    void attach(CLI::App* app)
    {
        app->add_option("manifest", path, "run manifest (JSON); defaults apply when omitted");
        app->add_option("--scheme", scheme, "trapezoid | midpoint | third_order");
        app->add_option("--ic", ic_kind, "riemann | smooth_ramp");
        app->add_option("--out", output_dir, "output directory");
        app->add_option("--u-B", u_B, "left state, a number or 'alpha'");
        app->add_option("--M", M, "viscosity ratio");
        app->add_option("--eps", epsilon, "epsilon");
        app->add_option("--tau", tau, "tau");
        app->add_option("--L", L, "domain length");
        app->add_option("--L0", L0, "initial plateau length");
        app->add_option("--dx", dx, "cell width");
        app->add_option("--lambda", lambda, "dt/dx");
        app->add_option("--t-final", t_final, "final time");
        app->add_option("--snapshots", snapshot_times, "snapshot times")->delimiter(',');
    }

    RunManifest load() const
    {
        json j = json::object();
        if (!path.empty()) {
            std::ifstream in(path);
            if (!in)
                throw IoError("cannot read manifest " + path);
            std::stringstream ss;
            ss << in.rdbuf();
            try {
                j = json::parse(ss.str());
            } catch (const json::parse_error& e) {
                throw ValidationError(std::string("manifest: ") + e.what());
            }
            if (!j.is_object())
                throw ValidationError("manifest: top level must be an object");
        }
        auto set = [&](const char* key, const auto& v) {
            if (v)
                j[key] = *v;
        };
        set("scheme", scheme);
        set("ic_kind", ic_kind);
        set("output_dir", output_dir);
        set("M", M);
        set("epsilon", epsilon);
        set("tau", tau);
        set("L", L);
        set("L0", L0);
        set("dx", dx);
        set("lambda", lambda);
        set("t_final", t_final);
        set("snapshot_times", snapshot_times);
        if (u_B) {
            if (*u_B == "alpha")
                j["u_B"] = "alpha";
            else
                j["u_B"] = std::stod(*u_B);
        }
        return manifest_from_json(j.dump());
    }
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void warn(const RunManifest& m)
{
    for (const auto& w : m.warnings())
        std::cerr << "warning: " << w << "\n";
}

std::filesystem::path out_file(const RunManifest& m, const char* name) { return std::filesystem::path(m.output_dir) / name; }

int cmd_riemann(const ManifestArgs& a, bool no_plot)
{
    const auto m = a.load();
    warn(m);
    const auto run = simulate(m);
    const auto r = classify_profile(run.final(), m, FluxModel(m.M));
    const auto dir = export_run(m, &run, !no_plot);
    std::cout << "scheme " << to_string(m.scheme) << "  tau " << m.tau << "  u_B " << m.u_B << "  eps " << m.epsilon
              << "  t " << run.final().time << "\n"
              << "class " << to_string(r.classification) << "\n"
              << "plateau " << (r.plateau_value ? num(*r.plateau_value) : "-") << "\n"
              << "leading shock " << num(r.leading_shock) << "  (/t = " << num(r.leading_shock / m.t_final) << ")\n"
              << "overshoot " << num(r.overshoot) << "\n"
              << "min CFL margin " << num(run.min_cfl_margin) << "  guard violations " << run.guard_violations << "\n"
              << "wrote " << dir.string() << "\n";
    if (m.tau > kTauStar)
        std::cout << "note: tau > tau* = " << kTauStar << ", non-monotone profiles possible\n";
    return 0;
}

int cmd_order(const ManifestArgs& a, std::vector<int> levels, const OrderTestConfig& cfg)
{
    const auto m = a.load();
    const auto rows = order_table(m.scheme, m.tau, m.u_B, levels, cfg);
    std::ostringstream csv;
    csv << "N,l1,order_l1,l2,order_l2,linf,order_linf\n";
    std::printf("%6s %12s %7s %12s %7s %12s %7s\n", "N", "L1", "p", "L2", "p", "Linf", "p");
    auto p = [](const std::optional<double>& o) { return o ? num(*o) : std::string("-"); };
    for (const auto& r : rows) {
        std::printf("%6d %12.4e %7s %12.4e %7s %12.4e %7s\n", r.N, r.l1, p(r.order_l1).c_str(), r.l2,
                    p(r.order_l2).c_str(), r.linf, p(r.order_linf).c_str());
        csv << r.N << ',' << r.l1 << ',' << p(r.order_l1) << ',' << r.l2 << ',' << p(r.order_l2) << ',' << r.linf
            << ',' << p(r.order_linf) << '\n';
    }
    write_text(out_file(m, "order_table.csv"), csv.str());
    return 0;
}

int cmd_sweep(const ManifestArgs& a, bool nine, int threads)
{
    const auto m = a.load();
    const FluxModel model(m.M);
    const auto pairs = nine ? reference_nine_cells(model) : default_sweep_pairs(model);
    const auto entries = bifurcation_sweep(pairs, m, threads);
    std::ostringstream csv;
    csv << "tau,u_B,class,plateau,leading_shock,overshoot,error\n";
    std::printf("%6s %8s %-26s %9s %9s %9s\n", "tau", "u_B", "class", "plateau", "shock", "overshoot");
    int failed = 0;
    for (const auto& e : entries) {
        if (!e.report) {
            ++failed;
            std::printf("%6g %8.4f error: %s\n", e.tau, e.u_B, e.error.c_str());
            csv << e.tau << ',' << e.u_B << ",,,,," << '"' << e.error << '"' << '\n';
            continue;
        }
        const auto& r = *e.report;
        const std::string plateau = r.plateau_value ? num(*r.plateau_value) : "-";
        std::printf("%6g %8.4f %-26s %9s %9.4f %9.4f\n", e.tau, e.u_B, std::string(to_string(r.classification)).c_str(),
                    plateau.c_str(), r.leading_shock, r.overshoot);
        csv << e.tau << ',' << e.u_B << ',' << to_string(r.classification) << ','
            << (r.plateau_value ? num(*r.plateau_value) : "") << ',' << r.leading_shock << ',' << r.overshoot << ",\n";
    }
    write_text(out_file(m, "sweep.csv"), csv.str());
    return failed ? 3 : 0;
}

int cmd_domain(const ManifestArgs& a, const std::vector<double>& Ls, const std::vector<double>& ts)
{
    const auto m = a.load();
    const auto rows = domain_study(m, Ls, ts);
    std::ostringstream csv;
    csv << "t,L,sup_diff,h1_diff,bound,truncated,sizing_ok\n";
    std::printf("%8s %8s %12s %12s %12s %10s %7s\n", "t", "L", "sup", "H1", "bound", "truncated", "sized");
    for (const auto& r : rows) {
        std::printf("%8g %8g %12.4e %12.4e %12.4e %10s %7s\n", r.t, r.L, r.sup_diff, r.h1_diff, r.bound,
                    r.truncated ? "yes" : "no", r.sizing_ok ? "yes" : "no");
        csv << r.t << ',' << r.L << ',' << r.sup_diff << ',' << r.h1_diff << ',' << r.bound << ',' << r.truncated << ','
            << r.sizing_ok << '\n';
    }
    write_text(out_file(m, "domain_study.csv"), csv.str());
    return 0;
}

int cmd_eps(const ManifestArgs& a, const std::vector<double>& eps, int threads)
{
    const auto m = a.load();
    const auto rows = epsilon_sweep(m, eps, threads);
    std::ostringstream csv;
    csv << "epsilon,transition_width,plateau,class\n";
    std::printf("%10s %12s %9s %s\n", "eps", "width", "plateau", "class");
    for (const auto& r : rows) {
        const std::string plateau = r.plateau_value ? num(*r.plateau_value) : "-";
        std::printf("%10g %12.4e %9s %s\n", r.epsilon, r.transition_width, plateau.c_str(),
                    std::string(to_string(r.classification)).c_str());
        csv << r.epsilon << ',' << r.transition_width << ',' << (r.plateau_value ? num(*r.plateau_value) : "") << ','
            << to_string(r.classification) << '\n';
    }
    write_text(out_file(m, "eps_sweep.csv"), csv.str());
    return 0;
}

int cmd_lemma(const std::string& which, double M)
{
    std::vector<LemmaId> ids;
    if (which == "all")
        ids.assign(kAllLemmas.begin(), kAllLemmas.end());
    else
        ids.push_back(parse_lemma(which));
    int failed = 0, total = 0;
    std::printf("%-6s %6s %6s %8s %14s %14s %s\n", "item", "s", "lambda", "x", "lhs", "rhs", "");
    for (const auto& c : audit_grid(M)) {
        for (LemmaId id : ids) {
            const auto r = lemma_audit(id, c.params, c.x);
            ++total;
            failed += r.holds ? 0 : 1;
            std::printf("%-6s %6g %6g %8g %14.6e %14.6e %s\n", std::string(lemma_name(id)).c_str(),
                        c.params.epsilon * std::sqrt(c.params.tau), c.params.lambda, c.x, r.lhs, r.rhs,
                        r.holds ? "ok" : "VIOLATED");
        }
    }
    std::printf("%d/%d hold\n", total - failed, total);
    return failed ? 3 : 0;
}

int cmd_bound(const ManifestArgs& a, double t, double lambda, std::optional<double> g_sup)
{
    const auto m = a.load();
    BoundParams p;
    p.lambda = lambda;
    p.C_u = m.u_B;
    p.g_sup = g_sup.value_or(m.u_B);
    p.L0 = m.L0;
    p.L = m.L;
    p.M = m.M;
    p.epsilon = m.epsilon;
    p.tau = m.tau;
    const auto r = bound_constants(p, t);
    std::cout << "a_tau " << num(r.a_tau) << "  b_tau " << num(r.b_tau) << "  c_tau " << num(r.c_tau) << "\n"
              << "E1 " << num(r.E1) << "  E2 " << num(r.E2) << "\n"
              << "gamma1 " << num(r.gamma1) << "  gamma2 " << num(r.gamma2) << "\n"
              << "D1 " << num(r.D1) << "  D2 " << num(r.D2) << "\n"
              << "bound " << num(r.bound) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Modified Buckley-Leverett solver lab"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    ManifestArgs ma;

    auto* riemann = app.add_subcommand("riemann", "run one manifest, classify and export it");
    ma.attach(riemann);
    bool no_plot = false;
    riemann->add_flag("--no-plot", no_plot, "skip the plot script");

    auto* order = app.add_subcommand("order-test", "self-convergence table on the smooth-ramp problem");
    ma.attach(order);
    std::vector<int> levels{60, 120, 240, 480};
    OrderTestConfig ocfg;
    order->add_option("--levels", levels, "coarse grid sizes")->delimiter(',');
    order->add_option("--order-eps", ocfg.epsilon, "epsilon of the order test");
    order->add_option("--order-lambda", ocfg.lambda, "dt/dx of the order test");
    order->add_option("--order-T", ocfg.t_final, "final time of the order test");

    auto* sweep = app.add_subcommand("sweep", "bifurcation sweep over (tau, u_B)");
    ma.attach(sweep);
    bool nine = false;
    int threads = 0;
    sweep->add_flag("--nine", nine, "only the nine reference cells");
    sweep->add_option("--threads", threads, "worker threads (0: all cores)");

    auto* domain = app.add_subcommand("domain-study", "truncation study over domain lengths");
    ma.attach(domain);
    std::vector<double> Ls{0.25, 0.75, 1.25}, times{0.1, 1.0};
    domain->add_option("--Ls", Ls, "domain lengths")->delimiter(',');
    domain->add_option("--times", times, "comparison times")->delimiter(',');

    auto* eps = app.add_subcommand("eps-sweep", "transition width and plateau against epsilon");
    ma.attach(eps);
    std::vector<double> eps_values{0.01, 0.005, 0.0025};
    eps->add_option("--values", eps_values, "epsilon values")->delimiter(',');
    eps->add_option("--threads", threads, "worker threads (0: all cores)");

    auto* lemma = app.add_subcommand("lemma-audit", "check the kernel inequalities on the audit grid");
    std::string which = "all";
    double lemma_M = 2.0;
    lemma->add_option("--item", which, "item id (L2i .. L4iii) or all");
    lemma->add_option("--M", lemma_M, "viscosity ratio");

    auto* bound = app.add_subcommand("bound", "constants of the domain-truncation estimate");
    ma.attach(bound);
    double t = 0.1, bound_lambda = 0.5;
    std::optional<double> g_sup;
    bound->add_option("--t", t, "time");
    bound->add_option("--bound-lambda", bound_lambda, "lambda in (0,1)");
    bound->add_option("--g-sup", g_sup, "sup of the left boundary data (default u_B)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*riemann)
            return cmd_riemann(ma, no_plot);
        if (*order)
            return cmd_order(ma, levels, ocfg);
        if (*sweep)
            return cmd_sweep(ma, nine, threads);
        if (*domain)
            return cmd_domain(ma, Ls, times);
        if (*eps)
            return cmd_eps(ma, eps_values, threads);
        if (*lemma)
            return cmd_lemma(which, lemma_M);
        if (*bound)
            return cmd_bound(ma, t, bound_lambda, g_sup);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
