#pragma once

#include "mbl/classify.hpp"
#include "mbl/manifest.hpp"
#include "mbl/theory.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mbl {

/// u_B H(x - 5, 5) with the smooth Heaviside H(x, xi) of the order test.
double smooth_ramp_ic(double x, double u_B);

struct RunOutput {
    GridSpec grid;
    std::vector<Field> snapshots;   // node values of u; the last one is at t_final
    long guard_violations = 0;
    double min_cfl_margin = 0.5;
    std::vector<std::string> warnings;

    const Field& final() const { return snapshots.back(); }
};

/// Runs any scheme on an explicit grid with Dirichlet data g = u0(x0), h = u0(x0 + L).
/// Third-order output is converted from cell averages to node values.
RunOutput simulate(SchemeKind scheme, const GridSpec& grid, const MBLParams& params, const FluxModel& model,
                   const std::function<double(double)>& u0, double left, double right, double t_final,
                   std::span<const double> snapshot_times);

/// Runs a manifest on [0, L]; boundary data g = u_B, h = 0.
RunOutput simulate(const RunManifest& m);

struct OrderRow {
    int N;
    double l1, l2, linf;   // self-differences between N and 2N on the N-grid nodes
    std::optional<double> order_l1, order_l2, order_linf;
};

struct OrderTestConfig {
    double epsilon = 1.0;
    double M = 2.0;
    double x0 = -10.0;
    double L = 30.0;
    double t_final = 1.0;
    double lambda = 0.2;   // reproduces the reference error magnitudes; 0.1 roughly doubles them
};

std::vector<OrderRow> order_table(SchemeKind scheme, double tau, double u_B, std::span<const int> levels,
                                  const OrderTestConfig& cfg = {});

struct SweepEntry {
    double tau;
    double u_B;
    std::optional<ProfileReport> report;
    std::string error;
    std::vector<double> x, u;   // final profile for export
};

std::vector<std::pair<double, double>> default_sweep_pairs(const FluxModel& model);
std::vector<std::pair<double, double>> reference_nine_cells(const FluxModel& model);

/// Runs every (tau, u_B) pair on a worker pool; results are sorted by (tau, u_B).
std::vector<SweepEntry> bifurcation_sweep(std::span<const std::pair<double, double>> pairs, const RunManifest& base,
                                          int threads = 0);

struct DomainComparison {
    double h1_diff;
    double sup_diff;
    double bound;
    double bound_lambda;   // lambda in (0,1) giving the reported (smallest) bound
};

/// Compares runs on [0, L_small] and [0, L_large] at time t, restricted to [0, L_small].
DomainComparison compare_domains(const RunManifest& base, double L_small, double L_large, double t);

struct DomainStudyRow {
    double t;
    double L;
    double sup_diff;   // against the largest L on [0, L]
    double h1_diff;
    double bound;
    bool truncated;    // classifier flags the run
    bool sizing_ok;    // L > leading shock speed * t
};

std::vector<DomainStudyRow> domain_study(const RunManifest& base, std::span<const double> L_values,
                                         std::span<const double> times);

struct EpsRow {
    double epsilon;
    double transition_width;
    std::optional<double> plateau_value;
    ProfileClass classification;
};

std::vector<EpsRow> epsilon_sweep(const RunManifest& base, std::span<const double> eps_values, int threads = 0);

/// Runs jobs on up to `threads` workers (0: hardware concurrency); exceptions are
/// captured per job by the callee.
void parallel_for(int n, int threads, const std::function<void(int)>& job);

} // namespace mbl
