#pragma once

#include "mbl/flux.hpp"
#include "mbl/operators.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mbl {

enum class SchemeKind { trapezoid, midpoint, third_order };
enum class IcKind { riemann, smooth_ramp };

std::string_view to_string(SchemeKind s);
std::string_view to_string(IcKind k);
SchemeKind parse_scheme(std::string_view s);
IcKind parse_ic(std::string_view s);

/// One experiment. Defaults are the desk-scale configuration (eps = 0.005, dx = eps/10).
struct RunManifest {
    SchemeKind scheme = SchemeKind::trapezoid;
    double M = 2.0;
    double epsilon = 0.005;
    double tau = 5.0;
    double u_B = 0.816496580927726;   // alpha for M = 2
    double L = 0.75;
    double L0 = 0.0;
    double dx = 5e-4;
    double lambda = 0.1;
    double t_final = 0.5;
    std::vector<double> snapshot_times;
    IcKind ic_kind = IcKind::riemann;
    std::string output_dir = "out";

    MBLParams params() const { return {epsilon, tau}; }
    /// n_cells = L/dx rounded; throws if L is not a whole number of cells.
    int n_cells() const;
    GridSpec grid() const;
    void validate() const;
    /// Domain-sizing rule L > (leading speed) * t_final, reported as text.
    std::vector<std::string> warnings() const;
};

/// Parses a manifest; every key must be a RunManifest field. u_B may be the string "alpha".
/// "code_version" (written by manifest_to_json) is accepted and ignored.
RunManifest manifest_from_json(std::string_view text);
RunManifest load_manifest(const std::filesystem::path& path);
std::string manifest_to_json(const RunManifest& m);

} // namespace mbl
