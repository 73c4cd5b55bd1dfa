#pragma once

#include "mbl/flux.hpp"
#include "mbl/manifest.hpp"
#include "mbl/operators.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mbl {

enum class ProfileClass { single_shock, rarefaction_shock, two_shock_plateau, oscillatory_single_shock, truncated_invalid };

std::string_view to_string(ProfileClass c);

/// Critical dispersion for non-monotone profiles, annotation only.
inline constexpr double kTauStar = 0.61;

struct Plateau {
    int begin;   // first node
    int end;     // one past the last node
    double value;
};

struct ProfileReport {
    ProfileClass classification = ProfileClass::single_shock;
    std::optional<double> plateau_value;
    std::vector<double> shock_positions;   // ascending
    double overshoot = 0.0;                // max(u) - u_B
    double leading_shock = 0.0;            // rightmost shock position, 0 if none
};

struct ClassifyOptions {
    double plateau_tol = 5e-3;    // half-width of the band a plateau stays in
    int plateau_min_cells = 10;
    double plateau_min_eps = 5.0; // manifest overload: also at least this many epsilon long
    double shock_fraction = 0.1;  // a monotone front must change u by this fraction of the range
    double turn_fraction = 0.02;  // zigzag hysteresis; smaller wiggles stay inside one front
    double plateau_margin = 0.02; // plateau must beat u_B by this to count as overshoot
    double oscillation_floor = 5e-3;
    double truncation_level = 1e-3;
};

/// Defaults with the plateau minimum raised to plateau_min_eps * epsilon.
ClassifyOptions classify_options(double epsilon, double dx);

std::vector<Plateau> find_plateaus(std::span<const double> u, double tol, int min_cells);

/// u: integer-grid node values on [0, L] with spacing dx.
ProfileReport classify_profile(std::span<const double> u, double dx, double u_B, const ClassifyOptions& opt = {});
ProfileReport classify_profile(const Field& u, const RunManifest& manifest, const FluxModel& model);

/// Distance over which u falls from 90% to 10% of the post-shock value at the leading shock.
double transition_width(std::span<const double> u, double dx, double post_value);

} // namespace mbl
