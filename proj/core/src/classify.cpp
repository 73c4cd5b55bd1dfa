#include "mbl/classify.hpp"

#include <algorithm>
#include <cmath>

namespace mbl {

std::string_view to_string(ProfileClass c)
{
    switch (c) {
    case ProfileClass::single_shock: return "single_shock";
    case ProfileClass::rarefaction_shock: return "rarefaction_shock";
    case ProfileClass::two_shock_plateau: return "two_shock_plateau";
    case ProfileClass::oscillatory_single_shock: return "oscillatory_single_shock";
    case ProfileClass::truncated_invalid: return "truncated_invalid";
    }
    return "?";
}

std::vector<Plateau> find_plateaus(std::span<const double> u, double tol, int min_cells)
{
    std::vector<Plateau> out;
    const int n = int(u.size());
    int i = 0;
    while (i < n) {
        double lo = u[i], hi = u[i];
        int j = i + 1;
        while (j < n && std::max(hi, u[j]) - std::min(lo, u[j]) <= 2.0 * tol) {
            lo = std::min(lo, u[j]);
            hi = std::max(hi, u[j]);
            ++j;
        }
        if (j - i >= min_cells) {
            double s = 0.0;
            for (int k = i; k < j; ++k)
                s += u[k];
            out.push_back({i, j, s / (j - i)});
        }
        i = j;
    }
    return out;
}

namespace {

struct Shock {
    int index;   // node left of the steepest one-cell drop
    double x;
};

std::vector<Shock> find_shocks(std::span<const double> u, double dx, const ClassifyOptions& opt)
{
    const int n = int(u.size());
    std::vector<Shock> out;
    if (n < 2)
        return out;
    const auto [mn, mx] = std::minmax_element(u.begin(), u.end());
    const double range = *mx - *mn;
    if (!(range > 0.0))
        return out;

    // zigzag turning points: an extreme counts once u retreats from it by more than the hysteresis
    const double hyst = opt.turn_fraction * range;
    std::vector<int> turns{0};
    int hi = 0, lo = 0, ext = 0, dir = 0;
    for (int i = 1; i < n && dir == 0; ++i) {
        if (u[i] > u[hi])
            hi = i;
        if (u[i] < u[lo])
            lo = i;
        if (u[hi] - u[0] > hyst) {
            dir = 1;
            ext = hi;
        } else if (u[0] - u[lo] > hyst) {
            dir = -1;
            ext = lo;
        }
    }
    for (int i = ext + 1; dir != 0 && i < n; ++i) {
        if (dir * (u[i] - u[ext]) > 0.0) {
            ext = i;
        } else if (dir * (u[ext] - u[i]) > hyst) {
            turns.push_back(ext);
            dir = -dir;
            ext = i;
        }
    }
    turns.push_back(dir == 0 ? n - 1 : ext);

    for (std::size_t t = 0; t + 1 < turns.size(); ++t) {
        const int a = turns[t], b = turns[t + 1];
        if (std::abs(u[b] - u[a]) <= opt.shock_fraction * range)
            continue;
        int best = a;
        for (int k = a; k < b; ++k)
            if (std::abs(u[k + 1] - u[k]) > std::abs(u[best + 1] - u[best]))
                best = k;
        out.push_back({best, (best + 0.5) * dx});
    }
    return out;
}

} // namespace

ProfileReport classify_profile(std::span<const double> u, double dx, double u_B, const ClassifyOptions& opt)
{
    ProfileReport r;
    const int n = int(u.size());
    r.overshoot = *std::max_element(u.begin(), u.end()) - u_B;

    const auto shocks = find_shocks(u, dx, opt);
    for (const auto& s : shocks)
        r.shock_positions.push_back(s.x);
    const int lead = shocks.empty() ? n : shocks.back().index;
    r.leading_shock = shocks.empty() ? 0.0 : shocks.back().x;

    if (n >= 2 && u[n - 2] > opt.truncation_level) {
        r.classification = ProfileClass::truncated_invalid;
        return r;
    }

    const auto plateaus = find_plateaus(u, opt.plateau_tol, opt.plateau_min_cells);
    const Plateau* high = nullptr;
    const Plateau* post = nullptr;
    for (const auto& p : plateaus) {
        if (p.end > lead + 1)
            continue;
        if (p.value > u_B + opt.plateau_margin && (!high || p.end - p.begin > high->end - high->begin))
            high = &p;
        if (p.value > 0.5 * u_B)
            post = &p;   // rightmost wins
    }

    if (high) {
        r.classification = ProfileClass::two_shock_plateau;
        r.plateau_value = high->value;
        return r;
    }
    if (post && post->value < u_B - opt.plateau_margin) {
        r.classification = ProfileClass::rarefaction_shock;
        r.plateau_value = post->value;
        return r;
    }
    r.classification = r.overshoot > opt.oscillation_floor ? ProfileClass::oscillatory_single_shock
                                                           : ProfileClass::single_shock;
    return r;
}

ClassifyOptions classify_options(double epsilon, double dx)
{
    ClassifyOptions opt;
    opt.plateau_min_cells = std::max(opt.plateau_min_cells, int(std::ceil(opt.plateau_min_eps * epsilon / dx)));
    return opt;
}

ProfileReport classify_profile(const Field& u, const RunManifest& manifest, const FluxModel&)
{
    const double dx = manifest.L / manifest.n_cells();
    return classify_profile(u.values, dx, manifest.u_B, classify_options(manifest.epsilon, dx));
}

double transition_width(std::span<const double> u, double dx, double post_value)
{
    // rightmost crossings of the two levels, linearly interpolated
    auto crossing = [&](double level) {
        for (int i = int(u.size()) - 2; i >= 0; --i) {
            if (u[i] >= level && u[i + 1] < level)
                return (i + (u[i] - level) / (u[i] - u[i + 1])) * dx;
        }
        return 0.0;
    };
    return crossing(0.1 * post_value) - crossing(0.9 * post_value);
}

} // namespace mbl
