#include "mbl/flux.hpp"

#include "mbl/errors.hpp"

#include <cmath>
#include <string>

namespace mbl {

namespace {

double raw_deriv(double u, double M)
{
    const double v = 1.0 - u;
    const double den = u * u + M * v * v;
    return 2.0 * M * u * v / (den * den);
}

} // namespace

FluxModel::FluxModel(double M) : M_(M)
{
    if (!(M > 0.0) || !std::isfinite(M))
        throw ValidationError("flux: viscosity ratio M must be positive, got " + std::to_string(M));
    alpha_ = std::sqrt(M / (M + 1.0));
    D_ = flux(alpha_, *this) / alpha_;
    C_ = (M + 1.0) * (M + 1.0) / (2.0 * M);

    // f' is unimodal on [0,1]
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.0, b = 1.0;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    while (b - a > 1e-14) {
        if (raw_deriv(c, M) > raw_deriv(d, M))
            b = d;
        else
            a = c;
        c = b - phi * (b - a);
        d = a + phi * (b - a);
    }
    max_deriv_ = raw_deriv(0.5 * (a + b), M);
}

double flux(double u, const FluxModel& model)
{
    if (u < 0.0)
        return 0.0;
    if (u > 1.0)
        return 1.0;
    const double v = 1.0 - u;
    return u * u / (u * u + model.M() * v * v);
}

double flux_deriv(double u, const FluxModel& model)
{
    if (u < 0.0 || u > 1.0)
        return 0.0;
    return raw_deriv(u, model.M());
}

double shock_speed(double u_l, double u_r, const FluxModel& model)
{
    if (u_l == u_r)
        throw ValidationError("degenerate jump");
    return (flux(u_l, model) - flux(u_r, model)) / (u_l - u_r);
}

bool oleinik_admissible(double u_l, double u_r, const FluxModel& model, int n_samples)
{
    if (n_samples < 2)
        throw ValidationError("oleinik_admissible: n_samples must be >= 2");
    const double s = shock_speed(u_l, u_r, model);
    const double fl = flux(u_l, model);
    const double fr = flux(u_r, model);
    constexpr double tol = 1e-12;
    for (int i = 1; i <= n_samples; ++i) {
        const double u = u_l + (u_r - u_l) * double(i) / double(n_samples + 1);
        const double fu = flux(u, model);
        const double left = (fu - fl) / (u - u_l);
        const double right = (fu - fr) / (u - u_r);
        if (left < s - tol || s < right - tol)
            return false;
    }
    return true;
}

std::vector<double> classical_bl_profile(double u_B, const FluxModel& model, std::span<const double> xi)
{
    if (!(u_B > 0.0 && u_B < 1.0))
        throw ValidationError("classical_bl_profile: u_B must lie in (0,1)");

    std::vector<double> out(xi.size(), 0.0);
    const double alpha = model.alpha();
    if (u_B <= alpha) {
        const double s = flux(u_B, model) / u_B;
        for (std::size_t i = 0; i < xi.size(); ++i)
            out[i] = xi[i] < s ? u_B : 0.0;
        return out;
    }

    const double xi_b = flux_deriv(u_B, model);
    const double xi_a = flux_deriv(alpha, model);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const double z = xi[i];
        if (z <= xi_b) {
            out[i] = u_B;
        } else if (z <= xi_a) {
            // f' decreases on [alpha, u_B]
            double lo = alpha, hi = u_B;
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                if (flux_deriv(mid, model) > z)
                    lo = mid;
                else
                    hi = mid;
            }
            out[i] = 0.5 * (lo + hi);
        } else {
            out[i] = 0.0;
        }
    }
    return out;
}

} // namespace mbl
