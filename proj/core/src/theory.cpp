#include "mbl/theory.hpp"

#include "mbl/errors.hpp"
#include "mbl/flux.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cfloat>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace mbl {

namespace {

double kernel_scale(const MBLParams& params)
{
    if (!(params.tau > 0.0))
        throw ValidationError("dispersionless kernel undefined");
    if (!(params.epsilon > 0.0))
        throw ValidationError("epsilon must be positive");
    return params.scale();
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

} // namespace

Kernel greens_halfline(double x, double xi, const MBLParams& params)
{
    const double s = kernel_scale(params);
    const double a = std::exp(-(x + xi) / s);
    const double b = std::exp(-std::abs(x - xi) / s);
    return {0.5 * s * (a - b), 0.5 * (a + sgn(x - xi) * b)};
}

Kernel greens_finite(double x, double xi, double L, const MBLParams& params)
{
    const double s = kernel_scale(params);
    const double d = std::abs(x - xi);
    const double q = -std::expm1(-2.0 * L / s);   // 1 - e^{-2L/s}
    const double p1 = std::exp((x + xi - 2.0 * L) / s);
    const double p2 = std::exp(-(x + xi) / s);
    const double p3 = std::exp((d - 2.0 * L) / s);
    const double p4 = std::exp(-d / s);
    const double sg = sgn(x - xi);
    return {0.5 * s / q * (p1 + p2 - p3 - p4), -0.5 / q * (p1 - p2 + sg * p3 - sg * p4)};
}

PhiBasis phi_basis(double x, double L, const MBLParams& params)
{
    const double s = kernel_scale(params);
    if (x < 0.0 || x > L)
        throw ValidationError("phi_basis: x outside [0, L]");
    const double q = -std::expm1(-2.0 * L / s);
    return {(std::exp(-x / s) - std::exp((x - 2.0 * L) / s)) / q,
            (std::exp((x - L) / s) - std::exp(-(x + L) / s)) / q};
}

double phi2_deriv(double x, double L, const MBLParams& params)
{
    const double s = kernel_scale(params);
    const double q = -std::expm1(-2.0 * L / s);
    return (std::exp((x - L) / s) + std::exp(-(x + L) / s)) / (s * q);
}

void BoundParams::validate() const
{
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("bound: lambda must lie in (0,1)");
    if (!(L > L0))
        throw ValidationError("bound: need L > L0");
    if (L0 < 0.0 || C_u < 0.0 || g_sup < 0.0)
        throw ValidationError("bound: L0, C_u, g_sup must be nonnegative");
    if (!(M > 0.0))
        throw ValidationError("bound: M must be positive");
    kernel_scale(mbl());
}

BoundReport bound_constants(const BoundParams& p, double t)
{
    p.validate();
    if (t < 0.0)
        throw ValidationError("bound: t must be nonnegative");
    const FluxModel model(p.M);
    const double D = model.D();
    const double C = model.C();
    const double e = std::numbers::e;
    const double lam = p.lambda;
    const double st = std::sqrt(p.tau);
    const double et = p.epsilon * p.tau;   // eps tau
    const double s = p.epsilon * st;       // eps sqrt(tau)

    BoundReport r;
    r.a_tau = p.g_sup * (1.0 + D * st * (e * (1.0 - lam) + 1.0)) / (2.0 * e * (1.0 - lam));
    r.b_tau = (1.0 + D * st) / (1.0 - lam * lam);
    r.c_tau = p.C_u * (1.0 + D * st);
    const double b1 = r.b_tau - 1.0;
    if (b1 == 0.0)
        throw NumericalError("degenerate b_tau");

    const double T = t / et;
    r.E1 = p.g_sup + r.a_tau * std::exp(r.b_tau * T);
    r.E2 = r.c_tau * T * std::exp(b1 * T);
    const double pre = std::exp(C * t / s) * (C * st + 1.0) * std::sqrt(p.L);
    r.gamma1 = pre * (T * p.g_sup + r.a_tau / r.b_tau * std::expm1(r.b_tau * T));
    r.gamma2 = pre * r.c_tau * (T / b1 * std::exp(b1 * T) - std::expm1(b1 * T) / (b1 * b1));
    const double root5L = std::sqrt(5.0 * p.L);
    r.D1 = r.gamma1 + root5L * r.E1;
    r.D2 = r.gamma2 + root5L * r.E2;
    r.bound = r.D1 * std::exp(-lam * p.L / s) + r.D2 * std::exp(-lam * (p.L - p.L0) / s);
    return r;
}

std::string_view lemma_name(LemmaId id)
{
    switch (id) {
    case LemmaId::L2i: return "L2i";
    case LemmaId::L2ii: return "L2ii";
    case LemmaId::L2iii: return "L2iii";
    case LemmaId::L3i: return "L3i";
    case LemmaId::L3ii: return "L3ii";
    case LemmaId::L3iii: return "L3iii";
    case LemmaId::L4i: return "L4i";
    case LemmaId::L4ii: return "L4ii";
    case LemmaId::L4iii: return "L4iii";
    }
    return "?";
}

LemmaId parse_lemma(std::string_view name)
{
    for (LemmaId id : kAllLemmas)
        if (lemma_name(id) == name)
            return id;
    throw ValidationError("unknown lemma id: " + std::string(name));
}

namespace {

enum class Weight { exp_both, exp_xi, riemann };

// Integrates |e^{-(x+xi)/s} + sign * e^{-|x-xi|/s}| * weight(xi) over xi >= 0,
// sign = -1 (L2 items) or sign = sgn(x - xi) (L3 items).
std::pair<double, double> kernel_integral(bool lemma3, Weight w, const BoundParams& p, double x)
{
    const double s = p.epsilon * std::sqrt(p.tau);
    const double lam = p.lambda;
    auto f = [&](double xi) {
        const double a = std::exp(-(x + xi) / s);
        const double b = std::exp(-std::abs(x - xi) / s);
        const double k = lemma3 ? std::abs(a + sgn(x - xi) * b) : std::abs(a - b);
        switch (w) {
        case Weight::exp_both: return k * std::exp(lam * (x - xi) / s);
        case Weight::exp_xi: return k * std::exp((lam * x - xi) / s);
        case Weight::riemann: return k * std::exp(lam * x / s) * (xi <= p.L0 ? p.C_u : 0.0);
        }
        return 0.0;
    };

    // Beyond x the integrand decays at least like e^{-(xi - x)/s}; 40 scale lengths
    // leave a tail below e^{-40} of the envelope.
    const double x_cut = (w == Weight::riemann) ? p.L0 : x + 40.0 * s;
    std::vector<double> cuts{0.0};
    if (x > 0.0 && x < x_cut)
        cuts.push_back(x);
    cuts.push_back(x_cut);

    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0, err_total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i]))
            continue;
        double err = 0.0, l1 = 0.0;
        const double v = gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], 30, 1e-13, &err, &l1);
        if (!(err <= 1e-10 * std::max(l1, 1e-300)) && err > 1e-300) {
            std::ostringstream os;
            os << "lemma quadrature did not converge: achieved " << err << " on [" << cuts[i] << ", "
               << cuts[i + 1] << "]";
            throw NumericalError(os.str());
        }
        total += v;
        err_total += err;
    }
    return {total, err_total};
}

} // namespace

LemmaResult lemma_audit(LemmaId id, const BoundParams& p, double x)
{
    if (!(p.lambda > 0.0 && p.lambda < 1.0))
        throw ValidationError("lemma_audit: lambda must lie in (0,1)");
    if (x < 0.0)
        throw ValidationError("lemma_audit: x must be nonnegative");
    const double s = kernel_scale(p.mbl());
    const double lam = p.lambda;
    const double e = std::numbers::e;
    constexpr double rel = 1e-8;

    auto integral_item = [&](bool lemma3, Weight w, double rhs) {
        const auto [lhs, err] = kernel_integral(lemma3, w, p, x);
        return LemmaResult{lhs, rhs, lhs <= rhs * (1.0 + rel), err};
    };

    switch (id) {
    case LemmaId::L2i: return integral_item(false, Weight::exp_both, 2.0 * s / (1.0 - lam * lam));
    case LemmaId::L2ii: return integral_item(false, Weight::exp_xi, s / (e * (1.0 - lam)));
    case LemmaId::L2iii:
        return integral_item(false, Weight::riemann, 2.0 * p.C_u * s * std::exp(lam * p.L0 / s));
    case LemmaId::L3i: return integral_item(true, Weight::exp_both, 2.0 * s / (1.0 - lam * lam));
    case LemmaId::L3ii: return integral_item(true, Weight::exp_xi, s + s / (e * (1.0 - lam)));
    case LemmaId::L3iii:
        return integral_item(true, Weight::riemann, 2.0 * p.C_u * s * std::exp(lam * p.L0 / s));
    case LemmaId::L4i: {
        if (x > p.L)
            throw ValidationError("lemma_audit: x outside [0, L]");
        const auto ph = phi_basis(x, p.L, p.mbl());
        const double ex = std::exp(-x / s);
        const double lhs = std::abs(ph.phi1 - ex);
        const double rhs = std::exp(-p.L / s) * std::abs(ph.phi2);
        // an identity: the subtraction on the left carries rounding of order eps * |phi1|
        const double slack = 4.0 * DBL_EPSILON * std::max(std::abs(ph.phi1), ex);
        return {lhs, rhs, lhs <= rhs * (1.0 + rel) + slack};
    }
    case LemmaId::L4ii: {
        if (x > p.L)
            throw ValidationError("lemma_audit: x outside [0, L]");
        const double lhs = std::abs(phi_basis(x, p.L, p.mbl()).phi2);
        return {lhs, 1.0, lhs <= 1.0 + rel};
    }
    case LemmaId::L4iii: {
        if (x > p.L)
            throw ValidationError("lemma_audit: x outside [0, L]");
        const double lhs = std::abs(phi2_deriv(x, p.L, p.mbl()));
        return {lhs, 2.0 / s, lhs <= 2.0 / s * (1.0 + rel)};
    }
    }
    throw ValidationError("lemma_audit: bad id");
}

std::vector<AuditCase> audit_grid(double M)
{
    const double alpha = FluxModel(M).alpha();
    std::vector<AuditCase> out;
    for (double s : {0.01, 0.1}) {
        for (double lam : {0.25, 0.5, 0.75}) {
            BoundParams p;
            p.lambda = lam;
            p.C_u = alpha;
            p.g_sup = alpha;
            p.L0 = 0.1;
            p.L = 1.5;
            p.M = M;
            p.epsilon = s;
            p.tau = 1.0;
            for (double x : {0.0, 0.5 * p.L0, p.L0, 2.0 * p.L0, 10.0 * s})
                out.push_back({p, x});
        }
    }
    return out;
}

} // namespace mbl
