#pragma once

#include "mbl/operators.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace mbl {

struct Kernel {
    double G;
    double K;
};

/// Half-line Green's function of (I - eps^2 tau d_xx) with u(0) = 0 and K = -dG/dxi.
Kernel greens_halfline(double x, double xi, const MBLParams& params);

/// Finite-interval [0, L] counterparts; evaluated with e^{-2L/(eps sqrt(tau))} factored out.
Kernel greens_finite(double x, double xi, double L, const MBLParams& params);

struct PhiBasis {
    double phi1;
    double phi2;
};
/// Homogeneous solutions with phi1(0)=1, phi1(L)=0, phi2(0)=0, phi2(L)=1.
PhiBasis phi_basis(double x, double L, const MBLParams& params);
double phi2_deriv(double x, double L, const MBLParams& params);

struct BoundParams {
    double lambda = 0.5;
    double C_u = 1.0;     // Riemann height
    double L0 = 0.0;      // u0 = C_u on [0, L0], 0 beyond
    double L = 1.0;
    double g_sup = 1.0;   // sup of |c1|; C_u for the Riemann setup
    double M = 2.0;
    double epsilon = 0.01;
    double tau = 1.0;

    MBLParams mbl() const { return {epsilon, tau}; }
    void validate() const;
};

struct BoundReport {
    double a_tau = 0, b_tau = 0, c_tau = 0;
    double E1 = 0, E2 = 0, gamma1 = 0, gamma2 = 0, D1 = 0, D2 = 0;
    double bound = 0;
    double measured = -1;   // negative when not measured
};

/// Constants of the domain-truncation estimate at time t.
BoundReport bound_constants(const BoundParams& p, double t);

enum class LemmaId { L2i, L2ii, L2iii, L3i, L3ii, L3iii, L4i, L4ii, L4iii };
inline constexpr std::array<LemmaId, 9> kAllLemmas = {LemmaId::L2i, LemmaId::L2ii, LemmaId::L2iii,
                                                      LemmaId::L3i, LemmaId::L3ii, LemmaId::L3iii,
                                                      LemmaId::L4i, LemmaId::L4ii, LemmaId::L4iii};

std::string_view lemma_name(LemmaId id);
LemmaId parse_lemma(std::string_view name);

struct LemmaResult {
    double lhs;
    double rhs;
    bool holds;
    double quad_error = 0;   // estimated absolute quadrature error (integral items)
};

/// Evaluates one kernel inequality at x; integral items use adaptive Gauss-Kronrod.
LemmaResult lemma_audit(LemmaId id, const BoundParams& p, double x);

struct AuditCase {
    BoundParams params;
    double x;
};

/// lambda in {0.25, 0.5, 0.75}, eps sqrt(tau) in {0.01, 0.1} (tau = 1),
/// x in {0, L0/2, L0, 2 L0, 10 eps sqrt(tau)}; Riemann data C_u = alpha, L0 = 0.1, L = 1.5.
std::vector<AuditCase> audit_grid(double M = 2.0);

} // namespace mbl
