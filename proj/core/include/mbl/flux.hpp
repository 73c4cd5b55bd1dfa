#pragma once

#include <span>
#include <vector>

namespace mbl {

/// Buckley-Leverett fractional flow f(u) = u^2 / (u^2 + M (1-u)^2), clamped
/// to 0 below u=0 and 1 above u=1. The derived constants are cached.
class FluxModel {
public:
    explicit FluxModel(double M = 2.0);

    double M() const { return M_; }
    /// Tangency point: f'(alpha) * alpha = f(alpha).
    double alpha() const { return alpha_; }
    /// f(alpha)/alpha, the sharp constant in f(u) <= D u.
    double D() const { return D_; }
    /// (M+1)^2/(2M), an upper bound for f' on [0,1].
    double C() const { return C_; }
    /// max of f' on [0,1], located by golden-section search.
    double max_deriv() const { return max_deriv_; }

private:
    double M_;
    double alpha_;
    double D_;
    double C_;
    double max_deriv_;
};

double flux(double u, const FluxModel& model);
double flux_deriv(double u, const FluxModel& model);

/// Rankine-Hugoniot speed. Throws ValidationError("degenerate jump") when u_l == u_r.
double shock_speed(double u_l, double u_r, const FluxModel& model);

/// Sampled Oleinik chord condition between u_l and u_r.
bool oleinik_admissible(double u_l, double u_r, const FluxModel& model, int n_samples = 1000);

/// Entropy solution of the classical BL Riemann problem (u_B on the left, 0 on the
/// right) as a function of the similarity variable xi = x/t.
std::vector<double> classical_bl_profile(double u_B, const FluxModel& model, std::span<const double> xi);

} // namespace mbl
