#include <doctest.h>

#include "mbl/errors.hpp"
#include "mbl/flux.hpp"
#include "mbl/theory.hpp"

#include <cmath>
#include <vector>

using namespace mbl;

namespace {

constexpr double kH = 1e-5;

// second difference in x, used to check (I - s^2 d_xx) G = 0 away from the diagonal
template <class F>
double residual(F g, double x, double s)
{
    const double d2 = (g(x + kH) - 2.0 * g(x) + g(x - kH)) / (kH * kH);
    return g(x) - s * s * d2;
}

} // namespace

TEST_CASE("half-line kernel")
{
    const MBLParams p{0.1, 4.0};
    const double s = p.scale();
    CHECK(s == doctest::Approx(0.2));

    for (double xi : {0.05, 0.3, 1.0}) {
        CAPTURE(xi);
        CHECK(greens_halfline(0.0, xi, p).G == doctest::Approx(0.0).scale(1.0).epsilon(1e-16));
        for (double x : {0.02, 0.2, 0.7, 2.0}) {
            CAPTURE(x);
            CHECK(greens_halfline(x, xi, p).G == doctest::Approx(greens_halfline(xi, x, p).G).epsilon(1e-14));
            const double fd = (greens_halfline(x, xi + kH, p).G - greens_halfline(x, xi - kH, p).G) / (2 * kH);
            if (std::abs(x - xi) > 10 * kH)
                CHECK(std::abs(greens_halfline(x, xi, p).K + fd) < 1e-8);
            if (std::abs(x - xi) > 1e-3) {
                auto g = [&](double y) { return greens_halfline(y, xi, p).G; };
                CHECK(std::abs(residual(g, x, s)) < 1e-5);
            }
        }
    }
    CHECK_THROWS_AS(greens_halfline(0.1, 0.2, MBLParams{0.1, 0.0}), ValidationError);
}

TEST_CASE("finite-interval kernel")
{
    const MBLParams p{0.05, 1.0};
    const double s = p.scale(), L = 1.0;
    for (double xi : {0.1, 0.5, 0.93}) {
        CAPTURE(xi);
        CHECK(std::abs(greens_finite(0.0, xi, L, p).G) < 1e-16);
        CHECK(std::abs(greens_finite(L, xi, L, p).G) < 1e-16);
        for (double x : {0.05, 0.4, 0.8}) {
            CAPTURE(x);
            CHECK(greens_finite(x, xi, L, p).G == doctest::Approx(greens_finite(xi, x, L, p).G).epsilon(1e-13));
            if (std::abs(x - xi) > 1e-3) {
                const double fd = (greens_finite(x, xi + kH, L, p).G - greens_finite(x, xi - kH, L, p).G) / (2 * kH);
                CHECK(std::abs(greens_finite(x, xi, L, p).K + fd) < 1e-8);
                auto g = [&](double y) { return greens_finite(y, xi, L, p).G; };
                CHECK(std::abs(residual(g, x, s)) < 1e-5);
            }
        }
    }

    // far from x = L the finite kernel reduces to the half-line one
    for (double x : {0.01, 0.1, 0.3}) {
        for (double xi : {0.02, 0.2}) {
            const double Lbig = 60.0 * s;
            const auto a = greens_finite(x, xi, Lbig, p), b = greens_halfline(x, xi, p);
            CHECK(std::abs(a.G - b.G) < 1e-12);
            CHECK(std::abs(a.K - b.K) < 1e-12);
        }
    }
    // evaluation stays finite when e^{2L/s} overflows
    const auto big = greens_finite(0.5, 0.5, 100.0, MBLParams{0.001, 1.0});
    CHECK(std::isfinite(big.G));
    CHECK(std::isfinite(big.K));
}

TEST_CASE("phi basis")
{
    const MBLParams p{0.1, 2.0};
    const double s = p.scale(), L = 0.8;
    CHECK(phi_basis(0.0, L, p).phi1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(phi_basis(L, L, p).phi1) < 1e-15);
    CHECK(std::abs(phi_basis(0.0, L, p).phi2) < 1e-15);
    CHECK(phi_basis(L, L, p).phi2 == doctest::Approx(1.0).epsilon(1e-15));
    for (double x : {0.1, 0.4, 0.7}) {
        CAPTURE(x);
        auto f1 = [&](double y) { return phi_basis(y, L, p).phi1; };
        auto f2 = [&](double y) { return phi_basis(y, L, p).phi2; };
        CHECK(std::abs(residual(f1, x, s)) < 1e-5);
        CHECK(std::abs(residual(f2, x, s)) < 1e-5);
        CHECK(phi2_deriv(x, L, p) == doctest::Approx((f2(x + kH) - f2(x - kH)) / (2 * kH)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(phi_basis(-0.1, L, p), ValidationError);
    CHECK_THROWS_AS(phi_basis(L + 0.1, L, p), ValidationError);
}

TEST_CASE("phi1 - e^{-x/s} equals -e^{-L/s} phi2")
{
    for (double eps : {0.01, 0.1}) {
        const MBLParams p{eps, 1.0};
        const double s = p.scale(), L = 1.5;
        for (int i = 0; i <= 30; ++i) {
            const double x = L * i / 30.0;
            const auto ph = phi_basis(x, L, p);
            CHECK(std::abs((ph.phi1 - std::exp(-x / s)) + std::exp(-L / s) * ph.phi2) < 1e-13);
        }
    }
}

TEST_CASE("bound constants")
{
    BoundParams bp;
    bp.lambda = 0.5;
    bp.C_u = 0.8;
    bp.g_sup = 0.8;
    bp.L0 = 0.1;
    bp.L = 0.4;
    bp.epsilon = 0.01;
    bp.tau = 4.0;
    const FluxModel m(2.0);
    const double D = m.D(), e = std::exp(1.0);

    const auto r0 = bound_constants(bp, 0.0);
    CHECK(r0.a_tau == doctest::Approx(0.8 * (1.0 + 2.0 * D * (0.5 * e + 1.0)) / e).epsilon(1e-14));
    CHECK(r0.b_tau == doctest::Approx((1.0 + 2.0 * D) / 0.75).epsilon(1e-14));
    CHECK(r0.c_tau == doctest::Approx(0.8 * (1.0 + 2.0 * D)).epsilon(1e-14));
    CHECK(r0.E1 == doctest::Approx(0.8 + r0.a_tau).epsilon(1e-14));
    CHECK(r0.E2 == 0.0);
    CHECK(r0.gamma1 == 0.0);
    CHECK(r0.gamma2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(r0.D1 == doctest::Approx(std::sqrt(5.0 * 0.4) * r0.E1).epsilon(1e-14));
    CHECK(r0.bound == doctest::Approx(r0.D1 * std::exp(-0.5 * 0.4 / 0.02) + r0.D2 * std::exp(-0.5 * 0.3 / 0.02))
                          .epsilon(1e-14));
    CHECK(r0.measured < 0.0);

    double prev = r0.bound;
    for (double t : {0.01, 0.02, 0.05, 0.1}) {
        const double b = bound_constants(bp, t).bound;
        CHECK(b > prev);
        prev = b;
    }

    CHECK_THROWS_AS(bound_constants(bp, -1.0), ValidationError);
    auto bad = bp;
    bad.lambda = 1.0;
    CHECK_THROWS_AS(bound_constants(bad, 0.1), ValidationError);
    bad = bp;
    bad.L = 0.05;
    CHECK_THROWS_AS(bound_constants(bad, 0.1), ValidationError);
    bad = bp;
    bad.tau = 0.0;
    CHECK_THROWS_AS(bound_constants(bad, 0.1), ValidationError);
}

TEST_CASE("lemma names")
{
    for (LemmaId id : kAllLemmas)
        CHECK(parse_lemma(lemma_name(id)) == id);
    CHECK_THROWS_AS(parse_lemma("L5i"), ValidationError);
}

TEST_CASE("kernel inequalities hold on the audit grid")
{
    const auto grid = audit_grid();
    CHECK(grid.size() == 30);
    for (const auto& c : grid) {
        CHECK(c.x <= c.params.L);
        for (LemmaId id : kAllLemmas) {
            CAPTURE(c.params.epsilon);
            CAPTURE(c.params.lambda);
            CAPTURE(c.x);
            CAPTURE(lemma_name(id));
            const auto r = lemma_audit(id, c.params, c.x);
            CHECK(r.holds);
            CHECK(std::isfinite(r.lhs));
            CHECK(r.quad_error <= 1e-6 * std::max(1.0, std::abs(r.lhs)));
        }
    }
    BoundParams bp;
    bp.L = 0.5;
    CHECK_THROWS_AS(lemma_audit(LemmaId::L4i, bp, 0.6), ValidationError);
    CHECK_THROWS_AS(lemma_audit(LemmaId::L2i, bp, -0.1), ValidationError);
}
