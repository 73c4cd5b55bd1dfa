#include <doctest.h>

#include "mbl/banded.hpp"
#include "mbl/errors.hpp"
#include "mbl/operators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace mbl;

namespace {

using Dense = std::vector<std::vector<double>>;

// oracle: Gaussian elimination with partial pivoting
std::vector<double> dense_solve(Dense A, std::vector<double> b)
{
    const int n = int(b.size());
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A[i][k]) > std::abs(A[p][k]))
                p = i;
        std::swap(A[k], A[p]);
        std::swap(b[k], b[p]);
        for (int i = k + 1; i < n; ++i) {
            const double l = A[i][k] / A[k][k];
            for (int j = k; j < n; ++j)
                A[i][j] -= l * A[k][j];
            b[i] -= l * b[k];
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j)
            s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

std::vector<double> random_vec(std::mt19937& rng, int n, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v)
        x = d(rng);
    return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("tridiagonal solvers match dense elimination")
{
    std::mt19937 rng(7);
    const int n = 17;
    const double lo = -0.7, di = 3.1, up = -1.2;
    Dense A(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        A[i][i] = di;
        if (i > 0)
            A[i][i - 1] = lo;
        if (i + 1 < n)
            A[i][i + 1] = up;
    }
    const auto b = random_vec(rng, n);
    const auto ref = dense_solve(A, b);

    auto x = b;
    TridiagonalFactor(n, lo, di, up).solve(x);
    CHECK(max_abs_diff(x, ref) < 1e-14);

    std::vector<double> a(n, lo), d(n, di), c(n, up);
    auto y = b;
    solve_tridiagonal(a, d, c, y);
    CHECK(max_abs_diff(y, ref) < 1e-14);
}

TEST_CASE("banded LU matches dense elimination")
{
    std::mt19937 rng(11);
    const int n = 23, kl = 3, ku = 2;
    Dense A(n, std::vector<double>(n, 0.0));
    BandedLU lu(n, kl, ku);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int i = 0; i < n; ++i) {
        for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) {
            const double v = (i == j) ? 8.0 + d(rng) : d(rng);
            A[i][j] = v;
            lu.at(i, j) = v;
        }
    }
    lu.factor();
    const auto b = random_vec(rng, n);
    auto x = b;
    lu.solve(x);
    CHECK(max_abs_diff(x, dense_solve(A, b)) < 1e-13);

    BandedLU singular(3, 1, 1);
    singular.at(0, 1) = 1.0;
    singular.at(1, 0) = 1.0;
    singular.at(1, 1) = 1.0;
    singular.at(2, 2) = 1.0;
    CHECK_THROWS_AS(singular.factor(), NumericalError);
}

TEST_CASE("d2_central stencil")
{
    const double dx = 0.1;
    const int n = 9;
    std::vector<double> c(n, 3.5), lin(n), quad(n);
    for (int j = 0; j < n; ++j) {
        const double x = 0.3 + j * dx;
        lin[j] = 2.0 * x - 1.0;
        quad[j] = x * x;
    }
    for (double v : d2_central(c, dx, 3.5, 3.5))
        CHECK(v == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    for (double v : d2_central(lin, dx, 2.0 * 0.2 - 1.0, 2.0 * (0.3 + n * dx) - 1.0))
        CHECK(std::abs(v) < 1e-11);
    const double gl = 0.2 * 0.2, gr = (0.3 + n * dx) * (0.3 + n * dx);
    for (double v : d2_central(quad, dx, gl, gr))
        CHECK(v == doctest::Approx(2.0).epsilon(1e-11));
    CHECK_THROWS_AS(d2_central(std::vector<double>{1.0, 2.0}, dx, 0.0, 0.0), ValidationError);
}

TEST_CASE("fourth-order stencil exactness")
{
    const int n = 14;
    const double dx = 0.07, x0 = -0.4;
    for (int deg = 0; deg <= 5; ++deg) {
        CAPTURE(deg);
        std::vector<double> v(n);
        for (int j = 0; j < n; ++j)
            v[j] = std::pow(x0 + j * dx, deg);
        const auto d = d2_fourth(v, dx);
        CHECK(d[0] == 0.0);
        CHECK(d[n - 1] == 0.0);
        for (int j = 1; j < n - 1; ++j) {
            const double x = x0 + j * dx;
            const double exact = deg < 2 ? 0.0 : deg * (deg - 1) * std::pow(x, deg - 2);
            const bool closure = (j == 1 || j == n - 2);
            // interior 5-point rows are exact through degree 5, the shifted closures through 4
            if (!closure || deg <= 4)
                CHECK(std::abs(d[j] - exact) < 1e-9);
        }
    }
    CHECK_THROWS_AS(d2_fourth(std::vector<double>(4, 0.0), dx), ValidationError);
}

TEST_CASE("helmholtz_apply")
{
    const int N = 32;
    const double L = 1.0, dx = L / N;
    const MBLParams none{0.3, 0.0};
    const MBLParams p{0.05, 3.0};

    std::mt19937 rng(3);
    const auto u = random_vec(rng, N + 1);
    CHECK(helmholtz_apply(u, none, dx, 2) == u);
    CHECK(helmholtz_apply(u, none, dx, 4) == u);

    const std::vector<double> c(N + 1, 0.42);
    for (int order : {2, 4})
        CHECK(max_abs_diff(helmholtz_apply(c, p, dx, order), c) < 1e-14);

    SUBCASE("discrete sine eigen-relation")
    {
        for (int k : {1, 3, 8, 20}) {
            CAPTURE(k);
            std::vector<double> s(N + 1);
            for (int j = 0; j <= N; ++j)
                s[j] = std::sin(k * std::numbers::pi * j * dx / L);
            s.front() = 0.0;
            s.back() = 0.0;
            const double mu = 1.0 + p.kappa() * (2.0 - 2.0 * std::cos(k * std::numbers::pi * dx / L)) / (dx * dx);
            const auto w = helmholtz_apply(s, p, dx, 2);
            for (int j = 1; j < N; ++j)
                CHECK(std::abs(w[j] - mu * s[j]) < 1e-12);

            std::vector<double> rhs(N + 1);
            for (int j = 0; j <= N; ++j)
                rhs[j] = mu * s[j];
            CHECK(max_abs_diff(helmholtz_solve(rhs, 0.0, 0.0, p, dx, 2), s) < 1e-12);
        }
    }
    SUBCASE("inverse damps higher modes")
    {
        double prev = 1.0;
        for (int k = 1; k < N; ++k) {
            const double mu = 1.0 + p.kappa() * (2.0 - 2.0 * std::cos(k * std::numbers::pi * dx / L)) / (dx * dx);
            CHECK(1.0 / mu <= 1.0);
            CHECK(1.0 / mu < prev);
            prev = 1.0 / mu;
        }
    }
}

TEST_CASE("helmholtz_solve round trip and solver reuse")
{
    std::mt19937 rng(5);
    for (int order : {2, 4}) {
        for (int N : {5, 12, 101}) {
            CAPTURE(order);
            CAPTURE(N);
            const double dx = 1.0 / N;
            const MBLParams p{0.02, 5.0};
            auto u = random_vec(rng, N + 1);
            const auto w = helmholtz_apply(u, p, dx, order);
            const auto back = helmholtz_solve(w, u.front(), u.back(), p, dx, order);
            double scale = 0.0;
            for (double x : u)
                scale = std::max(scale, std::abs(x));
            CHECK(max_abs_diff(back, u) <= 1e-12 * scale);

            HelmholtzSolver solver(N + 1, p.kappa(), dx, order);
            auto v = w;
            solver.solve(v, u.front(), u.back());
            CHECK(max_abs_diff(v, back) < 1e-14);
        }
    }

    const std::vector<double> w{0.1, 0.2, 0.3, 0.4, 0.5};
    const auto same = helmholtz_solve(w, -1.0, 2.0, MBLParams{0.5, 0.0}, 0.25, 2);
    CHECK(same == std::vector<double>{-1.0, 0.2, 0.3, 0.4, 2.0});

    CHECK_THROWS_AS(HelmholtzSolver(5, 1.0, 0.1, 4), ValidationError);
    CHECK_THROWS_AS(HelmholtzSolver(2, 1.0, 0.1, 2), ValidationError);
    CHECK_THROWS_AS(HelmholtzSolver(10, 1.0, 0.1, 3), ValidationError);
}

TEST_CASE("weighted H1 norm")
{
    const MBLParams unit{1.0, 1.0};
    const int N = 400;
    const double dx = 1.0 / N;
    CHECK(weighted_h1_norm(std::vector<double>(N + 1, 0.0), unit, dx) == 0.0);

    const double L = 2.5;
    const std::vector<double> c(251, 0.6);
    CHECK(weighted_h1_norm(c, unit, L / 250) == doctest::Approx(0.6 * std::sqrt(L)).epsilon(1e-13));

    std::vector<double> x(N + 1);
    for (int j = 0; j <= N; ++j)
        x[j] = j * dx;
    CHECK(weighted_h1_norm(x, unit, dx) == doctest::Approx(std::sqrt(1.0 / 3.0 + 1.0)).epsilon(1e-5));

    // tau = 0 reduces to the trapezoid L2 norm
    CHECK(weighted_h1_norm(x, MBLParams{1.0, 0.0}, dx) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-5));

    std::mt19937 rng(9);
    const MBLParams p{0.01, 5.0};
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_vec(rng, 64), b = random_vec(rng, 64);
        std::vector<double> s(64), sc(64);
        for (int j = 0; j < 64; ++j) {
            s[j] = a[j] + b[j];
            sc[j] = -3.0 * a[j];
        }
        const double h = 1.0 / 63;
        CHECK(weighted_h1_norm(s, p, h) <= weighted_h1_norm(a, p, h) + weighted_h1_norm(b, p, h) + 1e-14);
        CHECK(weighted_h1_norm(sc, p, h) == doctest::Approx(3.0 * weighted_h1_norm(a, p, h)).epsilon(1e-14));
    }
}

TEST_CASE("grid and parameter validation")
{
    const auto g = GridSpec::make(0.75, 1500, 0.1);
    CHECK(g.dx * g.n_cells == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(g.nodes().size() == 1501);
    CHECK(g.node(1500) == doctest::Approx(0.75));
    CHECK_THROWS_AS(GridSpec::make(1.0, 3, 0.1), ValidationError);
    CHECK_THROWS_AS(GridSpec::make(-1.0, 10, 0.1), ValidationError);
    CHECK_THROWS_AS(GridSpec::make(1.0, 10, 0.0), ValidationError);
    CHECK_THROWS_AS((MBLParams{0.0, 1.0}.validate()), ValidationError);
    CHECK_THROWS_AS((MBLParams{0.1, -1.0}.validate()), ValidationError);
    CHECK_NOTHROW((MBLParams{0.1, 0.0}.validate()));
    CHECK((MBLParams{0.01, 4.0}.scale()) == doctest::Approx(0.02));
    CHECK(all_finite(std::vector<double>{1.0, 2.0}));
    CHECK_FALSE(all_finite(std::vector<double>{1.0, std::nan("")}));
}
