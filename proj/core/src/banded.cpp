#include "mbl/banded.hpp"

#include "mbl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mbl {

TridiagonalFactor::TridiagonalFactor(int n, double lower, double diag, double upper)
    : n_(n), lower_(lower), cp_(std::size_t(std::max(n, 0))), inv_(std::size_t(std::max(n, 0)))
{
    if (n < 1)
        throw ValidationError("tridiagonal: empty system");
    double piv = diag;
    for (int i = 0; i < n; ++i) {
        if (i > 0)
            piv = diag - lower * cp_[i - 1];
        if (!(std::abs(piv) > 0.0))
            throw NumericalError("tridiagonal: zero pivot at row " + std::to_string(i));
        inv_[i] = 1.0 / piv;
        cp_[i] = upper * inv_[i];
    }
}

void TridiagonalFactor::solve(std::span<double> d) const
{
    d[0] *= inv_[0];
    for (int i = 1; i < n_; ++i)
        d[i] = (d[i] - lower_ * d[i - 1]) * inv_[i];
    for (int i = n_ - 2; i >= 0; --i)
        d[i] -= cp_[i] * d[i + 1];
}

void solve_tridiagonal(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                       std::span<double> d)
{
    const std::size_t n = b.size();
    if (n == 0)
        return;
    std::vector<double> cp(n);
    double piv = b[0];
    if (!(std::abs(piv) > 0.0))
        throw NumericalError("tridiagonal: zero pivot at row 0");
    cp[0] = c[0] / piv;
    d[0] /= piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = b[i] - a[i] * cp[i - 1];
        if (!(std::abs(piv) > 0.0))
            throw NumericalError("tridiagonal: zero pivot at row " + std::to_string(i));
        cp[i] = (i + 1 < n ? c[i] : 0.0) / piv;
        d[i] = (d[i] - a[i] * d[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;)
        d[i] -= cp[i] * d[i + 1];
}

BandedLU::BandedLU(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ld_(kl + ku + 1), band_(std::size_t(std::max(n, 0)) * (kl + ku + 1), 0.0)
{
    if (n < 1 || kl < 0 || ku < 0)
        throw ValidationError("banded: bad dimensions");
}

double& BandedLU::at(int i, int j)
{
    if (j < i - kl_ || j > i + ku_ || i < 0 || j < 0 || i >= n_ || j >= n_)
        throw ValidationError("banded: entry outside band");
    return el(i, j);
}

void BandedLU::factor()
{
    for (int k = 0; k < n_; ++k) {
        const double piv = el(k, k);
        if (!(std::abs(piv) > 0.0))
            throw NumericalError("banded: zero pivot at row " + std::to_string(k));
        const int imax = std::min(n_ - 1, k + kl_);
        const int jmax = std::min(n_ - 1, k + ku_);
        for (int i = k + 1; i <= imax; ++i) {
            const double m = el(i, k) / piv;
            el(i, k) = m;
            for (int j = k + 1; j <= jmax; ++j)
                el(i, j) -= m * el(k, j);
        }
    }
    factored_ = true;
}

void BandedLU::solve(std::span<double> x) const
{
    if (!factored_)
        throw ValidationError("banded: solve before factor");
    for (int i = 0; i < n_; ++i) {
        const int j0 = std::max(0, i - kl_);
        double s = x[i];
        for (int j = j0; j < i; ++j)
            s -= el(i, j) * x[j];
        x[i] = s;
    }
    for (int i = n_ - 1; i >= 0; --i) {
        const int j1 = std::min(n_ - 1, i + ku_);
        double s = x[i];
        for (int j = i + 1; j <= j1; ++j)
            s -= el(i, j) * x[j];
        x[i] = s / el(i, i);
    }
}

} // namespace mbl
