#pragma once

#include <span>
#include <vector>

namespace mbl {

/// Thomas factorization of a constant-coefficient tridiagonal matrix
/// tridiag(lower, diag, upper) of size n. Factor once, solve many right-hand sides.
class TridiagonalFactor {
public:
    TridiagonalFactor() = default;
    TridiagonalFactor(int n, double lower, double diag, double upper);

    int size() const { return n_; }
    /// Overwrites rhs with the solution.
    void solve(std::span<double> rhs) const;

private:
    int n_ = 0;
    double lower_ = 0.0;
    std::vector<double> cp_;     // modified super-diagonal
    std::vector<double> inv_;    // 1 / modified pivot
};

/// Solves a general tridiagonal system in place (a: sub, b: diag, c: super).
/// a[0] and c[n-1] are ignored. No pivoting.
void solve_tridiagonal(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                       std::span<double> d);

/// Banded LU without pivoting, kl sub- and ku super-diagonals.
class BandedLU {
public:
    BandedLU(int n, int kl, int ku);

    int size() const { return n_; }
    /// A(i, j) for |i-j| within the band. Only valid before factor().
    double& at(int i, int j);
    void factor();
    void solve(std::span<double> rhs) const;

private:
    int n_, kl_, ku_, ld_;
    std::vector<double> band_;   // row-major, row i holds columns i-kl .. i+ku
    bool factored_ = false;

    double& el(int i, int j) { return band_[std::size_t(i) * ld_ + (j - i + kl_)]; }
    double el(int i, int j) const { return band_[std::size_t(i) * ld_ + (j - i + kl_)]; }
};

} // namespace mbl
