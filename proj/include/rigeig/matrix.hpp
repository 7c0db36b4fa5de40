#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "rigeig/interval.hpp"

namespace rigeig {

using Complex = std::complex<double>;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) throw DimensionError("ComplexMatrix: empty dimensions");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    bool all_finite() const {
        for (const auto& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> x);

/// Floating LU inverse with partial pivoting; no accuracy guarantee, the
/// verifier audits the result through Z0. Throws SingularMatrixError on an
/// exactly zero pivot.
ComplexMatrix approx_inverse(const ComplexMatrix& m);

/// Dense matrix of complex rectangles.
class IntervalMatrix {
  public:
    IntervalMatrix() = default;
    IntervalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) throw DimensionError("IntervalMatrix: empty dimensions");
    }

    static IntervalMatrix from_point(const ComplexMatrix& m);
    // Entrywise rectangles mid +- rad in both real and imaginary part.
    static IntervalMatrix from_midrad(const ComplexMatrix& mid, double rad);
    // Separate radii; rad_im = 0 keeps a real matrix structurally real.
    static IntervalMatrix from_midrad(const ComplexMatrix& mid, double rad_re,
                                      double rad_im);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    ComplexInterval& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const ComplexInterval& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    bool is_point() const {
        for (const auto& z : data_)
            if (!z.is_point()) return false;
        return true;
    }

    // True when every entry has imaginary part identically {0}.
    bool real_entries() const {
        for (const auto& z : data_)
            if (!(z.im().is_point() && z.im().lo() == 0.0)) return false;
        return true;
    }

    bool contains(const ComplexMatrix& m) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<ComplexInterval> data_;
};

/// Entrywise rectangle centers, rounded to nearest.
ComplexMatrix midpoint_matrix(const IntervalMatrix& m);

std::vector<ComplexInterval> interval_matvec(const IntervalMatrix& m,
                                             std::span<const ComplexInterval> x);
std::vector<ComplexInterval> interval_matvec(const IntervalMatrix& m,
                                             std::span<const Complex> x);

/// R * M with a point left factor; the workhorse of the Z0 and Krawczyk
/// products, kept separate so the point factor takes the cheap sign-case
/// paths in the interval kernels.
IntervalMatrix point_times_interval(const ComplexMatrix& r, const IntervalMatrix& m);

}  // namespace rigeig
