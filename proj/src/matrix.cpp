#include "rigeig/matrix.hpp"

#include <cmath>

namespace rigeig {

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> x) {
    if (a.cols() != x.size()) throw DimensionError("matvec: dimension mismatch");
    std::vector<Complex> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

ComplexMatrix approx_inverse(const ComplexMatrix& m) {
    if (!m.square()) throw DimensionError("approx_inverse: matrix must be square");
    const std::size_t n = m.rows();

    ComplexMatrix lu = m;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            double cand = std::abs(lu(r, col));
            if (cand > best) {
                best = cand;
                piv = r;
            }
        }
        if (best == 0.0) throw SingularMatrixError("approx_inverse: exactly singular pivot");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(piv, j));
            std::swap(perm[col], perm[piv]);
        }
        const Complex d = lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            Complex f = lu(r, col) / d;
            lu(r, col) = f;
            if (f == Complex{}) continue;
            for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
        }
    }

    // Solve LU * X = P for each unit column of the permutation.
    ComplexMatrix inv(n, n);
    std::vector<Complex> work(n);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = 0; i < n; ++i) work[i] = (perm[i] == col) ? 1.0 : 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            Complex acc = work[i];
            for (std::size_t j = 0; j < i; ++j) acc -= lu(i, j) * work[j];
            work[i] = acc;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            Complex acc = work[ii];
            for (std::size_t j = ii + 1; j < n; ++j) acc -= lu(ii, j) * work[j];
            work[ii] = acc / lu(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, col) = work[i];
    }
    return inv;
}

IntervalMatrix IntervalMatrix::from_point(const ComplexMatrix& m) {
    IntervalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = ComplexInterval(m(i, j));
    return r;
}

IntervalMatrix IntervalMatrix::from_midrad(const ComplexMatrix& mid, double rad) {
    return from_midrad(mid, rad, rad);
}

IntervalMatrix IntervalMatrix::from_midrad(const ComplexMatrix& mid, double rad_re,
                                           double rad_im) {
    IntervalMatrix r(mid.rows(), mid.cols());
    for (std::size_t i = 0; i < mid.rows(); ++i)
        for (std::size_t j = 0; j < mid.cols(); ++j)
            r(i, j) = ComplexInterval::from_midrad(mid(i, j).real(), mid(i, j).imag(),
                                                   rad_re, rad_im);
    return r;
}

bool IntervalMatrix::contains(const ComplexMatrix& m) const {
    if (m.rows() != rows_ || m.cols() != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(i, j).contains(m(i, j))) return false;
    return true;
}

ComplexMatrix midpoint_matrix(const IntervalMatrix& m) {
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).mid();
    return r;
}

std::vector<ComplexInterval> interval_matvec(const IntervalMatrix& m,
                                             std::span<const ComplexInterval> x) {
    if (m.cols() != x.size()) throw DimensionError("interval_matvec: dimension mismatch");
    std::vector<ComplexInterval> y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ComplexInterval acc;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<ComplexInterval> interval_matvec(const IntervalMatrix& m,
                                             std::span<const Complex> x) {
    std::vector<ComplexInterval> xi(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) xi[j] = ComplexInterval(x[j]);
    return interval_matvec(m, xi);
}

IntervalMatrix point_times_interval(const ComplexMatrix& r, const IntervalMatrix& m) {
    if (r.cols() != m.rows()) throw DimensionError("point_times_interval: dimension mismatch");
    IntervalMatrix out(r.rows(), m.cols());
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t k = 0; k < r.cols(); ++k) {
            const ComplexInterval rik{r(i, k)};
            if (r(i, k) == Complex{}) continue;
            for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) += rik * m(k, j);
        }
    }
    return out;
}

}  // namespace rigeig
