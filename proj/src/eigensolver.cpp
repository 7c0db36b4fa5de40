#include "rigeig/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rigeig {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Parlett-Reinsch balancing with radix-2 scale factors: A <- D^-1 A D.
// Returns the diagonal of D; exact in floating point, so eigenvalues are
// untouched and eigenvectors transform back by componentwise scaling.
std::vector<double> balance(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<double> scale(n, 1.0);
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            double g = r / 2.0;
            while (c < g) {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while (c >= g) {
                f /= 2.0;
                c /= 4.0;
            }
            if ((c + r) / f < 0.95 * s && f != 1.0) {
                done = false;
                scale[i] *= f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
    return scale;
}

// Householder reduction to upper Hessenberg form, accumulating the unitary
// transformation into q (A = q H q*).
void hessenberg(ComplexMatrix& a, ComplexMatrix& q) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<Complex> w(n);
    for (std::size_t col = 0; col + 2 < n; ++col) {
        const std::size_t lo = col + 1;
        double norm = 0.0;
        for (std::size_t i = lo; i < n; ++i) norm = std::hypot(norm, std::abs(a(i, col)));
        if (norm == 0.0) continue;

        Complex alpha = a(lo, col);
        Complex beta = (alpha == Complex{}) ? Complex(-norm)
                                            : -(alpha / std::abs(alpha)) * norm;
        // u = x - beta*e1; reflector P = I - tau u u* with real tau = 2/(u*u)
        double usq = 0.0;
        for (std::size_t i = lo; i < n; ++i) {
            w[i] = a(i, col);
            if (i == lo) w[i] -= beta;
            usq += std::norm(w[i]);
        }
        if (usq == 0.0) continue;
        const double tau = 2.0 / usq;

        // A := P A (rows lo..n-1)
        for (std::size_t j = col; j < n; ++j) {
            Complex s{};
            for (std::size_t i = lo; i < n; ++i) s += std::conj(w[i]) * a(i, j);
            s *= tau;
            for (std::size_t i = lo; i < n; ++i) a(i, j) -= s * w[i];
        }
        // A := A P (cols lo..n-1)
        for (std::size_t i = 0; i < n; ++i) {
            Complex s{};
            for (std::size_t j = lo; j < n; ++j) s += a(i, j) * w[j];
            s *= tau;
            for (std::size_t j = lo; j < n; ++j) a(i, j) -= s * std::conj(w[j]);
        }
        // Q := Q P
        for (std::size_t i = 0; i < n; ++i) {
            Complex s{};
            for (std::size_t j = lo; j < n; ++j) s += q(i, j) * w[j];
            s *= tau;
            for (std::size_t j = lo; j < n; ++j) q(i, j) -= s * std::conj(w[j]);
        }
        a(lo, col) = beta;
        for (std::size_t i = lo + 1; i < n; ++i) a(i, col) = 0.0;
    }
}

struct Givens {
    double c;   // real cosine
    Complex s;  // complex sine
};

// Unitary [c, s; -conj(s), c] with real c mapping (x, y) to (r, 0).
Givens make_givens(Complex x, Complex y) {
    if (y == Complex{}) return {1.0, Complex{}};
    if (x == Complex{}) return {0.0, std::conj(y) / std::abs(y)};
    const double ax = std::abs(x);
    const double nrm = std::hypot(ax, std::abs(y));
    return {ax / nrm, (x / ax) * std::conj(y) / nrm};
}

// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to its
// bottom-right entry.
Complex wilkinson_shift(const ComplexMatrix& h, std::size_t hi) {
    const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
    const Complex c = h(hi, hi - 1), d = h(hi, hi);
    const Complex p = (a - d) * 0.5;
    const Complex bc = b * c;
    const Complex r = std::sqrt(p * p + bc);
    const Complex s = (std::abs(p + r) >= std::abs(p - r)) ? p + r : p - r;
    if (s == Complex{}) return d;
    return d - bc / s;
}

// One explicit shifted QR sweep on the active window [lo, hi], updating the
// full rows/columns so the Schur form stays consistent, and accumulating the
// rotations into q.
void qr_sweep(ComplexMatrix& h, ComplexMatrix& q, std::size_t lo, std::size_t hi,
              Complex shift) {
    const std::size_t n = h.rows();
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= shift;

    std::vector<Givens> rot(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
        Givens g = make_givens(h(i, i), h(i + 1, i));
        rot[i - lo] = g;
        for (std::size_t j = i; j < n; ++j) {
            const Complex t1 = h(i, j), t2 = h(i + 1, j);
            h(i, j) = g.c * t1 + g.s * t2;
            h(i + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
        }
        h(i + 1, i) = 0.0;
    }
    for (std::size_t i = lo; i < hi; ++i) {
        const Givens g = rot[i - lo];
        for (std::size_t j = 0; j <= i + 1; ++j) {
            const Complex t1 = h(j, i), t2 = h(j, i + 1);
            h(j, i) = g.c * t1 + std::conj(g.s) * t2;
            h(j, i + 1) = -g.s * t1 + g.c * t2;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const Complex t1 = q(j, i), t2 = q(j, i + 1);
            q(j, i) = g.c * t1 + std::conj(g.s) * t2;
            q(j, i + 1) = -g.s * t1 + g.c * t2;
        }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += shift;
}

// Schur triangularization of the Hessenberg matrix h in place.
void triangularize(ComplexMatrix& h, ComplexMatrix& q, const EigOptions& opts) {
    const std::size_t n = h.rows();
    double hnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (i == 0 ? 0 : i - 1); j < n; ++j)
            hnorm = std::max(hnorm, std::abs(h(i, j)));
    if (hnorm == 0.0) return;

    const auto negligible = [&](std::size_t i) {
        double tst = std::abs(h(i - 1, i - 1)) + std::abs(h(i, i));
        if (tst == 0.0) tst = hnorm;
        return std::abs(h(i, i - 1)) <= kEps * tst;
    };

    std::size_t hi = n - 1;
    int sweeps = 0;
    while (true) {
        std::size_t lo = hi;
        while (lo > 0 && !negligible(lo)) --lo;
        if (lo > 0) h(lo, lo - 1) = 0.0;
        if (lo == hi) {
            if (hi == 0) break;
            --hi;
            sweeps = 0;
            continue;
        }
        if (sweeps >= opts.max_sweeps_per_eigenvalue)
            throw EigConvergenceError(
                hi, "approx_eigendecomposition: QR failed to deflate eigenvalue " +
                        std::to_string(hi) + " within the iteration budget");
        Complex shift = (sweeps > 0 && sweeps % 10 == 0)
                            ? h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1))
                            : wilkinson_shift(h, hi);
        qr_sweep(h, q, lo, hi, shift);
        ++sweeps;
    }
}

// Eigenvector of the upper triangular t for the eigenvalue at diagonal
// index j, by back-substitution with perturbed tiny divisors.
std::vector<Complex> triangular_eigenvector(const ComplexMatrix& t, std::size_t j,
                                            double tnorm) {
    const double smin = std::max(kEps * tnorm, 1e-290);
    std::vector<Complex> y(t.rows());
    y[j] = 1.0;
    const Complex lambda = t(j, j);
    for (std::size_t ii = j; ii-- > 0;) {
        Complex s{};
        for (std::size_t k = ii + 1; k <= j; ++k) s += t(ii, k) * y[k];
        Complex d = t(ii, ii) - lambda;
        if (std::abs(d) < smin) d = smin;
        y[ii] = -s / d;
        // crude rescale guard against overflow in near-defective chains
        double m = std::abs(y[ii]);
        if (m > 1e250) {
            for (std::size_t k = ii; k <= j; ++k) y[k] /= m;
        }
    }
    return y;
}

}  // namespace

std::size_t pivot_index(std::span<const Complex> v) {
    std::size_t k = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double m = std::abs(v[i]);
        if (m > best) {
            best = m;
            k = i;
        }
    }
    return k;
}

std::vector<CandidateEigenpair> approx_eigendecomposition(const ComplexMatrix& m,
                                                          const EigOptions& opts) {
    if (!m.square()) throw DimensionError("approx_eigendecomposition: matrix must be square");
    if (!m.all_finite())
        throw std::invalid_argument("approx_eigendecomposition: non-finite entries");
    const std::size_t n = m.rows();

    ComplexMatrix h = m;
    std::vector<double> scale = balance(h);
    ComplexMatrix q = ComplexMatrix::identity(n);
    hessenberg(h, q);
    triangularize(h, q, opts);

    double tnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) tnorm = std::max(tnorm, std::abs(h(i, j)));

    std::vector<CandidateEigenpair> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Complex> y = triangular_eigenvector(h, j, tnorm);
        std::vector<Complex> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            Complex acc{};
            for (std::size_t k = 0; k <= j; ++k) acc += q(i, k) * y[k];
            v[i] = acc * scale[i];
        }
        const std::size_t k = pivot_index(v);
        // rescale so the pivot component is exactly one
        const Complex piv = v[k];
        for (auto& z : v) z /= piv;
        v[k] = 1.0;
        out[j] = CandidateEigenpair{h(j, j), std::move(v), k};
    }

    std::sort(out.begin(), out.end(), [](const CandidateEigenpair& a, const CandidateEigenpair& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });
    return out;
}

}  // namespace rigeig
