#include "rigeig/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace rigeig {

namespace {

constexpr double kRadiusMargin = 1e-6;  // relative offset inside the open window
constexpr int kRadiusAttempts = 60;
// Candidates for real matrices are snapped to exactly real centers when the
// imaginary parts are below this relative threshold; genuinely complex pairs
// sit many orders of magnitude above it.
constexpr double kRealSnapTol = 1e-8;

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

bool all_finite(std::span<const Complex> v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

}  // namespace

const char* to_string(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Verified: return "Verified";
        case VerifyStatus::FailedNegativeTest: return "FailedNegativeTest";
        case VerifyStatus::FailedSingularR: return "FailedSingularR";
        case VerifyStatus::FailedNonFinite: return "FailedNonFinite";
    }
    return "Unknown";
}

std::vector<Complex> VerificationProblem::full_vector(std::span<const Complex> x) const {
    const std::size_t n = x.size();
    std::vector<Complex> v(n);
    std::size_t src = 1;
    for (std::size_t i = 0; i < n; ++i) v[i] = (i == pivot) ? pivot_value : x[src++];
    return v;
}

std::vector<ComplexInterval> eval_f(const VerificationProblem& prob,
                                    std::span<const Complex> x) {
    if (x.size() != prob.size()) throw DimensionError("eval_f: bad point dimension");
    if (!all_finite(x)) throw std::invalid_argument("eval_f: non-finite point");

    const std::vector<Complex> v_full = prob.full_vector(x);
    std::vector<ComplexInterval> f = interval_matvec(prob.A, v_full);
    const ComplexInterval lam{prob.lambda(x)};
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= lam * ComplexInterval(v_full[i]);
    return f;
}

IntervalMatrix interval_jacobian(const VerificationProblem& prob,
                                 std::span<const ComplexInterval> x) {
    const std::size_t n = prob.size();
    if (x.size() != n) throw DimensionError("interval_jacobian: bad dimension");

    IntervalMatrix j(n, n);
    // d/dlambda f = -v_full
    std::size_t src = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const ComplexInterval vi =
            (i == prob.pivot) ? ComplexInterval(prob.pivot_value) : x[src++];
        j(i, 0) = -vi;
    }
    // d/dv_c f = (A - lambda I) e_c, pivot column deleted
    const ComplexInterval lam = x[0];
    std::size_t col = 1;
    for (std::size_t c = 0; c < n; ++c) {
        if (c == prob.pivot) continue;
        for (std::size_t i = 0; i < n; ++i) j(i, col) = prob.A(i, c);
        j(c, col) -= lam;
        ++col;
    }
    return j;
}

IntervalMatrix build_jacobian(const VerificationProblem& prob) {
    std::vector<ComplexInterval> x(prob.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = ComplexInterval(prob.x_bar[i]);
    return interval_jacobian(prob, x);
}

ComplexMatrix point_jacobian(const ComplexMatrix& a, Complex lambda,
                             std::span<const Complex> v_full, std::size_t pivot) {
    const std::size_t n = a.rows();
    ComplexMatrix j(n, n);
    for (std::size_t i = 0; i < n; ++i) j(i, 0) = -v_full[i];
    std::size_t col = 1;
    for (std::size_t c = 0; c < n; ++c) {
        if (c == pivot) continue;
        for (std::size_t i = 0; i < n; ++i) j(i, col) = a(i, c);
        j(c, col) -= lambda;
        ++col;
    }
    return j;
}

std::vector<double> compute_Y(const VerificationProblem& prob) {
    const std::vector<ComplexInterval> f = eval_f(prob, prob.x_bar);
    const std::size_t n = prob.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        ComplexInterval acc;
        for (std::size_t j = 0; j < n; ++j) acc += ComplexInterval(prob.R(i, j)) * f[j];
        y[i] = acc.mag_sup();
    }
    return y;
}

std::vector<double> compute_Z0(const VerificationProblem& prob) {
    const std::size_t n = prob.size();
    IntervalMatrix rdf = point_times_interval(prob.R, build_jacobian(prob));
    std::vector<double> z0(n);
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            ComplexInterval e = -rdf(i, j);
            if (i == j) e += ComplexInterval(Complex{1.0, 0.0});
            row = rnd::add_up(row, e.mag_sup());
        }
        z0[i] = row;
    }
    return z0;
}

std::vector<double> compute_Z1(const VerificationProblem& prob) {
    const std::size_t n = prob.size();
    std::vector<double> z1(n);
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == prob.pivot) continue;
            row = rnd::add_up(row, ComplexInterval(prob.R(i, j)).mag_sup());
        }
        z1[i] = rnd::mul_up(2.0, row);
    }
    return z1;
}

std::optional<NegativityWindow> solve_radii_polynomials(const RadiiBounds& b) {
    const std::size_t n = b.Y.size();
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const double y = b.Y[k], z0 = b.Z0[k], z1 = b.Z1[k];
        if (!(z0 < 1.0)) return std::nullopt;  // linear coefficient nonnegative
        if (z1 == 0.0) {
            lo = std::max(lo, y / (1.0 - z0));
            continue;
        }
        const double disc = (1.0 - z0) * (1.0 - z0) - 4.0 * z1 * y;
        if (!(disc > 0.0)) return std::nullopt;
        const double q = (1.0 - z0) + std::sqrt(disc);
        lo = std::max(lo, 2.0 * y / q);
        hi = std::min(hi, q / (2.0 * z1));
    }
    if (!(lo < hi)) return std::nullopt;
    return NegativityWindow{lo, hi};
}

bool radii_negative_at(const RadiiBounds& b, double r) {
    if (!std::isfinite(r) || r <= 0.0) return false;
    const RealInterval ri(r);
    const RealInterval one(1.0);
    try {
        for (std::size_t k = 0; k < b.Y.size(); ++k) {
            RealInterval p =
                (RealInterval(b.Z1[k]) * ri + (RealInterval(b.Z0[k]) - one)) * ri +
                RealInterval(b.Y[k]);
            if (!(p.hi() < 0.0)) return false;
        }
    } catch (const IntervalError&) {
        return false;  // overflow during evaluation: no certificate
    }
    return true;
}

namespace {

struct RadiusSelection {
    double r_exist;
    double r_unique;
};

// Pick rigorously re-verified radii strictly inside the open window: the
// existence radius near the infimum, the uniqueness radius near the supremum.
std::optional<RadiusSelection> select_radii(const RadiiBounds& b, NegativityWindow w,
                                            double scale) {
    const bool bounded = std::isfinite(w.r_hi);

    double r_exist = std::numeric_limits<double>::quiet_NaN();
    double cand = w.r_lo > 0.0 ? w.r_lo * (1.0 + kRadiusMargin)
                  : bounded    ? w.r_hi * 1e-3
                               : 1e-15 * scale;
    for (int i = 0; i < kRadiusAttempts && cand < w.r_hi; ++i, cand *= 2.0) {
        if (radii_negative_at(b, cand)) {
            r_exist = cand;
            break;
        }
    }
    if (!std::isfinite(r_exist)) return std::nullopt;

    double r_unique = std::numeric_limits<double>::quiet_NaN();
    // An unbounded window means every Z1 vanished (only the degenerate n=1
    // problem in practice); any finite radius certifies, so cap at a large
    // stand-in instead of chasing the supremum.
    cand = bounded ? w.r_hi * (1.0 - kRadiusMargin) : std::max(scale, r_exist) * 1e6;
    for (int i = 0; i < kRadiusAttempts && cand > 0.0; ++i, cand *= 0.5) {
        if (cand < r_exist) break;
        if (radii_negative_at(b, cand)) {
            r_unique = cand;
            break;
        }
    }
    if (!std::isfinite(r_unique)) r_unique = r_exist;
    return RadiusSelection{r_exist, r_unique};
}

}  // namespace

bool realness_check(const IntervalMatrix& a, Complex lambda,
                    std::span<const Complex> v_full) {
    if (!a.real_entries()) return false;
    if (lambda.imag() != 0.0) return false;
    for (const auto& z : v_full)
        if (z.imag() != 0.0) return false;
    return true;
}

AssembledCandidate assemble_problem(const IntervalMatrix& a, const CandidateEigenpair& cand) {
    if (!a.square()) throw DimensionError("assemble_problem: matrix must be square");
    const std::size_t n = a.rows();
    if (cand.v.size() != n || cand.pivot >= n)
        throw DimensionError("assemble_problem: candidate does not match the matrix");
    if (!all_finite(cand.v) || !std::isfinite(cand.lambda.real()) ||
        !std::isfinite(cand.lambda.imag()))
        throw std::invalid_argument("assemble_problem: non-finite candidate");
    if (cand.v[cand.pivot] == Complex{})
        throw std::invalid_argument("assemble_problem: zero pivot component");

    AssembledCandidate out;
    out.problem.A = a;
    out.problem.pivot = cand.pivot;

    // pin the pivot component to exactly one
    Complex lambda = cand.lambda;
    std::vector<Complex> v = cand.v;
    const Complex piv = v[cand.pivot];
    for (auto& z : v) z /= piv;
    v[cand.pivot] = 1.0;
    if (!all_finite(v)) {
        v = cand.v;  // report the raw candidate
        out.status = VerifyStatus::FailedNonFinite;
    }

    // Snap near-real candidates of a real matrix to exactly real centers;
    // realness of the certified pair then follows from uniqueness.
    if (a.real_entries()) {
        double dust = std::fabs(lambda.imag());
        for (const auto& z : v) dust = std::max(dust, std::fabs(z.imag()));
        if (dust <= kRealSnapTol * (1.0 + std::abs(lambda))) {
            lambda = lambda.real();
            for (auto& z : v) z = z.real();
        }
    }

    out.problem.pivot_value = v[cand.pivot];
    out.problem.x_bar.reserve(n);
    out.problem.x_bar.push_back(lambda);
    for (std::size_t i = 0; i < n; ++i)
        if (i != cand.pivot) out.problem.x_bar.push_back(v[i]);
    if (out.status != VerifyStatus::Verified) return out;

    try {
        out.problem.R = approx_inverse(point_jacobian(midpoint_matrix(a), lambda, v, cand.pivot));
    } catch (const SingularMatrixError&) {
        out.status = VerifyStatus::FailedSingularR;
        return out;
    }
    if (!out.problem.R.all_finite()) out.status = VerifyStatus::FailedNonFinite;
    return out;
}

EigenpairEnclosure verify_eigenpair(const IntervalMatrix& a, const CandidateEigenpair& cand) {
    AssembledCandidate asmres = assemble_problem(a, cand);
    const VerificationProblem& prob = asmres.problem;

    EigenpairEnclosure enc;
    enc.lambda_center = prob.x_bar[0];
    enc.vector_center = prob.full_vector(prob.x_bar);
    enc.pivot = prob.pivot;
    if (asmres.status != VerifyStatus::Verified) {
        enc.status = asmres.status;
        return enc;
    }

    RadiiBounds bounds;
    try {
        bounds.Y = compute_Y(prob);
        bounds.Z0 = compute_Z0(prob);
        bounds.Z1 = compute_Z1(prob);
    } catch (const IntervalError&) {
        enc.status = VerifyStatus::FailedNonFinite;
        return enc;
    }
    if (!all_finite(bounds.Y) || !all_finite(bounds.Z0) || !all_finite(bounds.Z1)) {
        enc.status = VerifyStatus::FailedNonFinite;
        return enc;
    }

    const auto window = solve_radii_polynomials(bounds);
    if (!window) {
        enc.status = VerifyStatus::FailedNegativeTest;
        return enc;
    }
    const auto sel = select_radii(bounds, *window, 1.0 + std::abs(enc.lambda_center));
    if (!sel) {
        enc.status = VerifyStatus::FailedNegativeTest;
        return enc;
    }

    enc.r_exist = sel->r_exist;
    enc.r_unique = sel->r_unique;
    enc.is_real = realness_check(a, enc.lambda_center, enc.vector_center);
    enc.status = VerifyStatus::Verified;
    return enc;
}

std::vector<EigenpairEnclosure> verify_eigendecomposition(const IntervalMatrix& a,
                                                          bool parallel) {
    if (!a.square()) throw DimensionError("verify_eigendecomposition: matrix must be square");
    const std::vector<CandidateEigenpair> cands = approx_eigendecomposition(midpoint_matrix(a));

    std::vector<EigenpairEnclosure> out(cands.size());
    if (!parallel) {
        for (std::size_t i = 0; i < cands.size(); ++i) out[i] = verify_eigenpair(a, cands[i]);
        return out;
    }
    std::vector<std::future<EigenpairEnclosure>> futs;
    futs.reserve(cands.size());
    for (const auto& c : cands)
        futs.push_back(std::async(std::launch::async,
                                  [&a, &c]() { return verify_eigenpair(a, c); }));
    for (std::size_t i = 0; i < futs.size(); ++i) out[i] = futs[i].get();
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> find_duplicate_enclosures(
    std::span<const EigenpairEnclosure> results) {
    std::vector<std::pair<std::size_t, std::size_t>> dups;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i].verified()) continue;
        for (std::size_t j = i + 1; j < results.size(); ++j) {
            if (!results[j].verified()) continue;
            const auto& ri = results[i];
            const auto& rj = results[j];
            if (std::abs(ri.lambda_center - rj.lambda_center) > ri.r_exist + rj.r_exist)
                continue;
            // align candidate j onto candidate i's pivot before comparing boxes
            const Complex pj = rj.vector_center[ri.pivot];
            if (pj == Complex{}) continue;
            bool overlap = true;
            const double slack =
                ri.r_exist + rj.r_exist * (1.0 + std::abs(Complex(1.0) / pj)) * 2.0;
            for (std::size_t c = 0; c < ri.vector_center.size() && overlap; ++c) {
                if (std::abs(ri.vector_center[c] - rj.vector_center[c] / pj) > slack)
                    overlap = false;
            }
            if (overlap) dups.emplace_back(i, j);
        }
    }
    return dups;
}

bool recheck_enclosure(const IntervalMatrix& a, const EigenpairEnclosure& enc) {
    if (!enc.verified()) return false;
    VerificationProblem prob;
    prob.A = a;
    prob.pivot = enc.pivot;
    prob.pivot_value = enc.vector_center[enc.pivot];
    prob.x_bar.push_back(enc.lambda_center);
    for (std::size_t i = 0; i < enc.vector_center.size(); ++i)
        if (i != enc.pivot) prob.x_bar.push_back(enc.vector_center[i]);
    try {
        prob.R = approx_inverse(
            point_jacobian(midpoint_matrix(a), enc.lambda_center, enc.vector_center, enc.pivot));
        RadiiBounds b{compute_Y(prob), compute_Z0(prob), compute_Z1(prob)};
        return radii_negative_at(b, enc.r_exist) && radii_negative_at(b, enc.r_unique) &&
               enc.r_exist <= enc.r_unique;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace rigeig
