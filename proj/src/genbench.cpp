#include "rigeig/genbench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rigeig/eigensolver.hpp"
#include "rigeig/krawczyk.hpp"
#include "rigeig/verifier.hpp"

namespace rigeig {

namespace {

std::string sci15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.14e", x);
    return buf;
}

double run_method(const IntervalMatrix& a, const CandidateEigenpair& cand, Method method,
                  bool& ok) {
    if (method == Method::RadiiPolynomials) {
        EigenpairEnclosure enc = verify_eigenpair(a, cand);
        ok = enc.verified();
        return ok ? enc.r_exist : 0.0;
    }
    KrawczykResult kr = krawczyk_verify(a, cand);
    ok = kr.success;
    return ok ? kr.box_radius : 0.0;
}

}  // namespace

const char* to_string(Method m) {
    return m == Method::RadiiPolynomials ? "radiipol" : "krawczyk";
}

std::optional<Method> method_from_string(std::string_view name) {
    if (name == "radiipol") return Method::RadiiPolynomials;
    if (name == "krawczyk") return Method::Krawczyk;
    return std::nullopt;
}

ComplexMatrix generate_midpoint(std::size_t N, std::uint64_t seed) {
    if (N == 0) throw std::invalid_argument("generate_midpoint: N must be positive");
    const std::size_t n = N + 1;

    for (int attempt = 0; attempt < 10; ++attempt) {
        SplitMix64 rng(seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull);
        ComplexMatrix x(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double re = rng.uniform_pm1();
                const double im = rng.uniform_pm1();
                x(i, j) = Complex{re, im};
            }

        ComplexMatrix xinv;
        try {
            xinv = approx_inverse(x);
        } catch (const SingularMatrixError&) {
            continue;
        }
        if (!xinv.all_finite()) continue;
        // numerically-singular guard: audit the residual
        ComplexMatrix resid = multiply(x, xinv);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                worst = std::max(worst,
                                 std::abs(resid(i, j) - (i == j ? Complex{1.0} : Complex{})));
        if (worst > 1e-8) continue;

        ComplexMatrix d(n, n);
        for (std::size_t j = 1; j < n; ++j)
            d(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                          static_cast<double>(N));
        return multiply(multiply(x, d), xinv);
    }
    throw std::runtime_error("generate_midpoint: 10 singular draws in a row");
}

IntervalMatrix generate_test_matrix(const GeneratorSpec& spec) {
    if (!(std::isfinite(spec.rad) && spec.rad >= 0.0))
        throw std::invalid_argument("generate_test_matrix: invalid radius");
    return IntervalMatrix::from_midrad(generate_midpoint(spec.N, spec.seed), spec.rad);
}

SweepReport radius_sweep(const GeneratorSpec& base, std::span<const double> rad_schedule,
                         Method method) {
    if (rad_schedule.empty())
        throw std::invalid_argument("radius_sweep: empty radius schedule");

    const ComplexMatrix mid = generate_midpoint(base.N, base.seed);
    const std::vector<CandidateEigenpair> cands = approx_eigendecomposition(mid);

    SweepReport report;
    report.rows.reserve(rad_schedule.size());
    for (double rad : rad_schedule) {
        SweepRow row;
        row.rad = rad;
        const IntervalMatrix a = IntervalMatrix::from_midrad(mid, rad);
        double sum = 0.0;
        std::size_t hits = 0;
        for (const auto& cand : cands) {
            bool ok = false;
            const double r = run_method(a, cand, method, ok);
            if (ok) {
                row.radii.emplace_back(r);
                sum += r;
                ++hits;
            } else {
                row.radii.emplace_back(std::nullopt);
            }
        }
        if (hits > 0) row.mean_radius = sum / static_cast<double>(hits);
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<BenchRow> timing_benchmark(std::span<const std::size_t> n_schedule, double rad,
                                       const std::set<Method>& methods, std::uint64_t seed) {
    using Clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;
    for (std::size_t N : n_schedule) {
        const IntervalMatrix a = generate_test_matrix(GeneratorSpec{N, seed, rad});
        const ComplexMatrix mid = midpoint_matrix(a);
        for (Method method : methods) {
            BenchRow row;
            row.N = N;
            row.method = method;
            row.seconds = std::numeric_limits<double>::infinity();
            for (int rep = 0; rep < 3; ++rep) {
                const auto t0 = Clock::now();
                const std::vector<CandidateEigenpair> cands = approx_eigendecomposition(mid);
                std::size_t hits = 0;
                for (const auto& cand : cands) {
                    bool ok = false;
                    run_method(a, cand, method, ok);
                    if (ok) ++hits;
                }
                const auto t1 = Clock::now();
                row.seconds = std::min(row.seconds,
                                       std::chrono::duration<double>(t1 - t0).count());
                row.success_count = hits;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, const SweepReport& report) {
    const std::size_t n = report.rows.empty() ? 0 : report.rows.front().radii.size();
    os << "rad";
    for (std::size_t i = 0; i < n; ++i) os << ",eig_" << i;
    os << ",mean_radius\n";
    for (const auto& row : report.rows) {
        os << sci15(row.rad);
        for (const auto& r : row.radii) os << ',' << (r ? sci15(*r) : "FAIL");
        os << ',' << (row.mean_radius ? sci15(*row.mean_radius) : "FAIL") << '\n';
    }
}

void write_bench_csv(std::ostream& os, std::span<const BenchRow> rows) {
    os << "N,method,seconds,success_count,krawczyk_over_radiipol\n";
    for (const auto& row : rows) {
        os << row.N << ',' << to_string(row.method) << ',' << sci15(row.seconds) << ','
           << row.success_count << ',';
        if (row.method == Method::Krawczyk) {
            for (const auto& other : rows) {
                if (other.N == row.N && other.method == Method::RadiiPolynomials &&
                    other.seconds > 0.0) {
                    os << sci15(row.seconds / other.seconds);
                    break;
                }
            }
        }
        os << '\n';
    }
}

}  // namespace rigeig
