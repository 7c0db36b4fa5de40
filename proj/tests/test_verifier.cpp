#include <doctest.h>

#include <cmath>
#include <random>

#include "rigeig/verifier.hpp"
#include "test_support.hpp"

using namespace rigeig;

namespace {

std::mt19937_64 rng(0x7e57ed);

// diag(1,2) with candidate (lambda=1, v=e1, pivot=0): the worked example.
IntervalMatrix diag12() {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 2.0;
    return IntervalMatrix::from_point(m);
}

VerificationProblem diag12_problem(Complex v2 = 0.0) {
    VerificationProblem prob;
    prob.A = diag12();
    prob.x_bar = {Complex{1.0}, v2};
    prob.pivot = 0;
    prob.pivot_value = 1.0;
    prob.R = ComplexMatrix::identity(2);
    prob.R(0, 0) = -1.0;  // exact inverse of [[-1,0],[0,1]]
    return prob;
}

CandidateEigenpair diag12_candidate() { return {Complex{1.0}, {1.0, 0.0}, 0}; }

}  // namespace

TEST_CASE("eval_f vanishes exactly on an exact eigenpair of a point matrix") {
    auto prob = diag12_problem();
    auto f = eval_f(prob, prob.x_bar);
    CHECK(f[0] == ComplexInterval{});
    CHECK(f[1] == ComplexInterval{});
}

TEST_CASE("eval_f tracks the hand evaluation for a perturbed point") {
    auto prob = diag12_problem();
    std::vector<Complex> x{Complex{1.0}, Complex{0.1}};
    auto f = eval_f(prob, x);
    // f = (1 - lambda, (2 - lambda) v2) = (0, 0.1)
    CHECK(f[0] == ComplexInterval{});
    CHECK(f[1].contains({0.1, 0.0}));
    CHECK(f[1].re().hi() - f[1].re().lo() <= 1e-17);
}

TEST_CASE("eval_f over an inflated matrix encloses all point evaluations") {
    auto a = IntervalMatrix::from_midrad(midpoint_matrix(diag12()), 1e-3);
    VerificationProblem prob = diag12_problem();
    prob.A = a;
    auto f = eval_f(prob, prob.x_bar);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(f[i].contains({0.0, 0.0}));
        CHECK(f[i].re().hi() - f[i].re().lo() >= 2e-3);
    }
    for (int s = 0; s < 500; ++s) {
        auto pt = testsupport::sample_point_matrix(a, rng, s % 4 == 0);
        std::vector<Complex> vf{1.0, 0.0};
        auto fv = matvec(pt, vf);
        for (std::size_t i = 0; i < 2; ++i) CHECK(f[i].contains(fv[i] - 1.0 * vf[i]));
    }
}

TEST_CASE("jacobian of the worked example") {
    auto prob = diag12_problem();
    auto j = build_jacobian(prob);
    CHECK(j(0, 0) == ComplexInterval(Complex{-1.0}));
    CHECK(j(1, 0) == ComplexInterval(Complex{0.0}));
    CHECK(j(0, 1) == ComplexInterval(Complex{0.0}));
    CHECK(j(1, 1) == ComplexInterval(Complex{1.0}));  // 2 - lambda
}

TEST_CASE("jacobian first column is minus the full eigenvector") {
    VerificationProblem prob;
    prob.A = IntervalMatrix::from_midrad(testsupport::lorenz_midpoint(), 1e-6);
    prob.x_bar = {Complex{0.3}, Complex{0.25, 0.5}, Complex{-0.75}};
    prob.pivot = 1;
    prob.pivot_value = 1.0;
    auto j = build_jacobian(prob);
    auto v_full = prob.full_vector(prob.x_bar);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(j(i, 0) == ComplexInterval(-v_full[i]));
}

TEST_CASE("midpoint jacobian of the Floquet problem is invertible") {
    auto cands = approx_eigendecomposition(testsupport::lorenz_midpoint());
    auto asmres = assemble_problem(testsupport::lorenz_interval(), cands[0]);
    CHECK(asmres.status == VerifyStatus::Verified);
    CHECK(asmres.problem.R.all_finite());

    // bound scales for this problem: Y at the entry-radius level, Z0 well
    // below the failure threshold
    for (double y : compute_Y(asmres.problem)) CHECK(y <= 1e-5);
    for (double z0 : compute_Z0(asmres.problem)) CHECK(z0 < 1.0);
}

TEST_CASE("compute_Y on the exact pair is zero") {
    auto prob = diag12_problem();
    auto y = compute_Y(prob);
    CHECK(y[0] == 0.0);
    CHECK(y[1] == 0.0);
}

TEST_CASE("compute_Y matches the hand value for the perturbed center") {
    auto prob = diag12_problem(Complex{0.1});
    auto y = compute_Y(prob);
    CHECK(y[0] == 0.0);
    CHECK(y[1] == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("compute_Z0 exactness cases") {
    auto prob = diag12_problem();
    auto z0 = compute_Z0(prob);
    CHECK(z0[0] == 0.0);
    CHECK(z0[1] == 0.0);

    prob.R = ComplexMatrix(2, 2);  // zero matrix
    z0 = compute_Z0(prob);
    CHECK(z0[0] == 1.0);
    CHECK(z0[1] == 1.0);
}

TEST_CASE("compute_Z1 excludes the pivot column of |R|") {
    VerificationProblem prob = diag12_problem();
    prob.R = ComplexMatrix::identity(2);

    prob.pivot = 0;
    auto z1 = compute_Z1(prob);
    CHECK(z1 == std::vector<double>{0.0, 2.0});

    prob.pivot = 1;
    z1 = compute_Z1(prob);
    CHECK(z1 == std::vector<double>{2.0, 0.0});
}

TEST_CASE("compute_Z1 is zero for the scalar problem") {
    VerificationProblem prob;
    ComplexMatrix m(1, 1);
    m(0, 0) = 5.0;
    prob.A = IntervalMatrix::from_point(m);
    prob.x_bar = {Complex{5.0}};
    prob.pivot = 0;
    prob.pivot_value = 1.0;
    prob.R = ComplexMatrix(1, 1);
    prob.R(0, 0) = -1.0;
    CHECK(compute_Z1(prob) == std::vector<double>{0.0});
}

TEST_CASE("solve_radii_polynomials hand cases") {
    SUBCASE("quadratic window (0, 1/2)") {
        RadiiBounds b{{0.0, 0.0}, {0.0, 0.0}, {0.0, 2.0}};
        auto w = solve_radii_polynomials(b);
        REQUIRE(w.has_value());
        CHECK(w->r_lo == 0.0);
        CHECK(w->r_hi == 0.5);
    }
    SUBCASE("pure linear polynomials give a half line") {
        RadiiBounds b{{1.0, 1.0}, {0.0, 0.0}, {0.0, 0.0}};
        auto w = solve_radii_polynomials(b);
        REQUIRE(w.has_value());
        CHECK(w->r_lo == 1.0);
        CHECK(std::isinf(w->r_hi));
    }
    SUBCASE("Z0 at or above one fails") {
        CHECK_FALSE(solve_radii_polynomials({{0.0}, {1.2}, {0.0}}).has_value());
        CHECK_FALSE(solve_radii_polynomials({{0.0}, {1.0}, {0.0}}).has_value());
    }
    SUBCASE("nonpositive discriminant fails") {
        // p(r) = r^2 - r + 1 has no real root
        CHECK_FALSE(solve_radii_polynomials({{1.0}, {0.0}, {1.0}}).has_value());
    }
}

TEST_CASE("radii_negative_at is a rigorous point check") {
    RadiiBounds b{{0.0, 0.0}, {0.0, 0.0}, {0.0, 2.0}};
    CHECK(radii_negative_at(b, 0.25));
    CHECK_FALSE(radii_negative_at(b, 0.5));  // p_2(1/2) = 0, not negative
    CHECK_FALSE(radii_negative_at(b, 0.6));
    CHECK_FALSE(radii_negative_at(b, 0.0));
    CHECK_FALSE(radii_negative_at(b, -1.0));
}

TEST_CASE("verify_eigenpair certifies the diagonal example") {
    auto enc = verify_eigenpair(diag12(), diag12_candidate());
    REQUIRE(enc.verified());
    CHECK(enc.lambda_center == Complex{1.0});
    CHECK(enc.vector_center == std::vector<Complex>{1.0, 0.0});
    // window is exactly (0, 1/2); selection takes r_hi * 1e-3 when r_lo = 0
    CHECK(enc.r_exist == doctest::Approx(5e-4).epsilon(1e-9));
    CHECK(enc.r_unique == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(enc.r_exist <= enc.r_unique);
    CHECK(enc.is_real);
    CHECK(recheck_enclosure(diag12(), enc));
}

TEST_CASE("identity matrix candidates are rejected, never certified") {
    auto a = IntervalMatrix::from_point(ComplexMatrix::identity(2));
    auto enc = verify_eigenpair(a, diag12_candidate());
    CHECK_FALSE(enc.verified());
    CHECK(enc.status == VerifyStatus::FailedSingularR);
}

TEST_CASE("scalar problem certifies with an unbounded window") {
    ComplexMatrix m(1, 1);
    m(0, 0) = 5.0;
    auto enc = verify_eigenpair(IntervalMatrix::from_point(m),
                                CandidateEigenpair{Complex{5.0}, {1.0}, 0});
    REQUIRE(enc.verified());
    CHECK(enc.r_exist < 1e-10);
    CHECK(enc.r_unique > 1.0);
}

TEST_CASE("Floquet matrix: three real verified enclosures") {
    auto a = testsupport::lorenz_interval();
    auto results = verify_eigendecomposition(a);
    REQUIRE(results.size() == 3);
    for (const auto& enc : results) {
        CHECK(enc.verified());
        CHECK(enc.is_real);
        CHECK(enc.r_exist > 0.0);
        CHECK(enc.r_exist < 1e-3);
        CHECK(recheck_enclosure(a, enc));
    }
    // middle enclosure contains zero
    CHECK(std::abs(results[1].lambda_center) <= results[1].r_exist);
    // parallel run returns identical certificates
    auto par = verify_eigendecomposition(a, true);
    REQUIRE(par.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(par[i].lambda_center == results[i].lambda_center);
        CHECK(par[i].r_exist == results[i].r_exist);
        CHECK(par[i].r_unique == results[i].r_unique);
    }
}

TEST_CASE("sampled soundness of the Floquet certificates") {
    auto a = testsupport::lorenz_interval();
    auto results = verify_eigendecomposition(a);
    for (int s = 0; s < 20; ++s) {
        auto pt = testsupport::sample_point_matrix(a, rng, s % 3 == 0);
        auto cands = approx_eigendecomposition(pt);
        for (const auto& enc : results) {
            REQUIRE(enc.verified());
            double best = 1e300;
            const CandidateEigenpair* match = nullptr;
            for (const auto& c : cands) {
                double d = std::abs(c.lambda - enc.lambda_center);
                if (d < best) {
                    best = d;
                    match = &c;
                }
            }
            REQUIRE(match != nullptr);
            CHECK(best <= enc.r_exist);
            // pivot-normalized eigenvector inside the ball, componentwise
            const Complex piv = match->v[enc.pivot];
            REQUIRE(std::abs(piv) > 0.0);
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(std::abs(match->v[i] / piv - enc.vector_center[i]) <= enc.r_exist);
            }
        }
    }
}

TEST_CASE("monotonicity in the entry radius") {
    auto mid = testsupport::lorenz_midpoint();
    auto cands = approx_eigendecomposition(mid);
    const std::vector<double> rads{1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
    for (const auto& cand : cands) {
        double prev = std::numeric_limits<double>::infinity();
        for (double rad : rads) {
            auto enc = verify_eigenpair(IntervalMatrix::from_midrad(mid, rad), cand);
            REQUIRE(enc.verified());
            CHECK(enc.r_exist <= prev);
            prev = enc.r_exist;
        }
    }
}

TEST_CASE("conjugate candidates of a real matrix verify identically") {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = -2.0;
    m(1, 0) = 1.0;
    m(1, 1) = 1.0;  // eigenvalues 1 +- sqrt(2) i
    auto a = IntervalMatrix::from_midrad(m, 1e-9);
    auto cands = approx_eigendecomposition(m);
    REQUIRE(cands.size() == 2);

    auto enc = verify_eigenpair(a, cands[0]);
    REQUIRE(enc.verified());
    CHECK_FALSE(enc.is_real);  // complex pair of a real matrix

    CandidateEigenpair conj_cand;
    conj_cand.lambda = std::conj(cands[0].lambda);
    for (const auto& z : cands[0].v) conj_cand.v.push_back(std::conj(z));
    conj_cand.pivot = cands[0].pivot;
    auto enc_c = verify_eigenpair(a, conj_cand);
    REQUIRE(enc_c.verified());
    CHECK(enc_c.r_exist == enc.r_exist);
    CHECK(enc_c.r_unique == enc.r_unique);
}

TEST_CASE("realness flag demands a real matrix and a real center") {
    ComplexMatrix rot(2, 2);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    auto a = IntervalMatrix::from_point(rot);
    for (const auto& c : approx_eigendecomposition(rot)) {
        auto enc = verify_eigenpair(a, c);
        REQUIRE(enc.verified());
        CHECK_FALSE(enc.is_real);
    }

    // imaginary radii spoil structural realness even around a real midpoint
    IntervalMatrix b(1, 1);
    b(0, 0) = ComplexInterval::from_midrad(3.0, 0.0, 0.0, 1e-12);
    CHECK_FALSE(b.real_entries());
    auto enc = verify_eigenpair(b, CandidateEigenpair{Complex{3.0}, {1.0}, 0});
    REQUIRE(enc.verified());
    CHECK_FALSE(enc.is_real);
}

TEST_CASE("duplicate candidates are flagged") {
    auto a = testsupport::lorenz_interval();
    auto cands = approx_eigendecomposition(testsupport::lorenz_midpoint());
    std::vector<EigenpairEnclosure> results{verify_eigenpair(a, cands[0]),
                                            verify_eigenpair(a, cands[0]),
                                            verify_eigenpair(a, cands[2])};
    auto dups = find_duplicate_enclosures(results);
    REQUIRE(dups.size() == 1);
    CHECK(dups[0] == std::pair<std::size_t, std::size_t>{0, 1});
}
