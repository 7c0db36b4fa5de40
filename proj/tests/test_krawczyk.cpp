#include <doctest.h>

#include "rigeig/krawczyk.hpp"
#include "test_support.hpp"

using namespace rigeig;

namespace {

IntervalMatrix diag12() {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 2.0;
    return IntervalMatrix::from_point(m);
}

}  // namespace

TEST_CASE("exact candidate on the diagonal matrix succeeds at the first try") {
    auto res = krawczyk_verify(diag12(), CandidateEigenpair{Complex{1.0}, {1.0, 0.0}, 0}, 0.1);
    CHECK(res.success);
    CHECK(res.iterations == 1);
    CHECK(res.box_radius == 0.1);
}

TEST_CASE("Floquet candidate certifies with a small box") {
    auto a = testsupport::lorenz_interval();
    auto cands = approx_eigendecomposition(testsupport::lorenz_midpoint());
    auto res = krawczyk_verify(a, cands[0], 1e-5);
    CHECK(res.success);
    CHECK(res.box_radius <= 1e-3);
    CHECK(res.box_radius >= 1e-6);
}

TEST_CASE("multiple eigenvalue never certifies") {
    auto a = IntervalMatrix::from_point(ComplexMatrix::identity(2));
    auto res = krawczyk_verify(a, CandidateEigenpair{Complex{1.0}, {1.0, 0.0}, 0});
    CHECK_FALSE(res.success);

    ComplexMatrix jordan(2, 2);
    jordan(0, 0) = 2.0;
    jordan(0, 1) = 1.0;
    jordan(1, 1) = 2.0;
    auto cands = approx_eigendecomposition(jordan);
    for (const auto& c : cands)
        CHECK_FALSE(krawczyk_verify(IntervalMatrix::from_point(jordan), c).success);
}

TEST_CASE("epsilon inflation recovers from an undersized initial box") {
    auto a = testsupport::lorenz_interval();
    auto cands = approx_eigendecomposition(testsupport::lorenz_midpoint());
    // start below the residual scale; doubling must reach a working box
    auto res = krawczyk_verify(a, cands[0], 1e-7);
    CHECK(res.success);
    CHECK(res.iterations > 1);

    // hopelessly small start: ten doublings cannot recover
    auto hopeless = krawczyk_verify(a, cands[0], 1e-13);
    CHECK_FALSE(hopeless.success);
    CHECK(hopeless.iterations == 10);
}

TEST_CASE("agreement with the radii-polynomial certificate") {
    auto a = testsupport::lorenz_interval();
    auto cands = approx_eigendecomposition(testsupport::lorenz_midpoint());
    for (const auto& cand : cands) {
        auto enc = verify_eigenpair(a, cand);
        auto kr = krawczyk_verify(a, cand);
        REQUIRE(enc.verified());
        REQUIRE(kr.success);
        // same assembled center, so the certified regions intersect iff both
        // radii are positive; sanity-check the shared center explicitly
        auto asmres = assemble_problem(a, cand);
        CHECK(asmres.problem.x_bar[0] == enc.lambda_center);
        CHECK(kr.box_radius > 0.0);
        CHECK(enc.r_exist > 0.0);
    }
}
