#include "rigeig/krawczyk.hpp"

#include <cmath>

namespace rigeig {

namespace {

constexpr int kMaxInflations = 10;

bool strictly_inside(const ComplexInterval& inner, const ComplexInterval& outer) {
    return outer.re().lo() < inner.re().lo() && inner.re().hi() < outer.re().hi() &&
           outer.im().lo() < inner.im().lo() && inner.im().hi() < outer.im().hi();
}

}  // namespace

KrawczykResult krawczyk_verify(const IntervalMatrix& a, const CandidateEigenpair& cand,
                               double r0) {
    AssembledCandidate asmres = assemble_problem(a, cand);
    if (asmres.status != VerifyStatus::Verified) return {};
    const VerificationProblem& prob = asmres.problem;
    const std::size_t n = prob.size();

    KrawczykResult res;

    try {
        // x_bar - R f(x_bar), fixed across inflation attempts
        const std::vector<ComplexInterval> f = eval_f(prob, prob.x_bar);
        std::vector<ComplexInterval> base(n);
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ComplexInterval acc;
            for (std::size_t j = 0; j < n; ++j) acc += ComplexInterval(prob.R(i, j)) * f[j];
            residual = std::max(residual, acc.mag_sup());
            base[i] = ComplexInterval(prob.x_bar[i]) - acc;
        }
        // The trial box must at least cover the scaled residual |R f(x_bar)|,
        // or ten doublings cannot reach a containing box when the entry radii
        // dominate the eigenvalue magnitude.
        double r = r0 > 0.0
                       ? r0
                       : std::max(1e-8 * (1.0 + std::abs(prob.x_bar[0])), 2.0 * residual);

        for (int attempt = 1; attempt <= kMaxInflations; ++attempt, r *= 2.0) {
            res.iterations = attempt;
            std::vector<ComplexInterval> box(n), delta(n);
            for (std::size_t i = 0; i < n; ++i) {
                box[i] = ComplexInterval::from_midrad(prob.x_bar[i].real(),
                                                      prob.x_bar[i].imag(), r, r);
                delta[i] = box[i] - ComplexInterval(prob.x_bar[i]);
            }

            // I - R Df(X) with the Jacobian over the whole box
            IntervalMatrix m = point_times_interval(prob.R, interval_jacobian(prob, box));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) m(i, j) = -m(i, j);
                m(i, i) += ComplexInterval(Complex{1.0, 0.0});
            }

            const std::vector<ComplexInterval> w = interval_matvec(m, delta);
            bool inside = true;
            for (std::size_t i = 0; i < n && inside; ++i)
                inside = strictly_inside(base[i] + w[i], box[i]);
            if (inside) {
                res.success = true;
                res.box_radius = r;
                return res;
            }
        }
        res.box_radius = r;
    } catch (const IntervalError&) {
        // overflow during inflation: report failure
    }
    res.success = false;
    return res;
}

}  // namespace rigeig
