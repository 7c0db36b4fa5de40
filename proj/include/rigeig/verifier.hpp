#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rigeig/eigensolver.hpp"
#include "rigeig/interval.hpp"
#include "rigeig/matrix.hpp"

namespace rigeig {

enum class VerifyStatus {
    Verified,
    FailedNegativeTest,  // no radius with all radii polynomials negative
    FailedSingularR,     // midpoint Jacobian had an exactly singular pivot
    FailedNonFinite,     // overflow or NaN while computing the bounds
};

const char* to_string(VerifyStatus s);

/// Data for one candidate: the interval matrix, the point x_bar laid out as
/// (lambda, v_1, ..., v_{k-1}, v_{k+1}, ..., v_n), the pinned eigenvector
/// component, and the approximate inverse R of the midpoint Jacobian.
struct VerificationProblem {
    IntervalMatrix A;
    std::vector<Complex> x_bar;
    std::size_t pivot = 0;
    Complex pivot_value = 1.0;
    ComplexMatrix R;

    std::size_t size() const { return x_bar.size(); }
    // Full eigenvector with the pinned component re-inserted at the pivot.
    std::vector<Complex> full_vector(std::span<const Complex> x) const;
    Complex lambda(std::span<const Complex> x) const { return x[0]; }
};

/// Componentwise bounds of the radii polynomials
/// p_k(r) = Z1_k r^2 + (Z0_k - 1) r + Y_k.
struct RadiiBounds {
    std::vector<double> Y;
    std::vector<double> Z0;
    std::vector<double> Z1;
};

/// Verification certificate (or typed failure). On Verified status: for every
/// A in the input interval matrix there is exactly one eigenpair (lambda, v)
/// with v_pivot pinned, ||(lambda, v) - (lambda_center, vector_center)||_inf
/// <= r_unique, and that eigenpair also lies within r_exist.
struct EigenpairEnclosure {
    Complex lambda_center{};
    std::vector<Complex> vector_center;  // full length-n vector, pivot component pinned
    std::size_t pivot = 0;
    double r_exist = std::numeric_limits<double>::quiet_NaN();
    double r_unique = std::numeric_limits<double>::quiet_NaN();
    bool is_real = false;
    VerifyStatus status = VerifyStatus::FailedNonFinite;

    bool verified() const { return status == VerifyStatus::Verified; }
};

/// Interval enclosure of f(x) = A v - lambda v over all A in the problem
/// matrix, with the pivot component of v pinned.
std::vector<ComplexInterval> eval_f(const VerificationProblem& prob,
                                    std::span<const Complex> x);

/// Interval Jacobian of f evaluated on an interval vector (the Krawczyk
/// baseline evaluates it over a whole box; the radii-polynomial method only
/// needs the point version below). First column is -v_full, the remaining
/// columns are (A - lambda I) with the pivot column deleted.
IntervalMatrix interval_jacobian(const VerificationProblem& prob,
                                 std::span<const ComplexInterval> x);

/// Interval Jacobian at the point x_bar.
IntervalMatrix build_jacobian(const VerificationProblem& prob);

/// Floating-point Jacobian of f at (lambda, v_full) for a point matrix;
/// used to build the midpoint Jacobian that R inverts.
ComplexMatrix point_jacobian(const ComplexMatrix& a, Complex lambda,
                             std::span<const Complex> v_full, std::size_t pivot);

// Componentwise supremum bounds; valid uniformly over all A in prob.A.
std::vector<double> compute_Y(const VerificationProblem& prob);   // |R f(x_bar)|
std::vector<double> compute_Z0(const VerificationProblem& prob);  // |I - R Df(x_bar)| 1
std::vector<double> compute_Z1(const VerificationProblem& prob);  // 2 |R| 1-hat

/// Open interval (r_lo, r_hi) on which all radii polynomials are negative,
/// computed with ordinary floating arithmetic (rigor comes from the interval
/// re-check at the chosen radii). r_hi may be +inf when every Z1 vanishes.
struct NegativityWindow {
    double r_lo;
    double r_hi;
};
std::optional<NegativityWindow> solve_radii_polynomials(const RadiiBounds& b);

/// Rigorous interval re-evaluation: true iff p_k(r) < 0 for all k is
/// guaranteed by outward-rounded arithmetic.
bool radii_negative_at(const RadiiBounds& b, double r);

/// True iff every entry of A has imaginary part identically {0} and the
/// candidate center is exactly real; together with a successful verification
/// this forces the certified eigenpair to be real (the conjugate would
/// otherwise be a second solution in the same ball).
bool realness_check(const IntervalMatrix& a, Complex lambda,
                    std::span<const Complex> v_full);

/// Candidate assembly shared by the radii-polynomial verifier and the
/// Krawczyk baseline: pivot normalization to exactly one, snapping of
/// near-real candidates of real matrices, and the approximate inverse of the
/// midpoint Jacobian. problem.R is valid only when status is Verified; the
/// centers in problem.x_bar are always populated for reporting.
struct AssembledCandidate {
    VerificationProblem problem;
    VerifyStatus status = VerifyStatus::Verified;
};
AssembledCandidate assemble_problem(const IntervalMatrix& a, const CandidateEigenpair& cand);

EigenpairEnclosure verify_eigenpair(const IntervalMatrix& a, const CandidateEigenpair& cand);

/// Runs the approximate eigensolver on the midpoint and verifies every
/// candidate; per-candidate failures are reported as statuses. Results are
/// in candidate order; with parallel=true candidates are verified
/// concurrently (A shared read-only), order unchanged.
std::vector<EigenpairEnclosure> verify_eigendecomposition(const IntervalMatrix& a,
                                                          bool parallel = false);

/// Pairs of Verified results whose lambda-disks and (pivot-aligned) vector
/// boxes overlap; expected only when the approximate solver returned
/// duplicate candidates.
std::vector<std::pair<std::size_t, std::size_t>> find_duplicate_enclosures(
    std::span<const EigenpairEnclosure> results);

/// From-scratch audit of a stored certificate: reassembles the problem from
/// the recorded centers, recomputes all bounds, and re-checks both radii
/// rigorously.
bool recheck_enclosure(const IntervalMatrix& a, const EigenpairEnclosure& enc);

}  // namespace rigeig
