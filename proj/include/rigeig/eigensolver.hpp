#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigeig/matrix.hpp"

namespace rigeig {

/// Non-verified approximate eigenpair; input to verification, no rigor claimed.
struct CandidateEigenpair {
    Complex lambda;
    std::vector<Complex> v;  // unit max-modulus scaling, pivot component real positive
    std::size_t pivot = 0;   // index of maximal modulus, lowest index on ties
};

struct EigOptions {
    int max_sweeps_per_eigenvalue = 60;
};

struct EigConvergenceError : std::runtime_error {
    EigConvergenceError(std::size_t stage_, const std::string& what_)
        : std::runtime_error(what_), stage(stage_) {}
    std::size_t stage;  // deflation index that failed to converge
};

std::size_t pivot_index(std::span<const Complex> v);

/// Approximate eigendecomposition by balancing, Householder reduction to
/// Hessenberg form, and explicit single-shift QR with deflation, accumulating
/// the Schur transformation for eigenvectors. Candidates are returned sorted
/// by (Re, Im) of the eigenvalue.
std::vector<CandidateEigenpair> approx_eigendecomposition(const ComplexMatrix& m,
                                                          const EigOptions& opts = {});

}  // namespace rigeig
