#pragma once

#include "rigeig/verifier.hpp"

namespace rigeig {

/// Outcome of the Krawczyk containment test. On success the box
/// x_bar +- box_radius (componentwise complex square) was mapped strictly
/// into its own interior, proving a unique zero of f inside it.
struct KrawczykResult {
    bool success = false;
    double box_radius = 0.0;
    int iterations = 0;
};

/// Certifies the candidate by evaluating
///   K(X) = x_bar - R f(x_bar) + (I - R Df(X)) (X - x_bar)
/// with the interval Jacobian taken over the whole trial box and over all of
/// A, retrying with epsilon-inflation (doubling) on failure. r0 <= 0 selects
/// the default initial radius 1e-8 * (1 + |lambda|). Problem assembly (pivot
/// normalization, R) is shared with the radii-polynomial verifier.
KrawczykResult krawczyk_verify(const IntervalMatrix& a, const CandidateEigenpair& cand,
                               double r0 = 0.0);

}  // namespace rigeig
