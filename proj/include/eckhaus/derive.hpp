// Machine derivation of the graded effective equations at q^2 = 1/3.
//
// Starting from the (Vr, Vi) system written in graded symbols, the change of
// basis S(d_X), S^-1(d_X) built from the exact eigenvector jets produces the
// right-hand sides (g_s, g_c) for the diagonal variables (Vs, Vc). Collecting
// by weight yields s2, s4 (damped component) and s3, s5 (critical component);
// eliminating Vs from s2 + s4 = 0 gives the slaved expansion Vs*(Wc); and
// substituting Vs = Vs*(Wc) + Ws into g_c cancels everything at weight 5
// except the quartic diffusion and the single marginal quadratic term.
#pragma once

#include "eckhaus/graded_poly.hpp"
#include "eckhaus/kjet.hpp"

namespace eckhaus::cas {

struct EffectiveEquation {
    GradedPoly s2, s3, s4;     // in Vc, Vs as produced by the change of basis
    GradedPoly s5_pre;         // weight-5 critical part before the slaving substitution
    GradedPoly s5;             // final form in Wc (Ws-free, after all cancellations)
    GradedPoly gc_ws_part;     // Ws-dependent leftovers, kept for inspection
    GradedPoly vs_star;        // slaved expansion Vs*(Wc) through weight 1
};

// Full derivation; throws OrderInconsistency if any structural check fails
// (parity gaps, the weight-3 cancellation, the S-jet identities).
EffectiveEquation derive_effective_equation();

// Just the slaved expansion Vs*(Wc), via graded elimination from s2 + s4 = 0.
GradedPoly derive_vs_star();

// The damped component expressed through the critical one, derived directly
// in the original (Vr, Vi) variables through weight 1. Returned in the shared
// symbol set: Vc plays Vi, and the result is the expansion of Vr.
GradedPoly slaving_original_variables();

// Verifies that slaving_original_variables composed with the S-jets matches
// the diagonal-variable route weight by weight; returns the difference
// (zero polynomial on success).
GradedPoly crosscheck_slaving_routes();

// Convert a k-jet to the physical-space operator sum_n c_n d^n_X via
// c_n k^n = (c_n / i^n) (ik)^n; throws OrderInconsistency when a converted
// coefficient fails to be real.
DiffOperator jet_to_operator(const KJet& jet);

}  // namespace eckhaus::cas
