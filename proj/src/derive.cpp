#include "eckhaus/derive.hpp"

#include <string>

#include "eckhaus/errors.hpp"

namespace eckhaus::cas {

namespace {

using SB = SymbolBase;

const ExactScalar kTwoThirds = ExactScalar::rational(2, 3);
const ExactScalar kFourThirds = ExactScalar::rational(4, 3);
// 2 sqrt(1/3) = (2/3) sqrt(3)
const ExactScalar kTwoSqrtThird = ExactScalar::rational(2, 3) * ExactScalar::sqrt3();

void require(bool cond, const char* what) {
    if (!cond) throw OrderInconsistency(std::string("derivation check failed: ") + what);
}

// right-hand side of the Vr equation, as a polynomial in the two arguments
GradedPoly rhs_r(const GradedPoly& vr, const GradedPoly& vi, int maxw) {
    GradedPoly vr2 = (vr * vr).truncate_weight4(maxw);
    GradedPoly vi2 = (vi * vi).truncate_weight4(maxw);
    GradedPoly cubic = (vr2 * vr + vr * vi2).truncate_weight4(maxw);
    GradedPoly out = vr.differentiate(2) - vr * kFourThirds - vi.differentiate() * kTwoSqrtThird;
    out -= (vr2 * ExactScalar(3) + vi2 + cubic) * kTwoThirds;
    return out.truncate_weight4(maxw);
}

// right-hand side of the Vi equation
GradedPoly rhs_i(const GradedPoly& vr, const GradedPoly& vi, int maxw) {
    GradedPoly vrvi = (vr * vi).truncate_weight4(maxw);
    GradedPoly cubic = ((vr * vr) * vi + (vi * vi) * vi).truncate_weight4(maxw);
    GradedPoly out = vi.differentiate(2) + vr.differentiate() * kTwoSqrtThird;
    out -= (vrvi * ExactScalar(2) + cubic) * kTwoThirds;
    return out.truncate_weight4(maxw);
}

struct Basis {
    DiffOperator s12, s21;        // off-diagonal entries of S(d_X)
    DiffOperator sinv_diag, sinv_off;  // entries of S^-1(d_X)
};

Basis build_basis(int jet_order) {
    const EigJets jets = jet_eigsystem(jet_order);
    Basis b;
    b.s12 = jet_to_operator(jets.phi1_first);
    b.s21 = jet_to_operator(jets.phi2_second);
    b.sinv_diag = jet_to_operator(jets.sinv_diag);
    // both off-diagonal entries of S^-1 coincide since phi1_first == phi2_second
    require(jets.sinv_off12 == jets.sinv_off21, "S^-1 off-diagonal symmetry");
    b.sinv_off = jet_to_operator(jets.sinv_off12);
    return b;
}

}  // namespace

DiffOperator jet_to_operator(const KJet& jet) {
    DiffOperator op;
    const ExactScalar i_unit = ExactScalar::imag_unit();
    for (int n = 0; n <= jet.order(); ++n) {
        if (jet.coeff(n).is_zero()) continue;
        // divide by i^n
        ExactScalar c = jet.coeff(n);
        switch (n % 4) {
            case 0: break;
            case 1: c = c * (-i_unit); break;
            case 2: c = -c; break;
            case 3: c = c * i_unit; break;
        }
        if (!c.is_real())
            throw OrderInconsistency("jet_to_operator: coefficient of d^" + std::to_string(n) +
                                     " is not real");
        op.emplace_back(n, c);
    }
    return op;
}

GradedPoly derive_vs_star() {
    EffectiveEquation eq = derive_effective_equation();
    return eq.vs_star;
}

GradedPoly slaving_original_variables() {
    // Solve 0 = rhs_r(Vr, Vi) for Vr through weight 1, treating d_T Vr as
    // weight > 1. Here Vc stands for Vi (weight 1/4) and the iteration runs
    // Vr <- (3/4)(d^2 Vr - 2 sqrt(1/3) d Vi) - (1/2)(3Vr^2 + Vi^2 + Vr^3 + Vr Vi^2).
    const int maxw = 4;
    const GradedPoly vi = GradedPoly::symbol(SB::Vc);
    const ExactScalar threequarters = ExactScalar::rational(3, 4);
    GradedPoly vr;  // zero start
    for (int it = 0; it < 6; ++it) {
        GradedPoly f = rhs_r(vr, vi, maxw);
        // rhs_r = -4/3 Vr + rest; move the linear term across
        GradedPoly next = ((f + vr * kFourThirds) * threequarters).truncate_weight4(maxw);
        if (next == vr) return vr;
        vr = next;
    }
    throw OrderInconsistency("slaving_original_variables: iteration did not stabilize");
}

EffectiveEquation derive_effective_equation() {
    const int maxw = 5;
    const Basis basis = build_basis(7);

    // substituted variables: (Vr, Vi) = S(d_X) (Vs, Vc)
    const GradedPoly vs_sym = GradedPoly::symbol(SB::Vs);
    const GradedPoly vc_sym = GradedPoly::symbol(SB::Vc);
    const GradedPoly vr_sub = vs_sym + apply_operator(basis.s12, vc_sym, maxw);
    const GradedPoly vi_sub = vc_sym + apply_operator(basis.s21, vs_sym, maxw);

    const GradedPoly gr = rhs_r(vr_sub, vi_sub, maxw);
    const GradedPoly gi = rhs_i(vr_sub, vi_sub, maxw);

    // (g_s, g_c) = S^-1(d_X) (g_r, g_i)
    const GradedPoly gs =
        apply_operator(basis.sinv_diag, gr, maxw) + apply_operator(basis.sinv_off, gi, maxw);
    const GradedPoly gc =
        apply_operator(basis.sinv_off, gr, maxw) + apply_operator(basis.sinv_diag, gi, maxw);

    // parity structure: the damped side carries even weights, the critical
    // side odd weights
    for (int w : {0, 1, 3, 5}) require(gs.part_weight4(w).is_zero(), "g_s parity gap");
    for (int w : {0, 1, 2, 4}) require(gc.part_weight4(w).is_zero(), "g_c parity gap");

    EffectiveEquation out;
    out.s2 = gs.part_weight4(2);
    out.s4 = gs.part_weight4(4);
    out.s3 = gc.part_weight4(3);
    out.s5_pre = gc.part_weight4(5);

    // graded elimination of Vs from s2 + s4 = 0:
    //   Vs = -(1/2) Vc^2 + (3/4) s4(Vc, Vs), iterated to a fixed point
    const ExactScalar threequarters = ExactScalar::rational(3, 4);
    const ExactScalar minushalf = ExactScalar::rational(-1, 2);
    GradedPoly vstar;
    {
        bool stable = false;
        const GradedPoly vc2 = (vc_sym * vc_sym) * minushalf;
        for (int it = 0; it < 6 && !stable; ++it) {
            GradedPoly next =
                vc2 + out.s4.substitute(SB::Vs, vstar, maxw - 1).truncate_weight4(maxw - 1) *
                          threequarters;
            stable = (next == vstar);
            vstar = next;
        }
        require(stable, "slaved expansion did not stabilize");
        // the elimination really solves s2 + s4 = 0 through weight 1
        GradedPoly resid = (out.s2 + out.s4).substitute(SB::Vs, vstar, maxw - 1);
        require(resid.truncate_weight4(maxw - 1).is_zero(), "s2 + s4 residual");
    }

    // leading-order cancellation: s3 vanishes under Vs -> -(1/2) Vc^2
    {
        GradedPoly s3sub = out.s3.substitute(SB::Vs, (vc_sym * vc_sym) * minushalf, maxw);
        require(s3sub.truncate_weight4(3).is_zero(), "weight-3 cancellation");
    }

    // full substitution Vs = Vs*(Wc) + Ws into the critical right-hand side
    {
        const GradedPoly repl = vstar + GradedPoly::symbol(SB::Ws);
        const GradedPoly gc_sub = (out.s3 + out.s5_pre).substitute(SB::Vs, repl, maxw);
        const GradedPoly ws_free = gc_sub.drop_base(SB::Ws);
        out.gc_ws_part = gc_sub - ws_free;
        require(ws_free.part_weight4(3).is_zero(), "weight-3 terms after substitution");
        require(ws_free.part_weight4(4).is_zero(), "weight-4 parity after substitution");
        out.s5 = ws_free.part_weight4(5).rename_base(SB::Vc, SB::Wc);
    }

    out.vs_star = vstar.rename_base(SB::Vc, SB::Wc);
    return out;
}

GradedPoly crosscheck_slaving_routes() {
    const int maxw = 4;
    const EffectiveEquation eq = derive_effective_equation();
    const Basis basis = build_basis(7);
    const GradedPoly vc_sym = GradedPoly::symbol(SB::Vc);
    const GradedPoly vstar_vc = eq.vs_star.rename_base(SB::Wc, SB::Vc);

    // diagonal-variable route on the slaved manifold, parameterized by Vc
    const GradedPoly vr_of_vc =
        (vstar_vc + apply_operator(basis.s12, vc_sym, maxw)).truncate_weight4(maxw);
    const GradedPoly vi_of_vc =
        (vc_sym + apply_operator(basis.s21, vstar_vc, maxw)).truncate_weight4(maxw);

    // original-variable route composed with Vi(Vc)
    const GradedPoly direct = slaving_original_variables();
    const GradedPoly composed = direct.substitute(SB::Vc, vi_of_vc, maxw);

    return (composed - vr_of_vc).truncate_weight4(maxw);
}

}  // namespace eckhaus::cas
