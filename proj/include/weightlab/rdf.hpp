#pragma once

// Majorant construction: given functions (f,h), a consistent exponent tuple,
// and kappa > 1, produce factor weights (w0,v0) in the same ratio class with
// a bounded characteristic and a norm-product guarantee.  The engine is an
// affine fixed-point iteration R = H + M_t R / (kappa' * opnorm); sign and
// scaling reductions bring every instance to the core case first.

#include "weightlab/core.hpp"
#include "weightlab/exponents.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/mixed.hpp"
#include "weightlab/space.hpp"
#include "weightlab/weights.hpp"

namespace weightlab {

struct LemmaParams {
    // base tuple (u0,p0,s0,r0), target tuple (u1,p1,s1,r1); the shift runs
    // 1/gamma = 1/p1-1/p0 = 1/s1-1/s0 = 1/r0-1/r1 = 1/u0-1/u1
    Exponent u0, p0, s0, r0, u1, p1, s1, r1;
    double gamma_recip = 0;
    RescaledParams rescaled;
};

inline LemmaParams make_lemma_params(Exponent u0, Exponent p0, Exponent s0, Exponent r0,
                                     Exponent u1, Exponent p1, Exponent s1, Exponent r1) {
    LemmaParams P{u0, p0, s0, r0, u1, p1, s1, r1, 0.0, {}};
    P.gamma_recip = p1.recip() - p0.recip();
    require(std::abs((u0.recip() - u1.recip()) - P.gamma_recip) <= kRecipTol,
            "u-shift inconsistent with p-shift");
    require(std::abs((s1.recip() - s0.recip()) - P.gamma_recip) <= kRecipTol,
            "s-shift inconsistent with p-shift");
    require(std::abs((r0.recip() - r1.recip()) - P.gamma_recip) <= kRecipTol,
            "r-shift inconsistent with p-shift");
    P.rescaled = rescale_params(P.gamma_recip, s0, r0);
    require(P.rescaled.s == s1 && P.rescaled.r == r1, "rescaled target mismatch");
    return P;
}

/// Duality-style bridge from a (q,p)-labeled consistency tuple: the dual-side
/// exponent pair is (u0,u1) := (q1,q0), which flips the shift direction as the
/// lemma requires.
inline LemmaParams lemma_params_from_qp(Exponent q0, Exponent p0, Exponent s0, Exponent r0,
                                        Exponent q1, Exponent p1, Exponent s1, Exponent r1) {
    return make_lemma_params(q1, p0, s0, r0, q0, p1, s1, r1);
}

/// Fixed-point iterate for the majorant series.  Returns R with R >= H;
/// throws on non-convergence (the signal that opnorm was underestimated).
inline std::vector<double> rdf_iterate(const SetBasis& basis, const Weight& w, const Weight& v,
                                       Exponent s, double kappa, const std::vector<double>& H,
                                       double opnorm, int* iterations = nullptr) {
    require(kappa > 1.0, "kappa must exceed 1");
    require(!s.is_inf() && s.recip() <= 1.0 + kRecipTol, "exponent must lie in [1,inf)");
    require(opnorm > 0, "opnorm must be positive");
    const int n = basis.space.size();
    require(static_cast<int>(H.size()) == n, "size mismatch");
    bool nonzero = false;
    for (double x : H) {
        require(x >= 0 && std::isfinite(x), "H must be nonnegative and finite");
        nonzero = nonzero || x > 0;
    }
    require(nonzero, "H must not vanish identically");

    const double kprime = kappa / (kappa - 1.0);
    const double denom = kprime * opnorm;
    std::vector<double> ratio(static_cast<std::size_t>(n));  // R * w / v feeding the operator
    std::vector<double> R = H;
    const int cap = 10000;
    int it = 0;
    for (; it < cap; ++it) {
        for (int i = 0; i < n; ++i)
            ratio[static_cast<std::size_t>(i)] = R[static_cast<std::size_t>(i)] *
                                                 w.values[static_cast<std::size_t>(i)] /
                                                 v.values[static_cast<std::size_t>(i)];
        std::vector<double> m = maximal(basis, ratio);
        std::vector<double> next(static_cast<std::size_t>(n));
        double inc = 0;
        for (int i = 0; i < n; ++i) {
            next[static_cast<std::size_t>(i)] = H[static_cast<std::size_t>(i)] + m[static_cast<std::size_t>(i)] / denom;
            inc = std::max(inc, std::abs(next[static_cast<std::size_t>(i)] - R[static_cast<std::size_t>(i)]));
        }
        double scale = weighted_norm(basis.space, next, w, s);
        if (!std::isfinite(scale) || !std::isfinite(inc))
            throw std::runtime_error("majorant iteration diverged");
        std::vector<double> diff(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            diff[static_cast<std::size_t>(i)] = next[static_cast<std::size_t>(i)] - R[static_cast<std::size_t>(i)];
        const double rel = weighted_norm(basis.space, diff, w, s) / scale;
        R = std::move(next);
        if (rel < 1e-12) break;
    }
    if (it >= cap) throw std::runtime_error("majorant iteration did not converge");
    if (iterations) *iterations = it + 1;
    return R;
}

struct IterateCheck {
    bool minorant_ok = false;  // R >= H pointwise
    bool maximal_ok = false;   // M(R w / v) <= kappa' * opnorm * R
    bool norm_ok = false;      // ||R||_{L^s_w} <= kappa ||H||_{L^s_w}
    double maximal_constant = 0;  // a-posteriori sup of M(Rw/v) / (kappa' R)
    double norm_ratio = 0;
    bool ok() const { return minorant_ok && maximal_ok && norm_ok; }
};

inline IterateCheck verify_iterate(const SetBasis& basis, const Weight& w, const Weight& v,
                                   Exponent s, double kappa, const std::vector<double>& H,
                                   double opnorm, const std::vector<double>& R) {
    const int n = basis.space.size();
    const double kprime = kappa / (kappa - 1.0);
    IterateCheck c;
    c.minorant_ok = true;
    std::vector<double> ratio(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // pointwise comparisons with 1e-8 slack measured on log scale
        if (!(R[static_cast<std::size_t>(i)] >= H[static_cast<std::size_t>(i)] * (1.0 - 1e-8)))
            c.minorant_ok = false;
        ratio[static_cast<std::size_t>(i)] = R[static_cast<std::size_t>(i)] *
                                             w.values[static_cast<std::size_t>(i)] /
                                             v.values[static_cast<std::size_t>(i)];
    }
    std::vector<double> m = maximal(basis, ratio);
    c.maximal_constant = 0;
    for (int i = 0; i < n; ++i)
        if (R[static_cast<std::size_t>(i)] > 0)
            c.maximal_constant =
                std::max(c.maximal_constant, m[static_cast<std::size_t>(i)] / (kprime * R[static_cast<std::size_t>(i)]));
    c.maximal_ok = c.maximal_constant <= opnorm * (1.0 + 1e-8);
    c.norm_ratio = weighted_norm(basis.space, R, w, s) / weighted_norm(basis.space, H, w, s);
    c.norm_ok = c.norm_ratio <= kappa * (1.0 + 1e-6);
    return c;
}

struct RdFResult {
    Weight w0, v0;
    double char_lhs = 0, char_rhs = 0;
    double normprod_lhs = 0, normprod_rhs = 0;
    std::vector<double> R;
    int iterations = 0;
    double opnorm_used = 0;      // the certified bound fed to the iteration
    double opnorm_verified = 0;  // a-posteriori constant actually achieved
    int retries = 0;
};

namespace detail {

/// Core case: gamma > 0 and 1/s0 + 1/r0 = 1.  Produces (w0, v0) plus the
/// iterate diagnostics; bound sides are evaluated by the caller.
inline void factor_core(const SetBasis& basis, const LemmaParams& P, const Weight& w,
                        const Weight& v, const std::vector<double>& f, double kappa,
                        const OpNormBudget& budget, RdFResult& out) {
    const double ginv = P.gamma_recip;
    check(ginv > kRecipTol, "core case needs a positive shift");
    check(std::abs(P.s0.recip() + P.r0.recip() - 1.0) <= 1e-9, "core case needs conjugate base pair");
    const Exponent s = P.s1;  // == rescaled order t
    check(!s.is_inf(), "core order is finite by construction");

    // H solves H^s w^s = f^p v^p; a vanishing f is replaced by the constant 1
    const int n = basis.space.size();
    std::vector<double> H(static_cast<std::size_t>(n));
    const bool fzero = std::all_of(f.begin(), f.end(), [](double x) { return x == 0.0; });
    const double pv = P.p1.value();  // p1 finite: 1/p1 = 1/p0 + 1/gamma > 0
    const double sv = s.value();
    for (int i = 0; i < n; ++i) {
        const double fi = fzero ? 1.0 : std::abs(f[static_cast<std::size_t>(i)]);
        H[static_cast<std::size_t>(i)] =
            std::pow(fi * v.values[static_cast<std::size_t>(i)], pv / sv) / w.values[static_cast<std::size_t>(i)];
    }

    // certified bound for ||M||_{L^s_v -> L^s_w} (equals the twisted norm the
    // series needs), with safety margin and bounded doubling retries
    OpNormEstimate est = s.is_one() ? opnorm_maximal_l1(basis, w, v)
                                    : opnorm_maximal(basis, w, v, s, budget);
    double opn = est.value * 1.05;
    for (int attempt = 0;; ++attempt) {
        try {
            out.R = rdf_iterate(basis, w, v, s, kappa, H, opn, &out.iterations);
            IterateCheck c = verify_iterate(basis, w, v, s, kappa, H, opn, out.R);
            if (c.ok()) {
                out.opnorm_used = opn;
                out.opnorm_verified = c.maximal_constant;
                out.retries = attempt;
                break;
            }
        } catch (const std::runtime_error&) {
            // fall through to retry
        }
        if (attempt >= 6) throw std::runtime_error("majorant construction failed: operator norm underestimated");
        opn *= 2.0;
    }

    // w0 := R^{-s/gamma} w^{s/s0},  v0 := (R w/v)^{-s/gamma} v^{s/s0}
    const double es = -sv * ginv;          // exponent -s/gamma
    const double eb = sv * P.s0.recip();   // exponent s/s0
    std::vector<double> w0(static_cast<std::size_t>(n)), v0(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double Ri = out.R[static_cast<std::size_t>(i)];
        const double Rti = Ri * w.values[static_cast<std::size_t>(i)] / v.values[static_cast<std::size_t>(i)];
        w0[static_cast<std::size_t>(i)] = std::pow(Ri, es) * std::pow(w.values[static_cast<std::size_t>(i)], eb);
        v0[static_cast<std::size_t>(i)] = std::pow(Rti, es) * std::pow(v.values[static_cast<std::size_t>(i)], eb);
    }
    out.w0 = make_weight(std::move(w0));
    out.v0 = make_weight(std::move(v0));
}

}  // namespace detail

inline RdFResult factor_pair(const SetBasis& basis, const LemmaParams& P, const Weight& w,
                             const Weight& v, const std::vector<double>& f,
                             const std::vector<double>& h, double kappa,
                             const OpNormBudget& budget = {}) {
    require(kappa > 1.0, "kappa must exceed 1");
    const int n = basis.space.size();
    require(w.size() == n && v.size() == n, "size mismatch");
    require(static_cast<int>(f.size()) == n && static_cast<int>(h.size()) == n, "size mismatch");

    RdFResult out;
    const double ginv = P.gamma_recip;

    if (std::abs(ginv) <= kRecipTol) {
        // zero shift: the class is the singleton and everything is an identity
        out.w0 = w;
        out.v0 = v;
        out.R.assign(static_cast<std::size_t>(n), 1.0);
        out.char_lhs = characteristic(basis, out.w0, out.v0, P.s0, P.r0).value;
        out.char_rhs = out.char_lhs;
        out.normprod_lhs = weighted_norm(basis.space, f, out.v0, P.p0) *
                           weighted_norm(basis.space, h, reciprocal(out.w0), P.u0);
        out.normprod_rhs = out.normprod_lhs;
        out.opnorm_used = out.opnorm_verified = 1.0;
        return out;
    }

    if (ginv < 0) {
        // mirror reduction: negate the shift, swap the roles of the two
        // exponent columns and of (f,h), and invert the weights
        LemmaParams M = make_lemma_params(P.p0, P.u0, P.r0, P.s0, P.p1, P.u1, P.r1, P.s1);
        RdFResult mir = factor_pair(basis, M, reciprocal(v), reciprocal(w), h, f, kappa, budget);
        out = mir;
        out.w0 = reciprocal(mir.v0);
        out.v0 = reciprocal(mir.w0);
    } else {
        const double alpha = P.rescaled.alpha.value();
        if (std::abs(alpha - 1.0) <= 1e-12) {
            detail::factor_core(basis, P, w, v, f, kappa, budget, out);
        } else {
            // rescale every reciprocal by alpha so the base pair is conjugate
            auto scaled = [&](Exponent e) { return Exponent::from_recip(e.recip() * alpha); };
            LemmaParams Q = make_lemma_params(scaled(P.u0), scaled(P.p0), scaled(P.s0), scaled(P.r0),
                                              scaled(P.u1), scaled(P.p1), scaled(P.s1), scaled(P.r1));
            std::vector<double> fa(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) fa[i] = std::pow(std::abs(f[i]), alpha);
            RdFResult hat;
            detail::factor_core(basis, Q, pow(w, alpha), pow(v, alpha), fa, kappa, budget, hat);
            out = hat;
            out.w0 = pow(hat.w0, 1.0 / alpha);
            out.v0 = pow(hat.v0, 1.0 / alpha);
        }
    }

    // evaluate both sides of the two guarantees in the original variables
    const double t = P.rescaled.t.value();
    const double t0recip = P.rescaled.t0.recip();
    const double e_op = t * std::abs(ginv);
    const double kprime = kappa / (kappa - 1.0);
    out.char_lhs = characteristic(basis, out.w0, out.v0, P.s0, P.r0).value;
    out.char_rhs = std::pow(kprime * out.opnorm_used, e_op) *
                   std::pow(characteristic(basis, w, v, P.s1, P.r1).value, t * t0recip);
    out.normprod_lhs = weighted_norm(basis.space, f, out.v0, P.p0) *
                       weighted_norm(basis.space, h, reciprocal(out.w0), P.u0);
    out.normprod_rhs = std::pow(kappa, e_op) * weighted_norm(basis.space, f, v, P.p1) *
                       weighted_norm(basis.space, h, reciprocal(w), P.u1);

    // invariants: ratio preservation, both bounds, finite memberships
    for (int i = 0; i < n; ++i) {
        const double lhs = out.w0.values[static_cast<std::size_t>(i)] / out.v0.values[static_cast<std::size_t>(i)];
        const double rhs = w.values[static_cast<std::size_t>(i)] / v.values[static_cast<std::size_t>(i)];
        check(rel_close(lhs, rhs, 1e-10), "weight ratio not preserved");
    }
    check(leq_with_slack(out.char_lhs, out.char_rhs, 1e-6), "characteristic bound violated");
    check(leq_with_slack(out.normprod_lhs, out.normprod_rhs, 1e-6), "norm-product bound violated");
    check(std::isfinite(out.normprod_lhs), "membership norms must be finite");
    return out;
}

struct EmbedParams {
    Exponent p0, s0, r0, p1, s1, r1;
    double gamma_recip = 0;
};

inline EmbedParams make_embed_params(Exponent p0, Exponent s0, Exponent r0, Exponent p1,
                                     Exponent s1, Exponent r1) {
    EmbedParams E{p0, s0, r0, p1, s1, r1, p1.recip() - p0.recip()};
    require(std::abs((s1.recip() - s0.recip()) - E.gamma_recip) <= kRecipTol, "s-shift inconsistent");
    require(std::abs((r0.recip() - r1.recip()) - E.gamma_recip) <= kRecipTol, "r-shift inconsistent");
    return E;
}

/// Membership embedding: factor_pair against the canonical unit-norm dual
/// element (a normalized constant).  Returns (w0, v0) with f in L^{p0}_{v0}.
inline RdFResult embed(const SetBasis& basis, const EmbedParams& E, const Weight& w,
                       const Weight& v, const std::vector<double>& f, double kappa,
                       const OpNormBudget& budget = {}) {
    // dual pair riding along: (u0,u1) = (gamma,inf) for upward shifts,
    // (inf,|gamma|) for downward, (inf,inf) at zero
    double u0r = 0, u1r = 0;
    if (E.gamma_recip > kRecipTol) u0r = E.gamma_recip;
    else if (E.gamma_recip < -kRecipTol) u1r = -E.gamma_recip;
    LemmaParams P = make_lemma_params(Exponent::from_recip(u0r), E.p0, E.s0, E.r0,
                                      Exponent::from_recip(u1r), E.p1, E.s1, E.r1);
    const double hnorm = weighted_norm(basis.space, std::vector<double>(f.size(), 1.0),
                                       reciprocal(w), P.u1);
    std::vector<double> h(f.size(), 1.0 / hnorm);
    RdFResult res = factor_pair(basis, P, w, v, f, h, kappa, budget);
    check(std::isfinite(weighted_norm(basis.space, f, res.v0, E.p0)), "embedded norm must be finite");
    return res;
}

struct MixedEmbedResult {
    Weight mu, nu;    // outer-factor weights produced at stage one
    RdFResult outer;  // run on the outer factor
    RdFResult inner;  // run on the full product with tensor weights
};

/// Two-level membership embedding on a product space: first embed the profile
/// of inner norms over the outer factor, then embed on the full product with
/// the tensor weights produced.
inline MixedEmbedResult embed_mixed(const ProductSpace& ps, const EmbedParams& level1,
                                    const EmbedParams& level2, const Weight& w1, const Weight& v1,
                                    const Weight& w2, const Weight& v2,
                                    const std::vector<double>& f, double kappa,
                                    const OpNormBudget& budget = {}) {
    require(level2.p0 == level1.p1 && level2.s0 == level1.s1 && level2.r0 == level1.r1,
            "levels must chain: stage-two base equals stage-one target");
    MixedEmbedResult res;
    std::vector<double> profile = inner_norms(ps, f, v1, level1.p1);
    res.outer = embed(ps.b, level2, w2, v2, profile, kappa, budget);
    res.mu = res.outer.w0;
    res.nu = res.outer.v0;
    // iterated norm with matching inner/outer exponent collapses to the plain
    // weighted norm with the tensor weight
    const double lifted = weighted_norm(ps.b.space, profile, res.nu, level1.p1);
    const double flat = mixed_norm(ps, f, v1, res.nu, level1.p1, level1.p1);
    check(rel_close(lifted, flat, 1e-9), "iterated/tensor norm mismatch");
    res.inner = embed(ps.full, level1, tensor_weight(ps, w1, res.mu), tensor_weight(ps, v1, res.nu),
                      f, kappa, budget);
    return res;
}

/// Split a dual function into per-coordinate factors h_j = w1j * (|h| w1^{-lambda})^{e_j}
/// with e_j = qt1p/u1j; each factor has unit dual norm and the lambda-powers
/// multiply back to |h|.
inline std::vector<std::vector<double>> split_dual_function(
    const MeasureSpace& sp, const std::vector<double>& h, const std::vector<Weight>& w1s,
    double lambda, double qt1_prime, const std::vector<Exponent>& u1s) {
    const std::size_t m = w1s.size();
    require(m >= 1 && u1s.size() == m, "need one weight and exponent per coordinate");
    require(lambda > 0 && qt1_prime >= 1, "bad split exponents");
    double sum = 0;
    for (const Exponent& u : u1s) sum += lambda * u.recip();
    require(std::abs(sum - 1.0 / qt1_prime) <= 1e-9, "split exponents must tile the dual index");

    const int n = sp.size();
    std::vector<double> core(static_cast<std::size_t>(n));  // |h| w1^{-lambda}
    for (int i = 0; i < n; ++i) {
        double w1 = 1;
        for (const Weight& wj : w1s) w1 *= wj.values[static_cast<std::size_t>(i)];
        core[static_cast<std::size_t>(i)] = std::abs(h[static_cast<std::size_t>(i)]) * std::pow(w1, -lambda);
    }
    const double nrm = lp_norm_on(sp, full_index_set(sp), core, Exponent::from_value(qt1_prime));
    require(rel_close(nrm, 1.0, 1e-8), "dual function must arrive normalized");

    std::vector<std::vector<double>> out(m, std::vector<double>(static_cast<std::size_t>(n)));
    for (std::size_t j = 0; j < m; ++j) {
        const double ej = qt1_prime * u1s[j].recip();
        for (int i = 0; i < n; ++i)
            out[j][static_cast<std::size_t>(i)] =
                w1s[j].values[static_cast<std::size_t>(i)] *
                std::pow(core[static_cast<std::size_t>(i)], ej);
    }
    return out;
}

}  // namespace weightlab
