#pragma once

// Lebesgue exponent bookkeeping.  Every exponent p in (0, inf] is stored as
// its reciprocal 1/p in [0, inf), with 0 encoding p = inf; all relations
// (duality, the consistency condition, rescaling) are affine in reciprocals,
// so this representation keeps the arithmetic exact where it can be.

#include "weightlab/core.hpp"

#include <optional>
#include <sstream>
#include <iomanip>
#include <array>

namespace weightlab {

inline constexpr double kRecipTol = 1e-12;  // equality tolerance on reciprocals

class Exponent {
public:
    Exponent() : recip_(1.0) {}

    static Exponent from_recip(double r) {
        require(std::isfinite(r) && r >= -kRecipTol, "exponent reciprocal must be finite and >= 0");
        return Exponent(std::max(r, 0.0));
    }
    static Exponent from_value(double p) {
        require(p > 0, "exponent value must be positive");
        return std::isinf(p) ? inf() : from_recip(1.0 / p);
    }
    static Exponent inf() { return Exponent(0.0); }

    double recip() const { return recip_; }
    double value() const { return recip_ == 0.0 ? kInf : 1.0 / recip_; }
    bool is_inf() const { return recip_ == 0.0; }
    bool is_one() const { return std::abs(recip_ - 1.0) <= kRecipTol; }

    bool operator==(const Exponent& o) const { return std::abs(recip_ - o.recip_) <= kRecipTol; }
    bool operator!=(const Exponent& o) const { return !(*this == o); }

    /// "inf", an integer, a reduced fraction, or a decimal.
    std::string str() const {
        if (is_inf()) return "inf";
        double v = value();
        if (std::abs(v - std::round(v)) < 1e-9 && std::abs(v) < 1e15) {
            std::ostringstream os;
            os << static_cast<long long>(std::llround(v));
            return os.str();
        }
        // try small rational p = a/b with b <= 64
        for (int b = 2; b <= 64; ++b) {
            double a = v * b;
            if (std::abs(a - std::round(a)) < 1e-9 * b && std::abs(a) < 1e15) {
                std::ostringstream os;
                os << std::llround(a) << "/" << b;
                return os.str();
            }
        }
        std::ostringstream os;
        os << std::setprecision(17) << v;
        return os.str();
    }

private:
    explicit Exponent(double r) : recip_(r) {}
    double recip_;
};

/// Accepts "inf", integers, fractions "a/b", and decimals.
inline Exponent parse_exponent(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    require(!s.empty(), "empty exponent");
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "inf" || lower == "infinity" || lower == "oo") return Exponent::inf();
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            double num = std::stod(s.substr(0, slash));
            double den = std::stod(s.substr(slash + 1));
            require(den != 0, "zero denominator in exponent '" + text + "'");
            return Exponent::from_value(num / den);
        }
        return Exponent::from_value(std::stod(s));
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse exponent '" + text + "'");
    }
}

/// Hoelder conjugate; defined for p >= 1.
inline Exponent dual(Exponent p) {
    require(p.recip() <= 1.0 + kRecipTol, "dual exponent requires p >= 1");
    return Exponent::from_recip(std::max(0.0, 1.0 - p.recip()));
}

// ---------------------------------------------------------------------------
// Consistency condition: 1/q - 1/q0 = 1/p - 1/p0 = 1/s - 1/s0 = 1/r0 - 1/r,
// the shared value being 1/gamma (signed).  Solving fills every member whose
// partner is known; a pair with both members unknown is left unset (its two
// members are constrained to be equal shifts, nothing more).
// ---------------------------------------------------------------------------

struct ConsistencyInput {
    std::optional<Exponent> q0, p0, s0, r0, q, p, s, r;
    std::optional<double> gamma_recip;  // signed 1/gamma
};

struct ConsistencySolution {
    std::optional<Exponent> q0, p0, s0, r0, q, p, s, r;
    double gamma_recip = 0.0;
    bool complete = false;  // all eight filled

    std::array<const std::optional<Exponent>*, 8> fields() const {
        return {&q0, &p0, &s0, &r0, &q, &p, &s, &r};
    }
};

inline ConsistencySolution solve_consistency(const ConsistencyInput& in) {
    ConsistencySolution out;
    out.q0 = in.q0; out.p0 = in.p0; out.s0 = in.s0; out.r0 = in.r0;
    out.q = in.q; out.p = in.p; out.s = in.s; out.r = in.r;

    // 1/gamma candidates from complete pairs, plus the explicit input.
    std::vector<std::pair<std::string, double>> candidates;
    if (in.gamma_recip) candidates.push_back({"input", *in.gamma_recip});
    if (in.q && in.q0) candidates.push_back({"(q,q0)", in.q->recip() - in.q0->recip()});
    if (in.p && in.p0) candidates.push_back({"(p,p0)", in.p->recip() - in.p0->recip()});
    if (in.s && in.s0) candidates.push_back({"(s,s0)", in.s->recip() - in.s0->recip()});
    if (in.r && in.r0) candidates.push_back({"(r0,r)", in.r0->recip() - in.r->recip()});
    require(!candidates.empty(),
            "consistency condition underdetermined: no complete pair and no shift given");
    double g = candidates.front().second;
    for (const auto& [label, value] : candidates) {
        require(std::abs(value - g) <= kRecipTol,
                "inconsistent shifts: " + label + " gives " + std::to_string(value) +
                    ", expected " + std::to_string(g));
    }
    out.gamma_recip = g;

    auto fill = [&](std::optional<Exponent>& base, std::optional<Exponent>& top, double shift,
                    const std::string& name) {
        // top = base + shift in reciprocals
        if (base && !top) {
            double r = base->recip() + shift;
            require(r >= -kRecipTol, "solved reciprocal for " + name + " is negative");
            top = Exponent::from_recip(std::max(r, 0.0));
        } else if (top && !base) {
            double r = top->recip() - shift;
            require(r >= -kRecipTol, "solved reciprocal for " + name + "0 is negative");
            base = Exponent::from_recip(std::max(r, 0.0));
        }
    };
    fill(out.q0, out.q, g, "q");
    fill(out.p0, out.p, g, "p");
    fill(out.s0, out.s, g, "s");
    fill(out.r, out.r0, g, "r0");  // 1/r0 = 1/r + 1/gamma

    out.complete = out.q0 && out.p0 && out.s0 && out.r0 && out.q && out.p && out.s && out.r;
    return out;
}

// ---------------------------------------------------------------------------
// Admissible region: interval constraints on the target reciprocals
// (1/q, 1/p, 1/s, 1/r) imposed by q, p in (0, inf] and s, r in (0, inf).
// ---------------------------------------------------------------------------

struct Interval {
    double lo = -kInf, hi = kInf;
    bool lo_open = false, hi_open = false;

    bool contains(double x) const {
        bool above = lo_open ? x > lo : x >= lo - kRecipTol;
        bool below = hi_open ? x < hi : x <= hi + kRecipTol;
        return above && below;
    }

    Interval intersect(const Interval& o) const {
        Interval out = *this;
        if (o.lo > out.lo || (o.lo == out.lo && o.lo_open)) { out.lo = o.lo; out.lo_open = o.lo_open; }
        if (o.hi < out.hi || (o.hi == out.hi && o.hi_open)) { out.hi = o.hi; out.hi_open = o.hi_open; }
        return out;
    }

    bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }

    std::string str() const {
        std::ostringstream os;
        os << (lo_open ? "(" : "[");
        if (std::isinf(lo)) os << (lo < 0 ? "-inf" : "inf"); else os << lo;
        os << ", ";
        if (std::isinf(hi)) os << "inf"; else os << hi;
        os << (hi_open ? ")" : "]");
        return os.str();
    }
};

struct AdmissibleRegion {
    Interval q, p, s, r;  // constraints on the reciprocals

    bool contains(Exponent q_, Exponent p_, Exponent s_, Exponent r_) const {
        return q.contains(q_.recip()) && p.contains(p_.recip()) &&
               s.contains(s_.recip()) && r.contains(r_.recip());
    }
};

inline AdmissibleRegion admissible_region(Exponent q0, Exponent p0, Exponent s0, Exponent r0) {
    auto closed_lo = [](double lo) { return Interval{lo, kInf, false, false}; };
    auto open_lo = [](double lo) { return Interval{lo, kInf, true, false}; };
    double a = q0.recip(), b = p0.recip(), c = s0.recip(), d = r0.recip();

    AdmissibleRegion reg;
    reg.q = closed_lo(a - b)
                .intersect(open_lo(a - c))
                .intersect(Interval{0.0, a + d, false, true});
    reg.p = closed_lo(b - a)
                .intersect(open_lo(b - c))
                .intersect(Interval{0.0, b + d, false, true});
    reg.s = closed_lo(c - a)
                .intersect(closed_lo(c - b))
                .intersect(Interval{0.0, c + d, true, true});
    reg.r = Interval{0.0, a + d, true, false}
                .intersect(Interval{0.0, b + d, true, false})
                .intersect(Interval{0.0, c + d, true, true});
    return reg;
}

// ---------------------------------------------------------------------------
// Rescaled parameters.  Given the shift 1/gamma and the base pair (s0, r0),
// the auxiliary exponent alpha has 1/alpha = 1/s0 + 1/r0 (an invariant of the
// whole consistency family), and the maximal operator acts at exponent t:
//   1/gamma > 0:  t0 = s0/alpha, t = s/alpha, weight transform (w^a, v^a)
//   1/gamma = 0:  t0 = t = 1, nothing moves
//   1/gamma < 0:  t0 = r0/alpha, t = r/alpha, weight transform (v^-a, w^-a)
// ---------------------------------------------------------------------------

enum class WeightTransform { PowAlpha, PowNegAlphaSwapped, Identity };

inline std::string to_string(WeightTransform t) {
    switch (t) {
        case WeightTransform::PowAlpha: return "(w^a, v^a)";
        case WeightTransform::PowNegAlphaSwapped: return "(v^-a, w^-a)";
        default: return "identity";
    }
}

struct RescaledParams {
    double gamma_recip = 0.0;
    Exponent s0, r0, s, r;
    Exponent alpha, t0, t;
    int sign = 0;  // sign of 1/gamma
    WeightTransform transform = WeightTransform::Identity;
    bool zero_case = false;
    // weight class: the singleton {(w,v)} in the zero case, otherwise all
    // pairs with the same ratio w/v and finite base characteristic
    std::string weight_class;

    /// Maximal-operator bounds need t > 1 (or the zero-case convention).
    bool maximal_bound_available() const {
        return zero_case || t.recip() < 1.0 - kRecipTol;
    }
};

inline RescaledParams rescale_params(double gamma_recip, Exponent s0, Exponent r0) {
    RescaledParams rp;
    rp.gamma_recip = gamma_recip;
    rp.s0 = s0;
    rp.r0 = r0;
    double sr = s0.recip() + gamma_recip;
    double rr = r0.recip() - gamma_recip;
    require(sr >= -kRecipTol && rr >= -kRecipTol, "shift leaves the exponent range");
    rp.s = Exponent::from_recip(std::max(sr, 0.0));
    rp.r = Exponent::from_recip(std::max(rr, 0.0));
    double alpha_recip = s0.recip() + r0.recip();
    require(alpha_recip > kRecipTol, "rescaling needs 1/s0 + 1/r0 > 0");
    rp.alpha = Exponent::from_recip(alpha_recip);
    double alpha = 1.0 / alpha_recip;

    if (std::abs(gamma_recip) <= kRecipTol) {
        rp.sign = 0;
        rp.zero_case = true;
        rp.t0 = Exponent::from_value(1.0);
        rp.t = Exponent::from_value(1.0);
        rp.transform = WeightTransform::Identity;
        rp.weight_class = "{(w,v)}";
    } else if (gamma_recip > 0) {
        rp.sign = 1;
        rp.t0 = Exponent::from_recip(alpha * s0.recip());  // t0 = s0/alpha
        rp.t = Exponent::from_recip(alpha * rp.s.recip());
        rp.transform = WeightTransform::PowAlpha;
        rp.weight_class = "{(w',v') : w'/v' = w/v, base characteristic finite}";
    } else {
        rp.sign = -1;
        rp.t0 = Exponent::from_recip(alpha * r0.recip());  // t0 = r0/alpha
        rp.t = Exponent::from_recip(alpha * rp.r.recip());
        rp.transform = WeightTransform::PowNegAlphaSwapped;
        rp.weight_class = "{(w',v') : w'/v' = w/v, base characteristic finite}";
    }
    return rp;
}

/// Multi-level recursion: 1/s_i = 1/s_{i-1} + 1/gamma_i and
/// 1/r_i = 1/r_{i-1} - 1/gamma_i, with per-level rescaled pairs.  The level-i
/// weight transform applies tensor-wise to coordinates i..l.
struct MixedRescaledLevel {
    RescaledParams params;
    int coord_from = 0;  // first tensor coordinate the transform touches (1-based)
    int coord_to = 0;
};

inline std::vector<MixedRescaledLevel> rescale_params_mixed(const std::vector<double>& gamma_recips,
                                                            Exponent s0, Exponent r0) {
    require(!gamma_recips.empty(), "need at least one level");
    std::vector<MixedRescaledLevel> out;
    Exponent s_prev = s0, r_prev = r0;
    for (std::size_t i = 0; i < gamma_recips.size(); ++i) {
        MixedRescaledLevel lvl;
        lvl.params = rescale_params(gamma_recips[i], s_prev, r_prev);
        lvl.coord_from = static_cast<int>(i) + 1;
        lvl.coord_to = static_cast<int>(gamma_recips.size());
        s_prev = lvl.params.s;
        r_prev = lvl.params.r;
        out.push_back(lvl);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Extrapolation constants.  For each index j,
//   C_j = (kappa' * opnorm_j)^(t_j/|gamma_j|) * char_j^(t_j/t0_j)
// and beta = sum_j t_j/|gamma_j| (a zero shift contributes nothing).  The
// one-weight simplification replaces opnorm_j by c(t_j) * char^(...) and the
// characteristic exponent by t_j'/t0_j'.
// ---------------------------------------------------------------------------

struct ConstantInput {
    double gamma_recip = 0.0;
    Exponent t0, t1;
    double opnorm_or_c = 1.0;  // measured operator norm, or c(t1) in the simplified form
    double char_val = 1.0;
    bool buckley = false;      // use the one-weight exponent t1'/t0'
};

struct ConstantsReport {
    double kappa = 2.0;
    double kappa_prime = 2.0;
    double beta = 0.0;
    std::vector<double> C;           // per index
    std::vector<double> char_exponents;
    std::vector<std::vector<double>> b;  // mixed-level grid (empty for one level)
};

inline double conjugate_ratio(Exponent t1, Exponent t0) {
    // t1'/t0' with the zero-case convention inf/inf := 1
    if (t1.is_one() && t0.is_one()) return 1.0;
    require(!t1.is_one(), "t = 1 has no usable maximal bound coefficient");
    double t1p = 1.0 / (1.0 - t1.recip());
    double t0p_recip = 1.0 - t0.recip();
    if (t0p_recip <= kRecipTol) return 0.0;  // t0 = 1 so t0' = inf
    return t1p * t0p_recip;
}

inline ConstantsReport extrapolation_constants(double kappa, const std::vector<ConstantInput>& in) {
    require(kappa > 1.0, "kappa must exceed 1");
    ConstantsReport rep;
    rep.kappa = kappa;
    rep.kappa_prime = kappa / (kappa - 1.0);
    for (const auto& cj : in) {
        if (std::abs(cj.gamma_recip) <= kRecipTol) {
            // zero shift: the pair passes through unchanged
            rep.C.push_back(cj.char_val);
            rep.char_exponents.push_back(1.0);
            continue;
        }
        require(!cj.t1.is_inf(), "rescaled exponent t must be finite for a nonzero shift");
        double e_op = cj.t1.value() * std::abs(cj.gamma_recip);  // t/|gamma|
        rep.beta += e_op;
        double e_char;
        if (cj.buckley) {
            e_char = conjugate_ratio(cj.t1, cj.t0);
        } else {
            e_char = cj.t0.is_inf() ? 0.0 : cj.t1.value() / cj.t0.value();
        }
        rep.C.push_back(std::pow(rep.kappa_prime * cj.opnorm_or_c, e_op) *
                        std::pow(cj.char_val, e_char));
        rep.char_exponents.push_back(e_char);
    }
    return rep;
}

/// Mixed-norm constants over an l x m grid of per-level inputs (in[i][j] for
/// level i, index j).  b_{ij} = prod_{k<=i} t'_{kj}/t0'_{kj} and
/// C_j = prod_i (kappa' c_{ij})^(t_{ij} b_{(i-1)j}/|gamma_{ij}|) char_{ij}^(b_{ij}).
inline ConstantsReport mixed_constants(double kappa,
                                       const std::vector<std::vector<ConstantInput>>& in) {
    require(kappa > 1.0, "kappa must exceed 1");
    require(!in.empty(), "need at least one level");
    ConstantsReport rep;
    rep.kappa = kappa;
    rep.kappa_prime = kappa / (kappa - 1.0);
    std::size_t m = in.front().size();
    for (const auto& row : in) require(row.size() == m, "ragged constants grid");

    rep.C.assign(m, 1.0);
    rep.b.assign(in.size(), std::vector<double>(m, 1.0));
    for (std::size_t j = 0; j < m; ++j) {
        double b_prev = 1.0;
        for (std::size_t i = 0; i < in.size(); ++i) {
            const auto& cij = in[i][j];
            double ratio = conjugate_ratio(cij.t1, cij.t0);
            double b_cur = b_prev * ratio;
            rep.b[i][j] = b_cur;
            if (std::abs(cij.gamma_recip) > kRecipTol) {
                double e_op = cij.t1.value() * std::abs(cij.gamma_recip) * b_prev;
                rep.beta += cij.t1.value() * std::abs(cij.gamma_recip);
                rep.C[j] *= std::pow(rep.kappa_prime * cij.opnorm_or_c, e_op);
            }
            rep.C[j] *= std::pow(cij.char_val, b_cur);
            b_prev = b_cur;
        }
    }
    return rep;
}

}  // namespace weightlab
