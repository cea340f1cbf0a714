#pragma once

// Weights, weighted norms (multiplicative convention: the weight scales the
// function before the norm is taken), and two-weight characteristics over a
// set basis.

#include "weightlab/core.hpp"
#include "weightlab/exponents.hpp"
#include "weightlab/space.hpp"

#include <cmath>

namespace weightlab {

struct Weight {
    std::vector<double> values;  // strictly positive, finite

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

inline Weight make_weight(std::vector<double> vals) {
    require(!vals.empty(), "weight needs at least one point");
    for (double v : vals) require(v > 0 && std::isfinite(v), "weight values must be positive and finite");
    return Weight{std::move(vals)};
}

inline Weight pow(const Weight& w, double a) {
    std::vector<double> out(w.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::pow(w.values[i], a);
    return make_weight(std::move(out));
}

inline Weight reciprocal(const Weight& w) { return pow(w, -1.0); }

inline Weight mul(const Weight& a, const Weight& b) {
    require(a.size() == b.size(), "weight size mismatch");
    std::vector<double> out(a.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values[i] * b.values[i];
    return make_weight(std::move(out));
}

/// ||f||_{L^p(U)} with the measure of the ambient space; p < 1 gives the
/// quasi-norm, p = inf the max over U (every atom has positive mass).
inline double lp_norm_on(const MeasureSpace& sp, const IndexSet& U,
                         const std::vector<double>& f, Exponent p) {
    if (p.is_inf()) {
        double m = 0;
        for (int i : U) m = std::max(m, std::abs(f[static_cast<std::size_t>(i)]));
        return m;
    }
    const double pv = p.value();
    double s = 0;
    for (int i : U) s += std::pow(std::abs(f[static_cast<std::size_t>(i)]), pv) * sp.mass[static_cast<std::size_t>(i)];
    return std::pow(s, 1.0 / pv);
}

inline IndexSet full_index_set(const MeasureSpace& sp) {
    IndexSet all(static_cast<std::size_t>(sp.size()));
    std::iota(all.begin(), all.end(), 0);
    return all;
}

/// ||f||_{L^p_w} = ||f * w||_{L^p}.
inline double weighted_norm(const MeasureSpace& sp, const std::vector<double>& f,
                            const Weight& w, Exponent p) {
    require(static_cast<int>(f.size()) == sp.size() && w.size() == sp.size(), "size mismatch");
    std::vector<double> fw(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fw[i] = f[i] * w.values[i];
    return lp_norm_on(sp, full_index_set(sp), fw, p);
}

struct CharValue {
    double value = 0;
    int argmax_set = -1;  // index into basis.sets
};

/// sup_U mu(U)^{-(1/s+1/r)} ||w||_{L^s(U)} ||v^{-1}||_{L^r(U)}.
inline CharValue characteristic(const SetBasis& basis, const Weight& w, const Weight& v,
                                Exponent s, Exponent r) {
    require(w.size() == basis.space.size() && v.size() == basis.space.size(), "size mismatch");
    const double ex = s.recip() + r.recip();
    std::vector<double> vinv(v.values.size());
    for (std::size_t i = 0; i < vinv.size(); ++i) vinv[i] = 1.0 / v.values[i];
    CharValue best;
    for (std::size_t k = 0; k < basis.sets.size(); ++k) {
        const IndexSet& U = basis.sets[k];
        double val = std::pow(set_mass(basis.space, U), -ex) *
                     lp_norm_on(basis.space, U, w.values, s) *
                     lp_norm_on(basis.space, U, vinv, r);
        if (val > best.value) {
            best.value = val;
            best.argmax_set = static_cast<int>(k);
        }
    }
    return best;
}

/// One-weight characteristic of order p in [1, inf]: the self pair at the
/// dual exponent couple (p, p').
inline CharValue characteristic_p(const SetBasis& basis, const Weight& w, Exponent p) {
    require(p.recip() <= 1.0 + kRecipTol, "order must be >= 1");
    return characteristic(basis, w, w, p, dual(p));
}

/// Reverse-Holder constant of order s: two-weight characteristic of
/// (w, w^{-1}) at exponents (s, 1).
inline CharValue reverse_holder(const SetBasis& basis, const Weight& w, Exponent s) {
    return characteristic(basis, w, reciprocal(w), s, Exponent::from_value(1.0));
}

// --- samplers ----------------------------------------------------------

/// i.i.d. log-uniform on [e^-3, e^3].
inline Weight sample_weight_loguniform(const MeasureSpace& sp, CounterRng& rng) {
    std::vector<double> v(static_cast<std::size_t>(sp.size()));
    for (auto& x : v) x = rng.log_uniform(std::exp(-3.0), std::exp(3.0));
    return make_weight(std::move(v));
}

/// w(i) = d(i, i0)^a with a in (-1/2, 1/2) and d a normalized point distance
/// bounded away from zero, so all powers stay finite.
inline Weight sample_weight_power(const MeasureSpace& sp, CounterRng& rng) {
    const int n = sp.size();
    const int i0 = rng.index(n);
    const double a = rng.uniform(-0.5, 0.5);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = std::pow((std::abs(i - i0) + 0.5) / n, a);
    return make_weight(std::move(v));
}

/// Two-level checkerboard: a random subset gets level hi, the rest lo.
inline Weight sample_weight_checkerboard(const MeasureSpace& sp, CounterRng& rng) {
    const double lo = rng.log_uniform(std::exp(-2.0), 1.0);
    const double hi = rng.log_uniform(1.0, std::exp(2.0));
    std::vector<double> v(static_cast<std::size_t>(sp.size()));
    for (auto& x : v) x = (rng.uniform() < 0.5) ? lo : hi;
    return make_weight(std::move(v));
}

inline Weight sample_weight(const MeasureSpace& sp, CounterRng& rng) {
    switch (rng.index(3)) {
        case 0: return sample_weight_loguniform(sp, rng);
        case 1: return sample_weight_power(sp, rng);
        default: return sample_weight_checkerboard(sp, rng);
    }
}

/// Nonnegative test function: mixture of log-uniform profiles, sparse spikes,
/// and indicators.
inline std::vector<double> sample_function(const MeasureSpace& sp, CounterRng& rng) {
    const int n = sp.size();
    std::vector<double> f(static_cast<std::size_t>(n), 0.0);
    switch (rng.index(3)) {
        case 0:
            for (auto& x : f) x = rng.log_uniform(std::exp(-3.0), std::exp(3.0));
            break;
        case 1: {
            const int spikes = 1 + rng.index(std::max(1, n / 4));
            for (int s = 0; s < spikes; ++s)
                f[static_cast<std::size_t>(rng.index(n))] = rng.log_uniform(0.1, 10.0);
            break;
        }
        default:
            for (auto& x : f) x = (rng.uniform() < 0.5) ? 1.0 : 0.0;
            if (std::all_of(f.begin(), f.end(), [](double x) { return x == 0.0; }))
                f[static_cast<std::size_t>(rng.index(n))] = 1.0;
            break;
    }
    return f;
}

}  // namespace weightlab
