#pragma once

// Two-factor product spaces: iterated (mixed) weighted norms evaluated
// innermost coordinate first, exact weak-type norms, and sequence-space
// norms used by the vector-valued checks.

#include "weightlab/core.hpp"
#include "weightlab/exponents.hpp"
#include "weightlab/space.hpp"
#include "weightlab/weights.hpp"

namespace weightlab {

struct ProductSpace {
    SetBasis a;     // inner factor (coordinate 1)
    SetBasis b;     // outer factor (coordinate 2)
    SetBasis full;  // product basis on na*nb points
    int na = 0, nb = 0;

    int index(int ia, int ib) const { return ia + na * ib; }
};

inline ProductSpace make_product(const SetBasis& a, const SetBasis& b) {
    ProductSpace ps;
    ps.a = a;
    ps.b = b;
    ps.full = product_space(a, b);
    ps.na = a.space.size();
    ps.nb = b.space.size();
    return ps;
}

inline Weight tensor_weight(const ProductSpace& ps, const Weight& wa, const Weight& wb) {
    require(wa.size() == ps.na && wb.size() == ps.nb, "size mismatch");
    std::vector<double> v(static_cast<std::size_t>(ps.na) * ps.nb);
    for (int ib = 0; ib < ps.nb; ++ib)
        for (int ia = 0; ia < ps.na; ++ia)
            v[static_cast<std::size_t>(ps.index(ia, ib))] =
                wa.values[static_cast<std::size_t>(ia)] * wb.values[static_cast<std::size_t>(ib)];
    return make_weight(std::move(v));
}

/// Inner slice norm: g(ib) = ||f(.,ib) * wa||_{L^{p1}} on the inner factor.
inline std::vector<double> inner_norms(const ProductSpace& ps, const std::vector<double>& f,
                                       const Weight& wa, Exponent p1) {
    require(static_cast<int>(f.size()) == ps.na * ps.nb, "size mismatch");
    std::vector<double> g(static_cast<std::size_t>(ps.nb));
    std::vector<double> slice(static_cast<std::size_t>(ps.na));
    for (int ib = 0; ib < ps.nb; ++ib) {
        for (int ia = 0; ia < ps.na; ++ia)
            slice[static_cast<std::size_t>(ia)] = f[static_cast<std::size_t>(ps.index(ia, ib))];
        g[static_cast<std::size_t>(ib)] = weighted_norm(ps.a.space, slice, wa, p1);
    }
    return g;
}

/// ||f||_{L^{(p1,p2)}_{(wa,wb)}}: weighted p1-norm in the inner coordinate,
/// then weighted p2-norm of the resulting profile in the outer coordinate.
inline double mixed_norm(const ProductSpace& ps, const std::vector<double>& f,
                         const Weight& wa, const Weight& wb, Exponent p1, Exponent p2) {
    std::vector<double> g = inner_norms(ps, f, wa, p1);
    return weighted_norm(ps.b.space, g, wb, p2);
}

/// Exact weak mixed norm sup_t t ||1_{|f|>t}||_{L^{(p1,p2)}_{(wa,wb)}}.
/// On a finite space the sup is attained at a left limit of a jump, i.e. at
/// the distinct nonzero values of |f| with the level set taken non-strict.
inline double weak_mixed_norm(const ProductSpace& ps, const std::vector<double>& f,
                              const Weight& wa, const Weight& wb, Exponent p1, Exponent p2) {
    std::vector<double> vals;
    vals.reserve(f.size());
    for (double x : f)
        if (std::abs(x) > 0) vals.push_back(std::abs(x));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    double best = 0;
    std::vector<double> ind(f.size());
    for (double a : vals) {
        for (std::size_t i = 0; i < f.size(); ++i) ind[i] = (std::abs(f[i]) >= a) ? 1.0 : 0.0;
        best = std::max(best, a * mixed_norm(ps, ind, wa, wb, p1, p2));
    }
    return best;
}

/// Plain-space version (single coordinate).
inline double weak_norm(const MeasureSpace& sp, const std::vector<double>& f, const Weight& w,
                        Exponent p) {
    std::vector<double> vals;
    for (double x : f)
        if (std::abs(x) > 0) vals.push_back(std::abs(x));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    double best = 0;
    std::vector<double> ind(f.size());
    for (double a : vals) {
        for (std::size_t i = 0; i < f.size(); ++i) ind[i] = (std::abs(f[i]) >= a) ? 1.0 : 0.0;
        best = std::max(best, a * weighted_norm(sp, ind, w, p));
    }
    return best;
}

/// Unweighted sequence norm ||x||_{l^u} (counting measure, u in (0,inf]).
inline double ell_norm(const std::vector<double>& x, Exponent u) {
    if (u.is_inf()) {
        double m = 0;
        for (double t : x) m = std::max(m, std::abs(t));
        return m;
    }
    const double uv = u.value();
    double s = 0;
    for (double t : x) s += std::pow(std::abs(t), uv);
    return std::pow(s, 1.0 / uv);
}

}  // namespace weightlab
