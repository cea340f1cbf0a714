#pragma once

// Finite atomic measure spaces with bases of sets: dyadic grids, cyclic-group
// interval bases, and products.  Everything is immutable after construction.

#include "weightlab/core.hpp"

#include <numeric>

namespace weightlab {

struct MeasureSpace {
    std::vector<double> mass;  // per-point mass, all > 0
    std::string label;

    int size() const { return static_cast<int>(mass.size()); }
    double total_mass() const { return std::accumulate(mass.begin(), mass.end(), 0.0); }
};

inline MeasureSpace make_space(std::vector<double> masses, std::string label = "") {
    require(!masses.empty(), "space needs at least one point");
    for (double m : masses) require(m > 0 && std::isfinite(m), "point masses must be positive and finite");
    return MeasureSpace{std::move(masses), std::move(label)};
}

using IndexSet = std::vector<int>;  // sorted, unique point indices

struct SetBasis {
    MeasureSpace space;
    std::vector<IndexSet> sets;
};

inline double set_mass(const MeasureSpace& sp, const IndexSet& U) {
    double s = 0;
    for (int i : U) s += sp.mass[static_cast<std::size_t>(i)];
    return s;
}

struct ValidationReport {
    bool cover_ok = false;
    bool pair_ok = false;
    bool measures_ok = false;
    bool well_formed = false;  // sorted, unique, in-range, nonempty
    bool ok() const { return cover_ok && pair_ok && measures_ok && well_formed; }
};

/// Failures are reported, not thrown.
inline ValidationReport validate_basis(const SetBasis& b) {
    ValidationReport rep;
    const int n = b.space.size();
    rep.well_formed = !b.sets.empty();
    for (const auto& U : b.sets) {
        if (U.empty()) rep.well_formed = false;
        for (std::size_t k = 0; k < U.size(); ++k) {
            if (U[k] < 0 || U[k] >= n) rep.well_formed = false;
            if (k > 0 && U[k] <= U[k - 1]) rep.well_formed = false;
        }
    }
    if (!rep.well_formed) return rep;

    rep.measures_ok = true;
    for (const auto& U : b.sets) {
        double m = set_mass(b.space, U);
        if (!(m > 0) || !std::isfinite(m)) rep.measures_ok = false;
    }

    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    for (const auto& U : b.sets)
        for (int i : U) covered[static_cast<std::size_t>(i)] = 1;
    rep.cover_ok = std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });

    // every pair of points must share a set
    std::vector<char> joint(static_cast<std::size_t>(n) * n, 0);
    for (const auto& U : b.sets)
        for (int i : U)
            for (int j : U) joint[static_cast<std::size_t>(i) * n + j] = 1;
    rep.pair_ok = std::all_of(joint.begin(), joint.end(), [](char c) { return c != 0; });
    return rep;
}

/// 2^levels uniform points modeling [0,1); basis = dyadic intervals of every
/// generation plus the full set (plain dyadic grids alone would break the
/// pair-containment axiom).
inline SetBasis make_dyadic_space(int levels) {
    require(levels >= 1 && levels <= 16, "levels must be in [1,16]");
    const int n = 1 << levels;
    SetBasis b;
    b.space = make_space(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n),
                         "dyadic(" + std::to_string(levels) + ")");
    for (int g = 0; g <= levels; ++g) {
        const int len = 1 << (levels - g);
        for (int k = 0; k < (1 << g); ++k) {
            IndexSet U(static_cast<std::size_t>(len));
            std::iota(U.begin(), U.end(), k * len);
            b.sets.push_back(std::move(U));
        }
    }
    return b;
}

struct GroupBasis {
    SetBasis base;                  // all translates of the level sets
    std::vector<IndexSet> levels;   // U_0 subseteq U_1 subseteq ... (top = whole group)
    // theta(k) = k+1 with indices past the top clamped to the whole group
    double doubling_constant = 1.0;

    const IndexSet& level_set(int k) const {
        int top = static_cast<int>(levels.size()) - 1;
        return levels[static_cast<std::size_t>(std::min(k, top))];
    }
};

namespace detail {
inline IndexSet sorted_unique(IndexSet v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}
}  // namespace detail

/// Z_n with unit masses; U_k = symmetric interval {-a_k..a_k} mod n with
/// a_k = min(2^k, n/2), top level the whole group; basis = all translates.
inline std::pair<SetBasis, GroupBasis> make_cyclic_space(int n) {
    require(n >= 2, "cyclic group needs n >= 2");
    GroupBasis gb;
    gb.base.space = make_space(std::vector<double>(static_cast<std::size_t>(n), 1.0),
                               "cyclic(" + std::to_string(n) + ")");
    for (int k = 0;; ++k) {
        long long a = std::min<long long>(1LL << k, n / 2);
        IndexSet U;
        for (long long d = -a; d <= a; ++d) U.push_back(static_cast<int>(((d % n) + n) % n));
        U = detail::sorted_unique(std::move(U));
        gb.levels.push_back(U);
        if (static_cast<int>(U.size()) == n) break;
    }

    // base = deduplicated translates x + U_k
    std::vector<IndexSet> all;
    for (const auto& U : gb.levels) {
        for (int x = 0; x < n; ++x) {
            IndexSet t;
            t.reserve(U.size());
            for (int u : U) t.push_back((u + x) % n);
            all.push_back(detail::sorted_unique(std::move(t)));
        }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    gb.base.sets = std::move(all);

    // verify the group-basis axioms exhaustively and measure the doubling constant
    const int top = static_cast<int>(gb.levels.size()) - 1;
    double A = 1.0;
    for (int k = 0; k <= top; ++k) {
        const IndexSet& U = gb.levels[static_cast<std::size_t>(k)];
        const IndexSet& V = gb.level_set(k + 1);
        for (std::size_t i = 1; i < U.size(); ++i) check(U[i] > U[i - 1], "level set not sorted");
        if (k > 0) {
            const IndexSet& P = gb.levels[static_cast<std::size_t>(k - 1)];
            check(std::includes(U.begin(), U.end(), P.begin(), P.end()), "levels not nested");
        }
        // symmetry U = -U
        for (int u : U)
            check(std::binary_search(U.begin(), U.end(), (n - u) % n), "level set not symmetric");
        // sumset 2U_k inside U_{theta(k)}
        for (int u1 : U)
            for (int u2 : U)
                check(std::binary_search(V.begin(), V.end(), (u1 + u2) % n),
                      "sumset containment fails");
        // doubling over all translates (masses are uniform but check anyway)
        for (int x = 0; x < n; ++x) {
            double mu_big = 0, mu_small = 0;
            for (int u : V) mu_big += gb.base.space.mass[static_cast<std::size_t>((u + x) % n)];
            for (int u : U) mu_small += gb.base.space.mass[static_cast<std::size_t>((u + x) % n)];
            A = std::max(A, mu_big / mu_small);
        }
    }
    gb.doubling_constant = A;
    return {gb.base, gb};
}

/// Point (ia, ib) -> index ia + Na*ib; basis = all products U' x U''.
inline SetBasis product_space(const SetBasis& a, const SetBasis& b) {
    const int na = a.space.size(), nb = b.space.size();
    SetBasis p;
    std::vector<double> masses(static_cast<std::size_t>(na) * nb);
    for (int ib = 0; ib < nb; ++ib)
        for (int ia = 0; ia < na; ++ia)
            masses[static_cast<std::size_t>(ia + na * ib)] =
                a.space.mass[static_cast<std::size_t>(ia)] * b.space.mass[static_cast<std::size_t>(ib)];
    p.space = make_space(std::move(masses), a.space.label + " x " + b.space.label);
    for (const auto& Ub : b.sets)
        for (const auto& Ua : a.sets) {
            IndexSet U;
            U.reserve(Ua.size() * Ub.size());
            for (int ib : Ub)
                for (int ia : Ua) U.push_back(ia + na * ib);
            std::sort(U.begin(), U.end());
            p.sets.push_back(std::move(U));
        }
    return p;
}

}  // namespace weightlab
