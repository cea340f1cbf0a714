#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "weightlab/transfer.hpp"

using namespace weightlab;

namespace {

Exponent ev(double x) { return Exponent::from_value(x); }

CVec random_cvec(int n, std::uint64_t seed) {
    CounterRng rng(seed);
    CVec f(static_cast<std::size_t>(n));
    for (auto& z : f) z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return f;
}

double cdist(const CVec& a, const CVec& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("group layout and arithmetic") {
    FiniteAbelianGroup g = make_group({2, 4});
    CHECK(g.order == 8);
    CHECK(g.dim() == 2);
    CHECK(g.strides == std::vector<int>{1, 2});
    CHECK(g.phase_lcm == 4);
    for (int i = 0; i < g.order; ++i) CHECK(g.index(g.tuple(i)) == i);
    CHECK(g.index({-1, -1}) == 7);  // wraps to (1,3)
    CHECK(g.add(g.index({1, 3}), g.index({1, 2})) == g.index({0, 1}));
    CHECK(g.neg(g.index({1, 1})) == g.index({1, 3}));
    CHECK(g.space().size() == 8);

    CHECK_THROWS_AS(make_group({}), std::invalid_argument);
    CHECK_THROWS_AS(make_group({0}), std::invalid_argument);
    CHECK_THROWS_AS(make_group({5000}), std::invalid_argument);
}

TEST_CASE("pairing phases are exact rationals") {
    FiniteAbelianGroup z4 = make_group({4});
    CHECK(z4.pairing_num(1, 1) == 1);
    CHECK(z4.pairing_num(2, 3) == 2);
    CHECK(z4.pairing_num(3, 3) == 1);  // 9 mod 4

    FiniteAbelianGroup g = make_group({2, 4});
    // <(1,0),(1,0)> = 1/2: coordinate scale is phase_lcm / 2
    CHECK(g.pairing_num(g.index({1, 0}), g.index({1, 0})) == 2);
    std::complex<double> c = character(g, g.index({1, 0}), g.index({1, 0}));
    CHECK(std::abs(c - std::complex<double>(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("transform pair inverts and preserves energy") {
    FiniteAbelianGroup g = make_group({6});
    CVec f = random_cvec(6, 71);
    CVec fh = dft(g, f);
    CHECK(cdist(idft(g, fh), f) < 1e-12);

    double e2 = 0, ehat2 = 0;
    for (const auto& z : f) e2 += std::norm(z);
    for (const auto& z : fh) ehat2 += std::norm(z);
    CHECK(rel_close(ehat2, 6.0 * e2, 1e-12));

    CVec delta(6, {0.0, 0.0});
    delta[0] = 1.0;
    CVec dh = dft(g, delta);
    for (const auto& z : dh) CHECK(std::abs(z - std::complex<double>(1.0, 0.0)) < 1e-14);
}

TEST_CASE("frequency and spatial pairings agree") {
    FiniteAbelianGroup g = make_group({8});
    Multiplier m = random_cvec(8, 72);
    CVec f = random_cvec(8, 73);
    CVec h = random_cvec(8, 74);
    std::complex<double> a = duality_form(g, m, f, h);
    std::complex<double> b = duality_form_spatial(g, m, f, h);
    CHECK(std::abs(a - b) < 1e-10 * (1.0 + std::abs(a)));
}

TEST_CASE("weighted norms on groups") {
    FiniteAbelianGroup g = make_group({2});
    CVec f{{3.0, 0.0}, {0.0, 4.0}};
    Weight w = make_weight({2.0, 1.0});
    CHECK(weighted_p_norm(g, f, w, ev(2.0)) == Catch::Approx(std::sqrt(52.0)));
    CHECK(weighted_p_norm(g, f, w, Exponent::inf()) == Catch::Approx(6.0));
}

TEST_CASE("hom construction screens the defining congruences") {
    FiniteAbelianGroup z2 = make_group({2}), z4 = make_group({4});
    CHECK_THROWS_AS(make_hom(z2, z4, {{1}}), std::invalid_argument);  // 1*2 != 0 mod 4
    GroupHom phi = make_hom(z2, z4, {{2}});
    CHECK(phi.apply(1) == 2);

    GroupHom hat = dual_hom(phi);
    REQUIRE(hat.matrix.size() == 1);
    CHECK(hat.matrix[0][0] == 1);  // reduction mod 2
    CHECK(hat.apply(3) == 1);
    CHECK(surjective(hat));
    CHECK_FALSE(surjective(phi));
}

TEST_CASE("pullback duality identity holds to roundoff") {
    FiniteAbelianGroup z2 = make_group({2}), z4 = make_group({4});
    GroupHom phi = make_hom(z2, z4, {{2}});
    GroupHom hat = dual_hom(phi);
    Multiplier m = random_cvec(4, 75);
    CVec E = random_cvec(2, 76);
    CHECK(homomorphism_duality_check(phi, hat, m, E) < 1e-10);
}

TEST_CASE("spectral multiplier norm at the Hilbert index") {
    FiniteAbelianGroup g = make_group({4});
    Weight one = make_weight({1.0, 1.0, 1.0, 1.0});
    Multiplier m{{1.0, 0.0}, {0.5, 0.0}, {0.25, 0.0}, {0.5, 0.0}};
    OpNormEstimate est = multiplier_norm(g, m, ev(2.0), one);
    CHECK(est.kind == OpNormEstimate::Kind::exact);
    CHECK(est.value == Catch::Approx(1.0).epsilon(1e-12));

    Multiplier peak{{0.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}, {0.0, 0.0}};
    CHECK(multiplier_norm(g, peak, ev(2.0), one).value == Catch::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(multiplier_norm(g, m, Exponent::inf(), one), std::invalid_argument);
    CHECK_THROWS_AS(multiplier_norm(g, m, ev(1.0), one), std::invalid_argument);
}

TEST_CASE("off-Hilbert multiplier norms certify their witness") {
    FiniteAbelianGroup g = make_group({4});
    Weight one = make_weight({1.0, 1.0, 1.0, 1.0});
    Multiplier m{{1.0, 0.0}, {0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}};
    OpNormBudget budget;
    budget.restarts = 6;
    budget.iters = 150;
    OpNormEstimate est = multiplier_norm(g, m, ev(4.0), one, budget);
    CHECK(est.kind == OpNormEstimate::Kind::lower_bound);

    // reported value is exactly the ratio of the stored witness
    REQUIRE(est.witness.size() == 8);
    CVec f(4);
    for (std::size_t i = 0; i < 4; ++i) f[i] = {est.witness[2 * i], est.witness[2 * i + 1]};
    CVec tf = multiplier_apply(g, m, f);
    const double ratio = weighted_p_norm(g, tf, one, ev(4.0)) / weighted_p_norm(g, f, one, ev(4.0));
    CHECK(rel_close(est.value, ratio, 1e-9));

    // constants are reachable and the L1 kernel bound caps the norm
    CHECK(est.value >= std::abs(m[0]) * (1 - 1e-9));
    CVec kernel = idft(g, m);
    double k1 = 0;
    for (const auto& z : kernel) k1 += std::abs(z);
    CHECK(est.value <= k1 * (1 + 1e-9));
}

TEST_CASE("weight translation relabels points and fixes the norm") {
    FiniteAbelianGroup g = make_group({4});
    Weight w = make_weight({1.0, 2.0, 3.0, 4.0});
    Weight t = translate_weight(g, w, 1);
    CHECK(t.values == std::vector<double>{4.0, 1.0, 2.0, 3.0});

    FiniteAbelianGroup z6 = make_group({6});
    CounterRng rng(77);
    Weight w6 = sample_weight(z6.space(), rng);
    Multiplier m(6);
    for (int k = 0; k < 6; ++k) {
        const int rep = k <= 3 ? k : k - 6;
        m[static_cast<std::size_t>(k)] = std::max(0.0, 1.0 - std::abs(rep) / 3.0);
    }
    CHECK(translation_invariance_check(z6, m, ev(2.0), w6) < 1e-10);
}

TEST_CASE("transference along a dual-surjective hom is tight") {
    FiniteAbelianGroup z2 = make_group({2}), z4 = make_group({4});
    GroupHom phi = make_hom(z2, z4, {{2}});
    CounterRng rng(78);
    Weight w = sample_weight(z2.space(), rng);
    Multiplier m{{1.0, 0.0}, {0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}};
    TransferReport rep = transference_check(phi, w, ev(2.0), m);
    CHECK(rep.exact);
    CHECK(rep.surjective_dual);
    CHECK(rep.c == 1.0);
    CHECK(rep.verdict == "consistent");
    CHECK(rep.lhs <= rep.rhs * (1 + 1e-9));
}

TEST_CASE("non-surjective duals fall back to the measured class constant") {
    FiniteAbelianGroup z4 = make_group({4}), z2 = make_group({2});
    GroupHom phi = make_hom(z4, z2, {{1}});  // reduction mod 2; dual embeds Z2 in Z4
    CounterRng rng(79);
    Weight w = sample_weight(z4.space(), rng);
    Multiplier m{{1.0, 0.0}, {0.3, 0.0}};
    TransferReport rep = transference_check(phi, w, ev(2.0), m);
    CHECK(rep.exact);
    CHECK_FALSE(rep.surjective_dual);
    CHECK(rep.c >= 1.0 - 1e-12);
    CHECK(rep.verdict == "consistent");
}
