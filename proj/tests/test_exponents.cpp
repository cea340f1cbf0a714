#include <catch2/catch_amalgamated.hpp>

#include "weightlab/exponents.hpp"

using namespace weightlab;

namespace {
Exponent ev(double x) { return Exponent::from_value(x); }
Exponent er(double r) { return Exponent::from_recip(r); }
}  // namespace

TEST_CASE("Exponent storage and predicates") {
    CHECK(ev(2.0).recip() == 2 * 0.25);
    CHECK(er(0.0).is_inf());
    CHECK(Exponent::inf().value() == kInf);
    CHECK(ev(1.0).is_one());
    CHECK(ev(4.0 / 3.0) == er(0.75));
    CHECK(ev(2.0) != ev(3.0));
    CHECK_THROWS_AS(ev(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ev(-2.0), std::invalid_argument);
    CHECK_THROWS_AS(er(-0.5), std::invalid_argument);
    // quasi range is first class
    CHECK(ev(0.5).recip() == 2.0);
}

TEST_CASE("str renders integers, fractions, inf") {
    CHECK(Exponent::inf().str() == "inf");
    CHECK(ev(2.0).str() == "2");
    CHECK(ev(4.0 / 3.0).str() == "4/3");
    CHECK(er(1.5).str() == "2/3");
    CHECK(ev(1.0).str() == "1");
}

TEST_CASE("parse_exponent round trips") {
    CHECK(parse_exponent("inf").is_inf());
    CHECK(parse_exponent("oo").is_inf());
    CHECK(parse_exponent(" 4/3 ") == ev(4.0 / 3.0));
    CHECK(parse_exponent("2.5") == ev(2.5));
    CHECK(parse_exponent("2") == ev(2.0));
    CHECK_THROWS_AS(parse_exponent(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_exponent("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_exponent("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_exponent("-2"), std::invalid_argument);
}

TEST_CASE("dual exponents") {
    CHECK(dual(ev(4.0 / 3.0)) == ev(4.0));
    CHECK(dual(ev(2.0)) == ev(2.0));
    CHECK(dual(ev(1.0)).is_inf());
    CHECK(dual(Exponent::inf()) == ev(1.0));
    CHECK_THROWS_AS(dual(ev(0.5)), std::invalid_argument);
}

TEST_CASE("solve_consistency completes the showcase tuple") {
    // base (q0,p0,s0,r0) = (2, 2/3, 1, inf), target q = inf
    ConsistencyInput in;
    in.q0 = ev(2.0);
    in.p0 = ev(2.0 / 3.0);
    in.s0 = ev(1.0);
    in.r0 = Exponent::inf();
    in.q = Exponent::inf();
    ConsistencySolution sol = solve_consistency(in);
    REQUIRE(sol.complete);
    CHECK(sol.gamma_recip == Catch::Approx(-0.5));
    CHECK(*sol.p == ev(1.0));
    CHECK(*sol.s == ev(2.0));
    CHECK(*sol.r == ev(2.0));

    // the fields view preserves declaration order
    auto f = sol.fields();
    CHECK(*f[0] == in.q0);
    CHECK(*f[4] == in.q);
    CHECK(*f[5] == ev(1.0));
}

TEST_CASE("solve_consistency partial and error paths") {
    ConsistencyInput partial;
    partial.q0 = ev(2.0);
    partial.q = ev(4.0);
    ConsistencySolution sol = solve_consistency(partial);
    CHECK_FALSE(sol.complete);
    CHECK(sol.gamma_recip == Catch::Approx(-0.25));
    CHECK_FALSE(sol.p.has_value());

    ConsistencyInput bare;
    bare.q0 = ev(2.0);
    CHECK_THROWS_AS(solve_consistency(bare), std::invalid_argument);

    ConsistencyInput contradictory;
    contradictory.q0 = ev(2.0);
    contradictory.q = ev(4.0);          // shift -1/4
    contradictory.p0 = ev(2.0);
    contradictory.p = ev(4.0 / 3.0);    // shift +1/4
    CHECK_THROWS_AS(solve_consistency(contradictory), std::invalid_argument);

    ConsistencyInput negative;          // 1/s = 1/4 - 1 < 0
    negative.q0 = ev(1.0);
    negative.q = Exponent::inf();
    negative.s0 = ev(4.0);
    CHECK_THROWS_AS(solve_consistency(negative), std::invalid_argument);
}

TEST_CASE("solve_consistency accepts an explicit shift") {
    ConsistencyInput in;
    in.gamma_recip = 0.25;
    in.q0 = ev(2.0);
    in.s0 = ev(2.0);
    ConsistencySolution sol = solve_consistency(in);
    CHECK(*sol.q == er(0.75));
    CHECK(*sol.s == er(0.75));
    CHECK_FALSE(sol.complete);  // p and r rows untouched
}

TEST_CASE("admissible region brackets the reachable tuples") {
    AdmissibleRegion reg = admissible_region(ev(2.0), ev(2.0), ev(2.0), ev(2.0));
    CHECK(reg.contains(ev(2.0), ev(2.0), ev(2.0), ev(2.0)));
    // shift -1/4 keeps all four coordinates strictly inside
    CHECK(reg.contains(ev(4.0), ev(4.0), ev(4.0), ev(4.0 / 3.0)));
    // shift -1/2 would push s to inf and r to 1: excluded (open ends)
    CHECK_FALSE(reg.contains(Exponent::inf(), Exponent::inf(), Exponent::inf(), ev(1.0)));

    // with r0 = inf only strictly negative shifts survive, so the base
    // point itself sits on the open boundary
    AdmissibleRegion lim = admissible_region(ev(2.0), ev(2.0 / 3.0), ev(1.0), Exponent::inf());
    CHECK(lim.contains(Exponent::inf(), ev(1.0), ev(2.0), ev(2.0)));
    CHECK_FALSE(lim.contains(ev(2.0), ev(2.0 / 3.0), ev(1.0), Exponent::inf()));
}

TEST_CASE("rescale_params zero shift") {
    RescaledParams rp = rescale_params(0.0, ev(2.0), ev(2.0));
    CHECK(rp.zero_case);
    CHECK(rp.sign == 0);
    CHECK(rp.t0 == ev(1.0));
    CHECK(rp.t == ev(1.0));
    CHECK(rp.transform == WeightTransform::Identity);
    CHECK(rp.maximal_bound_available());
}

TEST_CASE("rescale_params positive shift can land on the order-one path") {
    RescaledParams rp = rescale_params(0.5, ev(2.0), ev(2.0));
    CHECK(rp.sign == 1);
    CHECK(rp.alpha == ev(1.0));
    CHECK(rp.s == ev(1.0));
    CHECK(rp.r.is_inf());
    CHECK(rp.t0 == ev(2.0));   // s0/alpha
    CHECK(rp.t == ev(1.0));    // s/alpha: maximal bound unusable here
    CHECK(rp.transform == WeightTransform::PowAlpha);
    CHECK_FALSE(rp.maximal_bound_available());
}

TEST_CASE("rescale_params negative shift uses the r-column") {
    // alpha: 1/alpha = 5/6 + 1/3 = 7/6
    RescaledParams rp = rescale_params(-0.5, ev(6.0 / 5.0), ev(3.0));
    CHECK(rp.sign == -1);
    CHECK(rp.alpha == ev(6.0 / 7.0));
    CHECK(rp.s == ev(3.0));          // 5/6 - 1/2 = 1/3
    CHECK(rp.r == ev(6.0 / 5.0));    // 1/3 + 1/2 = 5/6
    CHECK(rp.t0 == ev(3.5));         // r0/alpha = 3 * 7/6
    CHECK(rp.t == ev(1.4));          // r/alpha = (6/5) * 7/6
    CHECK(rp.transform == WeightTransform::PowNegAlphaSwapped);
    CHECK(rp.maximal_bound_available());

    // infinite r0 pushes t0 to inf
    RescaledParams rp2 = rescale_params(-0.5, ev(1.0), Exponent::inf());
    CHECK(rp2.alpha == ev(1.0));
    CHECK(rp2.s == ev(2.0));
    CHECK(rp2.r == ev(2.0));
    CHECK(rp2.t0.is_inf());
    CHECK(rp2.t == ev(2.0));
}

TEST_CASE("rescale_params rejects shifts outside the range") {
    CHECK_THROWS_AS(rescale_params(1.0, ev(2.0), ev(2.0)), std::invalid_argument);
    CHECK_THROWS_AS(rescale_params(-1.0, ev(2.0), ev(2.0)), std::invalid_argument);
}

TEST_CASE("rescale_params_mixed threads the pair through the levels") {
    auto levels = rescale_params_mixed({0.5, -0.5}, ev(2.0), ev(2.0));
    REQUIRE(levels.size() == 2);
    CHECK(levels[0].params.t == ev(1.0));  // order-one path is flagged, not hidden
    CHECK_FALSE(levels[0].params.maximal_bound_available());
    CHECK(levels[0].coord_from == 1);
    CHECK(levels[0].coord_to == 2);
    // level 2 starts from (s,r) = (1, inf) left by level 1
    CHECK(levels[1].params.s0 == ev(1.0));
    CHECK(levels[1].params.r0.is_inf());
    CHECK(levels[1].params.t0.is_inf());
    CHECK(levels[1].params.t == ev(2.0));
}

TEST_CASE("conjugate_ratio conventions") {
    CHECK(conjugate_ratio(ev(1.0), ev(1.0)) == 1.0);
    CHECK(conjugate_ratio(ev(1.5), ev(2.0)) == Catch::Approx(1.5));  // 3 / 2
    CHECK(conjugate_ratio(ev(2.0), ev(1.0)) == 0.0);                 // t0' = inf
    CHECK_THROWS_AS(conjugate_ratio(ev(1.0), ev(2.0)), std::invalid_argument);
}

TEST_CASE("extrapolation_constants closed form") {
    std::vector<ConstantInput> in(1);
    in[0].gamma_recip = 0.25;
    in[0].t0 = ev(2.0);
    in[0].t1 = ev(1.5);
    in[0].opnorm_or_c = 1.9;
    in[0].char_val = 2.5;
    ConstantsReport rep = extrapolation_constants(2.0, in);
    CHECK(rep.kappa_prime == Catch::Approx(2.0));
    // beta = t1 * |shift| = 1.5 * 0.25
    CHECK(rep.beta == Catch::Approx(0.375));
    CHECK(rep.char_exponents[0] == Catch::Approx(0.75));  // t1/t0
    CHECK(rep.C[0] == Catch::Approx(std::pow(2.0 * 1.9, 0.375) * std::pow(2.5, 0.75)));

    // one-weight form swaps in the conjugate ratio exponent
    in[0].buckley = true;
    ConstantsReport bk = extrapolation_constants(2.0, in);
    CHECK(bk.char_exponents[0] == Catch::Approx(1.5));  // t1'/t0' = 3/2

    // zero shift passes the characteristic through
    ConstantInput zero;
    zero.char_val = 7.0;
    ConstantsReport z = extrapolation_constants(2.0, {zero});
    CHECK(z.beta == 0.0);
    CHECK(z.C[0] == Catch::Approx(7.0));
    CHECK(z.char_exponents[0] == 1.0);

    CHECK_THROWS_AS(extrapolation_constants(1.0, in), std::invalid_argument);
}

TEST_CASE("mixed_constants accumulates the grid") {
    // two levels, one index; level ratios multiply into b
    ConstantInput a;
    a.gamma_recip = 0.25;
    a.t0 = ev(2.0);
    a.t1 = ev(1.5);
    a.opnorm_or_c = 1.0;
    a.char_val = 2.0;
    ConstantInput b = a;
    ConstantsReport rep = mixed_constants(2.0, {{a}, {b}});
    REQUIRE(rep.b.size() == 2);
    const double ratio = conjugate_ratio(ev(1.5), ev(2.0));  // 1.5
    CHECK(rep.b[0][0] == Catch::Approx(ratio));
    CHECK(rep.b[1][0] == Catch::Approx(ratio * ratio));
    CHECK(rep.beta == Catch::Approx(2 * 1.5 * 0.25));
    // C = (k' c)^(t b0 |g|) char^(b1) * (k' c)^(t b1 |g|) char^(b2)
    const double expect = std::pow(2.0, 1.5 * 0.25 * 1.0) * std::pow(2.0, ratio) *
                          std::pow(2.0, 1.5 * 0.25 * ratio) * std::pow(2.0, ratio * ratio);
    CHECK(rep.C[0] == Catch::Approx(expect));
}
