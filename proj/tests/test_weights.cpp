#include <catch2/catch_amalgamated.hpp>

#include "weightlab/weights.hpp"

#include <cmath>

using namespace weightlab;

namespace {
Exponent ev(double x) { return Exponent::from_value(x); }
}  // namespace

TEST_CASE("make_weight validates positivity") {
    CHECK_NOTHROW(make_weight({1.0, 0.5, 3.0}));
    CHECK_THROWS_AS(make_weight({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_weight({1.0, -2.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_weight({1.0, kInf}), std::invalid_argument);
}

TEST_CASE("pointwise weight algebra") {
    Weight w = make_weight({1.0, 4.0});
    CHECK(pow(w, 0.5).values == std::vector<double>{1.0, 2.0});
    CHECK(reciprocal(w).values == std::vector<double>{1.0, 0.25});
    CHECK(mul(w, w).values == std::vector<double>{1.0, 16.0});
}

TEST_CASE("lp_norm_on handles subsets, quasi orders, and sup") {
    MeasureSpace sp = make_space({1.0, 2.0, 1.0});
    std::vector<double> f = {3.0, -1.0, 2.0};

    // full-set order 2: (9*1 + 1*2 + 4*1)^(1/2)
    IndexSet full = full_index_set(sp);
    CHECK(lp_norm_on(sp, full, f, ev(2.0)) == Catch::Approx(std::sqrt(15.0)));
    // subset {0,2} order 1
    CHECK(lp_norm_on(sp, {0, 2}, f, ev(1.0)) == Catch::Approx(5.0));
    // quasi order 1/2: (sqrt(3) + sqrt(1)*2 + sqrt(2))^2
    const double q = std::sqrt(3.0) + 2.0 + std::sqrt(2.0);
    CHECK(lp_norm_on(sp, full, f, ev(0.5)) == Catch::Approx(q * q));
    // sup norm ignores masses
    CHECK(lp_norm_on(sp, full, f, Exponent::inf()) == Catch::Approx(3.0));
}

TEST_CASE("weighted_norm multiplies by the weight") {
    MeasureSpace sp = make_space({1.0, 1.0});
    Weight w = make_weight({2.0, 3.0});
    std::vector<double> f = {1.0, -1.0};
    CHECK(weighted_norm(sp, f, w, ev(2.0)) == Catch::Approx(std::sqrt(13.0)));
    CHECK(weighted_norm(sp, f, w, Exponent::inf()) == Catch::Approx(3.0));
}

TEST_CASE("two-point characteristic oracle") {
    MeasureSpace sp = make_space({1.0, 1.0});
    SetBasis b{sp, {{0}, {1}, {0, 1}}};
    Weight w = make_weight({1.0, 2.0});

    // one weight at (1,1): singletons give w(x)/w(x) = 1, the full set
    // gives (3/2) * (3/4) = 9/8
    CharValue c = characteristic(b, w, w, ev(1.0), ev(1.0));
    CHECK(c.value == Catch::Approx(9.0 / 8.0));
    CHECK(c.argmax_set == 2);

    // two weights at (1, inf): full set mean(w) * sup(1/v)
    Weight v = make_weight({4.0, 1.0});
    CharValue c2 = characteristic(b, w, v, ev(1.0), Exponent::inf());
    CHECK(c2.value == Catch::Approx(2.0));  // attained on {1}: 2 * 1
    CHECK(c2.argmax_set == 1);
}

TEST_CASE("characteristic_p wraps the dual couple and rejects p < 1") {
    SetBasis b = make_dyadic_space(3);
    CounterRng rng(5);
    Weight w = sample_weight(b.space, rng);
    CHECK(characteristic_p(b, w, ev(2.0)).value ==
          Catch::Approx(characteristic(b, w, w, ev(2.0), ev(2.0)).value));
    CHECK_THROWS_AS(characteristic_p(b, w, ev(0.5)), std::invalid_argument);
}

TEST_CASE("reverse_holder on a single block") {
    MeasureSpace sp = make_space({1.0, 1.0});
    SetBasis whole{sp, {{0, 1}}};
    Weight w = make_weight({1.0, 2.0});
    // order 1: mean(w) * mean(w) = (3/2)^2
    CHECK(reverse_holder(whole, w, ev(1.0)).value == Catch::Approx(2.25));
}

TEST_CASE("characteristic symmetry and rescaling hold on random data") {
    SetBasis b = make_dyadic_space(3);
    for (int i = 0; i < 20; ++i) {
        CounterRng rng(77, static_cast<std::uint64_t>(i));
        CounterRng wr = rng.stream(1), vr = rng.stream(2);
        Weight w = sample_weight(b.space, wr);
        Weight v = sample_weight(b.space, vr);
        const double c = characteristic(b, w, v, ev(2.0), ev(3.0)).value;
        const double sym = characteristic(b, reciprocal(v), reciprocal(w), ev(3.0), ev(2.0)).value;
        REQUIRE(rel_close(c, sym, 1e-12));
        const double half = characteristic(b, pow(w, 0.5), pow(v, 0.5), ev(4.0), ev(6.0)).value;
        REQUIRE(rel_close(half, std::sqrt(c), 1e-10));
    }
}

TEST_CASE("samplers are deterministic, positive, and nonzero") {
    MeasureSpace sp = make_space(std::vector<double>(16, 1.0));
    CounterRng a(11), b(11);
    Weight wa = sample_weight(sp, a);
    Weight wb = sample_weight(sp, b);
    CHECK(wa.values == wb.values);
    for (double x : wa.values) {
        REQUIRE(x > 0);
        REQUIRE(std::isfinite(x));
    }

    CounterRng fr(12);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> f = sample_function(sp, fr);
        bool nonzero = false;
        for (double x : f) nonzero = nonzero || x != 0.0;
        REQUIRE(nonzero);
    }
}
