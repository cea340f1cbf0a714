#include <catch2/catch_amalgamated.hpp>

#include "weightlab/space.hpp"

using namespace weightlab;

TEST_CASE("make_space validates masses") {
    MeasureSpace sp = make_space({1.0, 2.0, 0.5}, "demo");
    CHECK(sp.size() == 3);
    CHECK(sp.total_mass() == Catch::Approx(3.5));
    CHECK(sp.label == "demo");
    CHECK_THROWS_AS(make_space({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_space({1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_space({}), std::invalid_argument);
}

TEST_CASE("set_mass sums member masses") {
    MeasureSpace sp = make_space({1.0, 2.0, 4.0});
    CHECK(set_mass(sp, {0, 2}) == Catch::Approx(5.0));
    CHECK(set_mass(sp, {1}) == Catch::Approx(2.0));
}

TEST_CASE("dyadic basis has 2^(L+1)-1 sets") {
    // levels L: one full block, two halves, ..., 2^L singletons
    SetBasis b2 = make_dyadic_space(2);
    CHECK(b2.space.size() == 4);
    CHECK(b2.sets.size() == 7);
    SetBasis b4 = make_dyadic_space(4);
    CHECK(b4.space.size() == 16);
    CHECK(b4.sets.size() == 31);

    ValidationReport rep = validate_basis(b4);
    CHECK(rep.cover_ok);
    CHECK(rep.pair_ok);
    CHECK(rep.measures_ok);
    CHECK(rep.well_formed);
    CHECK(rep.ok());
}

TEST_CASE("validate_basis flags a broken family") {
    MeasureSpace sp = make_space({1, 1, 1});
    SetBasis missing{sp, {{0}, {1}}};  // point 2 uncovered, pair (0,1) uncovered
    ValidationReport rep = validate_basis(missing);
    CHECK_FALSE(rep.cover_ok);
    CHECK_FALSE(rep.ok());

    SetBasis nopair{sp, {{0}, {1}, {2}}};
    ValidationReport rep2 = validate_basis(nopair);
    CHECK(rep2.cover_ok);
    CHECK_FALSE(rep2.pair_ok);
}

TEST_CASE("cyclic space ships a doubling group basis") {
    auto [basis, gb] = make_cyclic_space(4);
    CHECK(basis.space.size() == 4);
    CHECK(validate_basis(basis).ok());
    // levels for n=4: {-1,0,1} then the whole group
    REQUIRE(gb.levels.size() == 2);
    CHECK(gb.levels[0] == IndexSet{0, 1, 3});
    // smallest symmetric level {-1,0,1} doubles into the full group: 4/3
    CHECK(gb.doubling_constant == Catch::Approx(4.0 / 3.0));

    auto [b64, gb64] = make_cyclic_space(64);
    CHECK(b64.space.size() == 64);
    CHECK(validate_basis(b64).ok());
    CHECK(gb64.doubling_constant <= 4.0);
}

TEST_CASE("product space multiplies masses and crosses sets") {
    SetBasis a = make_dyadic_space(1);  // 2 points, 3 sets
    SetBasis b = make_dyadic_space(2);  // 4 points, 7 sets
    SetBasis p = product_space(a, b);
    CHECK(p.space.size() == 8);
    CHECK(p.sets.size() == 21);
    CHECK(validate_basis(p).ok());
    CHECK(p.space.total_mass() ==
          Catch::Approx(a.space.total_mass() * b.space.total_mass()));
}
