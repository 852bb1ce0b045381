#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <hyperarr/polynomial.hpp>

using namespace hyperarr;

namespace {

CharPoly from_roots(const std::vector<long>& roots) {
    CharPoly p = CharPoly::constant(Int(1));
    for (long r : roots) p = p * CharPoly::linear_root(Int(r));
    return p;
}

} // namespace

TEST_CASE("polynomial products", "[poly]") {
    const CharPoly t1 = CharPoly::linear_root(Int(1));
    const CharPoly t2 = CharPoly::linear_root(Int(2));
    CHECK(t1 * t2 == CharPoly({Int(2), Int(-3), Int(1)}));
    const CharPoly p = from_roots({1, 4, 4});
    CHECK(p * CharPoly::constant(Int(1)) == p);
    CHECK(from_roots({1, 1, 1}) == CharPoly({Int(-1), Int(3), Int(-3), Int(1)}));

    std::mt19937 rng(42);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Int> ca(1 + rng() % 5), cb(1 + rng() % 5);
        for (Int& c : ca) c = coeff(rng);
        for (Int& c : cb) c = coeff(rng);
        CharPoly a(std::move(ca)), b(std::move(cb));
        if (!a.is_zero() && !b.is_zero()) CHECK((a * b).degree() == a.degree() + b.degree());
    }
}

TEST_CASE("divisibility", "[poly]") {
    // chi of the A^1_2(3) restriction vs chi of A(G(3,3,3))
    CHECK_FALSE(poly_divides(from_roots({1, 3}), from_roots({1, 4, 4})));
    CHECK(poly_divides(from_roots({1}), from_roots({1, 2})));
    const CharPoly p = from_roots({1, 4});
    CHECK(poly_divides(p, p));
    CHECK(poly_divides(p, CharPoly::zero()));
    CHECK_THROWS_AS(poly_divides(CharPoly::zero(), p), usage_error);

    // remainder-free but non-integral quotient: 2t does not divide t^2 in Z[t]
    CHECK_FALSE(poly_divides(CharPoly({Int(0), Int(2)}), CharPoly::power(2)));

    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<long> roots(1 + rng() % 3);
        for (long& r : roots) r = rng() % 5;
        CharPoly p2 = from_roots(roots); // monic
        std::vector<Int> cs(1 + rng() % 4);
        for (Int& c : cs) c = coeff(rng);
        CharPoly s(std::move(cs));
        CHECK(poly_divides(p2, p2 * s));
        if (!s.is_zero()) CHECK(exact_quotient(p2 * s, p2) == s);
    }

    CHECK_THROWS_AS(exact_quotient(from_roots({1, 2}), from_roots({3})), usage_error);
}

TEST_CASE("integer root splitting", "[poly]") {
    const auto braid3 = integer_roots_split(CharPoly({Int(0), Int(2), Int(-3), Int(1)}));
    REQUIRE(braid3.has_value());
    CHECK(*braid3 == std::vector<long>{0, 1, 2});

    const auto g333 = integer_roots_split(from_roots({4, 1, 4}));
    REQUIRE(g333.has_value());
    CHECK(*g333 == std::vector<long>{1, 4, 4}); // sorted, with multiplicity

    CHECK_FALSE(integer_roots_split(CharPoly({Int(1), Int(0), Int(1)})).has_value()); // t^2 + 1
    CHECK_FALSE(integer_roots_split(CharPoly({Int(-1), Int(-1), Int(1)})).has_value()); // golden ratio
    CHECK_FALSE(integer_roots_split(CharPoly({Int(-1), Int(0), Int(1)})).has_value()); // root -1
    CHECK_THROWS_AS(integer_roots_split(CharPoly({Int(1), Int(2)})), usage_error); // not monic

    // constants: the empty product splits with no roots
    const auto one = integer_roots_split(CharPoly::constant(Int(1)));
    REQUIRE(one.has_value());
    CHECK(one->empty());

    // re-expanding the factors reproduces the polynomial
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<long> roots(1 + rng() % 4);
        for (long& r : roots) r = rng() % 9;
        std::sort(roots.begin(), roots.end());
        const auto got = integer_roots_split(from_roots(roots));
        REQUIRE(got.has_value());
        CHECK(*got == roots);
        CHECK(from_roots(*got) == from_roots(roots));
    }
}

TEST_CASE("evaluation", "[poly]") {
    CHECK(evaluate(CharPoly({Int(0), Int(2), Int(-3), Int(1)}), Int(1)) == 0); // chi(braid 3) at 1
    CHECK(evaluate(CharPoly::zero(), Int(17)) == 0);
    CHECK(evaluate(from_roots({1, 1, 1}), Int(3)) == 8);
    CHECK(evaluate(CharPoly({Int(5)}), Int(1000)) == 5);
}

TEST_CASE("display form", "[poly]") {
    CHECK(poly_display(CharPoly({Int(0), Int(2), Int(-3), Int(1)})) == "t^3 - 3t^2 + 2t");
    CHECK(poly_display(CharPoly::zero()) == "0");
    CHECK(poly_display(CharPoly::constant(Int(-7))) == "-7");
    CHECK(poly_display(CharPoly::power(1)) == "t");
    CHECK(poly_display(from_roots({1})) == "t - 1");
    CHECK(poly_display(CharPoly({Int(1), Int(1)})) == "t + 1");
    CHECK(poly_display(CharPoly({Int(-16), Int(24), Int(-9), Int(1)})) == "t^3 - 9t^2 + 24t - 16");
}

TEST_CASE("zero polynomial conventions", "[poly]") {
    CharPoly z;
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    CHECK_FALSE(z.is_monic());
    CHECK(CharPoly({Int(0), Int(0)}) == z); // trim on construction
    CHECK(from_roots({2}) - from_roots({2}) == z);
}
