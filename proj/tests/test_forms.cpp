#include <doctest.h>

#include "oracles.hpp"
#include "shafbound/ternary_form.hpp"

using namespace shafbound;

namespace {

TernaryForm fermat4() {
    TernaryForm f(4);
    f.set_coeff(4, 0, 0, Rat(1));
    f.set_coeff(0, 4, 0, Rat(1));
    f.set_coeff(0, 0, 4, Rat(1));
    return f;
}

TernaryForm random_form(oracle::Rng& rng, int degree, long h) {
    VecQ v(TernaryForm::term_count(degree));
    for (Eigen::Index t = 0; t < v.size(); ++t) v[t] = Rat(Int(rng.in(-h, h)));
    return TernaryForm(degree, std::move(v));
}

}  // namespace

TEST_CASE("monomial indexing is a bijection in the documented order") {
    // Degree 2: x^2, xy, xz, y^2, yz, z^2.
    CHECK(TernaryForm::index_of(2, 2, 0) == 0);
    CHECK(TernaryForm::index_of(2, 1, 1) == 1);
    CHECK(TernaryForm::index_of(2, 1, 0) == 2);
    CHECK(TernaryForm::index_of(2, 0, 2) == 3);
    CHECK(TernaryForm::index_of(2, 0, 1) == 4);
    CHECK(TernaryForm::index_of(2, 0, 0) == 5);
    for (int d = 0; d <= 8; ++d) {
        CHECK(TernaryForm::term_count(d) == (d + 1) * (d + 2) / 2);
        for (int t = 0; t < TernaryForm::term_count(d); ++t) {
            const auto e = TernaryForm::exponents_at(d, t);
            CHECK(e[0] + e[1] + e[2] == d);
            CHECK(TernaryForm::index_of(d, e[0], e[1]) == t);
            if (t > 0) {
                // Strictly descending lexicographic order.
                const auto prev = TernaryForm::exponents_at(d, t - 1);
                CHECK((prev[0] > e[0] || (prev[0] == e[0] && prev[1] > e[1])));
            }
        }
    }
}

TEST_CASE("evaluation") {
    CHECK(evaluate(fermat4(), ProjPointQ(1, 1, 1)) == 3);
    CHECK(evaluate(fermat4(), ProjPointQ(1, 2, 0)) == 17);
}

TEST_CASE("derivative examples") {
    // d/dx (x^3 y + y^3 z + z^3 x) = 3 x^2 y + z^3
    TernaryForm klein(4);
    klein.set_coeff(3, 1, 0, Rat(1));
    klein.set_coeff(0, 3, 1, Rat(1));
    klein.set_coeff(1, 0, 3, Rat(1));
    TernaryForm dx = derivative(klein, 0);
    TernaryForm expect(3);
    expect.set_coeff(2, 1, 0, Rat(3));
    expect.set_coeff(0, 0, 3, Rat(1));
    CHECK(dx == expect);
}

TEST_CASE("euler relation on random forms") {
    oracle::Rng rng(4242);
    for (int d = 1; d <= 6; ++d) {
        for (int trial = 0; trial < 4; ++trial) {
            TernaryForm f = random_form(rng, d, 20);
            // x f_x + y f_y + z f_z = d f
            TernaryForm lhs =
                add(add(multiply(monomial_form(1, 1, 0), derivative(f, 0)),
                        multiply(monomial_form(1, 0, 1), derivative(f, 1))),
                    multiply(monomial_form(1, 0, 0, Rat(1)), derivative(f, 2)));
            CHECK(lhs == scale(Rat(d), f));
        }
    }
}

TEST_CASE("multiply and compose behave like polynomial algebra") {
    oracle::Rng rng(1111);
    TernaryForm f = random_form(rng, 2, 9);
    TernaryForm g = random_form(rng, 3, 9);
    TernaryForm h = random_form(rng, 1, 9);

    CHECK(multiply(multiply(f, g), h) == multiply(f, multiply(g, h)));

    for (int trial = 0; trial < 8; ++trial) {
        ProjPointQ p(Int(rng.in(-9, 9)), Int(rng.in(-9, 9)), Int(rng.in(1, 9)));
        CHECK(evaluate(multiply(f, g), p) == evaluate(f, p) * evaluate(g, p));
    }

    // Composition: degree multiplies, and evaluation commutes with it.
    TernaryForm quartic = random_form(rng, 4, 5);
    std::array<TernaryForm, 3> cubics = {random_form(rng, 3, 5), random_form(rng, 3, 5),
                                         random_form(rng, 3, 5)};
    TernaryForm composed = compose(quartic, cubics);
    CHECK(composed.degree() == 12);
    CHECK(composed.coeffs().size() == 91);
    for (int trial = 0; trial < 5; ++trial) {
        const Rat x = Rat(Int(rng.in(-5, 5))), y = Rat(Int(rng.in(-5, 5))), z = Rat(Int(rng.in(-5, 5)));
        CHECK(evaluate(composed, x, y, z) ==
              evaluate(quartic, evaluate(cubics[0], x, y, z), evaluate(cubics[1], x, y, z),
                       evaluate(cubics[2], x, y, z)));
    }
}

TEST_CASE("compose rejects degree mismatches") {
    TernaryForm f(2);
    std::array<TernaryForm, 3> bad = {TernaryForm(1), TernaryForm(2), TernaryForm(1)};
    CHECK_THROWS_AS(compose(f, bad), InvalidInput);
    CHECK_THROWS_AS(add(TernaryForm(1), TernaryForm(2)), InvalidInput);
}

TEST_CASE("primitive integer form") {
    TernaryForm f(1);
    f.set_coeff(1, 0, 0, make_rat(Int(-2), Int(3)));
    f.set_coeff(0, 1, 0, make_rat(Int(4), Int(3)));
    auto [prim, content] = primitive_integer_form(f);
    CHECK(prim.coeff(1, 0, 0) == 1);
    CHECK(prim.coeff(0, 1, 0) == -2);
    CHECK(content == make_rat(Int(-2), Int(3)));
    CHECK(scale(content, prim) == f);

    auto [zp, zc] = primitive_integer_form(TernaryForm(3));
    CHECK(zp.is_zero());
    CHECK(zc == 0);
}
