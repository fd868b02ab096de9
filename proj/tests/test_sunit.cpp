#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "shafbound/sunit.hpp"

using namespace shafbound;

namespace {

Rat q(long n, long d = 1) { return make_rat(Int(n), Int(d)); }

std::set<Rat> as_set(const std::vector<Rat>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("prime set validation and parsing") {
    CHECK_NOTHROW(PrimeSet({2, 3, 5}));
    CHECK_THROWS_AS(PrimeSet({4}), InvalidInput);
    CHECK_THROWS_AS(PrimeSet({3, 2}), InvalidInput);
    CHECK_THROWS_AS(PrimeSet({2, 2}), InvalidInput);
    CHECK(PrimeSet::parse("2,3").primes() == std::vector<std::uint64_t>{2, 3});
    CHECK(PrimeSet::parse("").empty());
    CHECK_THROWS_AS(PrimeSet::parse("2,,3"), InvalidInput);
    CHECK_THROWS_AS(PrimeSet::parse("2,x"), InvalidInput);
    CHECK(PrimeSet({2, 3}).norm() == 6);
    CHECK(PrimeSet().norm() == 1);
}

TEST_CASE("height") {
    CHECK(height(q(1)).H == 1);
    CHECK(height(q(-1)).H == 1);
    CHECK(height(q(9, 8)).H == 9);
    CHECK(height(q(-3, 4)).H == 4);
    CHECK_THROWS_AS(height(q(0)), InvalidInput);
    CHECK(height(q(9, 8)).ln() == doctest::Approx(std::log(9.0)));
}

TEST_CASE("is_s_unit factors over S") {
    PrimeSet s23({2, 3});
    auto u = is_s_unit(q(9, 8), s23);
    REQUIRE(u.has_value());
    CHECK(u->sign == 1);
    CHECK(u->exponents == std::vector<std::int64_t>{-3, 2});
    CHECK(u->value(s23) == q(9, 8));

    CHECK(!is_s_unit(q(5), s23).has_value());

    auto m1 = is_s_unit(q(-1), PrimeSet());
    REQUIRE(m1.has_value());
    CHECK(m1->sign == -1);
    CHECK(m1->exponents.empty());

    CHECK_THROWS_AS(is_s_unit(q(0), s23), InvalidInput);
}

TEST_CASE("smooth number generation matches trial division") {
    PrimeSet s23({2, 3});
    std::vector<Int> got = smooth_numbers_up_to(s23, Int(100));
    std::vector<Int> expect;
    for (long n = 1; n <= 100; ++n) {
        if (is_smooth(Int(n), s23)) expect.push_back(Int(n));
    }
    CHECK(got == expect);
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(smooth_numbers_up_to(PrimeSet(), Int(50)) == std::vector<Int>{Int(1)});
}

TEST_CASE("solver: S = {2}, cap 100") {
    std::vector<Rat> sols = solve_unit_equation(PrimeSet({2}), HeightValue(Int(100)));
    CHECK(as_set(sols) == std::set<Rat>{q(-1), q(1, 2), q(2)});
    CHECK(as_set(sols) == oracle::brute_force_unit_equation(PrimeSet({2}), Int(100)));
}

TEST_CASE("solver: empty S") {
    CHECK(solve_unit_equation(PrimeSet(), HeightValue(Int(100))).empty());
    CHECK(oracle::brute_force_unit_equation(PrimeSet(), Int(100)).empty());
}

TEST_CASE("solver: S = {2,3}, cap 100 has the 21 classical solutions") {
    PrimeSet s23({2, 3});
    std::vector<Rat> sols = solve_unit_equation(s23, HeightValue(Int(100)));
    CHECK(sols.size() == 21);
    CHECK(as_set(sols) == oracle::brute_force_unit_equation(s23, Int(100)));

    // The set is the union of the orbits of 2, 3, 4 and 9.
    std::set<Rat> expected;
    for (long rep : {2, 3, 4, 9}) {
        for (const Rat& a : symmetry_orbit(q(rep))) expected.insert(a);
    }
    CHECK(as_set(sols) == expected);

    // Canonical order: by H, then numerator, then denominator.
    CHECK(std::is_sorted(sols.begin(), sols.end(), solution_less));
    CHECK(sols.front() == q(-1));
}

TEST_CASE("solver soundness and symmetry properties") {
    PrimeSet s23({2, 3});
    const Int cap(1000);
    std::vector<Rat> sols = solve_unit_equation(s23, HeightValue(cap));
    std::set<Rat> sol_set = as_set(sols);
    for (const Rat& a : sols) {
        CHECK(is_s_unit(a, s23).has_value());
        CHECK(is_s_unit(Rat(1) - a, s23).has_value());
        // Inversion preserves height, so 1/a is always present.
        CHECK(sol_set.count(Rat(1) / a) == 1);
        // 1 - a is present whenever it fits under the cap.
        if (height(Rat(1) - a).H <= cap) CHECK(sol_set.count(Rat(1) - a) == 1);
    }

    // The solution set is a disjoint union of orbit intersections.
    std::set<Rat> covered;
    for (const Rat& a : sols) {
        for (const Rat& b : symmetry_orbit(a)) {
            if (sol_set.count(b)) covered.insert(b);
        }
    }
    CHECK(covered == sol_set);
}

TEST_CASE("solver agrees with the oracle on several prime sets") {
    for (const auto& primes : {std::vector<std::uint64_t>{2}, {3}, {2, 3}, {2, 5}, {3, 5}, {2, 3, 5}}) {
        PrimeSet s(primes);
        const Int cap(200);
        CHECK(as_set(solve_unit_equation(s, HeightValue(cap))) ==
              oracle::brute_force_unit_equation(s, cap));
    }
}

TEST_CASE("solver is schedule independent") {
    PrimeSet s235({2, 3, 5});
    auto one = solve_unit_equation(s235, HeightValue(Int(500)), 1);
    auto four = solve_unit_equation(s235, HeightValue(Int(500)), 4);
    CHECK(one == four);
}

TEST_CASE("symmetry orbit") {
    CHECK(symmetry_orbit(q(2)) == std::set<Rat>{q(2), q(-1), q(1, 2)});
    CHECK(symmetry_orbit(q(1, 2)) == symmetry_orbit(q(2)));
    CHECK(symmetry_orbit(q(3)) == std::set<Rat>{q(3), q(-2), q(1, 3), q(2, 3), q(3, 2), q(-1, 2)});
    CHECK_THROWS_AS(symmetry_orbit(q(0)), InvalidInput);
    CHECK_THROWS_AS(symmetry_orbit(q(1)), InvalidInput);
}
