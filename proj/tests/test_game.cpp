#include <doctest.h>

#include <algorithm>

#include "testsched/game.hpp"

using namespace testsched;

namespace {
const GameParams known_best{1.0, golden_ratio, golden_ratio * golden_ratio, 3.8675};
}

TEST_CASE("game value at the best known parameters") {
    const double value = m2_game_value(known_best);
    CHECK(value > 2.0943);
    CHECK(value < 2.0963);

    // the four spread cases balance near the optimum
    const auto values = m2_game_expressions(known_best);
    const double lo = *std::min_element(values.begin() + 2, values.end());
    const double hi = *std::max_element(values.begin() + 2, values.end());
    CHECK(hi - lo <= 2e-3);
}

TEST_CASE("game expressions at hand-evaluated points") {
    // all parameters zero: the spread cases collapse to 0 / 1
    const auto at_zero = m2_game_expressions({0, 0, 0, 0});
    CHECK(at_zero[0] == doctest::Approx(golden_ratio));
    CHECK(at_zero[1] == doctest::Approx(golden_ratio));
    for (int i = 2; i < 6; ++i) CHECK(at_zero[i] == doctest::Approx(0.0));
    CHECK(m2_game_value({0, 0, 0, 0}) == doctest::Approx(0.0));

    // all ones: frozen from direct evaluation of the six quotients
    const auto at_one = m2_game_expressions({1, 1, 1, 1});
    CHECK(at_one[0] == doctest::Approx(golden_ratio + 2.0));        // (phi+1+1)/1
    CHECK(at_one[1] == doctest::Approx(golden_ratio + 1.0));        // (phi+1)/1
    CHECK(at_one[2] == doctest::Approx((golden_ratio + 2.0) / 2.0));
    CHECK(at_one[3] == doctest::Approx((golden_ratio + 1.0) / 2.0));
    CHECK(at_one[4] == doctest::Approx((1.0 + 2.0) / 2.0));
    CHECK(at_one[5] == doctest::Approx(1.0));                       // (1+1)/2
    CHECK(m2_game_value({1, 1, 1, 1}) == doctest::Approx(1.0));

    CHECK_THROWS_AS(m2_game_value({2, 1, 0, 0}), std::invalid_argument);  // b > c
    CHECK_THROWS_AS(m2_game_value({0, 0, 2, 1}), std::invalid_argument);  // d > e
    CHECK_THROWS_AS(m2_game_value({-1, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("pattern search improves the start point beyond 2.095") {
    const GameParams start{1.0, golden_ratio, golden_ratio * golden_ratio, 3.8};
    CHECK(m2_game_value(start) < 2.095);

    const GameOptimum best = m2_game_optimize(start, 100000);
    CHECK(best.value >= 2.095);
    CHECK(best.value <= 2.096);
    CHECK(best.evaluations <= 100000);
    CHECK(best.params.valid());

    // starting at the best known point never regresses
    const GameOptimum from_optimum = m2_game_optimize(known_best, 20000);
    CHECK(from_optimum.value >= m2_game_value(known_best));
    CHECK(from_optimum.value >= 2.0953 - 1e-4);
}

TEST_CASE("a budget of one returns the start unchanged") {
    const GameOptimum result = m2_game_optimize(known_best, 1);
    CHECK(result.evaluations == 1);
    CHECK(result.params.b == doctest::Approx(known_best.b));
    CHECK(result.params.c == doctest::Approx(known_best.c));
    CHECK(result.params.d == doctest::Approx(known_best.d));
    CHECK(result.params.e == doctest::Approx(known_best.e));
    CHECK(result.value == doctest::Approx(m2_game_value(known_best)));
    CHECK_THROWS_AS(m2_game_optimize(known_best, 0), std::invalid_argument);
}
