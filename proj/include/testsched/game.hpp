#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "testsched/formulas.hpp"

namespace testsched {

// Parameters of the two-machine fully-online lower-bound game: test times and
// upper bounds of the second and third job. The first job is normalized so
// the algorithm spends the golden ratio on it while the optimum spends 1.
struct GameParams {
    double b = 0.0;  // test time of job 2
    double c = 0.0;  // upper bound of job 2
    double d = 0.0;  // test time of job 3
    double e = 0.0;  // upper bound of job 3

    bool valid() const { return b >= 0.0 && d >= 0.0 && b <= c && d <= e; }
};

// Ratio forced in each of the six algorithm behaviours: the algorithm stacks
// the first two jobs (testing job 2 or not), or it spreads them and then
// tests/skips jobs 2 and 3 in the four possible combinations. The adversary
// realizes the upper bound of every tested job.
inline std::array<double, 6> m2_game_expressions(const GameParams& params) {
    if (!params.valid())
        throw std::invalid_argument("game parameters need 0 <= b <= c and 0 <= d <= e");
    const double phi = golden_ratio;
    const auto [b, c, d, e] = params;
    return {
        (phi + b + c) / std::max(1.0, c),                      // stacked, job 2 tested
        (phi + c) / std::max(1.0, b),                          // stacked, job 2 untested
        (std::min(phi, b + c) + d + e) / std::max(1.0 + c, e), // spread, both tested
        (std::min(phi, b + c) + e) / std::max(1.0 + c, d),     // spread, only job 2 tested
        (std::min(phi, c) + d + e) / std::max(1.0 + b, e),     // spread, only job 3 tested
        (std::min(phi, c) + e) / std::max(1.0 + b, d),         // spread, none tested
    };
}

// Guaranteed ratio of the game: the adversary gets the minimum over the six
// behaviours, so these parameters prove a lower bound of this value.
inline double m2_game_value(const GameParams& params) {
    const auto values = m2_game_expressions(params);
    return *std::min_element(values.begin(), values.end());
}

struct GameOptimum {
    GameParams params;
    double value = 0.0;
    long evaluations = 0;
};

// Pattern search maximizing the game value: try +/- step on each coordinate,
// keep strict improvements, halve the step after a full round without one.
// The budget counts evaluations of the game value.
inline GameOptimum m2_game_optimize(GameParams start, long budget) {
    if (budget < 1) throw std::invalid_argument("optimizer budget must be at least 1");
    if (!start.valid())
        throw std::invalid_argument("game parameters need 0 <= b <= c and 0 <= d <= e");

    GameOptimum best{start, m2_game_value(start), 1};
    double step = 0.1;
    while (step >= 1e-6 && best.evaluations < budget) {
        bool improved = false;
        for (int coord = 0; coord < 4 && best.evaluations < budget; ++coord) {
            for (double direction : {1.0, -1.0}) {
                if (best.evaluations >= budget) break;
                GameParams candidate = best.params;
                double* field = coord == 0   ? &candidate.b
                                : coord == 1 ? &candidate.c
                                : coord == 2 ? &candidate.d
                                             : &candidate.e;
                *field += direction * step;
                if (!candidate.valid()) continue;
                const double value = m2_game_value(candidate);
                ++best.evaluations;
                if (value > best.value + 1e-12) {
                    best.params = candidate;
                    best.value = value;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

}  // namespace testsched
