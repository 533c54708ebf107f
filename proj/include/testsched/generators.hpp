#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "testsched/adversary.hpp"
#include "testsched/core.hpp"

namespace testsched {

namespace detail {

// Uniform doubles in [0, 1) from the standardized mt19937_64 stream, so
// generated instances are identical across platforms.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
    double next() { return (engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace detail

struct GeneratorOptions {
    int jobs = 8;
    double test_max = 4.0;    // random test times in [0, test_max]
    double upper_max = 8.0;   // upper bounds in [0, upper_max]
    double big_upper = 1e6;   // hidden upper bound of the adversarial families
    std::uint64_t seed = 0;
};

// Independent uniform draws: t in [0, test_max], u in [0, upper_max],
// p in [0, u].
inline Instance random_uniform_instance(int machines, const GeneratorOptions& opt) {
    if (machines < 1) throw std::invalid_argument("generator needs at least one machine");
    detail::SeededRng rng(opt.seed);
    Instance inst;
    inst.machines = machines;
    for (int i = 0; i < opt.jobs; ++i) {
        const double t = opt.test_max * rng.next();
        const double u = opt.upper_max * rng.next();
        inst.jobs.push_back({i, t, u, u * rng.next()});
    }
    return inst;
}

// Heavy-tailed upper bounds (Pareto with shape 1.5, clipped at upper_max);
// test times and processing times as in the uniform generator.
inline Instance random_pareto_instance(int machines, const GeneratorOptions& opt) {
    if (machines < 1) throw std::invalid_argument("generator needs at least one machine");
    detail::SeededRng rng(opt.seed);
    Instance inst;
    inst.machines = machines;
    for (int i = 0; i < opt.jobs; ++i) {
        const double t = opt.test_max * rng.next();
        const double tail = std::pow(1.0 - rng.next(), -1.0 / 1.5) - 1.0;
        const double u = std::min(opt.upper_max, tail);
        inst.jobs.push_back({i, t, u, u * rng.next()});
    }
    return inst;
}

// Uniform-testing instances: every test time is exactly 1.
inline Instance uniform_tests_instance(int machines, const GeneratorOptions& opt) {
    if (machines < 1) throw std::invalid_argument("generator needs at least one machine");
    detail::SeededRng rng(opt.seed);
    Instance inst;
    inst.machines = machines;
    for (int i = 0; i < opt.jobs; ++i) {
        const double u = opt.upper_max * rng.next();
        inst.jobs.push_back({i, 1.0, u, u * rng.next()});
    }
    return inst;
}

inline const std::vector<std::string>& generator_names() {
    static const std::vector<std::string> names = {
        "random_uniform", "random_pareto",   "uniform_tests",   "crowded_machine",
        "late_test",      "greedy_tightness", "fully_online_lb2"};
    return names;
}

inline Instance generate_instance(const std::string& generator, int machines,
                                  const GeneratorOptions& opt) {
    if (generator == "random_uniform") return random_uniform_instance(machines, opt);
    if (generator == "random_pareto") return random_pareto_instance(machines, opt);
    if (generator == "uniform_tests") return uniform_tests_instance(machines, opt);
    if (generator == "crowded_machine") return crowded_machine_family(machines, opt.big_upper);
    if (generator == "late_test") return late_test_family(machines, opt.big_upper);
    if (generator == "greedy_tightness") return greedy_tightness_family(machines);
    if (generator == "fully_online_lb2") return fully_online_lb2_family(machines);
    throw std::invalid_argument("unknown generator: " + generator);
}

}  // namespace testsched
