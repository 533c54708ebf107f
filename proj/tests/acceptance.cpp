// Acceptance suite: one check per release criterion, one printed line each.
// Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "testsched/adversary.hpp"
#include "testsched/experiment.hpp"
#include "testsched/game.hpp"
#include "testsched/generators.hpp"
#include "testsched/schedulers.hpp"

using namespace testsched;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<void()> run;  // throws std::runtime_error on failure
};

void require(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& from) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

std::string run_cli(const std::string& args) {
    const std::string command = std::string(TESTSCHED_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    require(pipe != nullptr, "cannot spawn the CLI");
    std::string output;
    char buffer[512];
    while (std::fgets(buffer, sizeof(buffer), pipe)) output += buffer;
    pclose(pipe);
    return output;
}

// ---- criterion 1: the printed bounds table reproduces the reference values

void criterion_table_regression() {
    const auto start = std::chrono::steady_clock::now();
    const std::string output = run_cli("bounds --m 1,2,3,4,5,10,100");
    const double runtime = elapsed_seconds(start);

    const struct {
        const char* row;
        std::vector<double> expected;
    } want[] = {
        {"greedy", {1.6180, 2.4271, 2.6967, 2.8316, 2.9125, 3.0743, 3.2199}},
        {"sbs", {1.6180, 2.3806, 2.6235, 2.7439, 2.8158, 2.9591, 3.0874}},
        {"uniform_sbs", {1.6180, 2.3112, 2.5412, 2.6560, 2.7248, 2.8625, 2.9862}},
        {"lower_bound", {1.6180, 1.6180, 1.6667, 1.7500, 1.8000, 1.9000, 1.9900}},
    };
    std::istringstream lines(output);
    std::string line;
    int matched = 0;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::string label;
        fields >> label;
        for (const auto& row : want) {
            if (label != row.row) continue;
            for (double expected : row.expected) {
                double printed = -1.0;
                require(static_cast<bool>(fields >> printed),
                        std::string("missing value in row ") + row.row);
                require(std::abs(printed - expected) < 5e-5,
                        std::string("row ") + row.row + ": printed " + std::to_string(printed) +
                            ", reference " + std::to_string(expected));
            }
            ++matched;
        }
    }
    require(matched == 4, "expected the four reference table rows in the output");
    require(runtime < 1.0, "bounds table took " + std::to_string(runtime) + " s (limit 1 s)");
}

// ---- criterion 2: asymptotic values of the closed forms

void criterion_asymptotics() {
    require(std::abs(sbs_ratio(1000000) - 3.1016) < 1e-3, "sbs ratio at m = 10^6");
    require(std::abs(uniform_sbs_ratio(1000000) - 3.0) < 1e-3, "uniform sbs ratio at m = 10^6");
    require(std::abs(sbs_threshold(1000000) - 2.0678) < 1e-3, "sbs threshold at m = 10^6");
}

// ---- criterion 3: greedy meets its bound exactly on the tightness family

void criterion_greedy_tightness() {
    for (int m = 2; m <= 6; ++m) {
        const Instance inst = greedy_tightness_family(m);
        FixedReveal reveal;
        const auto [schedule, trace] = greedy(inst, reveal);
        std::vector<double> rho;
        for (const Job& j : inst.jobs)
            rho.push_back(optimal_running_time(j.test_time, *j.processing, j.upper_bound));
        const double opt = opt_exact(rho, m, 40);
        const double ratio = schedule.makespan() / opt;
        require(std::abs(ratio - greedy_ratio(m)) <= 1e-9,
                "m = " + std::to_string(m) + ": ratio " + std::to_string(ratio) +
                    " differs from the greedy bound");
    }
}

// ---- criterion 4: adversarial families force their lower bounds

void criterion_adversary_floors() {
    for (int m = 2; m <= 6; ++m) {
        const Instance inst = crowded_machine_family(m, 1e6);
        for (SchedulerKind kind :
             {SchedulerKind::Greedy, SchedulerKind::Sbs, SchedulerKind::UniformSbs}) {
            const RunOutcome outcome =
                evaluate_scheduler(kind, inst, Setting::NonPreemptive, 40);
            require(outcome.violations.empty(), "crowded-machine run must validate");
            const double ratio = outcome.alg / outcome.opt;
            require(ratio >= 2.0 - 1.0 / m - 1e-5,
                    std::string(to_string(kind)) + " m = " + std::to_string(m) +
                        ": ratio " + std::to_string(ratio) + " below 2 - 1/m");
        }
        const Instance late = late_test_family(m, 1e6);
        const RunOutcome outcome =
            evaluate_scheduler(SchedulerKind::TwoPhases, late, Setting::TestPreemptive, 40);
        require(outcome.violations.empty(), "late-test run must validate");
        const double ratio = outcome.alg / outcome.opt;
        const double floor = 2.0 - 2.0 / m + 1.0 / (double(m) * m);
        require(ratio >= floor - 1e-5, "two_phases m = " + std::to_string(m) + ": ratio " +
                                           std::to_string(ratio) + " below the preemptive floor");
    }
}

// ---- criterion 5: bounds hold on ten thousand random instances

void criterion_random_bound_respect() {
    const auto start = std::chrono::steady_clock::now();
    testsupport::Rng rng(20240131);
    long evaluated = 0;
    long lambda_runs = 0;

    const auto check = [&](const char* name, double alg, double opt, double bound) {
        require(opt > 0.0, std::string(name) + ": offline optimum is zero");
        require(alg / opt <= bound + 1e-9,
                std::string(name) + ": ratio " + std::to_string(alg / opt) + " exceeds " +
                    std::to_string(bound));
    };

    for (int round = 0; round < 3500; ++round) {
        for (int generator = 0; generator < 3; ++generator) {
            const int m = rng.next_int(1, 4);
            GeneratorOptions opt;
            opt.jobs = rng.next_int(1, 12);
            opt.seed = 900000 + round * 3 + generator;
            if (generator == 2) opt.upper_max = round % 2 == 0 ? 1.6 : 6.0;
            const Instance inst = generator == 0   ? random_uniform_instance(m, opt)
                                  : generator == 1 ? random_pareto_instance(m, opt)
                                                   : uniform_tests_instance(m, opt);

            std::vector<double> rho;
            for (const Job& j : inst.jobs)
                rho.push_back(optimal_running_time(j.test_time, *j.processing, j.upper_bound));
            const double opt_np = opt_exact(rho, m);
            if (!(opt_np > 0.0)) continue;  // degenerate all-zero draw
            const double opt_pre = mcnaughton(rho, m);
            ++evaluated;

            FixedReveal r1;
            check("greedy", greedy(inst, r1).schedule.makespan(), opt_np, greedy_ratio(m));
            FixedReveal r2;
            check("sbs", sbs(inst, r2).schedule.makespan(), opt_np, sbs_ratio(m));

            FixedReveal r3;
            const OfflineSolverFn exact = [](const std::vector<double>& lengths, int mm) {
                return exact_offline_plan(lengths, mm, default_oracle_cap);
            };
            check("two_phases", two_phases(inst, r3, exact).schedule.makespan(), opt_np, 2.0);
            FixedReveal r4;
            const OfflineSolverFn wrap = [](const std::vector<double>& lengths, int mm) {
                return mcnaughton_offline_plan(lengths, mm);
            };
            check("two_phases preemptive", two_phases(inst, r4, wrap).schedule.makespan(),
                  opt_pre, 2.0);

            if (is_uniform(inst)) {
                FixedReveal r5;
                check("uniform_sbs", uniform_sbs(inst, r5).schedule.makespan(), opt_np,
                      uniform_sbs_ratio(m));
                int uncertain = 0;
                for (const Job& j : inst.jobs) uncertain += j.upper_bound > 1.0;
                if (uncertain <= m) {
                    FixedReveal r6;
                    check("uniform_small_lambda",
                          uniform_small_lambda(inst, r6).schedule.makespan(), opt_np,
                          uniform_lambda_ratio(m));
                    ++lambda_runs;
                }
            }
        }
    }
    require(evaluated >= 10000, "fewer than ten thousand instances evaluated");
    require(lambda_runs >= 500, "too few eligible pin-then-LPT instances");
    const double runtime = elapsed_seconds(start);
    require(runtime < 300.0,
            "property suite took " + std::to_string(runtime) + " s (limit 300 s)");
}

// ---- criterion 6: the exact solver equals exhaustive enumeration

void criterion_oracle_equivalence() {
    testsupport::Rng rng(55555);
    for (int round = 0; round < 1000; ++round) {
        const int n = rng.next_int(0, 8);
        const int m = rng.next_int(1, 3);
        std::vector<double> lengths;
        for (int i = 0; i < n; ++i)
            lengths.push_back(rng.next() < 0.4 ? rng.next_int(0, 5) : rng.next(0.0, 9.0));
        const double exact = opt_exact(lengths, m);
        const double brute = testsupport::brute_force_opt(lengths, m);
        require(std::abs(exact - brute) <= 1e-9,
                "solver " + std::to_string(exact) + " vs enumeration " + std::to_string(brute));
        require(lpt(lengths, m) <= (4.0 / 3.0 - 1.0 / (3.0 * m)) * exact + 1e-9,
                "LPT above its approximation guarantee");
    }
}

// ---- criterion 7: the threshold-testing guarantees over random jobs

void criterion_threshold_rule() {
    testsupport::Rng rng(808017);
    for (int i = 0; i < 100000; ++i) {
        const double alpha = rng.next(1.0, 6.0);
        const double t = rng.next(0.0, 10.0);
        const double u = rng.next(0.0, 10.0);
        const double p = rng.next(0.0, u);
        const double rho = optimal_running_time(t, p, u);
        if (threshold_decision(alpha, t, u) == Mode::Tested)
            require(t + p <= (1.0 + 1.0 / alpha) * rho + 1e-9, "tested bound violated");
        else
            require(u <= alpha * rho + 1e-9, "untested bound violated");
    }
}

// ---- criterion 8: the two proof sides of each threshold agree

void criterion_threshold_balance() {
    testsupport::Rng rng(240808);
    for (int i = 0; i < 1000; ++i) {
        const int m = i < 200 ? i + 1 : rng.next_int(1, 10000);
        const double t = sbs_threshold(m);
        const double left = golden_ratio + (1.0 + 1.0 / t) * (1.0 - 1.0 / m);
        const double right = t * (1.5 - 0.5 / m);
        require(std::abs(left - right) <= 1e-9, "general threshold out of balance");

        const double t1 = uniform_sbs_threshold(m);
        const double left1 = (1.0 + 1.0 / t1) * (2.0 - 1.0 / m);
        const double right1 = t1 * (1.5 - 0.5 / m);
        require(std::abs(left1 - right1) <= 1e-9, "uniform threshold out of balance");
    }
}

// ---- criterion 9: the two-machine game value and its optimizer

void criterion_game() {
    const auto start = std::chrono::steady_clock::now();
    const double phi = golden_ratio;
    const double at_known_best = m2_game_value({1.0, phi, phi * phi, 3.8675});
    require(at_known_best >= 2.0943 && at_known_best <= 2.0963,
            "game value " + std::to_string(at_known_best) + " outside [2.0943, 2.0963]");

    const GameOptimum best = m2_game_optimize({1.0, phi, phi * phi, 3.8}, 100000);
    require(best.value >= 2.095,
            "optimizer reached only " + std::to_string(best.value) + " (< 2.095)");
    const double runtime = elapsed_seconds(start);
    require(runtime < 10.0, "game criterion took " + std::to_string(runtime) + " s");
}

// ---- criterion 10: validator soundness, both directions

void criterion_validator() {
    // every scheduler's output passes the rules of its declared setting
    testsupport::Rng rng(606060);
    for (int round = 0; round < 80; ++round) {
        const int m = rng.next_int(1, 4);
        GeneratorOptions opt;
        opt.jobs = rng.next_int(1, 10);
        opt.seed = 777000 + round;
        opt.upper_max = 3.0;
        const Instance inst = uniform_tests_instance(m, opt);
        for (SchedulerKind kind : {SchedulerKind::Greedy, SchedulerKind::Sbs,
                                   SchedulerKind::UniformSbs, SchedulerKind::TwoPhases,
                                   SchedulerKind::UniformSmallLambda}) {
            if (kind == SchedulerKind::UniformSmallLambda) {
                int uncertain = 0;
                for (const Job& j : inst.jobs) uncertain += j.upper_bound > 1.0;
                if (uncertain > m) continue;
            }
            const Setting setting = kind == SchedulerKind::TwoPhases
                                        ? (round % 2 == 0 ? Setting::TestPreemptive
                                                          : Setting::Preemptive)
                                        : Setting::NonPreemptive;
            const RunOutcome outcome = evaluate_scheduler(kind, inst, setting);
            if (!outcome.violations.empty())
                throw std::runtime_error(std::string(to_string(kind)) +
                                         " emitted an invalid schedule: " +
                                         to_string(outcome.violations.front()));
        }
    }
    for (int m = 2; m <= 4; ++m) {
        const RunOutcome adversarial = evaluate_scheduler(
            SchedulerKind::Sbs, crowded_machine_family(m), Setting::NonPreemptive, 40);
        require(adversarial.violations.empty(), "adversarial run emitted an invalid schedule");
    }

    // hand-crafted broken schedules are rejected with the specific violation
    Instance inst;
    inst.machines = 2;
    inst.jobs.push_back({0, 1.0, 4.0, 2.0});
    inst.jobs.push_back({1, 2.0, 3.0, 1.0});
    const auto expect = [&](const Schedule& schedule, Setting setting, ViolationCode code,
                            const char* what) {
        for (const Violation& v : validate_schedule(schedule, inst, setting))
            if (v.code == code) return;
        throw std::runtime_error(std::string("validator missed: ") + what);
    };

    Schedule overlap;
    overlap.machines.resize(2);
    overlap.machines[0].push_back({0, Mode::Tested, {{0.0, 1.0, SegmentKind::Test},
                                                     {1.0, 3.0, SegmentKind::Exec}}});
    overlap.machines[0].push_back({1, Mode::Untested, {{2.0, 5.0, SegmentKind::Exec}}});
    expect(overlap, Setting::NonPreemptive, ViolationCode::SegmentOverlap, "overlap");

    Schedule reversed;
    reversed.machines.resize(2);
    reversed.machines[0].push_back({0, Mode::Tested, {{0.0, 2.0, SegmentKind::Exec},
                                                      {2.0, 3.0, SegmentKind::Test}}});
    reversed.machines[1].push_back({1, Mode::Untested, {{0.0, 3.0, SegmentKind::Exec}}});
    expect(reversed, Setting::Preemptive, ViolationCode::ExecBeforeTest, "exec before test");

    Schedule split;
    split.machines.resize(2);
    split.machines[0].push_back({0, Mode::Tested, {{0.0, 1.0, SegmentKind::Test}}});
    split.machines[1].push_back({0, Mode::Tested, {{3.0, 5.0, SegmentKind::Exec}}});
    split.machines[1].push_back({1, Mode::Untested, {{0.0, 3.0, SegmentKind::Exec}}});
    expect(split, Setting::NonPreemptive, ViolationCode::SplitNonPreemptiveJob,
           "split non-preemptive job");
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "ratio table regression", criterion_table_regression},
        {2, "asymptotic ratio values", criterion_asymptotics},
        {3, "greedy tightness family", criterion_greedy_tightness},
        {4, "adversarial lower-bound floors", criterion_adversary_floors},
        {5, "bounds on random instances", criterion_random_bound_respect},
        {6, "exact solver vs enumeration", criterion_oracle_equivalence},
        {7, "threshold testing guarantees", criterion_threshold_rule},
        {8, "threshold balance equations", criterion_threshold_balance},
        {9, "two-machine game value", criterion_game},
        {10, "schedule validator soundness", criterion_validator},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            criterion.run();
        } catch (const std::exception& err) {
            failure = err.what();
        }
        const double seconds = elapsed_seconds(start);
        char timing[32];
        std::snprintf(timing, sizeof(timing), "%.2f s", seconds);
        if (failure.empty()) {
            std::printf("criterion %2d [PASS] %s (%s)\n", criterion.number,
                        criterion.title.c_str(), timing);
        } else {
            ++failures;
            std::printf("criterion %2d [FAIL] %s (%s): %s\n", criterion.number,
                        criterion.title.c_str(), timing, failure.c_str());
        }
        std::fflush(stdout);
    }
    if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
