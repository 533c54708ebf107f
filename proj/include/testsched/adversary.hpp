#pragma once

#include <memory>
#include <string>
#include <vector>

#include "testsched/core.hpp"
#include "testsched/formulas.hpp"
#include "testsched/reveal.hpp"

namespace testsched {

// Shared bookkeeping of the "many small jobs plus one hidden big job"
// adversaries: the big processing time is handed out at most once.
struct AdversaryState {
    bool big_assigned = false;
    std::vector<std::pair<int, double>> reveal_log;
};

// Adversary behind the (2 - 1/m) lower bound: all jobs look identical; the
// first job tested on a machine that already carries m-1 jobs becomes the big
// one with processing time m-1, every other job turns out to be free.
class CrowdedMachineAdversary : public RevealOracle {
public:
    explicit CrowdedMachineAdversary(int machines) : machines_(machines) {}

    double reveal(const Job& job, int, int jobs_before_on_machine, double) override {
        double p = 0.0;
        if (!state_.big_assigned && jobs_before_on_machine >= machines_ - 1) {
            state_.big_assigned = true;
            p = machines_ - 1.0;
        }
        state_.reveal_log.push_back({job.id, p});
        return p;
    }

    bool big_assigned() const { return state_.big_assigned; }
    const AdversaryState& state() const { return state_; }

private:
    int machines_;
    AdversaryState state_;
};

// Adversary behind the preemptive (2 - 2/m + 1/m^2) lower bound: the big job
// is the first one whose test completes at or after m - 1 + 1/m. The average
// load argument guarantees this moment occurs in any complete schedule.
class LateTestAdversary : public RevealOracle {
public:
    explicit LateTestAdversary(int machines)
        : machines_(machines), cutoff_(machines - 1.0 + 1.0 / machines) {}

    double reveal(const Job& job, int, int, double test_end_time) override {
        double p = 0.0;
        if (!state_.big_assigned && test_end_time >= cutoff_ - 1e-9) {
            state_.big_assigned = true;
            p = machines_ - 1.0;
        }
        state_.reveal_log.push_back({job.id, p});
        return p;
    }

    // Schedulers that test every job must trigger the big reveal; a run that
    // did not is a contradiction with the average-load bound.
    void verify_complete() const {
        if (!state_.big_assigned)
            throw std::logic_error(
                "late-test adversary: no test finished after the cutoff, "
                "which contradicts the average machine load");
    }

    bool big_assigned() const { return state_.big_assigned; }
    double cutoff() const { return cutoff_; }

private:
    int machines_;
    double cutoff_;
    AdversaryState state_;
};

// Adversary of the fully-online lower bound of 2: testing the final job makes
// it as long as possible, the flat prefix jobs always run for their bound.
class FinalJobAdversary : public RevealOracle {
public:
    explicit FinalJobAdversary(int final_job_id) : final_job_(final_job_id) {}

    double reveal(const Job& job, int, int, double) override {
        return job.upper_bound;  // a tested job realizes its full upper bound
    }

    // An untested final job would have turned out to be free.
    double unrevealed_processing(const Job& job) const override {
        return job.id == final_job_ ? 0.0 : job.processing.value_or(0.0);
    }

private:
    int final_job_;
};

inline const char* adversary_crowded_machine = "crowded_machine";
inline const char* adversary_late_test = "late_test";
inline const char* adversary_final_job = "final_job";

// m(m-1)+1 indistinguishable jobs (t = 1, huge upper bound, hidden p) driven
// by the crowded-machine adversary; forces ratio >= 2 - 1/m on testing
// schedulers and >= M/m on anything that skips a test.
inline Instance crowded_machine_family(int machines, double big_upper = 1e6) {
    if (machines < 1) throw std::invalid_argument("family needs at least one machine");
    Instance inst;
    inst.machines = machines;
    inst.adversary = adversary_crowded_machine;
    const int n = machines * (machines - 1) + 1;
    for (int i = 0; i < n; ++i) inst.jobs.push_back({i, 1.0, big_upper, std::nullopt});
    return inst;
}

// Same job set, but the big job is keyed on test completion time; forces
// ratio >= 2 - 2/m + 1/m^2 even against preemptive schedulers.
inline Instance late_test_family(int machines, double big_upper = 1e6) {
    Instance inst = crowded_machine_family(machines, big_upper);
    inst.adversary = adversary_late_test;
    return inst;
}

// Fixed worst case of the greedy algorithm: m(m-1) small jobs with
// t = 1, p = u = golden ratio, then one big job with t = m, p = u = m * phi.
// Greedy in input order reaches exactly phi * (2 - 1/m) times the optimum.
inline Instance greedy_tightness_family(int machines) {
    if (machines < 1) throw std::invalid_argument("family needs at least one machine");
    Instance inst;
    inst.machines = machines;
    const int small = machines * (machines - 1);
    for (int i = 0; i < small; ++i)
        inst.jobs.push_back({i, 1.0, golden_ratio, golden_ratio});
    inst.jobs.push_back({small, static_cast<double>(machines), machines * golden_ratio,
                         machines * golden_ratio});
    return inst;
}

// Fully-online lower bound of 2 for m >= 2: m unit jobs (t = u = 1) followed
// by a final job with t = 2, u = 3 whose processing time depends on the
// algorithm's testing decision.
inline Instance fully_online_lb2_family(int machines) {
    if (machines < 2)
        throw std::invalid_argument("fully-online lower bound family needs m >= 2");
    Instance inst;
    inst.machines = machines;
    inst.adversary = adversary_final_job;
    for (int i = 0; i < machines; ++i) inst.jobs.push_back({i, 1.0, 1.0, std::nullopt});
    inst.jobs.push_back({machines, 2.0, 3.0, std::nullopt});
    return inst;
}

// Reveal oracle matching the instance: fixed instances replay their stored
// processing times, adaptive ones get their named adversary.
inline std::unique_ptr<RevealOracle> make_reveal_oracle(const Instance& inst) {
    if (!inst.adversary) return std::make_unique<FixedReveal>();
    const std::string& name = *inst.adversary;
    if (name == adversary_crowded_machine)
        return std::make_unique<CrowdedMachineAdversary>(inst.machines);
    if (name == adversary_late_test)
        return std::make_unique<LateTestAdversary>(inst.machines);
    if (name == adversary_final_job)
        return std::make_unique<FinalJobAdversary>(inst.job_count() - 1);
    throw std::invalid_argument("unknown adversary: " + name);
}

}  // namespace testsched
