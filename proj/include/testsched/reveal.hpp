#pragma once

#include <map>
#include <string>

#include "testsched/core.hpp"

namespace testsched {

// Source of processing times. A scheduler calls reveal() exactly once per
// tested job, at the moment it commits to the test. Adaptive adversaries may
// use the placement context (machine, jobs already on it, wall-clock time of
// the test's completion) to pick the worst possible value.
class RevealOracle {
public:
    virtual ~RevealOracle() = default;
    virtual double reveal(const Job& job, int machine, int jobs_before_on_machine,
                          double test_end_time) = 0;

    // Processing time to charge the optimum for a job that was never revealed.
    virtual double unrevealed_processing(const Job& job) const {
        return job.processing.value_or(0.0);
    }
};

// Reveals the concrete processing times stored in the instance.
class FixedReveal : public RevealOracle {
public:
    double reveal(const Job& job, int, int, double) override {
        if (!job.processing)
            throw ProtocolError("job " + std::to_string(job.id) +
                                " is deferred and no adversary is attached");
        return *job.processing;
    }
};

// Enforces the reveal protocol on behalf of a scheduler: each job is revealed
// at most once, and the value must lie in [0, upper bound].
class RevealGuard {
public:
    explicit RevealGuard(RevealOracle& oracle) : oracle_(oracle) {}

    double reveal(const Job& job, int machine, int jobs_before_on_machine,
                  double test_end_time) {
        if (revealed_.count(job.id))
            throw ProtocolError("processing time of job " + std::to_string(job.id) +
                                " requested twice");
        const double p = oracle_.reveal(job, machine, jobs_before_on_machine, test_end_time);
        if (!(p >= 0.0 && p <= job.upper_bound + 1e-12))
            throw ProtocolError("revealed processing time of job " + std::to_string(job.id) +
                                " lies outside [0, upper bound]");
        revealed_[job.id] = p;
        return p;
    }

    const std::map<int, double>& revealed() const { return revealed_; }

private:
    RevealOracle& oracle_;
    std::map<int, double> revealed_;
};

// Concrete processing times after a run: revealed values where available,
// otherwise the oracle's stance on never-revealed jobs. The result is a fully
// concrete copy of the instance, suitable for the offline optimum.
inline Instance resolve_instance(const Instance& inst, const RevealOracle& oracle,
                                 const std::map<int, double>& revealed) {
    Instance out = inst;
    out.adversary.reset();
    for (Job& j : out.jobs) {
        auto it = revealed.find(j.id);
        if (it != revealed.end())
            j.processing = it->second;
        else if (!j.processing)
            j.processing = oracle.unrevealed_processing(j);
    }
    return out;
}

}  // namespace testsched
