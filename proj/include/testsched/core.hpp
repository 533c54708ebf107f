#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsched {

// A scheduler asked for something the reveal protocol does not allow
// (double reveal, reveal of a job without a processing-time source, ...).
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The exact offline solver was handed more jobs than its configured cap.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { Tested, Untested };

inline const char* to_string(Mode m) { return m == Mode::Tested ? "tested" : "untested"; }

// A job with a known test time and upper bound. The true processing time is
// either concrete or deferred to an adversary that picks it at reveal time.
struct Job {
    int id = 0;
    double test_time = 0.0;
    double upper_bound = 0.0;
    std::optional<double> processing;  // nullopt = deferred

    bool deferred() const { return !processing.has_value(); }
};

// m identical machines plus an ordered job list. A non-null adversary name
// makes the instance adaptive: deferred processing times are decided by the
// named reveal strategy while the schedule is being built.
struct Instance {
    int machines = 1;
    std::vector<Job> jobs;
    std::optional<std::string> adversary;

    bool adaptive() const { return adversary.has_value(); }
    int job_count() const { return static_cast<int>(jobs.size()); }
};

inline std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> problems;
    if (inst.machines < 1)
        problems.push_back("machine count must be at least 1");
    for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
        const Job& j = inst.jobs[i];
        if (j.id != static_cast<int>(i))
            problems.push_back("job ids must be contiguous from 0, job at position " +
                               std::to_string(i) + " has id " + std::to_string(j.id));
        if (!(j.test_time >= 0.0))
            problems.push_back("job " + std::to_string(j.id) + ": negative test time");
        if (!(j.upper_bound >= 0.0))
            problems.push_back("job " + std::to_string(j.id) + ": negative upper bound");
        if (j.processing && !(*j.processing >= 0.0 && *j.processing <= j.upper_bound))
            problems.push_back("job " + std::to_string(j.id) +
                               ": processing time outside [0, upper bound]");
        if (j.deferred() && !inst.adversary)
            problems.push_back("job " + std::to_string(j.id) +
                               ": deferred processing time without an adversary");
    }
    return problems;
}

inline void require_valid(const Instance& inst) {
    auto problems = validate_instance(inst);
    if (!problems.empty()) throw std::invalid_argument("invalid instance: " + problems.front());
}

// True when every test time is exactly 1 (the uniform-testing setting).
inline bool is_uniform(const Instance& inst) {
    for (const Job& j : inst.jobs)
        if (j.test_time != 1.0) return false;
    return true;
}

// Per-job running times. An omniscient scheduler needs min(t + p, u);
// every scheduler needs at least min(t, u) no matter what the test reveals.
inline double optimal_running_time(double test_time, double processing, double upper_bound) {
    if (!(test_time >= 0.0) || !(processing >= 0.0) || !(processing <= upper_bound))
        throw std::invalid_argument("optimal_running_time: need t >= 0 and 0 <= p <= u");
    return std::min(test_time + processing, upper_bound);
}

inline double minimal_running_time(double test_time, double upper_bound) {
    if (!(test_time >= 0.0) || !(upper_bound >= 0.0))
        throw std::invalid_argument("minimal_running_time: negative input");
    return std::min(test_time, upper_bound);
}

inline double minimal_running_time(const Job& j) {
    return minimal_running_time(j.test_time, j.upper_bound);
}

// Time the algorithm spends on a job given its test decision. A tested job
// needs its revealed processing time; if neither a revealed value nor a
// concrete instance value exists, the reveal protocol was violated.
inline double algorithmic_running_time(const Job& j, Mode mode,
                                       std::optional<double> revealed = std::nullopt) {
    if (mode == Mode::Untested) return j.upper_bound;
    std::optional<double> p = revealed ? revealed : j.processing;
    if (!p)
        throw ProtocolError("job " + std::to_string(j.id) +
                            " tested but no processing time was revealed");
    if (!(*p >= 0.0 && *p <= j.upper_bound))
        throw std::invalid_argument("revealed processing time outside [0, upper bound]");
    return j.test_time + *p;
}

// Ratio between upper bound and test time. A free test (t = 0) makes testing
// weakly dominant, so the ratio is defined as +infinity there.
inline double test_ratio(double test_time, double upper_bound) {
    if (!(test_time >= 0.0) || !(upper_bound >= 0.0))
        throw std::invalid_argument("test_ratio: negative input");
    if (test_time == 0.0) return std::numeric_limits<double>::infinity();
    return upper_bound / test_time;
}

inline double test_ratio(const Job& j) { return test_ratio(j.test_time, j.upper_bound); }

// Threshold testing rule: test exactly when the ratio reaches alpha.
// Guarantees p^A <= (1 + 1/alpha) * rho for tested jobs and p^A <= alpha * rho
// for untested ones.
inline Mode threshold_decision(double alpha, double test_time, double upper_bound) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("threshold_decision: alpha must be >= 1");
    return test_ratio(test_time, upper_bound) >= alpha ? Mode::Tested : Mode::Untested;
}

}  // namespace testsched
