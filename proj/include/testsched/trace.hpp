#pragma once

#include <map>
#include <optional>
#include <vector>

#include "testsched/core.hpp"

namespace testsched {

// One scheduling decision, in processing order.
struct Decision {
    int job = -1;
    Mode mode = Mode::Untested;
    int machine = -1;
    int order = -1;  // position in the processing / reveal order
    std::optional<double> revealed;

    bool operator==(const Decision&) const = default;
};

// Job id sets of the SBS partition, each in ascending id order.
struct SbsSets {
    std::vector<int> first_round;  // at most m small-ratio jobs with largest minimal times
    std::vector<int> big_ratio;    // jobs tested unconditionally
    std::vector<int> remainder;    // small-ratio jobs run untested at the end

    bool operator==(const SbsSets&) const = default;
};

// Log of one scheduler run. For non-preemptive runs the last-finishing job
// started at the minimum machine load of its placement instant, so the
// makespan equals min_load_before_last + its algorithmic running time.
struct RunTrace {
    std::vector<Decision> decisions;
    int last_job = -1;
    double min_load_before_last = 0.0;
    std::optional<SbsSets> sets;

    std::map<int, double> revealed_map() const {
        std::map<int, double> out;
        for (const Decision& d : decisions)
            if (d.revealed) out[d.job] = *d.revealed;
        return out;
    }

    bool operator==(const RunTrace&) const = default;
};

}  // namespace testsched
