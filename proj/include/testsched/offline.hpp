#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "testsched/core.hpp"
#include "testsched/formulas.hpp"

namespace testsched {

constexpr int default_oracle_cap = 24;

// Assignment of each length index to one machine, plus the resulting makespan.
struct MachineAssignment {
    std::vector<int> machine_of;
    double makespan = 0.0;
};

// LPT: jobs in non-increasing length order (ties: lower index first), each on
// the currently least loaded machine (ties: lowest index).
inline MachineAssignment lpt_assign(const std::vector<double>& lengths, int machines) {
    detail::checked_m(machines);
    detail::check_nonnegative(lengths, "lpt");
    const int n = static_cast<int>(lengths.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return lengths[a] > lengths[b]; });

    MachineAssignment out;
    out.machine_of.assign(n, 0);
    std::vector<double> loads(machines, 0.0);
    for (int idx : order) {
        int target = 0;
        for (int i = 1; i < machines; ++i)
            if (loads[i] < loads[target]) target = i;
        out.machine_of[idx] = target;
        loads[target] += lengths[idx];
    }
    out.makespan = *std::max_element(loads.begin(), loads.end());
    return out;
}

inline double lpt(const std::vector<double>& lengths, int machines) {
    return lpt_assign(lengths, machines).makespan;
}

// Preemptive optimum: max(longest job, average load).
inline double mcnaughton(const std::vector<double>& lengths, int machines) {
    detail::check_nonnegative(lengths, "mcnaughton");
    return std::max(max_length_bound(lengths), average_load_bound(lengths, machines));
}

namespace detail {

// Depth-first branch and bound over machine assignments. Jobs are taken in
// non-increasing length order; a node is cut when its load already matches the
// incumbent, machines with identical loads are tried only once, and equal
// lengths are forced onto non-decreasing machine indices.
class ExactSolver {
public:
    ExactSolver(const std::vector<double>& lengths, int machines)
        : lengths_(lengths), machines_(machines) {}

    MachineAssignment solve() {
        const int n = static_cast<int>(lengths_.size());
        order_.clear();
        for (int i = 0; i < n; ++i)
            if (lengths_[i] > 0.0) order_.push_back(i);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return lengths_[a] > lengths_[b]; });

        MachineAssignment incumbent = lpt_assign(lengths_, machines_);
        best_value_ = incumbent.makespan;
        best_assign_ = incumbent.machine_of;

        floor_ = std::max({average_load_bound(lengths_, machines_),
                           max_length_bound(lengths_), mth_pair_bound(lengths_, machines_)});
        if (floor_ < best_value_ - slack) {
            loads_.assign(machines_, 0.0);
            current_.assign(n, 0);
            descend(0, 0);
        }
        // zero-length jobs are irrelevant for the makespan; pin them to machine 0
        for (int i = 0; i < n; ++i)
            if (lengths_[i] == 0.0) best_assign_[i] = 0;
        return {best_assign_, best_value_};
    }

private:
    static constexpr double slack = 1e-12;

    void descend(std::size_t depth, int min_machine) {
        if (depth == order_.size()) {
            const double value = *std::max_element(loads_.begin(), loads_.end());
            if (value < best_value_ - slack) {
                best_value_ = value;
                for (int idx : order_) best_assign_[idx] = current_[idx];
            }
            return;
        }
        const int job = order_[depth];
        const double len = lengths_[job];
        // equal lengths may be assumed to land on non-decreasing machine indices
        const int first = (depth > 0 && lengths_[order_[depth - 1]] == len) ? min_machine : 0;

        std::vector<int> trial(machines_ - first);
        std::iota(trial.begin(), trial.end(), first);
        std::stable_sort(trial.begin(), trial.end(),
                         [&](int a, int b) { return loads_[a] < loads_[b]; });

        double tried_load = -1.0;
        for (int machine : trial) {
            if (loads_[machine] == tried_load) continue;  // symmetric machine
            tried_load = loads_[machine];
            if (loads_[machine] + len >= best_value_ - slack) continue;
            if (floor_ >= best_value_ - slack) return;
            loads_[machine] += len;
            current_[job] = machine;
            descend(depth + 1, machine);
            loads_[machine] -= len;
        }
    }

    const std::vector<double>& lengths_;
    int machines_;
    std::vector<int> order_;
    std::vector<double> loads_;
    std::vector<int> current_;
    std::vector<int> best_assign_;
    double best_value_ = 0.0;
    double floor_ = 0.0;
};

}  // namespace detail

// Exact minimum makespan over all partitions of the lengths onto m machines.
// Desk-scale only; inputs beyond the cap are refused.
inline MachineAssignment opt_assign(const std::vector<double>& lengths, int machines,
                                    int cap = default_oracle_cap) {
    detail::checked_m(machines);
    detail::check_nonnegative(lengths, "opt_exact");
    if (static_cast<int>(lengths.size()) > cap)
        throw CapacityError("opt_exact: " + std::to_string(lengths.size()) +
                            " jobs exceed the cap of " + std::to_string(cap));
    return detail::ExactSolver(lengths, machines).solve();
}

inline double opt_exact(const std::vector<double>& lengths, int machines,
                        int cap = default_oracle_cap) {
    return opt_assign(lengths, machines, cap).makespan;
}

enum class Setting { NonPreemptive, TestPreemptive, Preemptive };

inline const char* to_string(Setting s) {
    switch (s) {
        case Setting::NonPreemptive: return "non-preemptive";
        case Setting::TestPreemptive: return "test-preemptive";
        default: return "preemptive";
    }
}

// Offline optimum of an instance whose processing times are all concrete:
// each job takes its optimal running time min(t + p, u); machine-splitting
// freedom only in the fully preemptive setting.
inline double opt_offline(const Instance& inst, Setting setting,
                          int cap = default_oracle_cap) {
    std::vector<double> rho;
    rho.reserve(inst.jobs.size());
    for (const Job& j : inst.jobs) {
        if (j.deferred())
            throw std::invalid_argument("opt_offline: job " + std::to_string(j.id) +
                                        " has no concrete processing time");
        rho.push_back(optimal_running_time(j.test_time, *j.processing, j.upper_bound));
    }
    if (setting == Setting::Preemptive) return mcnaughton(rho, inst.machines);
    return opt_exact(rho, inst.machines, cap);
}

// One placed piece of work: [start, end) on one machine.
struct PlacedPiece {
    int machine = 0;
    double start = 0.0;
    double end = 0.0;
};

// Offline plan: wall-clock pieces per length index plus the plan's makespan.
struct OfflinePlan {
    std::vector<std::vector<PlacedPiece>> pieces;
    double makespan = 0.0;
};

using OfflineSolverFn = std::function<OfflinePlan(const std::vector<double>&, int)>;

// Exact non-preemptive plan: one contiguous piece per length, machines filled
// in index order.
inline OfflinePlan exact_offline_plan(const std::vector<double>& lengths, int machines,
                                      int cap = default_oracle_cap) {
    const MachineAssignment assignment = opt_assign(lengths, machines, cap);
    OfflinePlan plan;
    plan.pieces.resize(lengths.size());
    plan.makespan = assignment.makespan;
    std::vector<double> cursor(machines, 0.0);
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const int machine = assignment.machine_of[i];
        plan.pieces[i].push_back({machine, cursor[machine], cursor[machine] + lengths[i]});
        cursor[machine] += lengths[i];
    }
    return plan;
}

// McNaughton wrap-around plan: fill machines back to back up to the preemptive
// optimum, splitting a length across two machines at the boundary. A split
// never overlaps itself because every length is at most the plan makespan.
inline OfflinePlan mcnaughton_offline_plan(const std::vector<double>& lengths, int machines) {
    detail::checked_m(machines);
    detail::check_nonnegative(lengths, "mcnaughton");
    OfflinePlan plan;
    plan.pieces.resize(lengths.size());
    plan.makespan = mcnaughton(lengths, machines);
    const double horizon = plan.makespan;

    int machine = 0;
    double cursor = 0.0;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        double remaining = lengths[i];
        if (remaining == 0.0) {
            plan.pieces[i].push_back({machine, cursor, cursor});
            continue;
        }
        while (remaining > 0.0) {
            const double room = horizon - cursor;
            if (room <= 1e-12 && machine + 1 < machines) {
                ++machine;
                cursor = 0.0;
                continue;
            }
            const double take = std::min(remaining, std::max(room, 0.0));
            plan.pieces[i].push_back({machine, cursor, cursor + take});
            cursor += take;
            remaining -= take;
            if (remaining > 0.0 && machine + 1 >= machines) {
                // floating-point crumbs on the last machine; absorb them
                plan.pieces[i].back().end += remaining;
                cursor += remaining;
                remaining = 0.0;
            }
        }
    }
    return plan;
}

}  // namespace testsched
