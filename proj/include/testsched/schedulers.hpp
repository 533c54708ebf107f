#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "testsched/core.hpp"
#include "testsched/formulas.hpp"
#include "testsched/offline.hpp"
#include "testsched/reveal.hpp"
#include "testsched/schedule.hpp"
#include "testsched/trace.hpp"

namespace testsched {

struct SchedulerResult {
    Schedule schedule;
    RunTrace trace;
};

namespace detail {

// Shared machinery for schedulers that run each job as one contiguous block.
class NonPreemptiveBuilder {
public:
    NonPreemptiveBuilder(const Instance& inst, RevealOracle& oracle)
        : inst_(inst), guard_(oracle) {
        schedule_.machines.resize(inst.machines);
        loads_.assign(inst.machines, 0.0);
        counts_.assign(inst.machines, 0);
    }

    int least_loaded() const {
        int target = 0;
        for (int i = 1; i < static_cast<int>(loads_.size()); ++i)
            if (loads_[i] < loads_[target]) target = i;
        return target;
    }

    double load(int machine) const { return loads_[machine]; }

    void place(const Job& job, Mode mode, int machine) {
        const double start = loads_[machine];
        Run run{job.id, mode, {}};
        std::optional<double> revealed;
        if (mode == Mode::Tested) {
            const double test_end = start + job.test_time;
            const double p = guard_.reveal(job, machine, counts_[machine], test_end);
            revealed = p;
            run.segments.push_back({start, test_end, SegmentKind::Test});
            run.segments.push_back({test_end, test_end + p, SegmentKind::Exec});
        } else {
            run.segments.push_back({start, start + job.upper_bound, SegmentKind::Exec});
        }
        const double end = run.segments.back().end;
        if (trace_.last_job < 0 || end >= finish_) {
            finish_ = end;
            trace_.last_job = job.id;
            trace_.min_load_before_last = start;
        }
        trace_.decisions.push_back(
            {job.id, mode, machine, static_cast<int>(trace_.decisions.size()), revealed});
        schedule_.machines[machine].push_back(std::move(run));
        loads_[machine] = end;
        counts_[machine] += 1;
    }

    SchedulerResult finish() && { return {std::move(schedule_), std::move(trace_)}; }

private:
    const Instance& inst_;
    RevealGuard guard_;
    Schedule schedule_;
    RunTrace trace_;
    std::vector<double> loads_;
    std::vector<int> counts_;
    double finish_ = 0.0;
};

}  // namespace detail

// List scheduling with the golden-ratio testing rule: jobs in input order,
// each tested iff u/t reaches the golden ratio, each run completely on the
// currently least loaded machine.
inline SchedulerResult greedy(const Instance& inst, RevealOracle& oracle) {
    require_valid(inst);
    detail::NonPreemptiveBuilder builder(inst, oracle);
    for (const Job& job : inst.jobs) {
        const Mode mode = threshold_decision(golden_ratio, job.test_time, job.upper_bound);
        builder.place(job, mode, builder.least_loaded());
    }
    return std::move(builder).finish();
}

// SBS job classes. Jobs whose ratio reaches the SBS threshold form the
// big-ratio set; of the remaining jobs, the (at most m) ones with the largest
// minimal running times are run first, one per machine. Ties on equal minimal
// running time are broken towards lower ids.
struct SbsPartitionResult {
    std::vector<int> first_round;
    std::vector<int> big_ratio;
    std::vector<int> remainder;
};

inline SbsPartitionResult sbs_partition(const std::vector<Job>& jobs, int machines) {
    const double threshold = sbs_threshold(machines);
    SbsPartitionResult out;
    std::vector<int> small;
    for (const Job& j : jobs) {
        if (test_ratio(j) >= threshold)
            out.big_ratio.push_back(j.id);
        else
            small.push_back(j.id);
    }
    std::stable_sort(small.begin(), small.end(), [&](int a, int b) {
        return minimal_running_time(jobs[a]) > minimal_running_time(jobs[b]);
    });
    const std::size_t take = std::min<std::size_t>(machines, small.size());
    out.first_round.assign(small.begin(), small.begin() + take);
    out.remainder.assign(small.begin() + take, small.end());
    std::sort(out.first_round.begin(), out.first_round.end());
    std::sort(out.remainder.begin(), out.remainder.end());
    return out;
}

// The SBS algorithm: first-round jobs each on their own empty machine (tested
// by the golden-ratio rule), then all big-ratio jobs tested on the least
// loaded machine, then the remainder untested on the least loaded machine.
inline SchedulerResult sbs(const Instance& inst, RevealOracle& oracle) {
    require_valid(inst);
    const SbsPartitionResult part = sbs_partition(inst.jobs, inst.machines);
    if (part.first_round.size() > static_cast<std::size_t>(inst.machines))
        throw std::logic_error("sbs: first round larger than the machine count");

    detail::NonPreemptiveBuilder builder(inst, oracle);
    int machine = 0;
    for (int id : part.first_round) {
        const Job& job = inst.jobs[id];
        builder.place(job, threshold_decision(golden_ratio, job.test_time, job.upper_bound),
                      machine++);
    }
    for (int id : part.big_ratio)
        builder.place(inst.jobs[id], Mode::Tested, builder.least_loaded());
    for (int id : part.remainder)
        builder.place(inst.jobs[id], Mode::Untested, builder.least_loaded());

    SchedulerResult result = std::move(builder).finish();
    result.trace.sets = SbsSets{part.first_round, part.big_ratio, part.remainder};
    return result;
}

// Uniform-SBS for instances with unit test times: jobs by non-increasing
// upper bound (ties: lower id), least loaded machine, tested iff the upper
// bound reaches the uniform threshold.
inline SchedulerResult uniform_sbs(const Instance& inst, RevealOracle& oracle) {
    require_valid(inst);
    if (!is_uniform(inst))
        throw std::invalid_argument("uniform_sbs: all test times must equal 1");
    const double threshold = uniform_sbs_threshold(inst.machines);

    std::vector<int> order(inst.jobs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return inst.jobs[a].upper_bound > inst.jobs[b].upper_bound;
    });

    detail::NonPreemptiveBuilder builder(inst, oracle);
    for (int id : order) {
        const Job& job = inst.jobs[id];
        const Mode mode = job.upper_bound >= threshold ? Mode::Tested : Mode::Untested;
        builder.place(job, mode, builder.least_loaded());
    }
    return std::move(builder).finish();
}

// Two Phases: every non-trivial job (t <= u) is tested; the offline solver
// schedules all minimal running times, then all revealed processing times,
// and the second plan is stacked on top of the first.
inline SchedulerResult two_phases(const Instance& inst, RevealOracle& oracle,
                                  const OfflineSolverFn& solver) {
    require_valid(inst);
    RevealGuard guard(oracle);
    const int n = inst.job_count();

    std::vector<double> minimal(n);
    for (int i = 0; i < n; ++i) minimal[i] = minimal_running_time(inst.jobs[i]);
    const OfflinePlan phase1 = solver(minimal, inst.machines);

    Schedule schedule;
    schedule.machines.resize(inst.machines);
    RunTrace trace;

    const auto first_piece = [](const std::vector<PlacedPiece>& pieces) {
        return *std::min_element(pieces.begin(), pieces.end(),
                                 [](const PlacedPiece& a, const PlacedPiece& b) {
                                     return a.start < b.start;
                                 });
    };
    const auto last_piece = [](const std::vector<PlacedPiece>& pieces) {
        return *std::max_element(pieces.begin(), pieces.end(),
                                 [](const PlacedPiece& a, const PlacedPiece& b) {
                                     return a.end < b.end;
                                 });
    };

    std::vector<int> tested;
    for (int i = 0; i < n; ++i) {
        const Job& job = inst.jobs[i];
        const bool trivial = job.test_time > job.upper_bound;
        const Mode mode = trivial ? Mode::Untested : Mode::Tested;
        const SegmentKind kind = trivial ? SegmentKind::Exec : SegmentKind::Test;
        for (const PlacedPiece& piece : phase1.pieces[i])
            schedule.machines[piece.machine].push_back(
                {i, mode, {{piece.start, piece.end, kind}}});
        if (trivial)
            trace.decisions.push_back(
                {i, Mode::Untested, first_piece(phase1.pieces[i]).machine,
                 static_cast<int>(trace.decisions.size()), std::nullopt});
        else
            tested.push_back(i);
    }

    // reveals happen in the order the tests complete
    std::stable_sort(tested.begin(), tested.end(), [&](int a, int b) {
        return last_piece(phase1.pieces[a]).end < last_piece(phase1.pieces[b]).end;
    });
    std::vector<double> revealed_p(n, 0.0);
    for (int id : tested) {
        const PlacedPiece fin = last_piece(phase1.pieces[id]);
        int before = 0;
        for (int other = 0; other < n; ++other) {
            if (other == id) continue;
            for (const PlacedPiece& piece : phase1.pieces[other])
                if (piece.machine == fin.machine && piece.start < fin.start) {
                    ++before;
                    break;
                }
        }
        revealed_p[id] = guard.reveal(inst.jobs[id], fin.machine, before, fin.end);
        trace.decisions.push_back({id, Mode::Tested, fin.machine,
                                   static_cast<int>(trace.decisions.size()), revealed_p[id]});
    }

    // second phase: the revealed processing times, stacked after phase one
    std::vector<double> exec_lengths;
    exec_lengths.reserve(tested.size());
    std::vector<int> exec_ids(tested);
    std::sort(exec_ids.begin(), exec_ids.end());
    for (int id : exec_ids) exec_lengths.push_back(revealed_p[id]);
    const OfflinePlan phase2 = solver(exec_lengths, inst.machines);
    const double offset = phase1.makespan;
    for (std::size_t k = 0; k < exec_ids.size(); ++k)
        for (const PlacedPiece& piece : phase2.pieces[k])
            schedule.machines[piece.machine].push_back(
                {exec_ids[k], Mode::Tested,
                 {{offset + piece.start, offset + piece.end, SegmentKind::Exec}}});

    // last-finishing job and the start of its final piece
    double finish = 0.0;
    trace.last_job = -1;
    for (const auto& runs : schedule.machines)
        for (const Run& run : runs)
            for (const Segment& seg : run.segments)
                if (trace.last_job < 0 || seg.end > finish ||
                    (seg.end == finish && run.job == trace.last_job)) {
                    finish = seg.end;
                    trace.last_job = run.job;
                    trace.min_load_before_last = seg.start;
                }
    return {std::move(schedule), std::move(trace)};
}

// Pin-then-LPT for uniform instances with at most one uncertain job (u > 1)
// per machine: uncertain jobs go one per machine and are tested by the
// golden-ratio rule; once their running times are known, the full LPT
// solution over all algorithmic running times is replayed for the rest.
inline SchedulerResult uniform_small_lambda(const Instance& inst, RevealOracle& oracle) {
    require_valid(inst);
    if (!is_uniform(inst))
        throw std::invalid_argument("uniform_small_lambda: all test times must equal 1");

    std::vector<int> uncertain;
    for (const Job& j : inst.jobs)
        if (j.upper_bound > 1.0) uncertain.push_back(j.id);
    if (uncertain.size() > static_cast<std::size_t>(inst.machines))
        throw std::invalid_argument(
            "uniform_small_lambda: more uncertain jobs than machines (lambda > 1)");

    detail::NonPreemptiveBuilder builder(inst, oracle);
    std::vector<int> pin_machine(inst.jobs.size(), -1);
    std::vector<double> alg_time(inst.jobs.size(), 0.0);
    std::vector<bool> is_uncertain(inst.jobs.size(), false);

    for (std::size_t k = 0; k < uncertain.size(); ++k) {
        const Job& job = inst.jobs[uncertain[k]];
        const Mode mode = job.upper_bound >= golden_ratio ? Mode::Tested : Mode::Untested;
        builder.place(job, mode, static_cast<int>(k));
        pin_machine[job.id] = static_cast<int>(k);
        is_uncertain[job.id] = true;
    }
    for (const Job& job : inst.jobs) {
        if (is_uncertain[job.id])
            alg_time[job.id] = builder.load(pin_machine[job.id]);
        else
            alg_time[job.id] = job.upper_bound;  // certain jobs run untested
    }

    // full LPT over all algorithmic running times; uncertain jobs win ties so
    // they are exactly the first-round jobs of the LPT order
    std::vector<int> order(inst.jobs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (alg_time[a] != alg_time[b]) return alg_time[a] > alg_time[b];
        return is_uncertain[a] && !is_uncertain[b];
    });
    for (std::size_t k = 0; k < uncertain.size(); ++k)
        if (!is_uncertain[order[k]])
            throw std::logic_error(
                "uniform_small_lambda: uncertain jobs are not the largest running times");

    std::vector<double> lpt_loads(inst.machines, 0.0);
    std::vector<int> machine_map(inst.machines);
    std::iota(machine_map.begin(), machine_map.end(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        int target = 0;
        for (int i = 1; i < inst.machines; ++i)
            if (lpt_loads[i] < lpt_loads[target]) target = i;
        lpt_loads[target] += alg_time[order[k]];
        if (k < uncertain.size())
            machine_map[target] = pin_machine[order[k]];  // LPT spreads the first round
        else
            builder.place(inst.jobs[order[k]], Mode::Untested, machine_map[target]);
    }
    return std::move(builder).finish();
}

}  // namespace testsched
