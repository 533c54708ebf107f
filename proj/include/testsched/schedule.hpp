#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "testsched/core.hpp"
#include "testsched/offline.hpp"

namespace testsched {

enum class SegmentKind { Test, Exec };

struct Segment {
    double start = 0.0;
    double end = 0.0;
    SegmentKind kind = SegmentKind::Exec;

    double length() const { return end - start; }
    bool operator==(const Segment&) const = default;
};

// One job's work on one machine. A job interrupted across machines appears as
// one run per machine it touches.
struct Run {
    int job = -1;
    Mode mode = Mode::Untested;
    std::vector<Segment> segments;

    bool operator==(const Run&) const = default;
};

struct Schedule {
    std::vector<std::vector<Run>> machines;

    double makespan() const {
        double last = 0.0;
        for (const auto& runs : machines)
            for (const Run& r : runs)
                for (const Segment& s : r.segments) last = std::max(last, s.end);
        return last;
    }

    bool operator==(const Schedule&) const = default;
};

enum class ViolationCode {
    NegativeTime,
    SegmentOverlap,
    SelfParallel,
    ExecBeforeTest,
    TestDurationMismatch,
    ExecDurationMismatch,
    ModeConflict,
    UnknownJob,
    UnknownProcessing,
    SplitNonPreemptiveJob,
    SplitTest,
    SplitExec,
};

inline const char* to_string(ViolationCode code) {
    switch (code) {
        case ViolationCode::NegativeTime: return "negative-time";
        case ViolationCode::SegmentOverlap: return "segment-overlap";
        case ViolationCode::SelfParallel: return "self-parallel";
        case ViolationCode::ExecBeforeTest: return "exec-before-test";
        case ViolationCode::TestDurationMismatch: return "test-duration-mismatch";
        case ViolationCode::ExecDurationMismatch: return "exec-duration-mismatch";
        case ViolationCode::ModeConflict: return "mode-conflict";
        case ViolationCode::UnknownJob: return "unknown-job";
        case ViolationCode::UnknownProcessing: return "unknown-processing";
        case ViolationCode::SplitNonPreemptiveJob: return "split-non-preemptive-job";
        case ViolationCode::SplitTest: return "split-test";
        case ViolationCode::SplitExec: return "split-exec";
    }
    return "unknown";
}

struct Violation {
    ViolationCode code;
    int job = -1;
    int machine = -1;
    std::string detail;
};

inline std::string to_string(const Violation& v) {
    std::ostringstream out;
    out << to_string(v.code);
    if (v.job >= 0) out << " job=" << v.job;
    if (v.machine >= 0) out << " machine=" << v.machine;
    if (!v.detail.empty()) out << " (" << v.detail << ")";
    return out.str();
}

// Checks a schedule against the instance and the rules of the given setting.
// Tested jobs of adaptive instances need their revealed processing times to
// verify execution lengths; pass them via `revealed`.
inline std::vector<Violation> validate_schedule(const Schedule& schedule, const Instance& inst,
                                                Setting setting,
                                                const std::map<int, double>& revealed = {}) {
    constexpr double eps = 1e-9;
    std::vector<Violation> out;

    struct JobView {
        std::vector<std::pair<Segment, int>> segments;  // segment, machine
        std::optional<Mode> mode;
    };
    std::map<int, JobView> jobs_seen;

    for (std::size_t machine = 0; machine < schedule.machines.size(); ++machine) {
        std::vector<Segment> on_machine;
        for (const Run& run : schedule.machines[machine]) {
            if (run.job < 0 || run.job >= inst.job_count()) {
                out.push_back({ViolationCode::UnknownJob, run.job, static_cast<int>(machine),
                               "job id outside the instance"});
                continue;
            }
            JobView& view = jobs_seen[run.job];
            if (view.mode && *view.mode != run.mode)
                out.push_back({ViolationCode::ModeConflict, run.job, static_cast<int>(machine),
                               "runs of one job disagree on tested/untested"});
            view.mode = run.mode;
            for (const Segment& s : run.segments) {
                if (s.start < -eps || s.end < s.start - eps)
                    out.push_back({ViolationCode::NegativeTime, run.job,
                                   static_cast<int>(machine), "segment has negative time"});
                view.segments.push_back({s, static_cast<int>(machine)});
                on_machine.push_back(s);
            }
        }
        // zero-length segments at a boundary sort before the block that starts there
        std::sort(on_machine.begin(), on_machine.end(), [](const Segment& a, const Segment& b) {
            return a.start != b.start ? a.start < b.start : a.end < b.end;
        });
        for (std::size_t i = 1; i < on_machine.size(); ++i)
            if (on_machine[i].start < on_machine[i - 1].end - eps)
                out.push_back({ViolationCode::SegmentOverlap, -1, static_cast<int>(machine),
                               "two segments overlap on one machine"});
    }

    for (const Job& job : inst.jobs) {
        auto it = jobs_seen.find(job.id);
        JobView view = it == jobs_seen.end() ? JobView{} : it->second;
        const Mode mode = view.mode.value_or(Mode::Untested);

        auto& segs = view.segments;
        std::sort(segs.begin(), segs.end(), [](const auto& a, const auto& b) {
            return a.first.start != b.first.start ? a.first.start < b.first.start
                                                  : a.first.end < b.first.end;
        });

        // the same job must never run on two machines at once
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].first.start < segs[i - 1].first.end - eps)
                out.push_back({ViolationCode::SelfParallel, job.id, segs[i].second,
                               "job runs on two machines at the same instant"});

        double test_total = 0.0, exec_total = 0.0;
        double last_test_end = -std::numeric_limits<double>::infinity();
        double first_exec_start = std::numeric_limits<double>::infinity();
        for (const auto& [seg, machine] : segs) {
            if (seg.kind == SegmentKind::Test) {
                test_total += seg.length();
                last_test_end = std::max(last_test_end, seg.end);
            } else {
                exec_total += seg.length();
                first_exec_start = std::min(first_exec_start, seg.start);
            }
        }
        if (last_test_end > first_exec_start + eps)
            out.push_back({ViolationCode::ExecBeforeTest, job.id, -1,
                           "part of the execution is scheduled before the test completes"});

        const double want_test = mode == Mode::Tested ? job.test_time : 0.0;
        if (std::abs(test_total - want_test) > eps)
            out.push_back({ViolationCode::TestDurationMismatch, job.id, -1,
                           "scheduled " + std::to_string(test_total) + ", expected " +
                               std::to_string(want_test)});

        std::optional<double> expect_exec;
        if (mode == Mode::Untested) {
            expect_exec = job.upper_bound;
        } else if (auto rev = revealed.find(job.id); rev != revealed.end()) {
            expect_exec = rev->second;
        } else if (job.processing) {
            expect_exec = *job.processing;
        } else {
            out.push_back({ViolationCode::UnknownProcessing, job.id, -1,
                           "tested job has no revealed processing time to check against"});
        }
        if (expect_exec && std::abs(exec_total - *expect_exec) > eps)
            out.push_back({ViolationCode::ExecDurationMismatch, job.id, -1,
                           "scheduled " + std::to_string(exec_total) + ", expected " +
                               std::to_string(*expect_exec)});

        // setting-specific contiguity rules
        const auto contiguous_one_machine = [&](SegmentKind kind) {
            int machine = -1;
            double prev_end = std::numeric_limits<double>::quiet_NaN();
            for (const auto& [seg, seg_machine] : segs) {
                if (seg.kind != kind) continue;
                if (machine == -1) {
                    machine = seg_machine;
                } else {
                    if (seg_machine != machine) return false;
                    if (std::abs(seg.start - prev_end) > eps) return false;
                }
                prev_end = seg.end;
            }
            return true;
        };

        if (setting == Setting::NonPreemptive) {
            bool one_block = true;
            int machine = -1;
            double prev_end = std::numeric_limits<double>::quiet_NaN();
            for (const auto& [seg, seg_machine] : segs) {
                if (machine == -1) {
                    machine = seg_machine;
                } else {
                    if (seg_machine != machine || std::abs(seg.start - prev_end) > eps)
                        one_block = false;
                }
                prev_end = seg.end;
            }
            if (!one_block)
                out.push_back({ViolationCode::SplitNonPreemptiveJob, job.id, -1,
                               "job is not one contiguous block on one machine"});
        } else if (setting == Setting::TestPreemptive) {
            if (!contiguous_one_machine(SegmentKind::Test))
                out.push_back({ViolationCode::SplitTest, job.id, -1,
                               "test is interrupted or moves between machines"});
            if (!contiguous_one_machine(SegmentKind::Exec))
                out.push_back({ViolationCode::SplitExec, job.id, -1,
                               "execution is interrupted or moves between machines"});
        }
    }
    return out;
}

}  // namespace testsched
