#pragma once

#include <cstdio>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "testsched/adversary.hpp"
#include "testsched/core.hpp"
#include "testsched/formulas.hpp"
#include "testsched/generators.hpp"
#include "testsched/io.hpp"
#include "testsched/offline.hpp"
#include "testsched/reveal.hpp"
#include "testsched/schedule.hpp"
#include "testsched/schedulers.hpp"

namespace testsched {

enum class SchedulerKind { Greedy, Sbs, UniformSbs, TwoPhases, UniformSmallLambda };

inline const char* to_string(SchedulerKind kind) {
    switch (kind) {
        case SchedulerKind::Greedy: return "greedy";
        case SchedulerKind::Sbs: return "sbs";
        case SchedulerKind::UniformSbs: return "uniform_sbs";
        case SchedulerKind::TwoPhases: return "two_phases";
        default: return "uniform_small_lambda";
    }
}

inline SchedulerKind parse_scheduler(const std::string& name) {
    if (name == "greedy") return SchedulerKind::Greedy;
    if (name == "sbs") return SchedulerKind::Sbs;
    if (name == "uniform_sbs") return SchedulerKind::UniformSbs;
    if (name == "two_phases") return SchedulerKind::TwoPhases;
    if (name == "uniform_small_lambda") return SchedulerKind::UniformSmallLambda;
    throw std::invalid_argument("unknown scheduler: " + name);
}

inline Setting parse_setting(const std::string& name) {
    if (name == "non-preemptive") return Setting::NonPreemptive;
    if (name == "test-preemptive") return Setting::TestPreemptive;
    if (name == "preemptive") return Setting::Preemptive;
    throw std::invalid_argument("unknown setting: " + name);
}

// Two Phases needs room to move a job between test and execution; the other
// schedulers emit plain non-preemptive schedules.
inline bool setting_allowed(SchedulerKind kind, Setting setting) {
    if (kind == SchedulerKind::TwoPhases)
        return setting == Setting::TestPreemptive || setting == Setting::Preemptive;
    return setting == Setting::NonPreemptive;
}

// Proven competitive ratio the scheduler is held against.
inline double theoretical_bound(SchedulerKind kind, int machines) {
    switch (kind) {
        case SchedulerKind::Greedy: return greedy_ratio(machines);
        case SchedulerKind::Sbs: return sbs_ratio(machines);
        case SchedulerKind::UniformSbs: return uniform_sbs_ratio(machines);
        case SchedulerKind::TwoPhases: return 2.0;
        default: return uniform_lambda_ratio(machines);
    }
}

inline SchedulerResult run_named_scheduler(SchedulerKind kind, const Instance& inst,
                                           RevealOracle& oracle, Setting setting,
                                           int cap = default_oracle_cap) {
    switch (kind) {
        case SchedulerKind::Greedy: return greedy(inst, oracle);
        case SchedulerKind::Sbs: return sbs(inst, oracle);
        case SchedulerKind::UniformSbs: return uniform_sbs(inst, oracle);
        case SchedulerKind::UniformSmallLambda: return uniform_small_lambda(inst, oracle);
        case SchedulerKind::TwoPhases: {
            OfflineSolverFn solver;
            if (setting == Setting::Preemptive)
                solver = [](const std::vector<double>& lengths, int m) {
                    return mcnaughton_offline_plan(lengths, m);
                };
            else
                solver = [cap](const std::vector<double>& lengths, int m) {
                    return exact_offline_plan(lengths, m, cap);
                };
            return two_phases(inst, oracle, solver);
        }
    }
    throw std::logic_error("unreachable scheduler kind");
}

// One full evaluation: run the scheduler against its reveal oracle, validate
// the emitted schedule, resolve the adversary's processing times and compute
// the offline optimum of the resolved instance.
struct RunOutcome {
    SchedulerResult result;
    Instance resolved;
    double alg = 0.0;
    double opt = 0.0;
    std::vector<Violation> violations;
};

inline RunOutcome evaluate_scheduler(SchedulerKind kind, const Instance& inst, Setting setting,
                                     int cap = default_oracle_cap) {
    auto oracle = make_reveal_oracle(inst);
    RunOutcome out;
    out.result = run_named_scheduler(kind, inst, *oracle, setting, cap);
    const auto revealed = out.result.trace.revealed_map();
    out.resolved = resolve_instance(inst, *oracle, revealed);
    out.alg = out.result.schedule.makespan();
    out.opt = opt_offline(out.resolved, setting, cap);
    out.violations = validate_schedule(out.result.schedule, inst, setting, revealed);
    return out;
}

struct GeneratorSource {
    std::string name;
    GeneratorOptions options;
    int count = 1;
};

struct ExperimentConfig {
    SchedulerKind scheduler = SchedulerKind::Greedy;
    Setting setting = Setting::NonPreemptive;
    std::vector<int> machine_counts;
    std::vector<std::string> instance_files;
    std::optional<GeneratorSource> generator;
    std::string csv_path;
    std::string json_path;
    int oracle_cap = default_oracle_cap;
};

inline ExperimentConfig config_from_json(const nlohmann::json& data) {
    ExperimentConfig config;
    config.scheduler = parse_scheduler(data.at("scheduler").get<std::string>());
    config.setting = parse_setting(data.at("setting").get<std::string>());
    if (!setting_allowed(config.scheduler, config.setting))
        throw std::invalid_argument(std::string("scheduler ") + to_string(config.scheduler) +
                                    " cannot run in the " + to_string(config.setting) +
                                    " setting");
    for (const auto& m : data.at("m")) config.machine_counts.push_back(m.get<int>());
    if (config.machine_counts.empty())
        throw std::invalid_argument("config needs at least one machine count");

    const auto& source = data.at("source");
    if (source.contains("files")) {
        for (const auto& f : source.at("files"))
            config.instance_files.push_back(f.get<std::string>());
    } else {
        GeneratorSource gen;
        gen.name = source.at("generator").get<std::string>();
        gen.count = source.value("count", 1);
        const bool random = gen.name.rfind("random", 0) == 0 || gen.name == "uniform_tests";
        if (random && !source.contains("seed"))
            throw std::invalid_argument("random generators need an explicit seed");
        gen.options.seed = source.value("seed", std::uint64_t{0});
        gen.options.jobs = source.value("jobs", gen.options.jobs);
        gen.options.test_max = source.value("test_max", gen.options.test_max);
        gen.options.upper_max = source.value("upper_max", gen.options.upper_max);
        gen.options.big_upper = source.value("big_upper", gen.options.big_upper);
        config.generator = std::move(gen);
    }
    if (data.contains("output")) {
        config.csv_path = data.at("output").value("csv", "");
        config.json_path = data.at("output").value("json", "");
    }
    config.oracle_cap = data.value("oracle_cap", default_oracle_cap);
    return config;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    nlohmann::json data;
    in >> data;
    return config_from_json(data);
}

struct ReportRow {
    std::string instance_id;
    int m = 0;
    int n = 0;
    std::string scheduler;
    std::string setting;
    double alg = 0.0;
    double opt = 0.0;
    double ratio = 0.0;
    double bound = 0.0;
    bool ok = false;
    std::string error;  // non-empty rows carry no numbers
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    std::map<std::pair<std::string, int>, double> max_ratio;  // per (scheduler, m)

    bool all_bounds_hold() const {
        for (const ReportRow& row : rows)
            if (row.error.empty() && !row.ok) return false;
        return true;
    }
};

inline ReportRow evaluate_row(SchedulerKind kind, Setting setting, const Instance& inst,
                              const std::string& instance_id, int cap) {
    ReportRow row;
    row.instance_id = instance_id;
    row.m = inst.machines;
    row.n = inst.job_count();
    row.scheduler = to_string(kind);
    row.setting = to_string(setting);
    try {
        RunOutcome outcome = evaluate_scheduler(kind, inst, setting, cap);
        if (!outcome.violations.empty())
            throw std::logic_error("schedule validation failed: " +
                                   to_string(outcome.violations.front()));
        if (!(outcome.opt > 0.0)) {
            row.error = "degenerate instance: offline optimum is 0";
            return row;
        }
        row.alg = outcome.alg;
        row.opt = outcome.opt;
        row.ratio = outcome.alg / outcome.opt;
        row.bound = theoretical_bound(kind, inst.machines);
        row.ok = row.ratio <= row.bound + 1e-9;
    } catch (const CapacityError& err) {
        row.error = err.what();
    }
    return row;
}

inline ExperimentReport run_experiment(const ExperimentConfig& config) {
    if (!setting_allowed(config.scheduler, config.setting))
        throw std::invalid_argument("scheduler/setting pair is not allowed");
    ExperimentReport report;
    const auto record = [&](const std::string& id, const Instance& inst) {
        ReportRow row =
            evaluate_row(config.scheduler, config.setting, inst, id, config.oracle_cap);
        if (row.error.empty()) {
            auto key = std::make_pair(row.scheduler, row.m);
            auto it = report.max_ratio.find(key);
            if (it == report.max_ratio.end() || row.ratio > it->second)
                report.max_ratio[key] = row.ratio;
        }
        report.rows.push_back(std::move(row));
    };

    // instance files carry their own machine count; the m list drives generators
    for (const std::string& path : config.instance_files) record(path, load_instance(path));
    if (config.generator) {
        for (int m : config.machine_counts) {
            for (int k = 0; k < config.generator->count; ++k) {
                GeneratorOptions opt = config.generator->options;
                opt.seed += static_cast<std::uint64_t>(k);
                std::ostringstream id;
                id << config.generator->name << "-m" << m << "-seed" << opt.seed;
                record(id.str(), generate_instance(config.generator->name, m, opt));
            }
        }
    }
    return report;
}

namespace detail {
inline std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}
}  // namespace detail

inline void write_csv(const ExperimentReport& report, std::ostream& out) {
    out << "instance_id,m,n,scheduler,setting,alg,opt,ratio,bound,ok\n";
    for (const ReportRow& row : report.rows) {
        out << row.instance_id << ',' << row.m << ',' << row.n << ',' << row.scheduler << ','
            << row.setting << ',';
        if (row.error.empty())
            out << detail::format_number(row.alg) << ',' << detail::format_number(row.opt) << ','
                << detail::format_number(row.ratio) << ',' << detail::format_number(row.bound)
                << ',' << (row.ok ? "true" : "false") << '\n';
        else
            out << ",,,," << "error\n";
    }
}

inline nlohmann::json report_to_json(const ExperimentReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ReportRow& row : report.rows) {
        nlohmann::json entry{{"instance_id", row.instance_id}, {"m", row.m},     {"n", row.n},
                             {"scheduler", row.scheduler},     {"setting", row.setting}};
        if (row.error.empty()) {
            entry["alg"] = row.alg;
            entry["opt"] = row.opt;
            entry["ratio"] = row.ratio;
            entry["bound"] = row.bound;
            entry["ok"] = row.ok;
        } else {
            entry["error"] = row.error;
        }
        rows.push_back(std::move(entry));
    }
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& [key, ratio] : report.max_ratio)
        summary.push_back({{"scheduler", key.first}, {"m", key.second}, {"max_ratio", ratio}});
    return nlohmann::json{{"rows", std::move(rows)}, {"summary", std::move(summary)}};
}

// Closed-form table of ratios and lower bounds per machine count, printed to
// four decimals.
struct BoundsRow {
    std::string name;
    std::vector<double> values;
};

inline std::vector<BoundsRow> bounds_table(const std::vector<int>& machine_counts) {
    std::vector<BoundsRow> rows{{"greedy", {}},
                                {"sbs", {}},
                                {"uniform_sbs", {}},
                                {"lower_bound", {}},
                                {"lower_bound_preemptive", {}},
                                {"uniform_lambda1", {}}};
    for (int m : machine_counts) {
        rows[0].values.push_back(greedy_ratio(m));
        rows[1].values.push_back(sbs_ratio(m));
        rows[2].values.push_back(uniform_sbs_ratio(m));
        rows[3].values.push_back(lower_bound_nonpreemptive(m));
        rows[4].values.push_back(lower_bound_preemptive(m));
        rows[5].values.push_back(uniform_lambda_ratio(m));
    }
    return rows;
}

inline void print_bounds_table(std::ostream& out, const std::vector<int>& machine_counts) {
    const auto rows = bounds_table(machine_counts);
    out << std::left << std::setw(24) << "m" << std::right;
    for (int m : machine_counts) out << std::setw(10) << m;
    out << '\n' << std::fixed << std::setprecision(4);
    for (const BoundsRow& row : rows) {
        out << std::left << std::setw(24) << row.name << std::right;
        for (double v : row.values) out << std::setw(10) << v;
        out << '\n';
    }
    out.unsetf(std::ios_base::floatfield);
}

}  // namespace testsched
