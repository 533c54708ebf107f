// Command-line front end: closed-form bound tables, instance generation,
// batch experiment runs, the two-machine lower-bound game, and instance file
// validation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "testsched/experiment.hpp"
#include "testsched/game.hpp"
#include "testsched/generators.hpp"
#include "testsched/io.hpp"

namespace {

int env_oracle_cap(int fallback) {
    if (const char* raw = std::getenv("TESTSCHED_ORACLE_CAP")) {
        const int cap = std::atoi(raw);
        if (cap > 0) return cap;
    }
    return fallback;
}

void write_report(const testsched::ExperimentReport& report, const std::string& path,
                  const std::string& format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    if (format == "json")
        out << testsched::report_to_json(report).dump(2) << "\n";
    else
        testsched::write_csv(report, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scheduling with testing on identical machines"};
    app.require_subcommand(1);

    // bounds
    std::vector<int> bounds_m{1, 2, 3, 4, 5, 10, 100};
    auto* cmd_bounds = app.add_subcommand(
        "bounds", "Print per-m competitive ratios and lower bounds");
    cmd_bounds->add_option("--m", bounds_m, "Machine counts")->delimiter(',');

    // generate
    std::string gen_name;
    std::vector<int> gen_m;
    testsched::GeneratorOptions gen_opt;
    std::string gen_out;
    bool gen_seed_given = false;
    auto* cmd_generate = app.add_subcommand("generate", "Write an instance file");
    cmd_generate->add_option("generator", gen_name, "One of: random_uniform, random_pareto, "
                             "uniform_tests, crowded_machine, late_test, greedy_tightness, "
                             "fully_online_lb2")
        ->required();
    cmd_generate->add_option("--m", gen_m, "Machine count")->delimiter(',')->required();
    cmd_generate->add_option("--n", gen_opt.jobs, "Job count for random generators");
    cmd_generate->add_option("--seed", gen_opt.seed, "Random seed")
        ->each([&](const std::string&) { gen_seed_given = true; });
    cmd_generate->add_option("--t-max", gen_opt.test_max, "Largest random test time");
    cmd_generate->add_option("--u-max", gen_opt.upper_max, "Largest random upper bound");
    cmd_generate->add_option("--big-upper", gen_opt.big_upper,
                             "Hidden upper bound of the adversarial families");
    cmd_generate->add_option("--out", gen_out, "Output path")->required();

    // run
    std::string run_config, run_out, run_format = "csv";
    auto* cmd_run = app.add_subcommand("run", "Run a batch experiment from a config file");
    cmd_run->add_option("--config", run_config, "Experiment config (JSON)")->required();
    cmd_run->add_option("--out", run_out, "Report path (default: CSV to stdout)");
    cmd_run->add_option("--format", run_format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}));

    // game
    testsched::GameParams game_params{1.0, testsched::golden_ratio,
                                      testsched::golden_ratio * testsched::golden_ratio, 3.8675};
    bool game_optimize = false;
    long game_budget = 100000;
    auto* cmd_game = app.add_subcommand(
        "game", "Evaluate or locally optimize the two-machine lower-bound game");
    cmd_game->add_option("--b", game_params.b, "Test time of job 2");
    cmd_game->add_option("--c", game_params.c, "Upper bound of job 2");
    cmd_game->add_option("--d", game_params.d, "Test time of job 3");
    cmd_game->add_option("--e", game_params.e, "Upper bound of job 3");
    cmd_game->add_flag("--optimize", game_optimize, "Run the pattern search");
    cmd_game->add_option("--budget", game_budget, "Evaluation budget of the search");

    // validate
    std::vector<std::string> validate_paths;
    auto* cmd_validate = app.add_subcommand("validate", "Check instance files");
    cmd_validate->add_option("files", validate_paths, "Instance files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_bounds->parsed()) {
            testsched::print_bounds_table(std::cout, bounds_m);
            return 0;
        }

        if (cmd_generate->parsed()) {
            if (gen_m.size() != 1)
                throw std::invalid_argument("generate needs exactly one machine count");
            const bool random = gen_name.rfind("random", 0) == 0 || gen_name == "uniform_tests";
            if (random && !gen_seed_given)
                throw std::invalid_argument("random generators need an explicit --seed");
            const testsched::Instance inst =
                testsched::generate_instance(gen_name, gen_m.front(), gen_opt);
            testsched::save_instance(inst, gen_out);
            std::cout << "wrote " << gen_out << " (" << inst.job_count() << " jobs, m="
                      << inst.machines << ")\n";
            return 0;
        }

        if (cmd_run->parsed()) {
            testsched::ExperimentConfig config = testsched::load_config(run_config);
            config.oracle_cap = env_oracle_cap(config.oracle_cap);
            const testsched::ExperimentReport report = testsched::run_experiment(config);
            if (!config.csv_path.empty()) write_report(report, config.csv_path, "csv");
            if (!config.json_path.empty()) write_report(report, config.json_path, "json");
            if (!run_out.empty())
                write_report(report, run_out, run_format);
            else if (config.csv_path.empty() && config.json_path.empty())
                testsched::write_csv(report, std::cout);
            for (const auto& [key, ratio] : report.max_ratio)
                std::cerr << "max ratio " << key.first << " m=" << key.second << ": " << ratio
                          << "\n";
            return report.all_bounds_hold() ? 0 : 1;
        }

        if (cmd_game->parsed()) {
            const auto values = testsched::m2_game_expressions(game_params);
            static const char* labels[] = {"stacked, job 2 tested:   ",
                                           "stacked, job 2 untested: ",
                                           "spread, both tested:     ",
                                           "spread, only 2 tested:   ",
                                           "spread, only 3 tested:   ",
                                           "spread, none tested:     "};
            std::cout << "params: b=" << game_params.b << " c=" << game_params.c
                      << " d=" << game_params.d << " e=" << game_params.e << "\n";
            for (std::size_t i = 0; i < values.size(); ++i)
                std::cout << labels[i] << values[i] << "\n";
            std::cout << "guaranteed ratio: " << testsched::m2_game_value(game_params) << "\n";
            if (game_optimize) {
                const auto best = testsched::m2_game_optimize(game_params, game_budget);
                std::cout << "optimized: b=" << best.params.b << " c=" << best.params.c
                          << " d=" << best.params.d << " e=" << best.params.e
                          << " value=" << best.value << " (" << best.evaluations
                          << " evaluations)\n";
            }
            return 0;
        }

        if (cmd_validate->parsed()) {
            bool all_ok = true;
            for (const std::string& path : validate_paths) {
                std::ifstream in(path);
                if (!in) throw std::runtime_error("cannot read instance file: " + path);
                nlohmann::json data;
                in >> data;
                const testsched::Instance inst = testsched::instance_from_json(data);
                auto problems = testsched::validate_instance(inst);
                if (inst.adversary) {
                    try {
                        testsched::make_reveal_oracle(inst);
                    } catch (const std::invalid_argument& err) {
                        problems.push_back(err.what());
                    }
                }
                if (problems.empty()) {
                    std::cout << path << ": ok\n";
                } else {
                    all_ok = false;
                    for (const std::string& p : problems)
                        std::cout << path << ": " << p << "\n";
                }
            }
            return all_ok ? 0 : 1;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
