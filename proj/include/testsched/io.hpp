#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "testsched/core.hpp"

namespace testsched {

// Instance files are JSON objects:
//   {"m": 2, "jobs": [{"t": 1.0, "u": 3.0, "p": 0.5}, ...], "adversary": null}
// A null processing time marks a deferred job whose value the named adversary
// decides at reveal time.
inline nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json jobs = nlohmann::json::array();
    for (const Job& j : inst.jobs) {
        nlohmann::json job{{"t", j.test_time}, {"u", j.upper_bound}};
        if (j.processing)
            job["p"] = *j.processing;
        else
            job["p"] = nullptr;
        jobs.push_back(std::move(job));
    }
    return nlohmann::json{{"m", inst.machines},
                          {"jobs", std::move(jobs)},
                          {"adversary", inst.adversary ? nlohmann::json(*inst.adversary)
                                                       : nlohmann::json(nullptr)}};
}

inline Instance instance_from_json(const nlohmann::json& data) {
    Instance inst;
    inst.machines = data.at("m").get<int>();
    int id = 0;
    for (const auto& job : data.at("jobs")) {
        Job j;
        j.id = id++;
        j.test_time = job.at("t").get<double>();
        j.upper_bound = job.at("u").get<double>();
        if (job.contains("p") && !job.at("p").is_null())
            j.processing = job.at("p").get<double>();
        inst.jobs.push_back(j);
    }
    if (data.contains("adversary") && !data.at("adversary").is_null())
        inst.adversary = data.at("adversary").get<std::string>();
    return inst;
}

inline void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << instance_to_json(inst).dump(2) << "\n";
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read instance file: " + path);
    nlohmann::json data;
    in >> data;
    Instance inst = instance_from_json(data);
    require_valid(inst);
    return inst;
}

}  // namespace testsched
