#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "fracperc/params.hpp"

namespace fracperc {

/// Parameter grid and trial budget for a batch of estimators. Maps 1:1 to
/// the JSON plan file: {N, d, p_grid, n_grid, trials, seed, estimators,
/// output_dir}; estimator-specific options ride along in `extras`.
struct ExperimentPlan {
    std::uint32_t N = 2;
    std::uint32_t d = 2;
    std::vector<double> p_grid;
    std::vector<int> n_grid;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    std::vector<std::string> estimators;
    std::string output_dir = ".";
    nlohmann::json extras = nlohmann::json::object();

    void validate() const;
    ProcessParams params_at(double p) const { return ProcessParams{N, d, p, seed}; }

    static ExperimentPlan from_json(const nlohmann::json& j);
    static ExperimentPlan from_file(const std::string& path);
    nlohmann::json to_json() const;
};

const std::vector<std::string>& known_estimators();

}  // namespace fracperc
