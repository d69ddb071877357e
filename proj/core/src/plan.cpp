#include "fracperc/plan.hpp"

#include <algorithm>
#include <fstream>

namespace fracperc {

const std::vector<std::string>& known_estimators() {
    static const std::vector<std::string> names = {"theta",         "phi", "zn",
                                                   "disjoint_tail", "r_epsilon_k", "h2"};
    return names;
}

void ExperimentPlan::validate() const {
    ProcessParams probe{N, d, p_grid.empty() ? 0.5 : p_grid.front(), seed};
    probe.validate();
    for (double p : p_grid)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p_grid: entries must be in [0,1]");
    if (p_grid.empty()) throw std::invalid_argument("p_grid: must be non-empty");
    if (n_grid.empty()) throw std::invalid_argument("n_grid: must be non-empty");
    for (int n : n_grid)
        if (n < 1) throw std::invalid_argument("n_grid: entries must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials: must be >= 1");
    if (estimators.empty()) throw std::invalid_argument("estimators: must be non-empty");
    const auto& known = known_estimators();
    for (const auto& e : estimators)
        if (std::find(known.begin(), known.end(), e) == known.end())
            throw std::invalid_argument("estimators: unknown estimator '" + e + "'");
}

ExperimentPlan ExperimentPlan::from_json(const nlohmann::json& j) {
    ExperimentPlan plan;
    plan.N = j.at("N").get<std::uint32_t>();
    plan.d = j.at("d").get<std::uint32_t>();
    plan.p_grid = j.at("p_grid").get<std::vector<double>>();
    plan.n_grid = j.at("n_grid").get<std::vector<int>>();
    plan.trials = j.at("trials").get<std::uint64_t>();
    plan.seed = j.at("seed").get<std::uint64_t>();
    plan.estimators = j.at("estimators").get<std::vector<std::string>>();
    plan.output_dir = j.value("output_dir", std::string("."));
    static const char* core_keys[] = {"N",    "d",          "p_grid",    "n_grid",
                                      "trials", "seed",     "estimators", "output_dir"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool core = false;
        for (const char* k : core_keys)
            if (it.key() == k) core = true;
        if (!core) plan.extras[it.key()] = it.value();
    }
    plan.validate();
    return plan;
}

ExperimentPlan ExperimentPlan::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("plan: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

nlohmann::json ExperimentPlan::to_json() const {
    nlohmann::json j = {{"N", N},           {"d", d},
                        {"p_grid", p_grid}, {"n_grid", n_grid},
                        {"trials", trials}, {"seed", seed},
                        {"estimators", estimators}, {"output_dir", output_dir}};
    for (auto it = extras.begin(); it != extras.end(); ++it) j[it.key()] = it.value();
    return j;
}

}  // namespace fracperc
