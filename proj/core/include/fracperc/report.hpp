#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace fracperc {

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 1.0;
    double level = 0.95;
    std::string method = "wilson";
};

/// Two-sided normal quantile for a central interval of the given level.
double z_for_level(double level);

/// Wilson score interval for a binomial proportion.
ConfidenceInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double level);

/// Named scalar estimate with provenance; the common currency of every
/// Monte Carlo experiment in the toolkit.
struct EstimateReport {
    std::string name;
    double estimate = 0.0;
    ConfidenceInterval ci;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    nlohmann::json metadata = nlohmann::json::object();

    nlohmann::json to_json() const;
};

}  // namespace fracperc
