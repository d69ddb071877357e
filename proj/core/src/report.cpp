#include "fracperc/report.hpp"

#include <cmath>
#include <stdexcept>

namespace fracperc {

namespace {

// Acklam's rational approximation of the inverse normal CDF (|err| < 1.15e-9).
double inverse_normal_cdf(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile: p must be in (0,1)");
    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > phigh) {
        double q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

double z_for_level(double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("ci level: must be in (0,1)");
    return inverse_normal_cdf(0.5 + level / 2.0);
}

ConfidenceInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double level) {
    if (trials == 0) throw std::invalid_argument("wilson: trials must be >= 1");
    if (successes > trials) throw std::invalid_argument("wilson: successes exceed trials");
    double z = z_for_level(level);
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2 * n)) / denom;
    double half = z / denom * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n));
    ConfidenceInterval ci;
    ci.lo = std::max(0.0, center - half);
    ci.hi = std::min(1.0, center + half);
    ci.level = level;
    ci.method = "wilson";
    return ci;
}

nlohmann::json EstimateReport::to_json() const {
    return nlohmann::json{{"name", name},
                          {"estimate", estimate},
                          {"ci_lo", ci.lo},
                          {"ci_hi", ci.hi},
                          {"ci_level", ci.level},
                          {"ci_method", ci.method},
                          {"samples", samples},
                          {"seed", seed},
                          {"metadata", metadata}};
}

}  // namespace fracperc
