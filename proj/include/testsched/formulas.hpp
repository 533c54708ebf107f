#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace testsched {

// Golden ratio, the optimal single-job testing threshold.
inline const double golden_ratio = (1.0 + std::sqrt(5.0)) / 2.0;

namespace detail {
inline double checked_m(int machines) {
    if (machines < 1) throw std::invalid_argument("machine count must be at least 1");
    return static_cast<double>(machines);
}
}  // namespace detail

// Testing threshold of the SBS algorithm. Increases from T(1) = golden ratio
// towards roughly 2.0678 and balances the two worst cases of the analysis.
inline double sbs_threshold(int machines) {
    const double m = detail::checked_m(machines);
    const double s5 = std::sqrt(5.0);
    const double root = std::sqrt((38.0 + 6.0 * s5) * m * m - 4.0 * (11.0 + s5) * m + 12.0);
    return ((3.0 + s5) * m - 2.0 + root) / (6.0 * m - 2.0);
}

// Competitive ratio of SBS: T(m) * (3/2 - 1/(2m)), approaching 3.1016.
inline double sbs_ratio(int machines) {
    const double m = detail::checked_m(machines);
    return sbs_threshold(machines) * (1.5 - 0.5 / m);
}

// Testing threshold of Uniform-SBS, from golden ratio towards 2.
inline double uniform_sbs_threshold(int machines) {
    const double m = detail::checked_m(machines);
    const double root = std::sqrt(16.0 * m * m - 14.0 * m + 3.0);
    return (2.0 * m - 1.0 + root) / (3.0 * m - 1.0);
}

// Competitive ratio of Uniform-SBS: T1(m) * (3/2 - 1/(2m)), approaching 3.
inline double uniform_sbs_ratio(int machines) {
    const double m = detail::checked_m(machines);
    return uniform_sbs_threshold(machines) * (1.5 - 0.5 / m);
}

// Competitive ratio of the greedy list-scheduling extension.
inline double greedy_ratio(int machines) {
    const double m = detail::checked_m(machines);
    return golden_ratio * (2.0 - 1.0 / m);
}

// Best known lower bound for deterministic algorithms, non-preemptive setting.
inline double lower_bound_nonpreemptive(int machines) {
    const double m = detail::checked_m(machines);
    return std::max(golden_ratio, 2.0 - 1.0 / m);
}

// Lower bound in the preemptive setting; exceeds the golden ratio once m >= 5.
inline double lower_bound_preemptive(int machines) {
    const double m = detail::checked_m(machines);
    return std::max(golden_ratio, 2.0 - 2.0 / m + 1.0 / (m * m));
}

// Ratio of the pin-then-LPT algorithm for uniform instances with at most one
// uncertain job per machine.
inline double uniform_lambda_ratio(int machines) {
    const double m = detail::checked_m(machines);
    return golden_ratio * (4.0 / 3.0 - 1.0 / (3.0 * m));
}

namespace detail {
inline void check_nonnegative(const std::vector<double>& values, const char* what) {
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative length");
}
}  // namespace detail

// Average machine load: (sum of lengths) / m. Lower bound on any makespan.
inline double average_load_bound(const std::vector<double>& lengths, int machines) {
    const double m = detail::checked_m(machines);
    detail::check_nonnegative(lengths, "average_load_bound");
    return std::accumulate(lengths.begin(), lengths.end(), 0.0) / m;
}

// Largest single length. Lower bound on any makespan.
inline double max_length_bound(const std::vector<double>& lengths) {
    detail::check_nonnegative(lengths, "max_length_bound");
    double best = 0.0;
    for (double v : lengths) best = std::max(best, v);
    return best;
}

// Sum of the m-th and (m+1)-th largest lengths; with more than m jobs some
// machine has to run two of the m+1 largest. Missing ranks count as 0.
inline double mth_pair_bound(std::vector<double> lengths, int machines) {
    detail::checked_m(machines);
    detail::check_nonnegative(lengths, "mth_pair_bound");
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    const auto rank = [&](int r) {
        return r <= static_cast<int>(lengths.size()) ? lengths[r - 1] : 0.0;
    };
    return rank(machines) + rank(machines + 1);
}

}  // namespace testsched
