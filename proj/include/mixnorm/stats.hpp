#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "mixnorm/errors.hpp"

namespace mixnorm {

/// Two-sided 95% normal quantile used for upper confidence limits.
inline constexpr double z_975 = 1.959963984540054;

/// Kolmogorov-Smirnov two-sample statistic: sup over x of the difference of
/// empirical CDFs. Ties are handled by advancing both samples past each
/// distinct value before comparing.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) raise(errc::empty_sample, "ks_two_sample needs two nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// Asymptotic two-sample KS critical value at the 1% level with r samples
/// per side: 1.63 * sqrt((r + r) / (r * r)).
inline double ks_critical_1pct(std::size_t r_per_side) {
    return 1.63 * std::sqrt(2.0 / static_cast<double>(r_per_side));
}

/// Monte Carlo estimate of a moment root (E Y)^{1/order} from replica
/// samples of Y >= 0, with a delta-method standard error and an upper 95%
/// confidence limit obtained by transforming the mean's CI endpoint (the
/// transform is monotone, so ciUpper95 >= value always).
struct MomentEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double ci_upper95 = 0.0;
    std::size_t replicas = 0;
};

inline MomentEstimate estimate_moment_root(const std::vector<double>& powers, double order) {
    if (powers.empty()) raise(errc::empty_sample, "moment estimate needs at least one replica");
    if (!(order >= 1.0)) raise(errc::invalid_argument, "moment order must be >= 1");
    const auto r = static_cast<double>(powers.size());
    double mean = 0.0;
    for (double y : powers) mean += y;
    mean /= r;
    double var = 0.0;
    if (powers.size() > 1) {
        for (double y : powers) var += (y - mean) * (y - mean);
        var /= r - 1.0;
    }
    const double se_mean = std::sqrt(var / r);
    MomentEstimate est;
    est.replicas = powers.size();
    est.value = mean <= 0.0 ? 0.0 : std::pow(mean, 1.0 / order);
    est.std_error = mean <= 0.0 ? 0.0 : se_mean * est.value / (order * mean);
    const double upper = mean + z_975 * se_mean;
    est.ci_upper95 = upper <= 0.0 ? 0.0 : std::pow(upper, 1.0 / order);
    return est;
}

} // namespace mixnorm
