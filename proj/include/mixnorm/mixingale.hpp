#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mixnorm/errors.hpp"

namespace mixnorm {

/// Mixing-coefficient schedule k |-> beta(k), k >= 1, together with the
/// information needed to certify series truncation. Three flavors:
///  - finite support: beta is an explicit list, exactly zero beyond it;
///  - geometric: beta(k) = amplitude * ratio^k, an analytic tail majorant;
///  - uncertified: an arbitrary sequence probed up to kMax. Uncertified
///    schedules can only be summed when a declared-nonincreasing sequence
///    hits exact zero (which proves finite support); otherwise evaluation
///    refuses rather than silently truncating.
class MixingSchedule {
public:
    static MixingSchedule zero() { return finite({}); }

    static MixingSchedule finite(std::vector<double> beta) {
        MixingSchedule s;
        s.kind_ = Kind::finite;
        s.values_ = std::move(beta);
        s.validate_values();
        return s;
    }

    static MixingSchedule geometric(double amplitude, double ratio) {
        if (!std::isfinite(amplitude) || amplitude < 0.0)
            raise(errc::invalid_argument, "geometric schedule needs amplitude >= 0");
        if (!std::isfinite(ratio) || ratio < 0.0) raise(errc::invalid_argument, "geometric schedule needs ratio >= 0");
        MixingSchedule s;
        s.kind_ = Kind::geometric;
        s.amplitude_ = amplitude;
        s.ratio_ = ratio;
        return s;
    }

    static MixingSchedule uncertified(std::function<double(std::size_t)> beta, std::size_t k_max,
                                      bool nonincreasing = false) {
        if (!beta) raise(errc::invalid_argument, "uncertified schedule needs a sequence");
        if (k_max == 0) raise(errc::invalid_argument, "uncertified schedule needs kMax >= 1");
        MixingSchedule s;
        s.kind_ = Kind::uncertified;
        s.fn_ = std::move(beta);
        s.k_max_ = k_max;
        s.nonincreasing_ = nonincreasing;
        return s;
    }

    /// beta(k) for k >= 1.
    double beta(std::size_t k) const {
        if (k == 0) raise(errc::invalid_argument, "beta is indexed from k = 1");
        double b = 0.0;
        switch (kind_) {
        case Kind::finite: b = k <= values_.size() ? values_[k - 1] : 0.0; break;
        case Kind::geometric: b = amplitude_ * std::pow(ratio_, static_cast<double>(k)); break;
        case Kind::uncertified: b = fn_(k); break;
        }
        if (!std::isfinite(b) || b < 0.0)
            raise(errc::invalid_argument, "beta(" + std::to_string(k) + ") = " + std::to_string(b) + " is invalid");
        return b;
    }

    bool finitely_supported() const { return kind_ == Kind::finite; }
    bool has_tail_certificate() const { return kind_ != Kind::uncertified; }
    std::size_t support() const { return kind_ == Kind::finite ? values_.size() : 0; }
    std::size_t k_max() const { return k_max_; }
    bool nonincreasing() const { return nonincreasing_; }
    double amplitude() const { return amplitude_; }
    double ratio() const { return ratio_; }

private:
    enum class Kind { finite, geometric, uncertified };

    void validate_values() const {
        for (double b : values_)
            if (!std::isfinite(b) || b < 0.0) raise(errc::invalid_argument, "beta values must be finite and >= 0");
    }

    Kind kind_ = Kind::finite;
    std::vector<double> values_;
    double amplitude_ = 0.0;
    double ratio_ = 0.0;
    std::function<double(std::size_t)> fn_;
    std::size_t k_max_ = 0;
    bool nonincreasing_ = false;
};

namespace detail {

/// Certified remainder of sum_{k > K} A r^k (k+1)^s: once the term ratio
/// r * ((k+2)/(k+1))^s is provably below 1 for all k > K, the tail is
/// dominated by a geometric series starting at term K+1.
inline double geometric_tail_remainder(double amplitude, double ratio, double s, std::size_t K) {
    const double growth = s > 0.0 ? std::pow((static_cast<double>(K) + 2.0) / (static_cast<double>(K) + 1.0), s) : 1.0;
    const double q = ratio * growth;
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    const double first = amplitude * std::pow(ratio, static_cast<double>(K + 1)) * std::pow(static_cast<double>(K + 2), s);
    return first / (1.0 - q);
}

} // namespace detail

/// Mixingale Rosenthal coefficient
///   K_M(m) = m * [ sum_{k >= 1} beta(k) * (k+1)^{(m-2)/2} ]^{1/m}.
///
/// The series is summed with a certified remainder: finite support sums
/// exactly; a geometric schedule is truncated once the analytic tail bound
/// shrinks the bracket on K_M below tol, and the certified UPPER end of the
/// bracket is returned (safe for use as a bound multiplier). Uncertified
/// schedules raise ConvergenceUndecidable unless monotonicity plus an exact
/// zero prove finite support; a geometric certificate with ratio >= 1 raises
/// DivergentSeries.
inline double mixingale_coefficient(double m, const MixingSchedule& s, double tol = 1e-12) {
    if (!std::isfinite(m) || m < 1.0) raise(errc::invalid_argument, "mixingale coefficient needs m >= 1");
    if (!(tol > 0.0)) raise(errc::invalid_argument, "tolerance must be positive");
    const double power = (m - 2.0) / 2.0;

    auto term = [&](std::size_t k, double beta) { return beta * std::pow(static_cast<double>(k) + 1.0, power); };
    auto km = [&](double series) { return series == 0.0 ? 0.0 : m * std::pow(series, 1.0 / m); };

    if (s.finitely_supported()) {
        double sum = 0.0;
        for (std::size_t k = 1; k <= s.support(); ++k) sum += term(k, s.beta(k));
        return km(sum);
    }

    if (s.has_tail_certificate()) {
        // Geometric: beta(k) = A r^k exactly.
        if (s.amplitude() == 0.0) return 0.0;
        if (s.ratio() >= 1.0)
            raise(errc::divergent_series, "geometric schedule with ratio " + std::to_string(s.ratio()) +
                                              " >= 1 has a divergent coefficient series");
        double partial = 0.0;
        for (std::size_t k = 1; k <= 1u << 20; ++k) {
            partial += term(k, s.beta(k));
            const double rem = detail::geometric_tail_remainder(s.amplitude(), s.ratio(), power, k);
            if (std::isfinite(rem) && km(partial + rem) - km(partial) < tol) return km(partial + rem);
        }
        raise(errc::convergence_undecidable, "geometric tail did not certify within the iteration budget");
    }

    // Uncertified sequence: only a proven finite support is acceptable.
    double sum = 0.0;
    for (std::size_t k = 1; k <= s.k_max(); ++k) {
        const double b = s.beta(k);
        if (b == 0.0 && s.nonincreasing()) return km(sum);
        sum += term(k, b);
    }
    raise(errc::convergence_undecidable,
          "no tail certificate and beta has not provably vanished by kMax = " + std::to_string(s.k_max()));
}

} // namespace mixnorm
