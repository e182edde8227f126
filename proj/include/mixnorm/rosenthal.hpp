#pragma once

#include <cmath>
#include <string>

#include "mixnorm/errors.hpp"

namespace mixnorm {

/// Multiplicative constants of the Rosenthal moment bound. The symmetric
/// case admits the smaller front constant.
inline constexpr double rosenthal_front_constant = 1.77638;
inline constexpr double rosenthal_front_constant_symmetric = 1.53572;

struct RosenthalQuery {
    double p = 2.0;
    bool symmetric = false;
};

/// Upper bound for the Rosenthal constant K_R(p):  C * p / (e * ln p),
/// with C = 1.77638 (1.53572 for symmetric summands). The logarithm is the
/// natural log, as the explicit factor e indicates. Domain p >= 2: below 2
/// the bound is vacuous and the underlying moment inequality is not used.
inline double rosenthal_bound(const RosenthalQuery& q) {
    if (!std::isfinite(q.p) || q.p < 2.0)
        raise(errc::moment_order_too_small, "rosenthal_bound needs p >= 2, got " + std::to_string(q.p));
    const double c = q.symmetric ? rosenthal_front_constant_symmetric : rosenthal_front_constant;
    return c * q.p / (std::exp(1.0) * std::log(q.p));
}

inline double rosenthal_bound(double p, bool symmetric = false) { return rosenthal_bound(RosenthalQuery{p, symmetric}); }

} // namespace mixnorm
