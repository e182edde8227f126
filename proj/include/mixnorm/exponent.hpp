#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mixnorm/errors.hpp"

namespace mixnorm {

/// Per-axis exponent vector for iterated norms. Each component lies in
/// [1, inf); the derived maximum pbar drives the moment-order bookkeeping.
class ExponentVector {
public:
    explicit ExponentVector(std::vector<double> components) : components_(std::move(components)) {
        if (components_.empty()) raise(errc::invalid_argument, "exponent vector is empty");
        for (double p : components_) {
            if (!std::isfinite(p) || p < 1.0)
                raise(errc::invalid_argument, "exponent " + std::to_string(p) + " outside [1, inf)");
        }
    }

    const std::vector<double>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }
    double operator[](std::size_t k) const { return components_[k]; }

    double pbar() const { return *std::max_element(components_.begin(), components_.end()); }

private:
    std::vector<double> components_;
};

} // namespace mixnorm
