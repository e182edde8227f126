#pragma once

#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "mixnorm/errors.hpp"

namespace mixnorm {

/// One coordinate direction of a product grid: a finite weighted point set.
/// Weights are the discretized measure masses; integrals over this axis
/// become weighted sums. Points are coordinates and must be distinct.
class Axis {
public:
    Axis(std::string label, std::vector<double> points, std::vector<double> weights)
        : label_(std::move(label)), points_(std::move(points)), weights_(std::move(weights)) {
        validate();
    }

    const std::string& label() const { return label_; }
    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return points_.size(); }

    /// Probability axis: weights sum to 1 within 1e-12.
    bool is_probability() const {
        double s = 0.0;
        for (double w : weights_) s += w;
        return std::abs(s - 1.0) <= 1e-12;
    }

    friend bool operator==(const Axis& a, const Axis& b) {
        return a.label_ == b.label_ && a.points_ == b.points_ && a.weights_ == b.weights_;
    }

private:
    void validate() const {
        if (points_.empty()) raise(errc::empty_axis, "axis '" + label_ + "' has no points");
        if (weights_.size() != points_.size())
            raise(errc::dimension_mismatch,
                  "axis '" + label_ + "': " + std::to_string(points_.size()) + " points vs " +
                      std::to_string(weights_.size()) + " weights");
        bool any_positive = false;
        for (double w : weights_) {
            if (!std::isfinite(w)) raise(errc::negative_weight, "axis '" + label_ + "' has a non-finite weight");
            if (w < 0.0) raise(errc::negative_weight, "axis '" + label_ + "' has a negative weight");
            if (w > 0.0) any_positive = true;
        }
        if (!any_positive) raise(errc::all_zero_weights, "axis '" + label_ + "' has no positive weight");
        std::unordered_set<double> seen;
        for (double p : points_) {
            if (!std::isfinite(p)) raise(errc::duplicate_points, "axis '" + label_ + "' has a non-finite point");
            if (!seen.insert(p).second)
                raise(errc::duplicate_points, "axis '" + label_ + "' has duplicate point " + std::to_string(p));
        }
    }

    std::string label_;
    std::vector<double> points_;
    std::vector<double> weights_;
};

inline Axis build_axis(std::string label, std::vector<double> points, std::vector<double> weights) {
    return Axis(std::move(label), std::move(points), std::move(weights));
}

/// Axis with uniform probability weights 1/R, used as the replica (sample)
/// direction of an ensemble.
inline Axis replica_axis(std::size_t replicas) {
    if (replicas == 0) raise(errc::empty_axis, "replica axis needs at least one replica");
    std::vector<double> pts(replicas), w(replicas, 1.0 / static_cast<double>(replicas));
    for (std::size_t i = 0; i < replicas; ++i) pts[i] = static_cast<double>(i);
    return Axis("omega", std::move(pts), std::move(w));
}

} // namespace mixnorm
