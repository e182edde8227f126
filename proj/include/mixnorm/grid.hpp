#pragma once

#include <memory>
#include <vector>

#include "mixnorm/axis.hpp"
#include "mixnorm/errors.hpp"

namespace mixnorm {

/// Product of one or more axes. Cells are flattened row-major: the first
/// axis varies slowest, the last axis fastest.
class ProductGrid {
public:
    explicit ProductGrid(std::vector<Axis> axes) : axes_(std::move(axes)) {
        if (axes_.empty()) raise(errc::empty_axis, "product grid needs at least one axis");
        cells_ = 1;
        for (const Axis& a : axes_) cells_ *= a.size();
    }

    const std::vector<Axis>& axes() const { return axes_; }
    const Axis& axis(std::size_t k) const { return axes_.at(k); }
    std::size_t rank() const { return axes_.size(); }
    std::size_t cell_count() const { return cells_; }

    std::vector<std::size_t> shape() const {
        std::vector<std::size_t> s(axes_.size());
        for (std::size_t k = 0; k < axes_.size(); ++k) s[k] = axes_[k].size();
        return s;
    }

    std::size_t flat_index(const std::vector<std::size_t>& multi) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < axes_.size(); ++k) idx = idx * axes_[k].size() + multi[k];
        return idx;
    }

    /// Product of the per-axis weights along the cell's coordinates.
    double cell_weight(std::size_t flat) const {
        double w = 1.0;
        for (std::size_t k = axes_.size(); k-- > 0;) {
            const std::size_t n = axes_[k].size();
            w *= axes_[k].weights()[flat % n];
            flat /= n;
        }
        return w;
    }

    friend bool operator==(const ProductGrid& a, const ProductGrid& b) { return a.axes_ == b.axes_; }

private:
    std::vector<Axis> axes_;
    std::size_t cells_;
};

using GridPtr = std::shared_ptr<const ProductGrid>;

inline GridPtr make_grid(std::vector<Axis> axes) {
    return std::make_shared<const ProductGrid>(std::move(axes));
}

inline bool same_grid(const GridPtr& a, const GridPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

} // namespace mixnorm
