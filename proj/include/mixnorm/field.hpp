#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mixnorm/axis.hpp"
#include "mixnorm/errors.hpp"
#include "mixnorm/grid.hpp"

namespace mixnorm {

/// Real-valued function on a product grid, stored as the row-major
/// flattening of its value tensor (one index per axis, first axis slowest).
class GridField {
public:
    GridField(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
        if (!grid_) raise(errc::invalid_argument, "field needs a grid");
        if (values_.size() != grid_->cell_count())
            raise(errc::dimension_mismatch, "field has " + std::to_string(values_.size()) + " values for " +
                                                std::to_string(grid_->cell_count()) + " cells");
        for (double v : values_)
            if (!std::isfinite(v)) raise(errc::invalid_argument, "field value is not finite");
    }

    static GridField zeros(GridPtr grid) {
        std::vector<double> v(grid->cell_count(), 0.0);
        return GridField(std::move(grid), std::move(v));
    }

    static GridField constant(GridPtr grid, double value) {
        std::vector<double> v(grid->cell_count(), value);
        return GridField(std::move(grid), std::move(v));
    }

    const GridPtr& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    GridPtr grid_;
    std::vector<double> values_;
};

inline GridField operator+(const GridField& a, const GridField& b) {
    if (!same_grid(a.grid(), b.grid())) raise(errc::grid_mismatch, "field addition across different grids");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
    return GridField(a.grid(), std::move(v));
}

inline GridField operator*(double c, const GridField& f) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * f[i];
    return GridField(f.grid(), std::move(v));
}

/// A finite sample of fields on a shared grid, indexed by a probability
/// replica axis. This is the discretized (space x sample) product on which
/// the ordered norms and the permutation check operate.
class FieldEnsemble {
public:
    FieldEnsemble(Axis replica, std::vector<GridField> fields)
        : replica_(std::move(replica)), fields_(std::move(fields)) {
        if (fields_.empty()) raise(errc::empty_list, "ensemble has no fields");
        if (replica_.size() != fields_.size())
            raise(errc::dimension_mismatch, "replica axis size " + std::to_string(replica_.size()) +
                                                " vs " + std::to_string(fields_.size()) + " fields");
        double s = 0.0;
        for (double w : replica_.weights()) s += w;
        if (std::abs(s - 1.0) > 1e-12)
            raise(errc::validation, "replica weights sum to " + std::to_string(s) + ", expected 1");
        for (const GridField& f : fields_)
            if (!same_grid(f.grid(), fields_.front().grid()))
                raise(errc::grid_mismatch, "ensemble fields on different grids");
    }

    /// Ensemble with uniform replica weights 1/R.
    static FieldEnsemble uniform(std::vector<GridField> fields) {
        if (fields.empty()) raise(errc::empty_list, "ensemble has no fields");
        Axis rep = replica_axis(fields.size());
        return FieldEnsemble(std::move(rep), std::move(fields));
    }

    const Axis& replica() const { return replica_; }
    const std::vector<GridField>& fields() const { return fields_; }
    const GridPtr& grid() const { return fields_.front().grid(); }
    std::size_t replicas() const { return fields_.size(); }

private:
    Axis replica_;
    std::vector<GridField> fields_;
};

} // namespace mixnorm
