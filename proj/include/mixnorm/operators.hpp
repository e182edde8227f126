#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mixnorm/errors.hpp"
#include "mixnorm/exponent.hpp"
#include "mixnorm/field.hpp"
#include "mixnorm/grid.hpp"
#include "mixnorm/norms.hpp"

namespace mixnorm {

/// Dense linear operator between two grids, acting on row-major flattened
/// fields. Rows index target cells, columns source cells.
class OperatorMatrix {
public:
    OperatorMatrix(GridPtr source, GridPtr target, std::vector<double> entries)
        : source_(std::move(source)), target_(std::move(target)), entries_(std::move(entries)) {
        if (!source_ || !target_) raise(errc::invalid_argument, "operator needs source and target grids");
        if (entries_.size() != source_->cell_count() * target_->cell_count())
            raise(errc::dimension_mismatch, "operator has " + std::to_string(entries_.size()) + " entries for " +
                                                std::to_string(target_->cell_count()) + "x" +
                                                std::to_string(source_->cell_count()) + " cells");
        for (double e : entries_)
            if (!std::isfinite(e)) raise(errc::invalid_argument, "operator entry is not finite");
    }

    const GridPtr& source() const { return source_; }
    const GridPtr& target() const { return target_; }
    std::size_t rows() const { return target_->cell_count(); }
    std::size_t cols() const { return source_->cell_count(); }
    double entry(std::size_t row, std::size_t col) const { return entries_[row * cols() + col]; }
    const std::vector<double>& entries() const { return entries_; }

private:
    GridPtr source_;
    GridPtr target_;
    std::vector<double> entries_;
};

inline OperatorMatrix scaled_identity_operator(const GridPtr& grid, double scale) {
    const std::size_t n = grid->cell_count();
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = scale;
    return OperatorMatrix(grid, grid, std::move(e));
}

inline OperatorMatrix identity_operator(const GridPtr& grid) { return scaled_identity_operator(grid, 1.0); }

inline OperatorMatrix zero_operator(const GridPtr& source, const GridPtr& target) {
    return OperatorMatrix(source, target, std::vector<double>(source->cell_count() * target->cell_count(), 0.0));
}

/// First-order divided difference on a rank-1 grid with strictly increasing
/// points: (Df)(x_i) = (f(x_{i+1}) - f(x_i)) / (x_{i+1} - x_i). The target
/// grid keeps the first n-1 points and their weights.
inline OperatorMatrix divided_difference_operator(const GridPtr& grid) {
    if (grid->rank() != 1) raise(errc::invalid_argument, "divided difference needs a rank-1 grid");
    const Axis& ax = grid->axis(0);
    const std::size_t n = ax.size();
    if (n < 2) raise(errc::invalid_argument, "divided difference needs at least two points");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(ax.points()[i] < ax.points()[i + 1]))
            raise(errc::invalid_argument, "divided difference needs strictly increasing points");

    std::vector<double> pts(ax.points().begin(), ax.points().end() - 1);
    std::vector<double> w(ax.weights().begin(), ax.weights().end() - 1);
    GridPtr target = make_grid({Axis(ax.label() + "_diff", std::move(pts), std::move(w))});

    std::vector<double> e((n - 1) * n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = ax.points()[i + 1] - ax.points()[i];
        e[i * n + i] = -1.0 / h;
        e[i * n + i + 1] = 1.0 / h;
    }
    return OperatorMatrix(grid, std::move(target), std::move(e));
}

/// A f as a field on the operator's target grid. The matrix-vector product
/// accumulates columns in index order, so results are bitwise reproducible.
inline GridField apply_operator(const OperatorMatrix& A, const GridField& f) {
    if (!same_grid(f.grid(), A.source())) raise(errc::grid_mismatch, "field grid does not match operator source");
    std::vector<double> y(A.rows());
    const std::size_t cols = A.cols();
    for (std::size_t i = 0; i < A.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j) s += A.entry(i, j) * f[j];
        y[i] = s;
    }
    return GridField(A.target(), std::move(y));
}

/// Discrete Sobolev-style norm: max(|f|_p, |A f|_pTarget).
inline double sobolev_norm(const GridField& f, const OperatorMatrix& A, const ExponentVector& p,
                           const ExponentVector& p_target) {
    const double base = mixed_norm(f, p);
    const double image = mixed_norm(apply_operator(A, f), p_target);
    return std::max(base, image);
}

} // namespace mixnorm
