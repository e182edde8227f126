#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mixnorm/errors.hpp"
#include "mixnorm/field.hpp"
#include "mixnorm/grid.hpp"
#include "mixnorm/models.hpp"
#include "mixnorm/rng.hpp"

namespace mixnorm {

namespace detail {

/// Symmetric factor L with L L^T = C, via the eigendecomposition.
/// Eigenvalues within the PSD tolerance of zero are clamped; anything more
/// negative is rejected.
inline Eigen::MatrixXd psd_factor(const CovarianceMatrix& C) {
    const auto n = static_cast<Eigen::Index>(C.size());
    Eigen::Map<const Eigen::MatrixXd> m(C.entries().data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) raise(errc::not_positive_semidefinite, "eigendecomposition failed");
    Eigen::VectorXd lambda = solver.eigenvalues();
    const double tol = C.psd_tolerance();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lambda[i] < -tol)
            raise(errc::not_positive_semidefinite,
                  "covariance eigenvalue " + std::to_string(lambda[i]) + " below -" + std::to_string(tol));
        lambda[i] = std::sqrt(std::max(0.0, lambda[i]));
    }
    return solver.eigenvectors() * lambda.asDiagonal();
}

inline double draw_driver(RandomStream& stream, const DriverSpec& d) {
    switch (d.kind) {
    case Driver::gaussian: return stream.gaussian();
    case Driver::rademacher: return stream.rademacher();
    case Driver::centered_exponential: return stream.centered_exponential();
    case Driver::symmetric_weibull: return stream.weibull_symmetric(d.weibull_q);
    }
    raise(errc::invalid_model, "unknown driver");
}

} // namespace detail

/// Draws of N(0, C) fields on a grid; the factorization is done once at
/// construction. Each draw is a pure function of its SeedSpec.
class GaussianSampler {
public:
    GaussianSampler(const CovarianceMatrix& C, GridPtr grid) : grid_(std::move(grid)), factor_(detail::psd_factor(C)) {
        if (!grid_ || grid_->cell_count() != C.size())
            raise(errc::dimension_mismatch, "covariance size does not match the grid");
    }

    GridField draw(SeedSpec seed) const {
        RandomStream stream(seed);
        return draw(stream);
    }

    GridField draw(RandomStream& stream) const {
        const auto n = factor_.rows();
        Eigen::VectorXd g(n);
        for (Eigen::Index i = 0; i < n; ++i) g[i] = stream.gaussian();
        Eigen::VectorXd x = factor_ * g;
        return GridField(grid_, std::vector<double>(x.data(), x.data() + n));
    }

private:
    GridPtr grid_;
    Eigen::MatrixXd factor_;
};

/// One draw of the Gaussian field with covariance C.
inline GridField sample_gaussian_limit(const CovarianceMatrix& C, const GridPtr& grid, SeedSpec seed) {
    return GaussianSampler(C, grid).draw(seed);
}

/// Sampler for a RandomFieldModel. Holds the model plus any precomputed
/// factorization, so replica loops do not refactorize per draw. Immutable
/// and safe to share across threads; all state for a draw lives in the
/// stream derived from the SeedSpec.
class ModelSampler {
public:
    explicit ModelSampler(RandomFieldModel model) : model_(std::move(model)) {
        if (model_.spatial() == SpatialMode::correlated) factor_ = detail::psd_factor(*model_.correlation());
    }

    const RandomFieldModel& model() const { return model_; }

    /// One draw of xi_1.
    GridField sample_field(SeedSpec seed) const { return sample_sequence(1, seed).front(); }

    /// Length-n sequence xi_1..xi_n honoring the temporal mode.
    std::vector<GridField> sample_sequence(std::size_t n, SeedSpec seed) const {
        if (n == 0) raise(errc::invalid_argument, "sequence length must be >= 1");
        RandomStream stream(seed);
        std::vector<GridField> out;
        out.reserve(n);
        switch (model_.temporal()) {
        case TemporalMode::iid:
            for (std::size_t k = 0; k < n; ++k) out.push_back(scaled_unit_field(stream));
            break;
        case TemporalMode::martingale_difference: {
            // xi_k = h_k * sigma .* eta_k with h_k past-measurable, h_1 = 1.
            double h = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                GridField f = scaled_unit_field(stream);
                if (h != 1.0) f = h * f;
                const double m = mean_of(f);
                h = 1.0 + 0.5 * model_.martingale().modulation * std::tanh(m);
                out.push_back(std::move(f));
            }
            break;
        }
        case TemporalMode::m_dependent: {
            const auto& a = model_.m_dependent().coefficients;
            const std::size_t m0 = model_.m_dependent().lag();
            // eta_{1-m0} .. eta_n so that xi_1 already sees a full window.
            std::vector<GridField> eta;
            eta.reserve(n + m0);
            for (std::size_t k = 0; k < n + m0; ++k) eta.push_back(unit_field(stream));
            const std::size_t cells = model_.grid()->cell_count();
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<double> v(cells, 0.0);
                for (std::size_t j = 0; j <= m0; ++j) {
                    const GridField& src = eta[k + m0 - j];
                    for (std::size_t c = 0; c < cells; ++c) v[c] += a[j] * src[c];
                }
                for (std::size_t c = 0; c < cells; ++c) v[c] *= model_.envelope()[c];
                out.emplace_back(model_.grid(), std::move(v));
            }
            break;
        }
        }
        return out;
    }

private:
    /// Driver field without the envelope: i.i.d. draws per cell in index
    /// order, or a correlated Gaussian draw through the cached factor.
    GridField unit_field(RandomStream& stream) const {
        const std::size_t cells = model_.grid()->cell_count();
        if (model_.spatial() == SpatialMode::correlated) {
            Eigen::VectorXd g(static_cast<Eigen::Index>(cells));
            for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = stream.gaussian();
            Eigen::VectorXd x = factor_ * g;
            return GridField(model_.grid(), std::vector<double>(x.data(), x.data() + x.size()));
        }
        std::vector<double> v(cells);
        for (std::size_t c = 0; c < cells; ++c) v[c] = detail::draw_driver(stream, model_.driver());
        return GridField(model_.grid(), std::move(v));
    }

    GridField scaled_unit_field(RandomStream& stream) const {
        GridField f = unit_field(stream);
        for (std::size_t c = 0; c < f.size(); ++c) f.values()[c] *= model_.envelope()[c];
        return f;
    }

    static double mean_of(const GridField& f) {
        double s = 0.0;
        for (std::size_t c = 0; c < f.size(); ++c) s += f[c];
        return s / static_cast<double>(f.size());
    }

    RandomFieldModel model_;
    Eigen::MatrixXd factor_;
};

/// One draw of xi; deterministic in the seed.
inline GridField sample_field(const RandomFieldModel& model, SeedSpec seed) {
    return ModelSampler(model).sample_field(seed);
}

/// Length-n dependent or independent sequence; deterministic in the seed.
inline std::vector<GridField> sample_sequence(const RandomFieldModel& model, std::size_t n, SeedSpec seed) {
    return ModelSampler(model).sample_sequence(n, seed);
}

} // namespace mixnorm
