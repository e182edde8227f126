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
#include "mixnorm/mixingale.hpp"
#include "mixnorm/operators.hpp"

namespace mixnorm {

// ---------------------------------------------------------------------------
// Drivers: mean-zero marginal families with closed-form absolute moments.
// ---------------------------------------------------------------------------

enum class Driver { gaussian, rademacher, centered_exponential, symmetric_weibull };

struct DriverSpec {
    Driver kind = Driver::gaussian;
    double weibull_q = 1.0; // shape Q for symmetric_weibull, ignored otherwise

    static DriverSpec gaussian() { return {Driver::gaussian, 1.0}; }
    static DriverSpec rademacher() { return {Driver::rademacher, 1.0}; }
    static DriverSpec centered_exponential() { return {Driver::centered_exponential, 1.0}; }
    static DriverSpec symmetric_weibull(double q) { return {Driver::symmetric_weibull, q}; }
};

inline const char* driver_name(Driver d) {
    switch (d) {
    case Driver::gaussian: return "gaussian";
    case Driver::rademacher: return "rademacher";
    case Driver::centered_exponential: return "centeredExponential";
    case Driver::symmetric_weibull: return "symmetricWeibull";
    }
    return "?";
}

namespace detail {

/// E|Z|^q for Z ~ N(0,1):  2^{q/2} Gamma((q+1)/2) / sqrt(pi).
inline double gaussian_abs_moment(double q) {
    return std::exp(0.5 * q * std::log(2.0) + std::lgamma(0.5 * (q + 1.0)) - 0.5 * std::log(std::acos(-1.0)));
}

/// E|X - 1|^q for X ~ Exp(1):
///   e^{-1} * ( Gamma(q+1) + sum_{j>=0} 1 / (j! (q+j+1)) ).
/// The split at x = 1 gives the Gamma term on [1, inf) and the entire
/// series (from expanding e^u on [0,1]) below it.
inline double centered_exponential_abs_moment(double q) {
    double series = 0.0;
    double inv_fact = 1.0;
    for (int j = 0; j < 200; ++j) {
        if (j > 0) inv_fact /= static_cast<double>(j);
        const double term = inv_fact / (q + static_cast<double>(j) + 1.0);
        series += term;
        if (term < 1e-18 * series) break;
    }
    return std::exp(-1.0) * (std::tgamma(q + 1.0) + series);
}

} // namespace detail

/// E|X|^q for the driver marginal; every supported driver has a closed form
/// for all q >= 1 (gamma-function identities).
inline double driver_abs_moment(const DriverSpec& d, double q) {
    if (!std::isfinite(q) || q < 1.0) raise(errc::unsupported_moment, "moment order must be finite and >= 1");
    switch (d.kind) {
    case Driver::gaussian: return detail::gaussian_abs_moment(q);
    case Driver::rademacher: return 1.0;
    case Driver::centered_exponential: return detail::centered_exponential_abs_moment(q);
    case Driver::symmetric_weibull: return std::tgamma(1.0 + q / d.weibull_q);
    }
    raise(errc::invalid_model, "unknown driver");
}

/// (E|X|^q)^{1/q}.
inline double driver_abs_moment_root(const DriverSpec& d, double q) {
    return std::pow(driver_abs_moment(d, q), 1.0 / q);
}

inline double driver_variance(const DriverSpec& d) { return driver_abs_moment(d, 2.0); }

// ---------------------------------------------------------------------------
// Covariance over flattened grid cells.
// ---------------------------------------------------------------------------

/// Symmetric positive-semidefinite matrix over flattened grid cells,
/// realizing the covariance operator of a field. Symmetry is checked to
/// 1e-12 (relative to the largest entry) and the smallest eigenvalue must
/// be >= -1e-10 * trace scale.
class CovarianceMatrix {
public:
    CovarianceMatrix(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
        if (n_ == 0) raise(errc::invalid_argument, "covariance needs at least one cell");
        if (entries_.size() != n_ * n_)
            raise(errc::dimension_mismatch, "covariance has " + std::to_string(entries_.size()) + " entries for " +
                                                std::to_string(n_) + " cells");
        double magnitude = 0.0;
        for (double e : entries_) {
            if (!std::isfinite(e)) raise(errc::invalid_argument, "covariance entry is not finite");
            magnitude = std::max(magnitude, std::abs(e));
        }
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (std::abs(entry(i, j) - entry(j, i)) > 1e-12 * std::max(1.0, magnitude))
                    raise(errc::invalid_argument, "covariance is not symmetric at (" + std::to_string(i) + "," +
                                                      std::to_string(j) + ")");
        if (min_eigenvalue() < -psd_tolerance())
            raise(errc::not_positive_semidefinite, "covariance has eigenvalue " + std::to_string(min_eigenvalue()) +
                                                       " below -" + std::to_string(psd_tolerance()));
    }

    static CovarianceMatrix diagonal(const std::vector<double>& variances) {
        const std::size_t n = variances.size();
        std::vector<double> e(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = variances[i];
        return CovarianceMatrix(n, std::move(e));
    }

    static CovarianceMatrix identity(std::size_t n) { return diagonal(std::vector<double>(n, 1.0)); }

    std::size_t size() const { return n_; }
    double entry(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) t += entry(i, i);
        return t;
    }

    /// Eigenvalues below this magnitude are treated as zero when factorizing.
    double psd_tolerance() const { return 1e-10 * std::max(trace(), 1e-30); }

    double min_eigenvalue() const {
        Eigen::Map<const Eigen::MatrixXd> m(entries_.data(), static_cast<Eigen::Index>(n_),
                                            static_cast<Eigen::Index>(n_));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff();
    }

private:
    std::size_t n_;
    std::vector<double> entries_;
};

// ---------------------------------------------------------------------------
// Random field model.
// ---------------------------------------------------------------------------

enum class SpatialMode { white_noise, correlated };
enum class TemporalMode { iid, martingale_difference, m_dependent };

/// Martingale-difference construction xi_k = h_k * eta_k with eta_k a fresh
/// mean-zero driver field and h_k = 1 + modulation/2 * tanh(mean xi_{k-1})
/// a bounded positive past-measurable factor (h_1 = 1).
struct MartingaleSpec {
    double modulation = 0.5; // in [0, 1]
};

/// Moving average xi_k = sum_{j=0..m0} a_j eta_{k-j} over an i.i.d. driver
/// field sequence; strictly stationary. beta_cap is a caller-certified
/// upper bound for the mixing coefficient at lags 1..m0 (independence makes
/// beta exactly 0 beyond m0). No default cap is assumed.
struct MDependentSpec {
    std::vector<double> coefficients; // a_0 .. a_{m0}
    std::optional<double> beta_cap;

    std::size_t lag() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

struct ModelSpec {
    GridPtr grid;
    std::vector<double> envelope; // sigma(x) per flattened cell
    DriverSpec driver;
    SpatialMode spatial = SpatialMode::white_noise;
    std::optional<CovarianceMatrix> correlation; // driver-field covariance (correlated mode)
    TemporalMode temporal = TemporalMode::iid;
    MartingaleSpec martingale{};
    std::optional<MDependentSpec> m_dependent;
};

/// Immutable generative model for xi(x, omega): envelope sigma(x) times a
/// driver field, with an optional temporal dependence structure. All
/// theorem right-hand sides for it are analytic.
class RandomFieldModel {
public:
    explicit RandomFieldModel(ModelSpec spec)
        : grid_(std::move(spec.grid)), envelope_(std::move(spec.envelope)), driver_(spec.driver),
          spatial_(spec.spatial), correlation_(std::move(spec.correlation)), temporal_(spec.temporal),
          martingale_(spec.martingale), m_dependent_(std::move(spec.m_dependent)) {
        if (!grid_) raise(errc::invalid_model, "model needs a grid");
        if (envelope_.size() != grid_->cell_count())
            raise(errc::invalid_model, "envelope has " + std::to_string(envelope_.size()) + " values for " +
                                           std::to_string(grid_->cell_count()) + " cells");
        for (double s : envelope_)
            if (!std::isfinite(s) || s < 0.0) raise(errc::invalid_model, "envelope must be finite and >= 0");
        if (driver_.kind == Driver::symmetric_weibull && !(driver_.weibull_q > 0.0))
            raise(errc::invalid_model, "symmetricWeibull needs shape Q > 0");
        if (spatial_ == SpatialMode::correlated) {
            if (!correlation_) raise(errc::invalid_model, "correlated mode needs a covariance matrix");
            if (correlation_->size() != grid_->cell_count())
                raise(errc::invalid_model, "correlation size does not match the grid");
            if (driver_.kind != Driver::gaussian)
                raise(errc::invalid_model, "correlated spatial mode is defined for the gaussian driver only");
        } else if (correlation_) {
            raise(errc::invalid_model, "white-noise mode must not carry a covariance matrix");
        }
        if (temporal_ == TemporalMode::martingale_difference) {
            if (!std::isfinite(martingale_.modulation) || martingale_.modulation < 0.0 || martingale_.modulation > 1.0)
                raise(errc::invalid_model, "martingale modulation must lie in [0, 1]");
        }
        if (temporal_ == TemporalMode::m_dependent) {
            if (!m_dependent_ || m_dependent_->coefficients.empty())
                raise(errc::invalid_model, "mDependent mode needs coefficients a_0..a_m0");
            for (double a : m_dependent_->coefficients)
                if (!std::isfinite(a)) raise(errc::invalid_model, "mDependent coefficients must be finite");
            if (m_dependent_->lag() >= 1) {
                if (!m_dependent_->beta_cap)
                    raise(errc::invalid_model, "mDependent mode with lag >= 1 needs a certified betaCap");
                if (!std::isfinite(*m_dependent_->beta_cap) || *m_dependent_->beta_cap < 0.0)
                    raise(errc::invalid_model, "betaCap must be finite and >= 0");
            }
        } else if (m_dependent_) {
            raise(errc::invalid_model, "mDependent spec given without mDependent temporal mode");
        }
    }

    const GridPtr& grid() const { return grid_; }
    const std::vector<double>& envelope() const { return envelope_; }
    const DriverSpec& driver() const { return driver_; }
    SpatialMode spatial() const { return spatial_; }
    const std::optional<CovarianceMatrix>& correlation() const { return correlation_; }
    TemporalMode temporal() const { return temporal_; }
    const MartingaleSpec& martingale() const { return martingale_; }
    const MDependentSpec& m_dependent() const {
        if (!m_dependent_) raise(errc::invalid_model, "model is not mDependent");
        return *m_dependent_;
    }

    /// Variance multiplier on the marginal of xi_1 coming from the temporal
    /// structure: ||a||_2^2 for the moving average, 1 otherwise.
    double temporal_variance_factor() const {
        if (temporal_ != TemporalMode::m_dependent) return 1.0;
        double s = 0.0;
        for (double a : m_dependent_->coefficients) s += a * a;
        return s;
    }

private:
    GridPtr grid_;
    std::vector<double> envelope_;
    DriverSpec driver_;
    SpatialMode spatial_;
    std::optional<CovarianceMatrix> correlation_;
    TemporalMode temporal_;
    MartingaleSpec martingale_;
    std::optional<MDependentSpec> m_dependent_;
};

// ---------------------------------------------------------------------------
// Analytic moments and schedules.
// ---------------------------------------------------------------------------

namespace detail {

/// E|sum_i c_i eps_i|^q for independent Rademacher eps_i, by enumerating
/// sign vectors over the nonzero coefficients. Exact; cost 2^{k-1}.
inline double weighted_rademacher_abs_moment(const std::vector<double>& coeffs, double q) {
    std::vector<double> c;
    for (double v : coeffs)
        if (v != 0.0) c.push_back(v);
    if (c.empty()) return 0.0;
    if (c.size() == 1) return std::pow(std::abs(c[0]), q);
    if (c.size() > 21)
        raise(errc::unsupported_moment,
              "rademacher sum enumeration limited to 21 nonzero coefficients, got " + std::to_string(c.size()));
    const std::size_t half = std::size_t{1} << (c.size() - 1); // fix the first sign by symmetry
    double sum = 0.0;
    for (std::size_t mask = 0; mask < half; ++mask) {
        double s = c[0];
        for (std::size_t i = 1; i < c.size(); ++i) s += (mask >> (i - 1) & 1u) != 0 ? c[i] : -c[i];
        sum += pow_abs(s, q);
    }
    return sum / static_cast<double>(half);
}

/// Moment root of a linear combination sum_i c_i X_i of i.i.d. driver draws,
/// where closed forms exist: trivial combinations for every driver, gaussian
/// in general, and rademacher by exact enumeration.
inline double linear_combination_moment_root(const DriverSpec& d, const std::vector<double>& coeffs, double q) {
    std::size_t nonzero = 0;
    double only = 0.0, sumsq = 0.0;
    for (double c : coeffs) {
        if (c != 0.0) {
            ++nonzero;
            only = c;
        }
        sumsq += c * c;
    }
    if (nonzero == 0) return 0.0;
    if (nonzero == 1) return std::abs(only) * driver_abs_moment_root(d, q);
    switch (d.kind) {
    case Driver::gaussian: return std::sqrt(sumsq) * driver_abs_moment_root(d, q);
    case Driver::rademacher: return std::pow(weighted_rademacher_abs_moment(coeffs, q), 1.0 / q);
    default:
        raise(errc::unsupported_moment,
              std::string("no closed form for a ") + driver_name(d.kind) + " combination with " +
                  std::to_string(nonzero) + " nonzero coefficients");
    }
}

} // namespace detail

/// Field of pointwise absolute-moment roots x -> (E|xi(x)|^q)^{1/q} for the
/// marginal of xi_1. Analytic per driver; the mDependent marginal is the
/// moving-average combination of i.i.d. driver draws.
inline GridField pointwise_abs_moment(const RandomFieldModel& model, double q) {
    if (!std::isfinite(q) || q < 1.0) raise(errc::unsupported_moment, "moment order must be finite and >= 1");
    const std::size_t cells = model.grid()->cell_count();
    std::vector<double> out(cells, 0.0);

    // Base scale of the driver field at each cell: sigma(x), times the
    // marginal standard deviation sqrt(C_xx) in correlated mode.
    std::vector<double> scale(model.envelope());
    if (model.spatial() == SpatialMode::correlated)
        for (std::size_t c = 0; c < cells; ++c) scale[c] *= std::sqrt(std::max(0.0, model.correlation()->entry(c, c)));

    if (model.temporal() == TemporalMode::m_dependent && model.m_dependent().lag() >= 1) {
        const auto& a = model.m_dependent().coefficients;
        const double root = detail::linear_combination_moment_root(model.driver(), a, q);
        for (std::size_t c = 0; c < cells; ++c) out[c] = scale[c] * root;
    } else {
        const double root = driver_abs_moment_root(model.driver(), q);
        for (std::size_t c = 0; c < cells; ++c) out[c] = scale[c] * root;
    }
    return GridField(model.grid(), std::move(out));
}

/// Field of pointwise absolute-moment roots of A[xi] on the operator's
/// target grid. Requires a closed form for each row's linear combination of
/// cell values (gaussian in general; rademacher white noise by enumeration;
/// single-entry rows for every driver).
inline GridField operator_abs_moment(const RandomFieldModel& model, const OperatorMatrix& A, double q) {
    if (!same_grid(A.source(), model.grid())) raise(errc::grid_mismatch, "operator source does not match model grid");
    if (!std::isfinite(q) || q < 1.0) raise(errc::unsupported_moment, "moment order must be finite and >= 1");
    const std::size_t cells = model.grid()->cell_count();

    std::vector<double> temporal;
    if (model.temporal() == TemporalMode::m_dependent && model.m_dependent().lag() >= 1)
        temporal = model.m_dependent().coefficients;
    else
        temporal = {1.0};

    std::vector<double> out(A.rows(), 0.0);
    if (model.spatial() == SpatialMode::correlated) {
        // Gaussian: row variance = v^T C v with v = row .* sigma, scaled by
        // the temporal l2 factor.
        double tfac = 0.0;
        for (double a : temporal) tfac += a * a;
        const auto& C = *model.correlation();
        for (std::size_t i = 0; i < A.rows(); ++i) {
            double var = 0.0;
            for (std::size_t c1 = 0; c1 < cells; ++c1) {
                const double v1 = A.entry(i, c1) * model.envelope()[c1];
                if (v1 == 0.0) continue;
                for (std::size_t c2 = 0; c2 < cells; ++c2)
                    var += v1 * A.entry(i, c2) * model.envelope()[c2] * C.entry(c1, c2);
            }
            var = std::max(0.0, var) * tfac;
            out[i] = std::sqrt(var) * driver_abs_moment_root(model.driver(), q);
        }
        return GridField(A.target(), std::move(out));
    }

    // White noise: row i of A[xi] is sum over (cell, temporal lag) of
    // independent driver draws with coefficients A_ic * sigma_c * a_j.
    for (std::size_t i = 0; i < A.rows(); ++i) {
        std::vector<double> coeffs;
        for (std::size_t c = 0; c < cells; ++c) {
            const double base = A.entry(i, c) * model.envelope()[c];
            if (base == 0.0) continue;
            for (double a : temporal)
                if (a != 0.0) coeffs.push_back(base * a);
        }
        out[i] = detail::linear_combination_moment_root(model.driver(), coeffs, q);
    }
    return GridField(A.target(), std::move(out));
}

/// Exact covariance of the single-field marginal xi_1: diagonal
/// sigma^2(x) Var(driver) in white-noise mode, the envelope-scaled supplied
/// matrix in correlated mode, with the moving-average l2 factor applied.
inline CovarianceMatrix covariance_of(const RandomFieldModel& model) {
    const std::size_t cells = model.grid()->cell_count();
    const double tfac = model.temporal_variance_factor();
    if (model.spatial() == SpatialMode::white_noise) {
        std::vector<double> var(cells);
        const double dv = driver_variance(model.driver());
        for (std::size_t c = 0; c < cells; ++c)
            var[c] = model.envelope()[c] * model.envelope()[c] * dv * tfac;
        return CovarianceMatrix::diagonal(var);
    }
    std::vector<double> e(cells * cells);
    const auto& C = *model.correlation();
    for (std::size_t i = 0; i < cells; ++i)
        for (std::size_t j = 0; j < cells; ++j)
            e[i * cells + j] = model.envelope()[i] * model.envelope()[j] * C.entry(i, j) * tfac;
    return CovarianceMatrix(cells, std::move(e));
}

/// Mixing schedule certified by the model structure: an m0-dependent
/// sequence is independent beyond lag m0, so beta(k) = betaCap for
/// k <= m0 and exactly 0 beyond. Only mDependent models carry a schedule.
inline MixingSchedule beta_schedule_of(const RandomFieldModel& model) {
    if (model.temporal() != TemporalMode::m_dependent)
        raise(errc::no_schedule_available, "mixing schedule exists for mDependent models only");
    const std::size_t m0 = model.m_dependent().lag();
    if (m0 == 0) return MixingSchedule::zero();
    return MixingSchedule::finite(std::vector<double>(m0, *model.m_dependent().beta_cap));
}

} // namespace mixnorm
