#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "mixnorm/errors.hpp"
#include "mixnorm/exponent.hpp"
#include "mixnorm/field.hpp"

namespace mixnorm {

/// Marker naming the replica (sample) axis inside an ordered_mixed_norm
/// axis order; spatial axes are named by their 0-based grid index.
inline constexpr std::size_t replica_axis_id = static_cast<std::size_t>(-1);

namespace detail {

/// |v|^p with the zero case short-circuited so fractional exponents never
/// touch log(0).
inline double pow_abs(double v, double p) {
    const double a = std::abs(v);
    if (a == 0.0) return 0.0;
    return std::pow(a, p);
}

/// Collapse axis k of a row-major tensor by a weighted power sum:
///   out[o, j] = (sum_i w[i] * |v[o, i, j]|^p)^(1/p).
/// Summation runs in index order so results are reproducible bit for bit.
/// dims is updated in place to the collapsed shape.
inline std::vector<double> collapse_axis(const std::vector<double>& v, std::vector<std::size_t>& dims,
                                         std::size_t k, const std::vector<double>& w, double p) {
    std::size_t outer = 1, inner = 1;
    for (std::size_t a = 0; a < k; ++a) outer *= dims[a];
    for (std::size_t a = k + 1; a < dims.size(); ++a) inner *= dims[a];
    const std::size_t n = dims[k];
    const double inv_p = 1.0 / p;
    std::vector<double> out(outer * inner);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t j = 0; j < inner; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += w[i] * pow_abs(v[(o * n + i) * inner + j], p);
            out[o * inner + j] = s == 0.0 ? 0.0 : std::pow(s, inv_p);
        }
    }
    dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

} // namespace detail

/// Iterated anisotropic norm of a field: axis 1 is integrated innermost with
/// exponent p_1, the last axis outermost with p_l, each stage a weighted
/// power sum followed by the matching root.
inline double mixed_norm(const GridField& f, const ExponentVector& p) {
    const auto& axes = f.grid()->axes();
    if (p.size() != axes.size())
        raise(errc::dimension_mismatch, "exponent vector has " + std::to_string(p.size()) + " components for " +
                                            std::to_string(axes.size()) + " axes");
    std::vector<double> v = f.values();
    std::vector<std::size_t> dims = f.grid()->shape();
    for (std::size_t k = 0; k < axes.size(); ++k)
        v = detail::collapse_axis(v, dims, 0, axes[k].weights(), p[k]);
    return v[0];
}

/// Iterated norm of an ensemble taken in an arbitrary axis order.
///
/// axis_order lists the integration order innermost-first; each entry is a
/// spatial axis index or replica_axis_id, and exponents[i] is the exponent
/// used when axis_order[i] is collapsed. The replica axis integrates with
/// its probability weights.
inline double ordered_mixed_norm(const FieldEnsemble& e, const std::vector<std::size_t>& axis_order,
                                 const std::vector<double>& exponents) {
    const auto& axes = e.grid()->axes();
    const std::size_t l = axes.size();
    if (axis_order.size() != l + 1)
        raise(errc::invalid_permutation, "axis order has " + std::to_string(axis_order.size()) + " entries for " +
                                             std::to_string(l) + " spatial axes plus the replica axis");
    if (exponents.size() != axis_order.size())
        raise(errc::dimension_mismatch, "axis order and exponents differ in length");
    std::vector<bool> seen(l, false);
    bool seen_replica = false;
    for (std::size_t id : axis_order) {
        if (id == replica_axis_id) {
            if (seen_replica) raise(errc::invalid_permutation, "replica axis listed twice");
            seen_replica = true;
        } else if (id < l) {
            if (seen[id]) raise(errc::invalid_permutation, "spatial axis " + std::to_string(id) + " listed twice");
            seen[id] = true;
        } else {
            raise(errc::invalid_permutation, "unknown axis id " + std::to_string(id));
        }
    }
    if (!seen_replica) raise(errc::invalid_permutation, "axis order must include the replica axis");
    for (double q : exponents)
        if (!std::isfinite(q) || q < 1.0)
            raise(errc::invalid_argument, "exponent " + std::to_string(q) + " outside [1, inf)");

    // Assemble the [replica, spatial...] tensor, replica axis slowest.
    const std::size_t cells = e.grid()->cell_count();
    std::vector<double> v(e.replicas() * cells);
    for (std::size_t r = 0; r < e.replicas(); ++r) {
        const auto& vals = e.fields()[r].values();
        std::copy(vals.begin(), vals.end(), v.begin() + static_cast<std::ptrdiff_t>(r * cells));
    }
    std::vector<std::size_t> dims;
    dims.reserve(l + 1);
    dims.push_back(e.replicas());
    for (const Axis& a : axes) dims.push_back(a.size());

    // live[t] tracks where original tensor axis t (0 = replica, 1+k = spatial
    // axis k) currently sits as collapses shift positions down.
    std::vector<std::size_t> live(l + 1);
    std::iota(live.begin(), live.end(), std::size_t{0});
    for (std::size_t step = 0; step < axis_order.size(); ++step) {
        const std::size_t id = axis_order[step];
        const std::size_t orig = id == replica_axis_id ? 0 : id + 1;
        const std::size_t pos = live[orig];
        const std::vector<double>& w = id == replica_axis_id ? e.replica().weights() : axes[id].weights();
        v = detail::collapse_axis(v, dims, pos, w, exponents[step]);
        for (std::size_t t = 0; t <= l; ++t)
            if (live[t] != replica_axis_id && live[t] > pos) --live[t];
        live[orig] = replica_axis_id;
    }
    return v[0];
}

struct PermutationCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Compares the two integration orders over (X, Omega):
///   lhs = |phi|_{p,X; r,Omega}   (spatial axes innermost, replicas outermost)
///   rhs = |phi|_{r,Omega; p,X}   (replicas innermost)
/// For a probability replica axis and r >= pbar the lhs never exceeds the
/// rhs; holds applies the shared inequality tolerance.
inline PermutationCheck check_permutation_inequality(const FieldEnsemble& e, const ExponentVector& p, double r) {
    const std::size_t l = e.grid()->rank();
    if (p.size() != l)
        raise(errc::dimension_mismatch, "exponent vector has " + std::to_string(p.size()) + " components for " +
                                            std::to_string(l) + " axes");
    if (!std::isfinite(r) || r < p.pbar())
        raise(errc::exponent_too_small,
              "replica exponent r = " + std::to_string(r) + " must be >= pbar = " + std::to_string(p.pbar()));

    std::vector<std::size_t> order_lhs, order_rhs;
    std::vector<double> exp_lhs, exp_rhs;
    order_rhs.push_back(replica_axis_id);
    exp_rhs.push_back(r);
    for (std::size_t k = 0; k < l; ++k) {
        order_lhs.push_back(k);
        exp_lhs.push_back(p[k]);
        order_rhs.push_back(k);
        exp_rhs.push_back(p[k]);
    }
    order_lhs.push_back(replica_axis_id);
    exp_lhs.push_back(r);

    PermutationCheck out;
    out.lhs = ordered_mixed_norm(e, order_lhs, exp_lhs);
    out.rhs = ordered_mixed_norm(e, order_rhs, exp_rhs);
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-9) + 1e-12;
    return out;
}

} // namespace mixnorm
