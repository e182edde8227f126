#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mixnorm/clt_lab.hpp"
#include "mixnorm/csv.hpp"

namespace mixnorm {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace selfcheck {

namespace detail {

inline bool approx_rel(double a, double b, double tol) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= tol * scale;
}

inline std::string seconds(std::chrono::steady_clock::time_point start) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f s", s);
    return buf;
}

inline double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Independent nested-sum evaluation of the mixed norm: recursion from the
/// outermost (last) axis down to the innermost (first) axis, computing the
/// iterated weighted power sums literally. Used as the oracle against the
/// engine's iterative axis-collapse implementation.
inline double nested_norm(const std::vector<double>& values, const ProductGrid& grid,
                          const std::vector<double>& exps) {
    const std::size_t rank = grid.rank();
    std::vector<std::size_t> stride(rank, 1);
    for (std::size_t k = rank; k-- > 1;) stride[k - 1] = stride[k] * grid.axis(k).size();
    std::vector<std::size_t> idx(rank, 0);

    const auto rec = [&](const auto& self, std::size_t axis_plus_one) -> double {
        if (axis_plus_one == 0) {
            std::size_t flat = 0;
            for (std::size_t k = 0; k < rank; ++k) flat += idx[k] * stride[k];
            return std::abs(values[flat]);
        }
        const std::size_t a = axis_plus_one - 1;
        const double p = exps[a];
        double sum = 0.0;
        for (std::size_t i = 0; i < grid.axis(a).size(); ++i) {
            idx[a] = i;
            const double inner = self(self, a);
            if (inner != 0.0) sum += grid.axis(a).weights()[i] * std::pow(inner, p);
        }
        return sum == 0.0 ? 0.0 : std::pow(sum, 1.0 / p);
    };
    return rec(rec, rank);
}

struct InstanceRng {
    RandomStream stream;
    explicit InstanceRng(std::uint64_t stream_id) : stream({0x5e1fc0de, stream_id}) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * stream.uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(stream.uniform() * static_cast<double>(n)) % n; }
    double signed_uniform(double scale) { return uniform(-scale, scale); }
};

inline GridPtr random_grid(InstanceRng& rng, std::size_t max_axes, std::size_t max_points) {
    const std::size_t rank = 1 + rng.index(max_axes);
    std::vector<Axis> axes;
    for (std::size_t k = 0; k < rank; ++k) {
        const std::size_t n = 1 + rng.index(max_points);
        std::vector<double> pts(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            pts[i] = static_cast<double>(i);
            w[i] = rng.uniform(1e-9, 2.0); // weights in (0, 2]
        }
        axes.push_back(build_axis("x" + std::to_string(k), std::move(pts), std::move(w)));
    }
    return make_grid(std::move(axes));
}

inline RandomFieldModel white_noise_model(GridPtr grid, DriverSpec driver) {
    ModelSpec spec;
    spec.grid = grid;
    spec.envelope = std::vector<double>(grid->cell_count(), 1.0);
    spec.driver = driver;
    return RandomFieldModel(std::move(spec));
}

inline GridPtr unit_grid_2x2() {
    return make_grid({build_axis("x1", {0.0, 1.0}, {1.0, 1.0}), build_axis("x2", {0.0, 1.0}, {1.0, 1.0})});
}

inline ExperimentConfig bound_config(RandomFieldModel model, std::vector<double> p, double m,
                                     std::vector<std::size_t> schedule, std::size_t replicas, std::uint64_t seed,
                                     std::size_t workers) {
    return ExperimentConfig{std::move(model), ExponentVector(std::move(p)), m,        std::move(schedule),
                            replicas,         SeedSpec{seed, 0},            std::nullopt, std::nullopt,
                            workers};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Quick checks: analytic oracles only, a few seconds total.
// ---------------------------------------------------------------------------

inline CheckResult check_fixed_norm_vectors() {
    namespace d = detail;
    const GridPtr g = d::unit_grid_2x2();
    const GridField f(g, {1.0, 2.0, 3.0, 4.0});
    bool ok = true;
    std::string detail;

    const double v12 = mixed_norm(f, ExponentVector({1.0, 2.0}));
    ok &= d::approx_rel(v12, std::sqrt(52.0), 1e-12);
    // Sensitivity control: the reversed evaluation order gives sqrt(58),
    // so this check distinguishes the axis orders.
    ok &= std::abs(v12 - std::sqrt(58.0)) > 0.1;
    const double v22 = mixed_norm(f, ExponentVector({2.0, 2.0}));
    ok &= d::approx_rel(v22, std::sqrt(30.0), 1e-12);

    const GridField tensor(g, {1.0, 1.0, 2.0, 2.0}); // (1,2) (x) (1,1)
    ok &= d::approx_rel(mixed_norm(tensor, ExponentVector({1.0, 1.0})), 6.0, 1e-12);

    const GridPtr point = make_grid({build_axis("x", {0.0}, {1.0})});
    std::vector<GridField> reps;
    reps.emplace_back(point, std::vector<double>{1.0});
    reps.emplace_back(point, std::vector<double>{3.0});
    const FieldEnsemble e = FieldEnsemble::uniform(std::move(reps));
    ok &= d::approx_rel(ordered_mixed_norm(e, {replica_axis_id, 0}, {2.0, 1.0}), std::sqrt(5.0), 1e-12);
    ok &= d::approx_rel(ordered_mixed_norm(e, {0, replica_axis_id}, {1.0, 2.0}), std::sqrt(5.0), 1e-12);

    char buf[128];
    std::snprintf(buf, sizeof buf, "|f|_(1,2)=%.15g |f|_(2,2)=%.15g", v12, v22);
    return {"fixed mixed-norm vectors", ok, buf};
}

inline CheckResult check_constants_table() {
    namespace d = detail;
    bool ok = true;
    const double e = std::exp(1.0);
    ok &= rosenthal_bound(e) == 1.77638;
    ok &= d::approx_rel(rosenthal_bound(e, true), 1.53572, 1e-15); // 1 ulp from (c*e)/e rounding
    ok &= d::approx_rel(rosenthal_bound(2.0), 1.8855841877051704, 1e-15);
    ok &= d::approx_rel(rosenthal_bound(4.0), 1.8855841877051704, 1e-15);
    try {
        rosenthal_bound(1.5);
        ok = false;
    } catch (const Error& err) {
        ok &= err.code() == errc::moment_order_too_small;
    }
    ok &= d::approx_rel(mixingale_coefficient(2.0, MixingSchedule::finite({1.0, 1.0})), 2.0 * std::sqrt(2.0), 1e-12);
    ok &= std::abs(mixingale_coefficient(2.0, MixingSchedule::geometric(1.0, 0.5)) - 2.0) < 1e-9;
    ok &= mixingale_coefficient(3.0, MixingSchedule::zero()) == 0.0;
    try {
        mixingale_coefficient(2.0, MixingSchedule::geometric(1.0, 1.0));
        ok = false;
    } catch (const Error& err) {
        ok &= err.code() == errc::divergent_series;
    }
    return {"Rosenthal and mixingale constants", ok, "K_R(e)=1.77638, K_R(2)=K_R(4)=1.88558..., K_M checks"};
}

inline CheckResult check_rng_vectors() {
    bool ok = true;
    const auto z = philox::philox4x32_10({0, 0, 0, 0}, {0, 0});
    ok &= z[0] == 0x6627e8d5u && z[1] == 0xe169c58du && z[2] == 0xbc57ac4cu && z[3] == 0x9b00dbd8u;
    const auto f = philox::philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                         {0xffffffffu, 0xffffffffu});
    ok &= f[0] == 0x408f276du && f[1] == 0x41c83b0eu && f[2] == 0xa20bc7c6u && f[3] == 0x6d5451fdu;
    const auto pi = philox::philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                          {0xa4093822u, 0x299f31d0u});
    ok &= pi[0] == 0xd16cfe09u && pi[1] == 0x94fdccebu && pi[2] == 0x5001e420u && pi[3] == 0x24126ea1u;
    return {"Philox4x32-10 known-answer vectors", ok, "3 reference blocks"};
}

inline CheckResult check_driver_moments() {
    namespace d = detail;
    bool ok = true;
    ok &= d::approx_rel(driver_abs_moment(DriverSpec::gaussian(), 2.0), 1.0, 1e-12);
    ok &= d::approx_rel(driver_abs_moment(DriverSpec::gaussian(), 4.0), 3.0, 1e-12);
    ok &= d::approx_rel(driver_abs_moment(DriverSpec::gaussian(), 6.0), 15.0, 1e-12);
    ok &= driver_abs_moment(DriverSpec::rademacher(), 3.7) == 1.0;
    ok &= d::approx_rel(driver_abs_moment(DriverSpec::symmetric_weibull(1.0), 2.0), 2.0, 1e-12);
    ok &= d::approx_rel(driver_abs_moment(DriverSpec::centered_exponential(), 2.0), 1.0, 1e-12);
    return {"driver moment closed forms", ok, "gaussian/rademacher/weibull/centeredExponential"};
}

inline CheckResult check_bound_oracle() {
    namespace d = detail;
    const ExperimentConfig cfg = d::bound_config(d::white_noise_model(d::unit_grid_2x2(), DriverSpec::gaussian()),
                                                 {2.0, 2.0}, 2.0, {4}, 100, 1, 1);
    const double rhs = moment_bound_rhs(cfg);
    const bool ok = d::approx_rel(rhs, 4.963136697345819, 1e-12);
    char buf[64];
    std::snprintf(buf, sizeof buf, "rhs=%.15g", rhs);
    return {"moment-bound right-hand side", ok, buf};
}

inline CheckResult check_ks_oracle() {
    namespace d = detail;
    bool ok = true;
    ok &= ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0;
    ok &= ks_two_sample({1.0, 2.0}, {10.0, 20.0}) == 1.0;
    ok &= d::approx_rel(ks_two_sample({1.0, 2.0}, {1.0, 3.0}), 0.5, 1e-14);
    const MomentEstimate est = estimate_moment_root({1.0, 2.0, 3.0, 4.0}, 2.0);
    ok &= est.ci_upper95 >= est.value;
    return {"KS statistic and estimator oracles", ok, "fixed two-sample cases"};
}

// ---------------------------------------------------------------------------
// Acceptance criteria.
// ---------------------------------------------------------------------------

/// Criterion 1: engine vs brute-force nested-sum oracle on 500 random
/// instances (<= 4 axes, <= 6 points, weights in (0,2], p in [1,4]) at
/// 1e-12 relative, plus the fixed vectors. Budget 10 s.
inline CheckResult criterion_norm_oracle() {
    namespace d = detail;
    const auto start = std::chrono::steady_clock::now();
    const CheckResult fixed = check_fixed_norm_vectors();
    bool ok = fixed.pass;
    double worst = 0.0;
    d::InstanceRng rng(1);
    for (int trial = 0; trial < 500 && ok; ++trial) {
        const GridPtr grid = d::random_grid(rng, 4, 6);
        std::vector<double> values(grid->cell_count());
        for (double& v : values) v = rng.signed_uniform(3.0);
        std::vector<double> p(grid->rank());
        for (double& x : p) x = rng.uniform(1.0, 4.0);
        const double engine = mixed_norm(GridField(grid, values), ExponentVector(p));
        const double oracle = d::nested_norm(values, *grid, p);
        const double scale = std::max({std::abs(engine), std::abs(oracle), 1e-300});
        worst = std::max(worst, std::abs(engine - oracle) / scale);
        ok &= std::abs(engine - oracle) <= 1e-12 * scale;
    }
    ok &= d::elapsed(start) < 10.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "500 random instances, worst rel err %.2e (%s)", worst,
                  d::seconds(start).c_str());
    return {"criterion 1: norm-engine oracle equivalence", ok, buf};
}

/// Criterion 2: permutation inequality on 10,000 random ensembles with
/// r >= pbar; constant-in-omega subfamily achieves equality within 1e-12.
/// Budget 60 s.
inline CheckResult criterion_permutation_inequality() {
    namespace d = detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    d::InstanceRng rng(2);
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        const GridPtr grid =
            make_grid({build_axis("x1", {0.0, 1.0, 2.0},
                                  {rng.uniform(0.05, 2.0), rng.uniform(0.05, 2.0), rng.uniform(0.05, 2.0)}),
                       build_axis("x2", {0.0, 1.0}, {rng.uniform(0.05, 2.0), rng.uniform(0.05, 2.0)})});
        const bool constant = trial % 10 == 0; // the equality subfamily
        std::vector<GridField> fields;
        std::vector<double> base(grid->cell_count());
        for (double& v : base) v = rng.signed_uniform(2.0);
        for (std::size_t r = 0; r < 8; ++r) {
            if (constant) {
                fields.emplace_back(grid, base);
            } else {
                std::vector<double> v(grid->cell_count());
                for (double& x : v) x = rng.signed_uniform(2.0);
                fields.emplace_back(grid, std::move(v));
            }
        }
        const FieldEnsemble e = FieldEnsemble::uniform(std::move(fields));
        const ExponentVector p({rng.uniform(1.0, 3.0), rng.uniform(1.0, 3.0)});
        const double r = p.pbar() + rng.uniform(0.0, 3.0);
        const PermutationCheck chk = check_permutation_inequality(e, p, r);
        ok &= chk.holds;
        if (constant) ok &= d::approx_rel(chk.lhs, chk.rhs, 1e-12);
    }
    ok &= d::elapsed(start) < 60.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "10000 ensembles, equality subfamily every 10th (%s)", d::seconds(start).c_str());
    return {"criterion 2: permutation inequality", ok, buf};
}

/// Criterion 3: exact constant values.
inline CheckResult criterion_constants() {
    CheckResult r = check_constants_table();
    r.name = "criterion 3: Rosenthal/mixingale constants";
    return r;
}

/// Criterion 4: moment bound on the 2x2 white-noise config, p=(2,2), m=2,
/// R=5000, n in (4,64,256); gaussian lhs within 3 stdErrors of 24^{1/4};
/// holds=true on every row for gaussian, rademacher, centeredExponential.
/// Budget 5 min.
inline CheckResult criterion_moment_bound(std::size_t workers) {
    namespace d = detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string note;
    const double exact = 2.2133638394006434; // 24^{1/4}
    for (const DriverSpec& driver :
         {DriverSpec::gaussian(), DriverSpec::rademacher(), DriverSpec::centered_exponential()}) {
        ExperimentConfig cfg = d::bound_config(d::white_noise_model(d::unit_grid_2x2(), driver), {2.0, 2.0}, 2.0,
                                               {4, 64, 256}, 5000, 20260401, workers);
        const VerificationReport rep = check_moment_bound(cfg);
        ok &= rep.rows.size() == 3;
        for (const ReportRow& row : rep.rows) {
            ok &= row.holds;
            if (driver.kind == Driver::gaussian) {
                ok &= std::abs(row.lhs.value - exact) <= 3.0 * row.lhs.std_error;
                char buf[64];
                std::snprintf(buf, sizeof buf, " n=%zu lhs=%.5f", row.n, row.lhs.value);
                note += buf;
            }
        }
    }
    ok &= d::elapsed(start) < 300.0;
    return {"criterion 4: moment bound, three drivers", ok,
            "gaussian vs 24^(1/4)=2.21336:" + note + " (" + d::seconds(start) + ")"};
}

/// Criterion 5: CLT convergence. Rademacher 2x3 grid, p=(3,2), R=2000,
/// n=(4,16,64,256): ks(256) < ks(4) and ks(256) below 1.63*sqrt(2/2000).
/// Gaussian control: every KS distance below the critical value.
/// Budget 10 min.
inline CheckResult criterion_clt(std::size_t workers) {
    namespace d = detail;
    const auto start = std::chrono::steady_clock::now();
    const GridPtr grid = make_grid({build_axis("x1", {0.0, 1.0}, {1.0, 1.0}),
                                    build_axis("x2", {0.0, 1.0, 2.0}, {1.0, 1.0, 1.0})});
    bool ok = true;

    ExperimentConfig rade = d::bound_config(d::white_noise_model(grid, DriverSpec::rademacher()), {3.0, 2.0}, 1.0,
                                            {4, 16, 64, 256}, 2000, 20260402, workers);
    const auto rows = clt_convergence_test(rade);
    ok &= rows.size() == 4;
    const double critical = 1.63 * std::sqrt(2.0 / 2000.0);
    ok &= rows.back().ks_distance < rows.front().ks_distance;
    ok &= rows.back().ks_distance < critical;

    ExperimentConfig gauss = d::bound_config(d::white_noise_model(grid, DriverSpec::gaussian()), {3.0, 2.0}, 1.0,
                                             {4, 16, 64, 256}, 2000, 20260403, workers);
    for (const CltRow& row : clt_convergence_test(gauss)) ok &= row.ks_distance < critical;

    ok &= d::elapsed(start) < 600.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "rademacher ks(4)=%.4f ks(256)=%.4f critical=%.4f (%s)",
                  rows.front().ks_distance, rows.back().ks_distance, critical, d::seconds(start).c_str());
    return {"criterion 5: CLT convergence by KS distance", ok, buf};
}

/// Criterion 6: tail shape. SymmetricWeibull(1) single cell, R=1e5, n=64:
/// empirical tail of |S_n|^2 below the fitted exp(-c sqrt(x)) curve at all
/// larger thresholds with >= 10 exceedances. Budget 5 min.
inline CheckResult criterion_tail(std::size_t workers) {
    namespace d = detail;
    const auto start = std::chrono::steady_clock::now();
    const GridPtr grid = make_grid({build_axis("x", {0.0}, {1.0})});
    ExperimentConfig cfg = d::bound_config(d::white_noise_model(grid, DriverSpec::symmetric_weibull(1.0)), {2.0},
                                           2.0, {64}, 100000, 20260404, workers);
    cfg.tail = TailSpec{1.0, 0.0, {1.5, 2.5, 4.0, 6.0, 9.0}};
    const TailProbe probe = tail_probe(cfg, 64);
    bool ok = probe.dominated;
    std::size_t usable = 0;
    for (std::size_t i = 1; i < probe.rows.size(); ++i)
        if (probe.rows[i].exceedances >= 10) ++usable;
    ok &= usable >= 2; // the check must actually bite somewhere
    ok &= d::elapsed(start) < 300.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "fitted c=%.4f, %zu informative thresholds, dominated=%s (%s)", probe.fitted_c,
                  usable, probe.dominated ? "true" : "false", d::seconds(start).c_str());
    return {"criterion 6: tail estimate shape dominance", ok, buf};
}

/// Criterion 7: dependent variants. Martingale-difference model: report
/// with the monitored constant, max/min lhs over n <= 2. Moving-average
/// model with certified schedule: K_M bound holds on every row.
/// Budget 10 min.
inline CheckResult criterion_dependent(std::size_t workers) {
    namespace d = detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;

    ModelSpec mart;
    mart.grid = d::unit_grid_2x2();
    mart.envelope = std::vector<double>(4, 1.0);
    mart.driver = DriverSpec::gaussian();
    mart.temporal = TemporalMode::martingale_difference;
    mart.martingale = MartingaleSpec{0.5};
    ExperimentConfig mcfg = d::bound_config(RandomFieldModel(std::move(mart)), {2.0, 2.0}, 2.0, {4, 64, 256}, 5000,
                                            20260405, workers);
    const VerificationReport mrep = check_moment_bound(mcfg);
    ok &= mrep.theorem == "martingale_moment_bound";
    ok &= mrep.absolute_constant_monitored;
    double lo = mrep.rows.front().lhs.value, hi = lo;
    for (const ReportRow& row : mrep.rows) {
        lo = std::min(lo, row.lhs.value);
        hi = std::max(hi, row.lhs.value);
    }
    ok &= lo > 0.0 && hi / lo <= 2.0;

    ModelSpec ma;
    ma.grid = d::unit_grid_2x2();
    ma.envelope = std::vector<double>(4, 1.0);
    ma.driver = DriverSpec::rademacher();
    ma.temporal = TemporalMode::m_dependent;
    ma.m_dependent = MDependentSpec{{1.0, 1.0}, 1.0};
    ExperimentConfig acfg = d::bound_config(RandomFieldModel(std::move(ma)), {2.0, 2.0}, 2.0, {4, 64, 256}, 5000,
                                            20260406, workers);
    const VerificationReport arep = check_moment_bound(acfg);
    ok &= arep.theorem == "mixingale_moment_bound";
    ok &= arep.constant_name == "K_M";
    ok &= d::approx_rel(arep.constant, 4.0 * std::pow(2.0, 0.25), 1e-12);
    ok &= arep.all_hold();

    ok &= d::elapsed(start) < 600.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "martingale lhs ratio %.3f; mixingale margins hold with K_M=%.4f (%s)",
                  hi / lo, arep.constant, d::seconds(start).c_str());
    return {"criterion 7: dependent-sequence variants", ok, buf};
}

/// Criterion 8: byte-identical CSV bodies across worker counts for a
/// moment-bound run and a tail run.
inline CheckResult criterion_reproducibility() {
    namespace d = detail;
    const auto start = std::chrono::steady_clock::now();
    const auto moments_body = [&](std::size_t workers) {
        ExperimentConfig cfg = d::bound_config(d::white_noise_model(d::unit_grid_2x2(), DriverSpec::gaussian()),
                                               {2.0, 2.0}, 2.0, {4, 64, 256}, 5000, 20260401, workers);
        return verification_csv("exp-repro", check_moment_bound(cfg));
    };
    const auto tail_body = [&](std::size_t workers) {
        const GridPtr grid = make_grid({build_axis("x", {0.0}, {1.0})});
        ExperimentConfig cfg = d::bound_config(d::white_noise_model(grid, DriverSpec::symmetric_weibull(1.0)), {2.0},
                                               2.0, {64}, 100000, 20260404, workers);
        cfg.tail = TailSpec{1.0, 0.0, {1.5, 2.5, 4.0, 6.0, 9.0}};
        return tail_csv("exp-repro", {tail_probe(cfg, 64)});
    };
    const std::string m1 = moments_body(1), m3 = moments_body(3);
    const std::string t1 = tail_body(1), t4 = tail_body(4);
    const bool ok = m1 == m3 && t1 == t4 && !m1.empty() && !t1.empty();
    char buf[96];
    std::snprintf(buf, sizeof buf, "moments workers 1 vs 3, tails workers 1 vs 4 (%s)", d::seconds(start).c_str());
    return {"criterion 8: reproducibility across worker counts", ok, buf};
}

// ---------------------------------------------------------------------------
// Suites.
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> run_quick_checks() {
    std::vector<CheckResult> out;
    out.push_back(check_fixed_norm_vectors());
    out.push_back(criterion_norm_oracle());
    out.push_back(check_constants_table());
    out.push_back(check_rng_vectors());
    out.push_back(check_driver_moments());
    out.push_back(check_bound_oracle());
    out.push_back(check_ks_oracle());
    return out;
}

inline std::vector<CheckResult> run_acceptance_checks(std::size_t workers) {
    std::vector<CheckResult> out;
    out.push_back(criterion_norm_oracle());
    out.push_back(criterion_permutation_inequality());
    out.push_back(criterion_constants());
    out.push_back(criterion_moment_bound(workers));
    out.push_back(criterion_clt(workers));
    out.push_back(criterion_tail(workers));
    out.push_back(criterion_dependent(workers));
    out.push_back(criterion_reproducibility());
    return out;
}

inline bool all_pass(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

} // namespace selfcheck
} // namespace mixnorm
