#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <vector>

#include "mixnorm/clt_lab.hpp"
#include "mixnorm/errors.hpp"

using namespace mixnorm;

namespace {

GridPtr point_grid() { return make_grid({build_axis("x", {0.0}, {1.0})}); }

GridPtr unit_grid_2x2() {
    return make_grid({build_axis("x1", {0.0, 1.0}, {1.0, 1.0}), build_axis("x2", {0.0, 1.0}, {1.0, 1.0})});
}

RandomFieldModel iid_model(GridPtr grid, DriverSpec driver, double envelope = 1.0) {
    ModelSpec spec;
    spec.grid = grid;
    spec.envelope = std::vector<double>(grid->cell_count(), envelope);
    spec.driver = driver;
    return RandomFieldModel(std::move(spec));
}

ExperimentConfig make_cfg(RandomFieldModel model, std::vector<double> p, double m, std::vector<std::size_t> sched,
                          std::size_t replicas, std::uint64_t master, std::size_t workers = 1) {
    return ExperimentConfig{std::move(model), ExponentVector(std::move(p)), m,        std::move(sched),
                            replicas,         SeedSpec{master, 0},          std::nullopt, std::nullopt,
                            workers};
}

} // namespace

TEST_CASE("normed_sum") {
    const GridPtr g = make_grid({build_axis("x", {0.0, 1.0}, {1.0, 1.0})});
    std::vector<GridField> fields;
    fields.emplace_back(g, std::vector<double>{1.0, 2.0});
    fields.emplace_back(g, std::vector<double>{3.0, 4.0});
    const GridField s = normed_sum(fields);
    CHECK(s[0] == Catch::Approx(4.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(s[1] == Catch::Approx(6.0 / std::sqrt(2.0)).epsilon(1e-14));

    const GridField single = normed_sum({GridField(g, {5.0, -1.0})});
    CHECK(single[0] == 5.0);
    CHECK(single[1] == -1.0);

    CHECK_THROWS_AS(normed_sum({}), Error);
    std::vector<GridField> mixed;
    mixed.emplace_back(g, std::vector<double>{1.0, 2.0});
    mixed.emplace_back(point_grid(), std::vector<double>{1.0});
    CHECK_THROWS_AS(normed_sum(mixed), Error);
}

TEST_CASE("config validation") {
    const auto model = [&] { return iid_model(point_grid(), DriverSpec::gaussian()); };

    CHECK_NOTHROW(validate(make_cfg(model(), {2.0}, 2.0, {4, 8}, 200, 1)));

    CHECK_THROWS_AS(validate(make_cfg(model(), {2.0, 2.0}, 2.0, {4}, 200, 1)), Error);   // rank mismatch
    CHECK_THROWS_AS(validate(make_cfg(model(), {1.5}, 2.0, {4}, 200, 1)), Error);        // pbar < 2
    CHECK_THROWS_AS(validate(make_cfg(model(), {2.0}, 0.5, {4}, 200, 1)), Error);        // m < 1
    CHECK_THROWS_AS(validate(make_cfg(model(), {2.0}, 2.0, {}, 200, 1)), Error);         // empty schedule
    CHECK_THROWS_AS(validate(make_cfg(model(), {2.0}, 2.0, {4, 4}, 200, 1)), Error);     // not increasing
    CHECK_THROWS_AS(validate(make_cfg(model(), {2.0}, 2.0, {0, 4}, 200, 1)), Error);     // zero entry
    CHECK_THROWS_AS(validate(make_cfg(model(), {2.0}, 2.0, {4}, 99, 1)), Error);         // too few replicas

    ExperimentConfig bad_seed = make_cfg(model(), {2.0}, 2.0, {4}, 200, 1);
    bad_seed.seed.stream_id = 5;
    CHECK_THROWS_AS(validate(bad_seed), Error);

    ExperimentConfig no_workers = make_cfg(model(), {2.0}, 2.0, {4}, 200, 1);
    no_workers.workers = 0;
    CHECK_THROWS_AS(validate(no_workers), Error);

    ExperimentConfig bad_tail = make_cfg(model(), {2.0}, 2.0, {4}, 200, 1);
    bad_tail.tail = TailSpec{1.0, 0.0, {0.5}};
    CHECK_THROWS_AS(validate(bad_tail), Error); // thresholds must exceed 1
    bad_tail.tail = TailSpec{1.0, 0.0, {2.0, 2.0}};
    CHECK_THROWS_AS(validate(bad_tail), Error); // strictly increasing
    bad_tail.tail = TailSpec{0.0, 0.0, {2.0}};
    CHECK_THROWS_AS(validate(bad_tail), Error); // Q1 > 0

    ExperimentConfig bad_op = make_cfg(model(), {2.0}, 2.0, {4}, 200, 1);
    bad_op.op = identity_operator(unit_grid_2x2());
    CHECK_THROWS_AS(validate(bad_op), Error); // operator source grid mismatch
}

TEST_CASE("estimate_norm_moment: S_n of a unit gaussian is standard normal") {
    // Single cell: S_n ~ N(0,1) exactly for every n, so the fourth-moment
    // root is 3^{1/4} regardless of n.
    const ExperimentConfig cfg = make_cfg(iid_model(point_grid(), DriverSpec::gaussian()), {2.0}, 2.0, {4, 16}, 4000, 20260501);
    for (std::size_t n : {std::size_t{4}, std::size_t{16}}) {
        const MomentEstimate est = estimate_norm_moment(cfg, n);
        CHECK(est.replicas == 4000);
        CHECK(est.ci_upper95 >= est.value);
        CHECK(std::abs(est.value - 1.3160740129524924) <= 4.0 * est.std_error);
    }
    CHECK_THROWS_AS(estimate_norm_moment(cfg, 5), Error); // not in the schedule
}

TEST_CASE("estimate_norm_moment: flat norm of 4 iid gaussians is a chi-square functional") {
    // |S_n|_{(2,2)}^2 over the unit 2x2 grid is chi^2_4, so
    // E |S_n|^4 = E (chi^2_4)^2 = 24.
    const ExperimentConfig cfg =
        make_cfg(iid_model(unit_grid_2x2(), DriverSpec::gaussian()), {2.0, 2.0}, 2.0, {4, 16}, 4000, 20260502);
    const MomentEstimate est = estimate_norm_moment(cfg, 16);
    CHECK(std::abs(est.value - 2.2133638394006434) <= 4.0 * est.std_error);
}

TEST_CASE("estimates are deterministic in the seed and invariant in the worker count") {
    const auto base = make_cfg(iid_model(unit_grid_2x2(), DriverSpec::centered_exponential()), {2.0, 2.0}, 2.0,
                               {4, 8}, 300, 777);
    const MomentEstimate a = estimate_norm_moment(base, 8);
    const MomentEstimate b = estimate_norm_moment(base, 8);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    CHECK(a.ci_upper95 == b.ci_upper95);

    auto threaded = base;
    threaded.workers = 3;
    const MomentEstimate c = estimate_norm_moment(threaded, 8);
    CHECK(c.value == a.value);
    CHECK(c.std_error == a.std_error);
    CHECK(c.ci_upper95 == a.ci_upper95);

    auto reseeded = base;
    reseeded.seed.master_seed = 778;
    CHECK(estimate_norm_moment(reseeded, 8).value != a.value);
}

TEST_CASE("moment_bound_rhs: analytic values") {
    // Gaussian on the unit 2x2 grid, p = (2,2), m = 2: the bound is
    // K_R(4) * 3^{1/4} * 2.
    const ExperimentConfig cfg =
        make_cfg(iid_model(unit_grid_2x2(), DriverSpec::gaussian()), {2.0, 2.0}, 2.0, {4}, 200, 1);
    CHECK(moment_bound_rhs(cfg) == Catch::Approx(4.963136697345819).epsilon(1e-12));

    // Rademacher point model, m = 1, p = (2): the bound is K_R(2) itself.
    const ExperimentConfig cfg2 = make_cfg(iid_model(point_grid(), DriverSpec::rademacher()), {2.0}, 1.0, {4}, 200, 1);
    const BoundInfo info = moment_bound_info(cfg2);
    CHECK(info.value == Catch::Approx(1.8855841877051704).epsilon(1e-12));
    CHECK(info.constant_name == "K_R");
    CHECK_FALSE(info.absolute_constant_monitored);
}

TEST_CASE("moment_bound_info: dependent models switch the constant") {
    const GridPtr g = point_grid();
    ModelSpec mspec;
    mspec.grid = g;
    mspec.envelope = {1.0};
    mspec.driver = DriverSpec::rademacher();
    mspec.temporal = TemporalMode::m_dependent;
    mspec.m_dependent = MDependentSpec{{1.0, 1.0}, 1.0};
    const ExperimentConfig ma = make_cfg(RandomFieldModel(std::move(mspec)), {2.0}, 2.0, {4}, 200, 1);
    const BoundInfo info = moment_bound_info(ma);
    CHECK(info.constant_name == "K_M");
    CHECK(info.absolute_constant_monitored);
    // K_M(4) with beta = (1): 4 * (2^{(4-2)/2})^{1/4} = 4 * 2^{1/4}.
    CHECK(info.constant == Catch::Approx(4.0 * std::pow(2.0, 0.25)).epsilon(1e-13));
    // The moment field is the MA(1) combination: (E|e1+e2|^4)^{1/4} = 8^{1/4}.
    CHECK(info.value == Catch::Approx(4.0 * std::pow(2.0, 0.25) * std::pow(8.0, 0.25)).epsilon(1e-13));

    ModelSpec mart;
    mart.grid = g;
    mart.envelope = {1.0};
    mart.driver = DriverSpec::gaussian();
    mart.temporal = TemporalMode::martingale_difference;
    const ExperimentConfig mg = make_cfg(RandomFieldModel(std::move(mart)), {2.0}, 2.0, {4}, 200, 1);
    const BoundInfo minfo = moment_bound_info(mg);
    CHECK(minfo.constant_name == "K_R");
    CHECK(minfo.absolute_constant_monitored);
}

TEST_CASE("check_moment_bound produces holding rows for iid gaussians") {
    const ExperimentConfig cfg =
        make_cfg(iid_model(point_grid(), DriverSpec::gaussian()), {2.0}, 2.0, {4, 8}, 400, 20260503);
    const VerificationReport rep = check_moment_bound(cfg);
    CHECK(rep.theorem == "moment_bound");
    CHECK(rep.constant_name == "K_R");
    REQUIRE(rep.rows.size() == 2);
    for (const ReportRow& row : rep.rows) {
        // lhs ~ 3^{1/4} = 1.32 against K_R(4) * 3^{1/4} = 2.48.
        CHECK(row.holds);
        CHECK(row.margin_ratio > 0.0);
        CHECK(row.margin_ratio < 1.0);
        CHECK(row.rhs_bound == Catch::Approx(rosenthal_bound(4.0) * 1.3160740129524924).epsilon(1e-12));
    }
    CHECK(rep.all_hold());
}

TEST_CASE("verdict logic: holds iff the upper confidence limit clears the bound") {
    MomentEstimate est;
    est.value = 1.0;
    est.std_error = 0.1;
    est.ci_upper95 = 1.2;
    est.replicas = 100;

    const ReportRow fail = detail::make_row(4, est, 0.1);
    CHECK_FALSE(fail.holds);
    CHECK(fail.margin_ratio == Catch::Approx(12.0).epsilon(1e-12));

    const ReportRow pass = detail::make_row(4, est, 1.2);
    CHECK(pass.holds);
    CHECK(pass.margin_ratio == Catch::Approx(1.0).epsilon(1e-12));

    MomentEstimate zero;
    const ReportRow degenerate = detail::make_row(4, zero, 0.0);
    CHECK(degenerate.holds);
    CHECK(degenerate.margin_ratio == 0.0);

    const ReportRow impossible = detail::make_row(4, est, 0.0);
    CHECK_FALSE(impossible.holds);
    CHECK(std::isinf(impossible.margin_ratio));
}

TEST_CASE("ks_two_sample examples") {
    CHECK(ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
    CHECK(ks_two_sample({1.0, 2.0}, {10.0, 20.0}) == 1.0);
    CHECK(ks_two_sample({1.0, 2.0}, {1.0, 3.0}) == Catch::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(ks_two_sample({}, {1.0}), Error);
    CHECK(ks_critical_1pct(2000) == Catch::Approx(1.63 * std::sqrt(2.0 / 2000.0)).epsilon(1e-14));
}

TEST_CASE("permutation inequality on simulated partial sums") {
    // Minkowski-type consistency: for ensembles of S_n draws the replica-
    // outside norm dominates when the replica exponent r >= pbar.
    const GridPtr g = unit_grid_2x2();
    const ModelSampler sampler(iid_model(g, DriverSpec::centered_exponential()));
    std::vector<GridField> draws;
    for (std::size_t r = 0; r < 64; ++r)
        draws.push_back(normed_sum(sampler.sample_sequence(4, {42, make_stream_id(0, 0, r)})));
    const FieldEnsemble ensemble = FieldEnsemble::uniform(std::move(draws));
    for (double rexp : {2.0, 3.0, 5.0}) {
        const PermutationCheck chk = check_permutation_inequality(ensemble, ExponentVector({2.0, 2.0}), rexp);
        CHECK(chk.holds);
    }
}

TEST_CASE("scale equivariance of the bound check") {
    const auto run = [&](double envelope) {
        return check_moment_bound(
            make_cfg(iid_model(unit_grid_2x2(), DriverSpec::gaussian(), envelope), {2.0, 2.0}, 2.0, {4}, 300, 99));
    };
    const VerificationReport base = run(1.0);
    const VerificationReport scaled = run(2.5);
    REQUIRE(base.rows.size() == 1);
    REQUIRE(scaled.rows.size() == 1);
    CHECK(scaled.rows[0].rhs_bound == Catch::Approx(2.5 * base.rows[0].rhs_bound).epsilon(1e-12));
    CHECK(scaled.rows[0].lhs.value == Catch::Approx(2.5 * base.rows[0].lhs.value).epsilon(1e-9));
    CHECK(scaled.rows[0].margin_ratio == Catch::Approx(base.rows[0].margin_ratio).epsilon(1e-9));
    CHECK(scaled.rows[0].holds == base.rows[0].holds);
}

TEST_CASE("sobolev bound: identity reproduces the moment report bitwise") {
    auto cfg = make_cfg(iid_model(unit_grid_2x2(), DriverSpec::gaussian()), {2.0, 2.0}, 2.0, {4, 8}, 300, 20260504);
    const VerificationReport direct = check_moment_bound(cfg);
    cfg.op = identity_operator(cfg.model.grid());
    const VerificationReport via_id = check_sobolev_bound(cfg);
    CHECK(via_id.theorem == "sobolev_bound");
    REQUIRE(via_id.rows.size() == direct.rows.size());
    for (std::size_t i = 0; i < direct.rows.size(); ++i) {
        CHECK(via_id.rows[i].lhs.value == direct.rows[i].lhs.value);
        CHECK(via_id.rows[i].lhs.ci_upper95 == direct.rows[i].lhs.ci_upper95);
        CHECK(via_id.rows[i].rhs_bound == direct.rows[i].rhs_bound);
        CHECK(via_id.rows[i].margin_ratio == direct.rows[i].margin_ratio);
    }

    // Scaling the operator scales both sides; the margin is unchanged.
    cfg.op = scaled_identity_operator(cfg.model.grid(), 2.0);
    const VerificationReport doubled = check_sobolev_bound(cfg);
    CHECK(doubled.rows[0].rhs_bound == Catch::Approx(2.0 * direct.rows[0].rhs_bound).epsilon(1e-12));
    CHECK(doubled.rows[0].lhs.value == Catch::Approx(2.0 * direct.rows[0].lhs.value).epsilon(1e-9));
    CHECK(doubled.rows[0].margin_ratio == Catch::Approx(direct.rows[0].margin_ratio).epsilon(1e-9));

    // The zero operator annihilates both sides; the check holds at 0 <= 0.
    cfg.op = zero_operator(cfg.model.grid(), cfg.model.grid());
    const VerificationReport zero = check_sobolev_bound(cfg);
    CHECK(zero.rows[0].rhs_bound == 0.0);
    CHECK(zero.rows[0].lhs.value == 0.0);
    CHECK(zero.rows[0].holds);
    CHECK(zero.rows[0].margin_ratio == 0.0);

    cfg.op.reset();
    CHECK_THROWS_AS(check_sobolev_bound(cfg), Error); // operator required
}

TEST_CASE("clt_convergence_test: exact-normal case stays below the critical value") {
    // Single gaussian cell: S_n is exactly the limit law for every n, so
    // the KS distance is pure two-sample noise.
    const ExperimentConfig cfg =
        make_cfg(iid_model(point_grid(), DriverSpec::gaussian()), {2.0}, 2.0, {2, 4}, 500, 20260505);
    const auto rows = clt_convergence_test(cfg);
    REQUIRE(rows.size() == 2);
    for (const CltRow& row : rows) {
        CHECK(row.ks_critical == Catch::Approx(1.63 * std::sqrt(2.0 / 500.0)).epsilon(1e-14));
        CHECK(row.ks_distance < row.ks_critical);
    }
}

TEST_CASE("tail_probe") {
    auto cfg = make_cfg(iid_model(point_grid(), DriverSpec::gaussian()), {2.0}, 2.0, {4}, 2000, 20260506);

    CHECK_THROWS_AS(tail_probe(cfg, 4), Error); // no tail spec

    cfg.tail = TailSpec{1.0, 0.0, {1.5, 2.5}};
    const TailProbe probe = tail_probe(cfg, 4);
    CHECK(probe.n == 4);
    REQUIRE(probe.rows.size() == 2);
    // stat = |S_4|^2 is chi^2_1: P(> 1.5) ~ 0.22, so the fit has plenty of
    // exceedances and the fitted curve matches the first point exactly.
    CHECK(probe.rows[0].exceedances >= 10);
    CHECK(probe.rows[0].below_curve);
    CHECK(probe.rows[0].empirical_tail ==
          Catch::Approx(std::exp(-probe.fitted_c * std::sqrt(1.5))).epsilon(1e-9));
    CHECK(probe.fitted_c > 0.0);
    for (const TailRow& row : probe.rows) CHECK(row.bound_curve <= 1.0);

    // A threshold far in the tail leaves nothing to fit on.
    cfg.tail = TailSpec{1.0, 0.0, {30.0}};
    try {
        tail_probe(cfg, 4);
        FAIL("expected insufficient_replicas");
    } catch (const Error& err) {
        CHECK(err.code() == errc::insufficient_replicas);
    }

    cfg.tail = TailSpec{1.0, 0.0, {1.5}};
    CHECK_THROWS_AS(tail_probe(cfg, 7), Error); // n not in the schedule
}

TEST_CASE("clt and tail runs are worker-invariant") {
    auto cfg = make_cfg(iid_model(point_grid(), DriverSpec::centered_exponential()), {2.0}, 2.0, {4}, 300, 20260507);
    cfg.tail = TailSpec{1.0, 0.0, {1.2}};

    const auto clt1 = clt_convergence_test(cfg);
    const auto tail1 = tail_probe(cfg, 4);
    cfg.workers = 4;
    const auto clt2 = clt_convergence_test(cfg);
    const auto tail2 = tail_probe(cfg, 4);

    CHECK(clt1[0].ks_distance == clt2[0].ks_distance);
    CHECK(tail1.fitted_c == tail2.fitted_c);
    REQUIRE(tail1.rows.size() == tail2.rows.size());
    for (std::size_t i = 0; i < tail1.rows.size(); ++i)
        CHECK(tail1.rows[i].empirical_tail == tail2.rows[i].empirical_tail);
}
