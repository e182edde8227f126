#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mixnorm/errors.hpp"
#include "mixnorm/norms.hpp"
#include "oracle.hpp"

using namespace mixnorm;

namespace {

GridPtr unit_grid_2x2() {
    return make_grid({build_axis("x1", {0.0, 1.0}, {1.0, 1.0}), build_axis("x2", {0.0, 1.0}, {1.0, 1.0})});
}

/// Random grid with up to max_axes axes, up to max_points points per axis,
/// weights in (0, 2].
GridPtr random_grid(oracle::Rng& rng, std::size_t max_axes, std::size_t max_points) {
    const std::size_t rank = 1 + rng.index(max_axes);
    std::vector<Axis> axes;
    for (std::size_t k = 0; k < rank; ++k) {
        const std::size_t n = 1 + rng.index(max_points);
        std::vector<double> pts(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            pts[i] = static_cast<double>(i);
            w[i] = rng.uniform(1e-6, 2.0);
        }
        axes.push_back(build_axis("x" + std::to_string(k), std::move(pts), std::move(w)));
    }
    return make_grid(std::move(axes));
}

GridField random_field(oracle::Rng& rng, const GridPtr& grid, double scale = 3.0) {
    std::vector<double> v(grid->cell_count());
    for (double& x : v) x = rng.signed_uniform(scale);
    return GridField(grid, std::move(v));
}

std::vector<double> random_exponents(oracle::Rng& rng, std::size_t rank, double lo = 1.0, double hi = 4.0) {
    std::vector<double> p(rank);
    for (double& x : p) x = rng.uniform(lo, hi);
    return p;
}

std::vector<std::vector<double>> grid_weights(const GridPtr& grid) {
    std::vector<std::vector<double>> w;
    for (const Axis& a : grid->axes()) w.push_back(a.weights());
    return w;
}

} // namespace

TEST_CASE("fixed-vector oracles on the 2x2 unit grid") {
    const GridPtr g = unit_grid_2x2();
    // f(a,c)=1, f(b,c)=3, f(a,d)=2, f(b,d)=4 => row-major [1,2,3,4].
    const GridField f(g, {1.0, 2.0, 3.0, 4.0});

    // Innermost axis first with p1=1: (|1|+|3|, |2|+|4|) = (4,6); then p2=2.
    CHECK(mixed_norm(f, ExponentVector({1.0, 2.0})) == Catch::Approx(7.211102550927978).epsilon(1e-14));
    // Flat norm: p=(2,2) equals the plain 2-norm over all four cells.
    CHECK(mixed_norm(f, ExponentVector({2.0, 2.0})) == Catch::Approx(5.477225575051661).epsilon(1e-14));

    // The reversed order is a different number, so the evaluation order is
    // observable: collapsing x2 first with exponent 1 gives (3,7) then 2-norm.
    const double swapped = std::sqrt(3.0 * 3.0 + 7.0 * 7.0);
    const std::vector<double> vals{1.0, 2.0, 3.0, 4.0};
    const double oracle_swapped =
        oracle::ordered_norm(vals, {2, 2}, {{1.0, 1.0}, {1.0, 1.0}}, {1, 0}, {1.0, 2.0});
    CHECK(oracle_swapped == Catch::Approx(swapped).epsilon(1e-14));
    CHECK(mixed_norm(f, ExponentVector({1.0, 2.0})) != Catch::Approx(swapped).epsilon(1e-3));
}

TEST_CASE("zero field has zero norm; zero-weight cells do not contribute") {
    const GridPtr g = unit_grid_2x2();
    CHECK(mixed_norm(GridField::zeros(g), ExponentVector({1.7, 3.2})) == 0.0);

    const GridPtr gz = make_grid({build_axis("x", {0.0, 1.0}, {1.0, 0.0})});
    const GridField f(gz, {2.0, 123.0}); // second cell has weight 0
    CHECK(mixed_norm(f, ExponentVector({2.0})) == Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("factorization of tensor products") {
    const GridPtr g = unit_grid_2x2();
    // f = g1 (x) g2 with g1=(1,2) on axis 1, g2=(1,1) on axis 2.
    const GridField f(g, {1.0 * 1.0, 1.0 * 1.0, 2.0 * 1.0, 2.0 * 1.0});
    CHECK(mixed_norm(f, ExponentVector({1.0, 1.0})) == Catch::Approx(6.0).epsilon(1e-14));

    oracle::Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n1 = 1 + rng.index(5), n2 = 1 + rng.index(5);
        std::vector<double> p1(n1), w1(n1), p2v(n2), w2(n2), g1(n1), g2(n2);
        for (std::size_t i = 0; i < n1; ++i) {
            p1[i] = static_cast<double>(i);
            w1[i] = rng.uniform(0.1, 2.0);
            g1[i] = rng.signed_uniform(2.0);
        }
        for (std::size_t j = 0; j < n2; ++j) {
            p2v[j] = static_cast<double>(j);
            w2[j] = rng.uniform(0.1, 2.0);
            g2[j] = rng.signed_uniform(2.0);
        }
        const GridPtr grid = make_grid({build_axis("a", p1, w1), build_axis("b", p2v, w2)});
        std::vector<double> vals(n1 * n2);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j) vals[i * n2 + j] = g1[i] * g2[j];
        const double pa = rng.uniform(1.0, 4.0), pb = rng.uniform(1.0, 4.0);
        const double full = mixed_norm(GridField(grid, vals), ExponentVector({pa, pb}));
        const double f1 = oracle::mixed_norm(g1, {w1}, {pa});
        const double f2 = oracle::mixed_norm(g2, {w2}, {pb});
        CHECK(full == Catch::Approx(f1 * f2).epsilon(1e-12).margin(1e-14));
    }
}

TEST_CASE("oracle equivalence on 500 random instances") {
    oracle::Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const GridPtr grid = random_grid(rng, 4, 6);
        const GridField f = random_field(rng, grid);
        const std::vector<double> p = random_exponents(rng, grid->rank());
        const double engine = mixed_norm(f, ExponentVector(p));
        const double reference = oracle::mixed_norm(f.values(), grid_weights(grid), p);
        CHECK(engine == Catch::Approx(reference).epsilon(1e-12).margin(1e-300));
    }
}

TEST_CASE("homogeneity and triangle inequality") {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const GridPtr grid = random_grid(rng, 3, 5);
        const GridField f = random_field(rng, grid);
        const GridField g = random_field(rng, grid);
        const ExponentVector p(random_exponents(rng, grid->rank()));
        const double c = rng.signed_uniform(5.0);

        const double nf = mixed_norm(f, p);
        CHECK(mixed_norm(c * f, p) == Catch::Approx(std::abs(c) * nf).epsilon(1e-12).margin(1e-300));

        const double ng = mixed_norm(g, p);
        const double nsum = mixed_norm(f + g, p);
        CHECK(nsum <= nf + ng + 1e-9 * (nf + ng) + 1e-12);
    }
}

TEST_CASE("flat-norm identity for constant exponent vectors") {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const GridPtr grid = random_grid(rng, 4, 5);
        const GridField f = random_field(rng, grid);
        const double p = rng.uniform(1.0, 4.0);
        const double mixed = mixed_norm(f, ExponentVector(std::vector<double>(grid->rank(), p)));
        double s = 0.0;
        for (std::size_t c = 0; c < f.size(); ++c) s += grid->cell_weight(c) * oracle::pow_abs(f[c], p);
        const double flat = s == 0.0 ? 0.0 : std::pow(s, 1.0 / p);
        CHECK(mixed == Catch::Approx(flat).epsilon(1e-12).margin(1e-300));
    }
}

TEST_CASE("ordered norm: hand example and oracle equivalence") {
    // Single-cell grid, replicas {1, 3}, replica exponent 2:
    // (0.5*1 + 0.5*9)^(1/2) = sqrt(5), in either axis order.
    const GridPtr g = make_grid({build_axis("x", {0.0}, {1.0})});
    std::vector<GridField> fields;
    fields.emplace_back(g, std::vector<double>{1.0});
    fields.emplace_back(g, std::vector<double>{3.0});
    const FieldEnsemble e = FieldEnsemble::uniform(std::move(fields));

    const double sqrt5 = 2.23606797749979;
    CHECK(ordered_mixed_norm(e, {replica_axis_id, 0}, {2.0, 1.0}) == Catch::Approx(sqrt5).epsilon(1e-14));
    CHECK(ordered_mixed_norm(e, {0, replica_axis_id}, {1.0, 2.0}) == Catch::Approx(sqrt5).epsilon(1e-14));

    oracle::Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const GridPtr grid = random_grid(rng, 3, 4);
        const std::size_t replicas = 2 + rng.index(5);
        std::vector<GridField> fs;
        for (std::size_t r = 0; r < replicas; ++r) fs.push_back(random_field(rng, grid));
        const FieldEnsemble ens = FieldEnsemble::uniform(std::move(fs));

        // Random permutation of [replica, spatial...] by repeated draws.
        std::vector<std::size_t> order(grid->rank() + 1);
        order[0] = replica_axis_id;
        for (std::size_t k = 0; k < grid->rank(); ++k) order[k + 1] = k;
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
        const std::vector<double> exps = random_exponents(rng, order.size());

        // Oracle tensor: axis 0 is the replica axis, then spatial axes.
        std::vector<double> tensor;
        for (const GridField& f : ens.fields()) tensor.insert(tensor.end(), f.values().begin(), f.values().end());
        std::vector<std::size_t> dims{replicas};
        std::vector<std::vector<double>> weights{ens.replica().weights()};
        for (const Axis& a : grid->axes()) {
            dims.push_back(a.size());
            weights.push_back(a.weights());
        }
        std::vector<std::size_t> oracle_order;
        for (std::size_t id : order) oracle_order.push_back(id == replica_axis_id ? 0 : id + 1);

        const double engine = ordered_mixed_norm(ens, order, exps);
        const double reference = oracle::ordered_norm(tensor, dims, weights, oracle_order, exps);
        CHECK(engine == Catch::Approx(reference).epsilon(1e-12).margin(1e-300));
    }
}

TEST_CASE("ordered norm: order matters in general") {
    const GridPtr g = make_grid({build_axis("x", {0.0, 1.0}, {1.0, 1.0})});
    std::vector<GridField> fields;
    fields.emplace_back(g, std::vector<double>{1.0, 0.0});
    fields.emplace_back(g, std::vector<double>{0.0, 2.0});
    const FieldEnsemble e = FieldEnsemble::uniform(std::move(fields));
    const double spatial_inner = ordered_mixed_norm(e, {0, replica_axis_id}, {1.0, 3.0});
    const double replica_inner = ordered_mixed_norm(e, {replica_axis_id, 0}, {3.0, 1.0});
    CHECK(spatial_inner != Catch::Approx(replica_inner).epsilon(1e-6));
}

TEST_CASE("ordered norm: constant-in-omega ensembles are order-independent") {
    oracle::Rng rng(19);
    const GridPtr grid = random_grid(rng, 2, 4);
    const GridField f = random_field(rng, grid);
    std::vector<GridField> copies(5, f);
    const FieldEnsemble e = FieldEnsemble::uniform(std::move(copies));

    std::vector<std::size_t> order1{replica_axis_id}, order2;
    std::vector<double> exp1{2.5}, exp2;
    for (std::size_t k = 0; k < grid->rank(); ++k) {
        order1.push_back(k);
        exp1.push_back(1.0 + static_cast<double>(k));
        order2.push_back(k);
        exp2.push_back(1.0 + static_cast<double>(k));
    }
    order2.push_back(replica_axis_id);
    exp2.push_back(2.5);
    CHECK(ordered_mixed_norm(e, order1, exp1) == Catch::Approx(ordered_mixed_norm(e, order2, exp2)).epsilon(1e-12));
}

TEST_CASE("ordered norm: Lyapunov monotonicity in the replica exponent") {
    oracle::Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const GridPtr grid = random_grid(rng, 2, 4);
        std::vector<GridField> fs;
        const std::size_t replicas = 2 + rng.index(6);
        for (std::size_t r = 0; r < replicas; ++r) fs.push_back(random_field(rng, grid));
        const FieldEnsemble e = FieldEnsemble::uniform(std::move(fs));

        std::vector<std::size_t> order(grid->rank() + 1);
        order[0] = replica_axis_id;
        for (std::size_t k = 0; k < grid->rank(); ++k) order[k + 1] = k;
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
        std::size_t replica_pos = 0;
        while (order[replica_pos] != replica_axis_id) ++replica_pos;

        std::vector<double> exps = random_exponents(rng, order.size());
        const double r1 = rng.uniform(1.0, 3.0);
        const double r2 = r1 + rng.uniform(0.0, 3.0);
        exps[replica_pos] = r1;
        const double low = ordered_mixed_norm(e, order, exps);
        exps[replica_pos] = r2;
        const double high = ordered_mixed_norm(e, order, exps);
        CHECK(low <= high * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("ordered norm validation errors") {
    const GridPtr g = unit_grid_2x2();
    std::vector<GridField> fields;
    fields.emplace_back(g, std::vector<double>{1.0, 2.0, 3.0, 4.0});
    const FieldEnsemble e = FieldEnsemble::uniform(std::move(fields));

    CHECK_THROWS_AS(ordered_mixed_norm(e, {0, 1}, {1.0, 1.0}), Error);                         // replica missing
    CHECK_THROWS_AS(ordered_mixed_norm(e, {0, 0, replica_axis_id}, {1.0, 1.0, 1.0}), Error);   // duplicate
    CHECK_THROWS_AS(ordered_mixed_norm(e, {0, 7, replica_axis_id}, {1.0, 1.0, 1.0}), Error);   // unknown axis
    CHECK_THROWS_AS(ordered_mixed_norm(e, {0, 1, replica_axis_id}, {1.0, 1.0}), Error);        // exponent count
    CHECK_THROWS_AS(ordered_mixed_norm(e, {0, 1, replica_axis_id}, {1.0, 0.5, 1.0}), Error);   // exponent < 1
}

TEST_CASE("permutation inequality on random ensembles") {
    oracle::Rng rng(29);
    for (int trial = 0; trial < 1000; ++trial) {
        const GridPtr grid =
            make_grid({build_axis("x1", {0.0, 1.0, 2.0}, {rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0)}),
                       build_axis("x2", {0.0, 1.0}, {rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0)})});
        std::vector<GridField> fs;
        for (std::size_t r = 0; r < 8; ++r) fs.push_back(random_field(rng, grid));
        const FieldEnsemble e = FieldEnsemble::uniform(std::move(fs));
        const ExponentVector p(random_exponents(rng, 2, 1.0, 3.0));
        const double r = p.pbar() + rng.uniform(0.0, 3.0);
        const PermutationCheck chk = check_permutation_inequality(e, p, r);
        CHECK(chk.holds);
        CHECK(chk.lhs <= chk.rhs * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("permutation inequality: equality cases") {
    oracle::Rng rng(31);

    // Constant in omega: both orders agree exactly.
    const GridPtr grid = random_grid(rng, 2, 4);
    const GridField f = random_field(rng, grid);
    std::vector<GridField> copies(6, f);
    const FieldEnsemble constant = FieldEnsemble::uniform(std::move(copies));
    const ExponentVector p(random_exponents(rng, grid->rank(), 1.0, 2.0));
    const PermutationCheck chk = check_permutation_inequality(constant, p, p.pbar() + 1.0);
    CHECK(chk.holds);
    CHECK(chk.lhs == Catch::Approx(chk.rhs).epsilon(1e-12));

    // Single-point spatial grid: both sides reduce to the r-th moment.
    const GridPtr point = make_grid({build_axis("x", {0.0}, {1.0})});
    std::vector<GridField> fs;
    for (int r = 0; r < 7; ++r) fs.emplace_back(point, std::vector<double>{rng.signed_uniform(2.0)});
    const FieldEnsemble degenerate = FieldEnsemble::uniform(std::move(fs));
    const PermutationCheck chk2 = check_permutation_inequality(degenerate, ExponentVector({2.0}), 3.5);
    CHECK(chk2.lhs == Catch::Approx(chk2.rhs).epsilon(1e-12));
}

TEST_CASE("permutation inequality rejects r below pbar") {
    const GridPtr g = make_grid({build_axis("x", {0.0}, {1.0})});
    std::vector<GridField> fs;
    fs.emplace_back(g, std::vector<double>{1.0});
    const FieldEnsemble e = FieldEnsemble::uniform(std::move(fs));
    try {
        check_permutation_inequality(e, ExponentVector({3.0}), 2.0);
        FAIL("expected exponent_too_small");
    } catch (const Error& err) {
        CHECK(err.code() == errc::exponent_too_small);
    }
}
