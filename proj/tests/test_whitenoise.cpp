#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "support/gauss_hermite60.hpp"
#include "wns/whitenoise.hpp"

using wns::GaussianSampler;
using wns::HermitePoly;
using wns::MultiIndex;
using wns::Series;

namespace {

double quad_expect_product(int m, int n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < wns_test::gh60_size; ++i)
        acc += wns_test::gh60_weight[i] * wns::hermite_eval(m, wns_test::gh60_node[i]) *
               wns::hermite_eval(n, wns_test::gh60_node[i]);
    return acc;
}

} // namespace

TEST_CASE("hermite recurrence")
{
    REQUIRE(HermitePoly(0).coeffs() == std::vector<std::int64_t>{1});
    REQUIRE(HermitePoly(1).coeffs() == std::vector<std::int64_t>{0, 1});
    REQUIRE(HermitePoly(2).coeffs() == std::vector<std::int64_t>{-1, 0, 1});
    REQUIRE(HermitePoly(3).coeffs() == std::vector<std::int64_t>{0, -3, 0, 1});
    REQUIRE(HermitePoly(3).eval(2.0) == 2.0);
    REQUIRE(wns::hermite_eval(3, 2.0) == 2.0);

    for (int n = 0; n <= 20; ++n) {
        const HermitePoly h(n);
        REQUIRE(static_cast<int>(h.coeffs().size()) == n + 1);
        REQUIRE(h.coeffs().back() == 1); // monic
    }

    // cached and direct evaluation agree
    for (int n = 0; n <= 12; ++n)
        for (double x : {-2.5, -0.3, 0.0, 1.7})
            REQUIRE(wns::hermite_eval(n, x) == HermitePoly(n).eval(x));

    REQUIRE_THROWS_AS(HermitePoly(-1), wns::validation_error);
    REQUIRE_NOTHROW(HermitePoly(32));
    REQUIRE_THROWS_AS(HermitePoly(40), std::overflow_error);
}

TEST_CASE("gaussian quadrature orthogonality oracle")
{
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; n <= 8; ++n) {
            const double expect =
                m == n ? static_cast<double>(MultiIndex::int_factorial(static_cast<std::uint32_t>(n)))
                       : 0.0;
            REQUIRE(std::abs(quad_expect_product(m, n) - expect) < 1e-9);
        }
}

TEST_CASE("chaos basis evaluation")
{
    REQUIRE(wns::chaos_eval(MultiIndex{}, {}) == 1.0);
    REQUIRE(wns::chaos_eval(MultiIndex::unit(1), {1.5}) == 1.5);
    REQUIRE(wns::chaos_eval(MultiIndex::of({{1, 1}, {2, 2}}), {1.0, 2.0}) == 3.0);
    REQUIRE_THROWS_AS(wns::chaos_eval(MultiIndex::unit(3), {1.0, 2.0}),
                      wns::validation_error);
}

TEST_CASE("counter-based sampler")
{
    const GaussianSampler g1(42), g2(42), g3(43);
    for (std::uint64_t i = 0; i < 100; ++i) {
        REQUIRE(g1.normal(i) == g2.normal(i));
        const double v = g1.normal(i);
        REQUIRE(std::isfinite(v));
        REQUIRE(std::abs(v) < 10.0);
    }
    // different seeds give different streams
    int diffs = 0;
    for (std::uint64_t i = 0; i < 100; ++i)
        diffs += g1.normal(i) != g3.normal(i);
    REQUIRE(diffs > 90);

    // coordinates live at a fixed stride inside a sample's block
    REQUIRE(g1.sample_coord(7, 3) == g1.normal(7 * GaussianSampler::coord_stride + 2));
    REQUIRE_THROWS_AS(g1.sample_coord(0, 0), wns::validation_error);

    // empirical first two moments over the stream
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double v = g1.normal(static_cast<std::uint64_t>(i));
        s += v;
        s2 += v * v;
    }
    REQUIRE(std::abs(s / n) < 0.01);
    REQUIRE(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("pairing moments by simulation")
{
    const auto e1 = MultiIndex::unit(1);
    const auto e2 = MultiIndex::unit(2);
    const auto d2 = MultiIndex::of({{1, 2}});

    const auto same = wns::mc_inner(e1, e1, 100000, 42);
    REQUIRE(std::abs(same.estimate - 1.0) < 5.0 * same.std_error);
    REQUIRE(same.n == 100000);
    REQUIRE(same.seed == 42);

    const auto cross = wns::mc_inner(e1, e2, 100000, 42);
    REQUIRE(std::abs(cross.estimate) < 5.0 * cross.std_error);

    const auto deg2 = wns::mc_inner(d2, d2, 100000, 42);
    REQUIRE(std::abs(deg2.estimate - 2.0) < 5.0 * deg2.std_error);

    // identical seeds reproduce the report bit for bit
    const auto again = wns::mc_inner(e1, e1, 100000, 42);
    REQUIRE(again.estimate == same.estimate);
    REQUIRE(again.std_error == same.std_error);

    REQUIRE_THROWS_AS(wns::mc_inner(e1, e1, 0, 1), wns::validation_error);
}

TEST_CASE("series moments by simulation")
{
    Series<double> one(wns::Basis::chaos, 2, 1);
    one.set_coeff(MultiIndex{}, 1.0);
    const auto m1 = wns::mc_series_moment(one, 20000, 7);
    REQUIRE(m1.estimate == 1.0);
    REQUIRE(m1.std_error == 0.0);

    Series<double> h1(wns::Basis::chaos, 1, 1);
    h1.set_coeff(MultiIndex::unit(1), 1.0);
    const auto mh = wns::mc_series_moment(h1, 100000, 7);
    REQUIRE(std::abs(mh.estimate) < 5.0 * mh.std_error);

    Series<double> f(wns::Basis::chaos, 2, 5);
    f.set_coeff(MultiIndex{}, 3.0);
    f.set_coeff(MultiIndex::of({{5, 2}}), 1.0);
    const auto mf = wns::mc_series_moment(f, 100000, 7);
    REQUIRE(std::abs(mf.estimate - 3.0) < 5.0 * mf.std_error);

    REQUIRE_THROWS_AS(
        wns::mc_series_moment(hermite_transform(one), 100, 1), wns::validation_error);
}

TEST_CASE("convolution mean factorizes")
{
    Series<double> f(wns::Basis::chaos, 2, 2);
    f.set_coeff(MultiIndex{}, 0.75);
    f.set_coeff(MultiIndex::unit(1), 0.5);
    f.set_coeff(MultiIndex::of({{2, 2}}), -0.25);
    Series<double> g(wns::Basis::chaos, 2, 2);
    g.set_coeff(MultiIndex{}, -1.25);
    g.set_coeff(MultiIndex::unit(2), 1.0);
    g.set_coeff(MultiIndex::of({{1, 1}, {2, 1}}), 0.5);

    const auto prod = wick_mul(f, g);
    REQUIRE(prod.coeff(MultiIndex{}) == 0.75 * -1.25);
    const auto m = wns::mc_series_moment(prod, 200000, 11);
    REQUIRE(std::abs(m.estimate - 0.75 * -1.25) < 5.0 * m.std_error);
}

TEST_CASE("convolution square differs from the pointwise square")
{
    Series<double> h1(wns::Basis::chaos, 2, 1);
    h1.set_coeff(MultiIndex::unit(1), 1.0);

    const std::uint64_t n = 1000000;
    const auto pointwise = wns::mc_pointwise_product_moment(h1, h1, n, 42);
    const auto convolved = wns::mc_series_moment(wick_mul(h1, h1), n, 42);
    // E[h1(X)^2] = 1 while the convolution square is mean-zero
    REQUIRE(std::abs(pointwise.estimate - 1.0) < 5.0 * pointwise.std_error);
    REQUIRE(std::abs(convolved.estimate) < 5.0 * convolved.std_error);
    REQUIRE(pointwise.estimate - convolved.estimate >
            5.0 * (pointwise.std_error + convolved.std_error));
}

TEST_CASE("deterministic factors commute with sampling")
{
    Series<double> f(wns::Basis::chaos, 2, 2);
    f.set_coeff(MultiIndex::unit(1), 0.5);
    f.set_coeff(MultiIndex::of({{1, 1}, {2, 1}}), -1.5);
    f.set_coeff(MultiIndex{}, 0.25);

    const auto c = Series<double>::constant(wns::Basis::chaos, 2, 2, 2.0);
    const auto pointwise = wns::mc_pointwise_product_moment(c, f, 50000, 13);
    const auto convolved = wns::mc_series_moment(wick_mul(c, f), 50000, 13);
    REQUIRE(pointwise.estimate == convolved.estimate);
}
