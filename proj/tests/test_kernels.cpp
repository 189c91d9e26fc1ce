#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "support/common.hpp"
#include "wns/kernels.hpp"
#include "wns/realization.hpp"

using wns::L2Point;
using wns_test::Rng;
using C = std::complex<double>;

namespace {

L2Point pt(std::vector<C> v) { return L2Point(std::move(v)); }

L2Point random_ball_point(Rng& rng, std::size_t support, double radius)
{
    std::vector<C> v(support);
    double n2 = 0.0;
    for (auto& c : v) {
        c = C(rng.sym(1.0), rng.sym(1.0));
        n2 += std::norm(c);
    }
    const double scale = radius * std::sqrt(rng.uniform()) / std::sqrt(std::max(n2, 1e-30));
    for (auto& c : v)
        c *= scale;
    return pt(std::move(v));
}

// eigenvalue helpers shared by the Gram tests
} // namespace

TEST_CASE("eigenvalue routines on known matrices")
{
    auto s = wns::Matrix<double>::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const auto evs = wns::symmetric_eigenvalues(s);
    REQUIRE(evs.size() == 2);
    REQUIRE(evs[0] == Catch::Approx(-1.0));
    REQUIRE(evs[1] == Catch::Approx(1.0));

    wns::Matrix<C> h(2, 2);
    h.at(0, 0) = 2.0;
    h.at(1, 1) = 2.0;
    h.at(0, 1) = C(0.0, 1.0);
    h.at(1, 0) = C(0.0, -1.0);
    const auto evh = wns::hermitian_eigenvalues(h);
    REQUIRE(evh.size() == 2);
    REQUIRE(evh[0] == Catch::Approx(1.0));
    REQUIRE(evh[1] == Catch::Approx(3.0));
}

TEST_CASE("closed-form kernels")
{
    const L2Point zero;
    Rng rng(127);
    for (int trial = 0; trial < 10; ++trial) {
        const auto w = random_ball_point(rng, 4, 0.8);
        REQUIRE(std::abs(wns::arveson_kernel(zero, w) - 1.0) == 0.0);
        REQUIRE(std::abs(wns::fock_kernel(w, zero) - 1.0) == 0.0);
    }

    const auto one = pt({1.0});
    REQUIRE_THROWS_AS(wns::arveson_kernel(one, one), wns::numeric_error);
}

TEST_CASE("kernels match their power series")
{
    Rng rng(131);
    const auto indices = wns::enumerate_indices(8, 2);
    for (int trial = 0; trial < 10; ++trial) {
        auto z = random_ball_point(rng, 2, 1.0);
        auto w = random_ball_point(rng, 2, 1.0);
        // scale both to norm exactly 0.3
        for (auto& c : z.v)
            c *= 0.3 / std::sqrt(z.norm2());
        for (auto& c : w.v)
            c *= 0.3 / std::sqrt(w.norm2());

        C arv_sum = 0.0, fock_sum = 0.0;
        for (const auto& a : indices) {
            C mono = 1.0;
            for (const auto& [pos, exp] : a.entries())
                for (std::uint32_t e = 0; e < exp; ++e)
                    mono *= z.coord(pos) * std::conj(w.coord(pos));
            const auto afact = static_cast<double>(a.factorial());
            const auto wfact =
                static_cast<double>(wns::MultiIndex::int_factorial(a.weight()));
            arv_sum += mono * (wfact / afact);
            fock_sum += mono / afact;
        }
        REQUIRE(std::abs(arv_sum - wns::arveson_kernel(z, w)) < 1e-6);
        REQUIRE(std::abs(fock_sum - wns::fock_kernel(z, w)) < 1e-6);
    }
}

TEST_CASE("kernel coefficients carry the multinomial weights")
{
    // extract Taylor coefficients of z -> 1/(1 - <z,w>) on a 2-variable
    // slice by a discrete Fourier transform over a small torus
    const double w1 = 0.5, w2 = 0.35, r = 0.2;
    const int n = 16;
    const double two_pi = 6.283185307179586476925287;
    std::vector<std::vector<C>> samples(n, std::vector<C>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const C z1 = std::polar(r, two_pi * j / n);
            const C z2 = std::polar(r, two_pi * k / n);
            samples[j][k] = 1.0 / (1.0 - z1 * w1 - z2 * w2);
        }
    for (const auto& a : wns::enumerate_indices(5, 2)) {
        const auto a1 = static_cast<int>(a.exponent(1));
        const auto a2 = static_cast<int>(a.exponent(2));
        C acc = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                acc += samples[j][k] *
                       std::polar(1.0, -two_pi * (a1 * j + a2 * k) / n);
        acc /= static_cast<double>(n * n) * std::pow(r, a1 + a2);
        const double weight = static_cast<double>(wns::MultiIndex::int_factorial(a.weight())) /
                              static_cast<double>(a.factorial());
        const double expect = weight * std::pow(w1, a1) * std::pow(w2, a2);
        REQUIRE(std::abs(acc - expect) < 1e-8);
    }
}

TEST_CASE("ball automorphism basics")
{
    Rng rng(137);
    const L2Point zero;
    for (int trial = 0; trial < 20; ++trial) {
        const auto z = random_ball_point(rng, 5, 0.9);
        const auto bz = wns::blaschke(zero, z);
        REQUIRE(bz.size() >= z.size());
        for (std::size_t i = 1; i <= 5; ++i)
            REQUIRE(std::abs(bz.coord(i) - z.coord(i)) < 1e-15);

        const auto a = random_ball_point(rng, 5, 0.8);
        const auto ba = wns::blaschke(a, a);
        REQUIRE(std::sqrt(ba.norm2()) < 1e-13);
        // automorphisms preserve the open ball
        REQUIRE(wns::blaschke(a, z).norm2() < 1.0);
    }

    REQUIRE_THROWS_AS(wns::blaschke(pt({1.0}), pt({0.5})), wns::validation_error);
    REQUIRE_THROWS_AS(wns::blaschke(pt({C(0.0, 1.2)}), pt({0.5})), wns::validation_error);
}

TEST_CASE("automorphism kernel identity")
{
    Rng rng(139);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_ball_point(rng, 5, 0.85);
        const auto z = random_ball_point(rng, 5, 0.9);
        const auto w = random_ball_point(rng, 5, 0.9);
        const auto id = wns::blaschke_kernel_identity(a, z, w);
        REQUIRE(id.rel_residual < 1e-12);
    }
}

TEST_CASE("gram positivity of the standard kernels")
{
    Rng rng(149);
    std::vector<L2Point> points;
    for (int i = 0; i < 10; ++i)
        points.push_back(random_ball_point(rng, 4, 0.9));

    const auto garv = wns::build_gram(points, [](const L2Point& z, const L2Point& w) {
        return wns::arveson_kernel(z, w);
    });
    REQUIRE(garv.hermiticity_residual < 1e-12);
    REQUIRE(garv.is_psd);
    REQUIRE(garv.min_eigenvalue >= -1e-10);

    const auto gfock = wns::build_gram(points, [](const L2Point& z, const L2Point& w) {
        return wns::fock_kernel(z, w);
    });
    REQUIRE(gfock.is_psd);

    const auto a = random_ball_point(rng, 4, 0.7);
    const auto gb = wns::build_gram(points, [&a](const L2Point& z, const L2Point& w) {
        return (1.0 - wns::l2_inner(wns::blaschke(a, z), wns::blaschke(a, w))) /
               (1.0 - wns::l2_inner(z, w));
    });
    REQUIRE(gb.is_psd);

    REQUIRE(wns::build_gram({}, [](const L2Point&, const L2Point&) { return C(1.0); }).is_psd);
}

TEST_CASE("schur kernel gram")
{
    Rng rng(151);
    std::vector<L2Point> points;
    for (int i = 0; i < 8; ++i)
        points.push_back(random_ball_point(rng, 3, 0.9));

    const wns::PointFn coord1 = [](const L2Point& z) { return z.coord(1); };
    REQUIRE(wns::schur_gram(coord1, points).is_psd);

    const wns::PointFn const1 = [](const L2Point&) { return C(1.0); };
    const auto g1 = wns::schur_gram(const1, points);
    REQUIRE(g1.is_psd);
    REQUIRE(g1.gram.norm1() < 1e-14);

    const wns::PointFn twice = [](const L2Point& z) { return 2.0 * z.coord(1); };
    std::vector<L2Point> near_boundary{pt({0.0}), pt({0.7}), pt({-0.7}), pt({C(0.0, 0.7)})};
    const auto g2 = wns::schur_gram(twice, near_boundary);
    REQUIRE(!g2.is_psd);
    REQUIRE(g2.min_eigenvalue < -1e-3);
}

TEST_CASE("sum-of-kernels decomposition residual")
{
    Rng rng(157);
    std::vector<L2Point> points;
    for (int i = 0; i < 6; ++i)
        points.push_back(random_ball_point(rng, 2, 0.9));

    const wns::KernelFn one = [](const L2Point&, const L2Point&) { return C(1.0); };
    const wns::KernelFn zero = [](const L2Point&, const L2Point&) { return C(0.0); };

    // the coordinate multiplier, evaluated through a state-space realization
    wns::Realization<C> rz1;
    rz1.D = wns::Matrix<C>(1, 1);
    rz1.C = wns::Matrix<C>::from_rows({{C(1.0)}});
    rz1.A = {wns::Matrix<C>(1, 1)};
    rz1.B = {wns::Matrix<C>::from_rows({{C(1.0)}})};
    const wns::PointFn s1 = [&rz1](const L2Point& z) {
        return wns::eval(rz1, std::vector<C>{z.coord(1)}).value.at(0, 0);
    };
    REQUIRE(wns::agler_residual(s1, {one, zero}, points) < 1e-14);

    const wns::PointFn s12 = [](const L2Point& z) { return z.coord(1) * z.coord(2); };
    const wns::KernelFn k2 = [](const L2Point& z, const L2Point& w) {
        return z.coord(1) * std::conj(w.coord(1));
    };
    REQUIRE(wns::agler_residual(s12, {one, k2}, points) < 1e-14);

    const wns::PointFn s0 = [](const L2Point&) { return C(0.0); };
    REQUIRE(wns::agler_residual(s0, {zero, zero}, points) == Catch::Approx(1.0));
}
