#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "wns/errors.hpp"
#include "wns/multiindex.hpp"
#include "wns/series.hpp"

namespace wns {

/// Monic Hermite polynomials of the probabilists' convention:
/// h_{n+1}(x) = x h_n(x) - n h_{n-1}(x), h_0 = 1; E[h_n(X)^2] = n! for
/// standard normal X. Coefficients are exact integers.
class HermitePoly {
public:
    explicit HermitePoly(int n) : n_(n)
    {
        if (n < 0)
            throw validation_error("hermite degree must be nonnegative");
        std::vector<std::int64_t> prev{1};
        std::vector<std::int64_t> cur{0, 1};
        if (n == 0) {
            coeffs_ = prev;
            return;
        }
        for (int k = 1; k < n; ++k) {
            std::vector<std::int64_t> next(static_cast<std::size_t>(k) + 2, 0);
            for (std::size_t i = 0; i < cur.size(); ++i)
                next[i + 1] = cur[i];
            for (std::size_t i = 0; i < prev.size(); ++i) {
                std::int64_t t;
                if (__builtin_mul_overflow(prev[i], static_cast<std::int64_t>(k), &t) ||
                    __builtin_sub_overflow(next[i], t, &next[i]))
                    throw std::overflow_error("hermite coefficient overflow");
            }
            prev = std::move(cur);
            cur = std::move(next);
        }
        coeffs_ = cur;
    }

    int degree() const { return n_; }
    /// coeffs()[k] is the coefficient of x^k; leading coefficient is 1.
    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

    double eval(double x) const
    {
        double acc = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            acc = acc * x + static_cast<double>(coeffs_[i]);
        return acc;
    }

private:
    int n_;
    std::vector<std::int64_t> coeffs_;
};

/// Cached evaluation: degrees up to 32 (the exact-coefficient range)
/// share one table built on first use, so sampling loops never rebuild
/// coefficient vectors.
inline double hermite_eval(int n, double x)
{
    if (n < 0)
        throw validation_error("hermite degree must be nonnegative");
    static const std::vector<HermitePoly> table = [] {
        std::vector<HermitePoly> t;
        t.reserve(33);
        for (int k = 0; k <= 32; ++k)
            t.emplace_back(k);
        return t;
    }();
    if (n < static_cast<int>(table.size()))
        return table[static_cast<std::size_t>(n)].eval(x);
    return HermitePoly(n).eval(x);
}

/// H_alpha(x) = prod over support of h_{alpha_k}(x_k); x[i] is
/// coordinate i+1 and every support position must be present.
inline double chaos_eval(const MultiIndex& alpha, const std::vector<double>& x)
{
    double acc = 1.0;
    for (const auto& [pos, exp] : alpha.entries()) {
        if (pos > x.size())
            throw validation_error("chaos evaluation point is missing a coordinate");
        acc *= hermite_eval(static_cast<int>(exp), x[pos - 1]);
    }
    return acc;
}

/// Counter-based standard normal stream: each (seed, index) pair maps to
/// one variate through an integer hash and Box-Muller, so any index can
/// be generated independently and the stream is identical however the
/// work is chunked.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    double normal(std::uint64_t index) const
    {
        const std::uint64_t a = mix(seed_ ^ mix(2 * index));
        const std::uint64_t b = mix(seed_ ^ mix(2 * index + 1));
        const double u1 = to_open_unit(a);
        const double u2 = to_open_unit(b);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    /// Coordinate k (1-based) of sample s; coordinates of one sample
    /// occupy a fixed stride so streams never overlap.
    double sample_coord(std::uint64_t sample, std::uint32_t k) const
    {
        if (k < 1 || k > coord_stride)
            throw validation_error("coordinate index out of range");
        return normal(sample * coord_stride + (k - 1));
    }

    static constexpr std::uint64_t coord_stride = 1u << 20;

private:
    static std::uint64_t mix(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }
    static double to_open_unit(std::uint64_t bits)
    {
        // 53 high bits to (0,1]; the +1 avoids log(0).
        return (static_cast<double>(bits >> 11) + 1.0) * (1.0 / 9007199254740992.0);
    }

    std::uint64_t seed_;
};

struct MCReport {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

namespace detail {
/// Mean and standard error with chunked accumulation in fixed order.
inline MCReport reduce_moments(const std::vector<double>& chunk_sums,
                               const std::vector<double>& chunk_sq_sums, std::uint64_t n,
                               std::uint64_t seed)
{
    double s = 0.0, s2 = 0.0;
    for (const double c : chunk_sums)
        s += c;
    for (const double c : chunk_sq_sums)
        s2 += c;
    MCReport r;
    r.n = n;
    r.seed = seed;
    r.estimate = s / static_cast<double>(n);
    if (n > 1) {
        const double var =
            std::max(0.0, (s2 - static_cast<double>(n) * r.estimate * r.estimate) /
                              static_cast<double>(n - 1));
        r.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return r;
}

template <class F>
MCReport mc_mean(std::uint64_t n, std::uint64_t seed, std::uint32_t max_coord, F&& value_of)
{
    if (n < 1)
        throw validation_error("sample count must be positive");
    const GaussianSampler g(seed);
    constexpr std::uint64_t chunk = 4096;
    std::vector<double> sums, sq_sums;
    std::vector<double> x(max_coord, 0.0);
    double cs = 0.0, cs2 = 0.0;
    for (std::uint64_t s = 0; s < n; ++s) {
        for (std::uint32_t k = 1; k <= max_coord; ++k)
            x[k - 1] = g.sample_coord(s, k);
        const double y = value_of(x);
        cs += y;
        cs2 += y * y;
        if ((s + 1) % chunk == 0 || s + 1 == n) {
            sums.push_back(cs);
            sq_sums.push_back(cs2);
            cs = 0.0;
            cs2 = 0.0;
        }
    }
    return reduce_moments(sums, sq_sums, n, seed);
}
} // namespace detail

/// Monte Carlo estimate of E[H_alpha H_beta]; the exact value is
/// delta_{alpha beta} alpha!.
inline MCReport mc_inner(const MultiIndex& alpha, const MultiIndex& beta, std::uint64_t n,
                         std::uint64_t seed)
{
    const std::uint32_t mc = std::max(alpha.max_position(), beta.max_position());
    return detail::mc_mean(n, seed, mc, [&](const std::vector<double>& x) {
        return chaos_eval(alpha, x) * chaos_eval(beta, x);
    });
}

/// Monte Carlo estimate of E[F] for a real chaos-basis series; the exact
/// value is the constant coefficient.
inline MCReport mc_series_moment(const Series<double>& f, std::uint64_t n, std::uint64_t seed)
{
    if (f.basis() != Basis::chaos)
        throw validation_error("moment estimation expects a chaos-basis series");
    const std::uint32_t mc = static_cast<std::uint32_t>(f.max_var());
    return detail::mc_mean(n, seed, mc, [&](const std::vector<double>& x) {
        double acc = 0.0;
        for (const auto& [a, c] : f.coeffs())
            acc += c * chaos_eval(a, x);
        return acc;
    });
}

/// Monte Carlo estimate of the *pointwise* product moment E[F G] on the
/// same sample stream the other estimators use; contrasts with the
/// convolution product, whose mean is F_0 G_0.
inline MCReport mc_pointwise_product_moment(const Series<double>& f, const Series<double>& g,
                                            std::uint64_t n, std::uint64_t seed)
{
    if (f.basis() != Basis::chaos || g.basis() != Basis::chaos)
        throw validation_error("moment estimation expects chaos-basis series");
    const std::uint32_t mc = static_cast<std::uint32_t>(std::max(f.max_var(), g.max_var()));
    return detail::mc_mean(n, seed, mc, [&](const std::vector<double>& x) {
        double fa = 0.0, ga = 0.0;
        for (const auto& [a, c] : f.coeffs())
            fa += c * chaos_eval(a, x);
        for (const auto& [a, c] : g.coeffs())
            ga += c * chaos_eval(a, x);
        return fa * ga;
    });
}

} // namespace wns
