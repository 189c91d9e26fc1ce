#pragma once

#include <cstdint>
#include <vector>

#include "wns/matrix.hpp"
#include "wns/multiindex.hpp"
#include "wns/realization.hpp"
#include "wns/series.hpp"

namespace wns_test {

/// Deterministic generator (splitmix64) so every test run sees the same
/// "random" instances on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }
    /// Uniform integer in [lo, hi], inclusive.
    int int_in(int lo, int hi)
    {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double uniform() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }
    double sym(double scale) { return (2.0 * uniform() - 1.0) * scale; }

private:
    std::uint64_t state_ = 0;
};

template <class T, class Gen>
wns::Series<T> random_series(Rng& rng, wns::Basis basis, int degree, int max_var,
                             double density, Gen&& gen)
{
    wns::Series<T> s(basis, degree, max_var);
    for (const wns::MultiIndex& a :
         wns::enumerate_indices(static_cast<unsigned>(degree), static_cast<unsigned>(max_var)))
        if (rng.uniform() < density)
            s.set_coeff(a, gen());
    return s;
}

inline wns::Matrix<double> random_matrix(Rng& rng, int rows, int cols, double scale)
{
    wns::Matrix<double> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = rng.sym(scale);
    return m;
}

/// Small-integer matrix (entries in [lo, hi]), handy for word-sum oracles.
inline wns::Matrix<double> random_int_matrix(Rng& rng, int rows, int cols, int lo, int hi)
{
    wns::Matrix<double> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<double>(rng.int_in(lo, hi));
    return m;
}

inline wns::Realization<double> random_realization(Rng& rng, int p, int q, int n, int m,
                                                   double scale)
{
    wns::Realization<double> r;
    r.D = random_matrix(rng, p, q, scale);
    r.C = random_matrix(rng, p, n, scale);
    for (int k = 0; k < m; ++k) {
        r.A.push_back(random_matrix(rng, n, n, scale));
        r.B.push_back(random_matrix(rng, n, q, scale));
    }
    return r;
}

/// A family of simultaneously diagonalizable matrices P diag(d_k) P^{-1};
/// such families commute pairwise, which the backward-shift identity for
/// realizations requires.
inline std::vector<wns::Matrix<double>> commuting_family(Rng& rng, int n, int m, double scale)
{
    wns::Matrix<double> p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            p.at(i, j) = rng.sym(1.0) + (i == j ? 2.0 : 0.0); // diagonally dominant
    const wns::Matrix<double> pinv = p.inverse();
    std::vector<wns::Matrix<double>> fam;
    for (int k = 0; k < m; ++k) {
        wns::Matrix<double> d(n, n);
        for (int i = 0; i < n; ++i)
            d.at(i, i) = rng.sym(scale);
        fam.push_back(p * d * pinv);
    }
    return fam;
}

/// Brute-force coefficient of a realization series: the sum over all
/// words with letter content alpha of C A_{w_1} ... A_{w_{n-1}} B_{w_n}.
/// Independent of the series machinery; the oracle for to_series.
template <class T>
wns::Matrix<T> word_coefficient(const wns::Realization<T>& r, const wns::MultiIndex& alpha)
{
    if (alpha.is_zero())
        return r.D;
    const int m = r.num_vars();
    std::vector<std::uint32_t> remaining(static_cast<std::size_t>(m), 0);
    for (const auto& [pos, exp] : alpha.entries()) {
        if (pos > static_cast<std::uint32_t>(m))
            return wns::Matrix<T>(r.out_dim(), r.in_dim());
        remaining[pos - 1] = exp;
    }
    wns::Matrix<T> acc(r.out_dim(), r.in_dim());
    std::uint64_t left = alpha.weight();
    auto rec = [&](auto&& self, const wns::Matrix<T>& cur, std::uint64_t rem) -> void {
        for (int k = 0; k < m; ++k) {
            if (remaining[static_cast<std::size_t>(k)] == 0)
                continue;
            --remaining[static_cast<std::size_t>(k)];
            if (rem == 1)
                acc = acc + cur * r.B[static_cast<std::size_t>(k)];
            else
                self(self, cur * r.A[static_cast<std::size_t>(k)], rem - 1);
            ++remaining[static_cast<std::size_t>(k)];
        }
    };
    rec(rec, r.C, left);
    return acc;
}

} // namespace wns_test
