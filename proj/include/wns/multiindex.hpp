#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wns/errors.hpp"

namespace wns {

/// A finite-support multi-index: a sequence of nonnegative integer exponents
/// over 1-based variable positions, stored sparsely as strictly increasing
/// (position, exponent) pairs with every stored exponent >= 1.
///
/// These index monomials z^alpha, chaos basis elements and Fueter monomials
/// alike; all modules share this one index type.
class MultiIndex {
public:
    using Entry = std::pair<std::uint32_t, std::uint32_t>; // (position, exponent)

    MultiIndex() = default;

    /// Unit index e_k: exponent 1 at position k (k >= 1), zero elsewhere.
    static MultiIndex unit(std::uint32_t k)
    {
        if (k == 0)
            throw validation_error("multi-index positions are 1-based");
        MultiIndex m;
        m.entries_.emplace_back(k, 1);
        return m;
    }

    /// Builds from arbitrary (position, exponent) pairs: sorts, merges
    /// duplicates, drops zero exponents. Positions must be >= 1.
    static MultiIndex of(std::vector<Entry> raw)
    {
        for (const auto& [pos, exp] : raw) {
            (void)exp;
            if (pos == 0)
                throw validation_error("multi-index positions are 1-based");
        }
        std::sort(raw.begin(), raw.end());
        MultiIndex m;
        for (const auto& [pos, exp] : raw) {
            if (exp == 0)
                continue;
            if (!m.entries_.empty() && m.entries_.back().first == pos)
                m.entries_.back().second += exp;
            else
                m.entries_.emplace_back(pos, exp);
        }
        return m;
    }

    static MultiIndex of(std::initializer_list<Entry> raw)
    {
        return of(std::vector<Entry>(raw));
    }

    const std::vector<Entry>& entries() const { return entries_; }

    bool is_zero() const { return entries_.empty(); }

    /// Exponent at position pos (0 if absent).
    std::uint32_t exponent(std::uint32_t pos) const
    {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), pos,
                                   [](const Entry& e, std::uint32_t p) { return e.first < p; });
        return (it != entries_.end() && it->first == pos) ? it->second : 0;
    }

    /// Largest position in the support, 0 for the zero index.
    std::uint32_t max_position() const
    {
        return entries_.empty() ? 0 : entries_.back().first;
    }

    /// |alpha| = sum of exponents.
    std::uint64_t weight() const
    {
        std::uint64_t w = 0;
        for (const auto& [pos, exp] : entries_) {
            (void)pos;
            w += exp;
        }
        return w;
    }

    /// alpha! = product of factorials of the exponents, exact.
    /// Throws std::overflow_error if the product exceeds 64 bits.
    std::uint64_t factorial() const
    {
        std::uint64_t r = 1;
        for (const auto& [pos, exp] : entries_) {
            (void)pos;
            for (std::uint32_t k = 2; k <= exp; ++k)
                r = checked_mul(r, k);
        }
        return r;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b)
    {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

    /// n! with 64-bit overflow detection.
    static std::uint64_t int_factorial(std::uint64_t n)
    {
        std::uint64_t r = 1;
        for (std::uint64_t k = 2; k <= n; ++k)
            r = checked_mul(r, k);
        return r;
    }

private:
    static std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
    {
        std::uint64_t r = 0;
        if (__builtin_mul_overflow(a, b, &r))
            throw std::overflow_error("multi-index factorial overflows 64 bits");
        return r;
    }

    std::vector<Entry> entries_;
};

/// Componentwise sum.
inline MultiIndex add(const MultiIndex& a, const MultiIndex& b)
{
    std::vector<MultiIndex::Entry> merged;
    merged.reserve(a.entries().size() + b.entries().size());
    auto ia = a.entries().begin(), ea = a.entries().end();
    auto ib = b.entries().begin(), eb = b.entries().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->first < ib->first))
            merged.push_back(*ia++);
        else if (ia == ea || ib->first < ia->first)
            merged.push_back(*ib++);
        else {
            merged.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return MultiIndex::of(std::move(merged));
}

/// Componentwise difference a - b, or nullopt if any component would go
/// negative. Callers that want the zeroing convention apply it themselves.
inline std::optional<MultiIndex> sub(const MultiIndex& a, const MultiIndex& b)
{
    std::vector<MultiIndex::Entry> out;
    out.reserve(a.entries().size());
    auto ia = a.entries().begin(), ea = a.entries().end();
    for (const auto& [pos, exp] : b.entries()) {
        while (ia != ea && ia->first < pos)
            out.push_back(*ia++);
        if (ia == ea || ia->first != pos || ia->second < exp)
            return std::nullopt;
        if (ia->second > exp)
            out.emplace_back(pos, ia->second - exp);
        ++ia;
    }
    while (ia != ea)
        out.push_back(*ia++);
    return MultiIndex::of(std::move(out));
}

/// True when b <= a componentwise.
inline bool dominates(const MultiIndex& a, const MultiIndex& b)
{
    for (const auto& [pos, exp] : b.entries())
        if (a.exponent(pos) < exp)
            return false;
    return true;
}

/// prod_j (2j)^{sign * q * alpha_j} over the support of alpha; sign is +1 or -1.
inline double two_n_pow(const MultiIndex& a, int q, int sign)
{
    if (sign != 1 && sign != -1)
        throw validation_error("two_n_pow: sign must be +1 or -1");
    if (q < 0)
        throw validation_error("two_n_pow: q must be nonnegative");
    double p = 1.0;
    for (const auto& [pos, exp] : a.entries()) {
        const double base = 2.0 * static_cast<double>(pos);
        double f = 1.0;
        for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(q) * exp; ++k)
            f *= base;
        p = (sign > 0) ? p * f : p / f;
    }
    return p;
}

/// Graded-lexicographic order: lower weight first; within a weight, the
/// index whose dense prefix is lexicographically larger comes first, so
/// enumeration at weight 1 yields e_1, e_2, e_3, ...
inline bool grlex_less(const MultiIndex& a, const MultiIndex& b)
{
    const auto wa = a.weight(), wb = b.weight();
    if (wa != wb)
        return wa < wb;
    auto ia = a.entries().begin(), ea = a.entries().end();
    auto ib = b.entries().begin(), eb = b.entries().end();
    while (ia != ea && ib != eb) {
        if (ia->first != ib->first)
            return ia->first < ib->first; // earlier support => larger dense prefix
        if (ia->second != ib->second)
            return ia->second > ib->second;
        ++ia;
        ++ib;
    }
    return ia != ea; // remaining a-entries sit at earlier positions than b's absent ones
}

struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(a, b); }
};

/// All alpha with weight <= max_degree and support within {1..max_var},
/// in graded-lex order. Size is C(max_var + max_degree, max_degree).
inline std::vector<MultiIndex> enumerate_indices(unsigned max_degree, unsigned max_var)
{
    std::vector<MultiIndex> out;
    std::vector<MultiIndex::Entry> cur;
    // depth-first over positions 1..max_var, then sort into graded-lex
    auto rec = [&](auto&& self, std::uint32_t pos, unsigned remaining) -> void {
        if (pos > max_var) {
            out.push_back(MultiIndex::of(cur));
            return;
        }
        for (unsigned e = 0; e <= remaining; ++e) {
            if (e > 0)
                cur.emplace_back(pos, e);
            self(self, pos + 1, remaining - e);
            if (e > 0)
                cur.pop_back();
        }
    };
    rec(rec, 1, max_degree);
    std::sort(out.begin(), out.end(), grlex_less);
    return out;
}

} // namespace wns
