#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wns/errors.hpp"
#include "wns/multiindex.hpp"
#include "wns/rings.hpp"

namespace wns {

/// Interpretation tag of a truncated series: chaos basis H_alpha,
/// holomorphic monomials z^alpha, or Fueter monomials zeta^alpha. The
/// coefficient calculus is identical in all three; products convolve
/// indices.
enum class Basis { chaos, monomial, fueter };

inline const char* basis_name(Basis b)
{
    switch (b) {
    case Basis::chaos:
        return "chaos";
    case Basis::monomial:
        return "monomial";
    case Basis::fueter:
        return "fueter";
    }
    return "?";
}

inline std::int64_t checked_int64(std::uint64_t v)
{
    if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw std::overflow_error("value exceeds signed 64-bit range");
    return static_cast<std::int64_t>(v);
}

/// Total-degree-truncated formal power series over a coefficient ring T.
/// Stored sparsely: exact-zero coefficients are never kept, every key has
/// weight <= degree() and support within 1..max_var(), and all values
/// share shape().
template <class T>
class Series {
public:
    using coeff_map = std::map<MultiIndex, T, GrlexLess>;

    Series(Basis basis, int degree, int max_var, Shape shape = {})
        : basis_(basis), degree_(degree), max_var_(max_var), shape_(shape)
    {
        if (degree < 0)
            throw validation_error("series degree must be nonnegative");
        if (max_var < 0)
            throw validation_error("series max_var must be nonnegative");
        if (shape.rows < 1 || shape.cols < 1)
            throw validation_error("series shape must be positive");
    }

    static Series constant(Basis basis, int degree, int max_var, const T& value)
    {
        Series s(basis, degree, max_var, ring_traits<T>::shape_of(value));
        s.set_coeff(MultiIndex{}, value);
        return s;
    }
    /// Multiplicative unit of the given square shape.
    static Series unit(Basis basis, int degree, int max_var, Shape shape = {})
    {
        Series s(basis, degree, max_var, shape);
        s.set_coeff(MultiIndex{}, ring_traits<T>::one(shape));
        return s;
    }

    Basis basis() const { return basis_; }
    int degree() const { return degree_; }
    int max_var() const { return max_var_; }
    Shape shape() const { return shape_; }
    const coeff_map& coeffs() const { return coeffs_; }
    std::size_t term_count() const { return coeffs_.size(); }

    T coeff(const MultiIndex& a) const
    {
        const auto it = coeffs_.find(a);
        return it == coeffs_.end() ? ring_traits<T>::zero(shape_) : it->second;
    }
    T constant_coeff() const { return coeff(MultiIndex{}); }

    void set_coeff(const MultiIndex& a, T value)
    {
        check_key(a);
        if (ring_traits<T>::shape_of(value) != shape_)
            throw validation_error("coefficient shape mismatch");
        if (ring_traits<T>::is_zero(value))
            coeffs_.erase(a);
        else
            coeffs_.insert_or_assign(a, std::move(value));
    }
    void add_to_coeff(const MultiIndex& a, const T& value)
    {
        check_key(a);
        if (ring_traits<T>::shape_of(value) != shape_)
            throw validation_error("coefficient shape mismatch");
        auto it = coeffs_.find(a);
        if (it == coeffs_.end()) {
            if (!ring_traits<T>::is_zero(value))
                coeffs_.emplace(a, value);
            return;
        }
        it->second = ring_traits<T>::add(it->second, value);
        if (ring_traits<T>::is_zero(it->second))
            coeffs_.erase(it);
    }

    Series with_basis(Basis b) const
    {
        Series s = *this;
        s.basis_ = b;
        return s;
    }
    /// Copy re-truncated to a (possibly lower) degree.
    Series truncated(int degree) const
    {
        Series s(basis_, degree, max_var_, shape_);
        for (const auto& [a, v] : coeffs_)
            if (a.weight() <= static_cast<std::uint64_t>(degree))
                s.coeffs_.emplace(a, v);
        return s;
    }

    /// Largest coefficient size, 0 for the zero series.
    double max_abs_coeff() const
    {
        double m = 0.0;
        for (const auto& [a, v] : coeffs_)
            m = std::max(m, abs_size(v));
        return m;
    }
    bool is_zero() const { return coeffs_.empty(); }

private:
    void check_key(const MultiIndex& a) const
    {
        if (a.weight() > static_cast<std::uint64_t>(degree_))
            throw validation_error("multi-index weight exceeds series degree");
        if (a.max_position() > static_cast<std::uint32_t>(max_var_))
            throw validation_error("multi-index position exceeds series max_var");
    }

    Basis basis_;
    int degree_;
    int max_var_;
    Shape shape_;
    coeff_map coeffs_;
};

namespace detail {
template <class T>
void check_same_basis(const Series<T>& f, const Series<T>& g)
{
    if (f.basis() != g.basis())
        throw validation_error("series basis mismatch");
}
} // namespace detail

template <class T>
Series<T> add(const Series<T>& f, const Series<T>& g)
{
    detail::check_same_basis(f, g);
    if (f.shape() != g.shape())
        throw validation_error("series shape mismatch");
    Series<T> r(f.basis(), std::min(f.degree(), g.degree()), std::max(f.max_var(), g.max_var()),
                f.shape());
    for (const auto& [a, v] : f.coeffs())
        if (a.weight() <= static_cast<std::uint64_t>(r.degree()))
            r.add_to_coeff(a, v);
    for (const auto& [a, v] : g.coeffs())
        if (a.weight() <= static_cast<std::uint64_t>(r.degree()))
            r.add_to_coeff(a, v);
    return r;
}

template <class T>
Series<T> negate(const Series<T>& f)
{
    Series<T> r(f.basis(), f.degree(), f.max_var(), f.shape());
    for (const auto& [a, v] : f.coeffs())
        r.set_coeff(a, ring_traits<T>::neg(v));
    return r;
}

template <class T>
Series<T> sub(const Series<T>& f, const Series<T>& g)
{
    return add(f, negate(g));
}

/// Left scalar action s * c_alpha.
template <class T>
Series<T> scale(const Series<T>& f, const T& s)
{
    if (!ring_traits<T>::shape_of(s).is_scalar() && ring_traits<T>::shape_of(s) != f.shape())
        throw validation_error("scale factor shape mismatch");
    Series<T> r(f.basis(), f.degree(), f.max_var(), f.shape());
    for (const auto& [a, v] : f.coeffs())
        r.add_to_coeff(a, ring_traits<T>::mul(s, v));
    return r;
}

template <class T>
Series<T> scale_ratio(const Series<T>& f, std::int64_t num, std::int64_t den)
{
    Series<T> r(f.basis(), f.degree(), f.max_var(), f.shape());
    for (const auto& [a, v] : f.coeffs())
        r.add_to_coeff(a, ring_traits<T>::scale_ratio(v, num, den));
    return r;
}

/// Convolution product on coefficients: the Wick product in the chaos
/// basis, the Cauchy product in the monomial basis, the CK product of
/// Fueter monomial expansions. Left factor's coefficients multiply on
/// the left; result is truncated to the smaller degree.
template <class T>
Series<T> wick_mul(const Series<T>& f, const Series<T>& g)
{
    detail::check_same_basis(f, g);
    const Shape rs = ring_traits<T>::mul_shape(f.shape(), g.shape());
    Series<T> r(f.basis(), std::min(f.degree(), g.degree()), std::max(f.max_var(), g.max_var()),
                rs);
    const std::uint64_t dmax = static_cast<std::uint64_t>(r.degree());
    for (const auto& [a, fa] : f.coeffs()) {
        const std::uint64_t wa = a.weight();
        if (wa > dmax)
            continue;
        for (const auto& [b, gb] : g.coeffs()) {
            if (wa + b.weight() > dmax)
                continue;
            r.add_to_coeff(wns::add(a, b), ring_traits<T>::mul(fa, gb));
        }
    }
    return r;
}

template <class T>
Series<T> wick_pow(const Series<T>& f, int n)
{
    if (n < 0)
        throw validation_error("wick_pow exponent must be nonnegative");
    if (!f.shape().is_square())
        throw validation_error("wick_pow requires a square shape");
    Series<T> r = Series<T>::unit(f.basis(), f.degree(), f.max_var(), f.shape());
    for (int i = 0; i < n; ++i)
        r = wick_mul(r, f);
    return r;
}

/// Multiplicative inverse in the truncated convolution algebra, solved
/// degree by degree: X_0 = F_0^{-1} and
/// F_0 X_alpha = -sum_{0 < beta <= alpha} F_beta X_{alpha-beta}.
/// Requires the constant coefficient to be a unit.
template <class T>
Series<T> wick_inv(const Series<T>& f)
{
    if (!f.shape().is_square())
        throw validation_error("wick_inv requires a square shape");
    const T f0 = f.constant_coeff();
    const T f0_inv = ring_traits<T>::invert(f0); // throws on a singular constant term
    Series<T> x(f.basis(), f.degree(), f.max_var(), f.shape());
    x.set_coeff(MultiIndex{}, f0_inv);
    const std::vector<MultiIndex> order = enumerate_indices(f.degree(), f.max_var());
    for (const MultiIndex& a : order) {
        if (a.is_zero())
            continue;
        T acc = ring_traits<T>::zero(f.shape());
        for (const auto& [b, fb] : f.coeffs()) {
            if (b.is_zero())
                continue;
            const auto rest = wns::sub(a, b);
            if (!rest)
                continue;
            const T xr = x.coeff(*rest);
            if (ring_traits<T>::is_zero(xr))
                continue;
            acc = ring_traits<T>::add(acc, ring_traits<T>::mul(fb, xr));
        }
        if (ring_traits<T>::is_zero(acc))
            continue;
        x.set_coeff(a, ring_traits<T>::neg(ring_traits<T>::mul(f0_inv, acc)));
    }
    return x;
}

/// Coefficient-preserving basis change H_alpha -> z^alpha.
template <class T>
Series<T> hermite_transform(const Series<T>& f)
{
    if (f.basis() != Basis::chaos)
        throw validation_error("hermite_transform expects a chaos-basis series");
    return f.with_basis(Basis::monomial);
}

template <class T>
Series<T> inverse_hermite(const Series<T>& f)
{
    if (f.basis() != Basis::monomial)
        throw validation_error("inverse_hermite expects a monomial-basis series");
    return f.with_basis(Basis::chaos);
}

/// Value type of evaluating a T-coefficient series at S-valued points.
template <class T, class S>
using eval_result_t = decltype(scale_value(std::declval<T>(), std::declval<S>()));

/// Evaluates a monomial-basis series at a finite point; z[i] is the
/// value of variable i+1, missing trailing coordinates are zero.
template <class T, class S>
eval_result_t<T, S> evaluate(const Series<T>& f, const std::vector<S>& z)
{
    if (f.basis() != Basis::monomial)
        throw validation_error("evaluate expects a monomial-basis series");
    using R = eval_result_t<T, S>;
    R acc = ring_traits<R>::zero(f.shape());
    for (const auto& [a, v] : f.coeffs()) {
        S mono = S(1);
        bool vanishes = false;
        for (const auto& [pos, exp] : a.entries()) {
            if (pos > z.size() || z[pos - 1] == S(0)) {
                vanishes = true;
                break;
            }
            for (std::uint32_t k = 0; k < exp; ++k)
                mono = mono * z[pos - 1];
        }
        if (vanishes)
            continue;
        acc = ring_traits<R>::add(acc, scale_value(v, mono));
    }
    return acc;
}

/// Squared norms (and square roots) in the graded function spaces; the
/// Kondratiev/Hida entries depend on the weight parameter q. Matrix
/// coefficients enter through their squared Frobenius norm.
struct NormReport {
    int q = 1;
    double white_noise2 = 0, p_space2 = 0, arveson2 = 0, fock2 = 0, kondratiev2 = 0, hida2 = 0;
    double white_noise = 0, p_space = 0, arveson = 0, fock = 0, kondratiev = 0, hida = 0;
};

template <class T>
NormReport norms(const Series<T>& f, int q = 1)
{
    if (q < 0)
        throw validation_error("norm parameter q must be nonnegative");
    NormReport r;
    r.q = q;
    for (const auto& [a, v] : f.coeffs()) {
        const double c2 = ring_traits<T>::abs2(v);
        const double afact = static_cast<double>(a.factorial());
        const double wfact = static_cast<double>(MultiIndex::int_factorial(a.weight()));
        const double kq = two_n_pow(a, q, -1);
        r.white_noise2 += c2 * afact;
        r.p_space2 += c2;
        r.arveson2 += c2 * afact / wfact;
        r.fock2 += c2 * afact;
        r.kondratiev2 += c2 * kq;
        r.hida2 = std::max(r.hida2, c2 * kq);
    }
    r.white_noise = std::sqrt(r.white_noise2);
    r.p_space = std::sqrt(r.p_space2);
    r.arveson = std::sqrt(r.arveson2);
    r.fock = std::sqrt(r.fock2);
    r.kondratiev = std::sqrt(r.kondratiev2);
    r.hida = std::sqrt(r.hida2);
    return r;
}

enum class InnerSpace { p, white_noise, arveson, fock };

inline InnerSpace inner_space_from_name(const std::string& name)
{
    if (name == "p")
        return InnerSpace::p;
    if (name == "white_noise")
        return InnerSpace::white_noise;
    if (name == "arveson")
        return InnerSpace::arveson;
    if (name == "fock")
        return InnerSpace::fock;
    throw validation_error("unknown inner-product space: " + name);
}

/// Weighted coefficient pairing sum_alpha w_alpha f_alpha conj(g_alpha);
/// the weight is applied as an exact integer ratio so exact rings stay
/// exact. Scalar coefficients only.
template <class T>
T inner_product(const Series<T>& f, const Series<T>& g, InnerSpace space)
{
    static_assert(ring_traits<T>::scalar, "inner_product requires scalar coefficients");
    detail::check_same_basis(f, g);
    T acc = ring_traits<T>::zero();
    for (const auto& [a, fa] : f.coeffs()) {
        const T ga = g.coeff(a);
        if (ring_traits<T>::is_zero(ga))
            continue;
        T term = ring_traits<T>::mul(fa, ring_traits<T>::conj(ga));
        const std::int64_t afact = checked_int64(a.factorial());
        switch (space) {
        case InnerSpace::p:
            break;
        case InnerSpace::white_noise:
        case InnerSpace::fock:
            term = ring_traits<T>::scale_ratio(term, afact, 1);
            break;
        case InnerSpace::arveson:
            term = ring_traits<T>::scale_ratio(
                term, afact, checked_int64(MultiIndex::int_factorial(a.weight())));
            break;
        }
        acc = ring_traits<T>::add(acc, term);
    }
    return acc;
}

/// Backward-shift-type operator: the alpha term contributes
/// (alpha_j/|alpha|) c_alpha at index alpha - e_j; terms with
/// alpha_j = 0 contribute nothing.
template <class T>
Series<T> leibenzon(const Series<T>& f, std::uint32_t j)
{
    if (j < 1)
        throw validation_error("variable index must be >= 1");
    Series<T> r(f.basis(), std::max(f.degree() - 1, 0), f.max_var(), f.shape());
    for (const auto& [a, v] : f.coeffs()) {
        const std::uint32_t aj = a.exponent(j);
        if (aj == 0)
            continue;
        const auto rest = wns::sub(a, MultiIndex::unit(j));
        r.add_to_coeff(*rest,
                       ring_traits<T>::scale_ratio(v, static_cast<std::int64_t>(aj),
                                                   checked_int64(a.weight())));
    }
    return r;
}

/// Multiplication by the variable z_j (index shift by e_j); terms pushed
/// past the truncation degree are dropped.
template <class T>
Series<T> shift_up(const Series<T>& f, std::uint32_t j, int result_degree)
{
    if (j < 1)
        throw validation_error("variable index must be >= 1");
    Series<T> r(f.basis(), result_degree, std::max(f.max_var(), static_cast<int>(j)),
                f.shape());
    for (const auto& [a, v] : f.coeffs()) {
        const MultiIndex up = wns::add(a, MultiIndex::unit(j));
        if (up.weight() <= static_cast<std::uint64_t>(result_degree))
            r.add_to_coeff(up, v);
    }
    return r;
}

/// Residual of the decomposition f - f(0) = sum_j z_j (R_j f); exactly
/// zero over exact rings because sum_j alpha_j/|alpha| = 1.
template <class T>
Series<T> gleason_residual(const Series<T>& f)
{
    Series<T> r(f.basis(), f.degree(), f.max_var(), f.shape());
    for (const auto& [a, v] : f.coeffs())
        if (!a.is_zero())
            r.set_coeff(a, v);
    for (int j = 1; j <= f.max_var(); ++j) {
        const Series<T> rj = leibenzon(f, static_cast<std::uint32_t>(j));
        for (const auto& [a, v] : rj.coeffs()) {
            const MultiIndex up = wns::add(a, MultiIndex::unit(static_cast<std::uint32_t>(j)));
            if (up.weight() <= static_cast<std::uint64_t>(f.degree()))
                r.add_to_coeff(up, ring_traits<T>::neg(v));
        }
    }
    return r;
}

/// Membership report for the sets K_q(delta): value is the closed-form
/// sum over nonzero indices, infinite when some coordinate makes its
/// geometric series diverge.
struct KqReport {
    double value = 0.0;
    bool divergent = false;
    bool inside = false;
};

/// zabs[i] is |z_{i+1}|; requires nonnegative entries, q >= 0, delta > 0.
inline KqReport kq_membership(const std::vector<double>& zabs, int q, double delta)
{
    if (q < 0)
        throw validation_error("q must be nonnegative");
    if (!(delta > 0.0))
        throw validation_error("delta must be positive");
    KqReport rep;
    double prod = 1.0;
    for (std::size_t i = 0; i < zabs.size(); ++i) {
        const double t = zabs[i];
        if (t < 0.0)
            throw validation_error("coordinate magnitudes must be nonnegative");
        if (t == 0.0)
            continue;
        const double w = std::pow(2.0 * static_cast<double>(i + 1), q) * t;
        if (w >= 1.0) {
            rep.divergent = true;
            rep.value = std::numeric_limits<double>::infinity();
            rep.inside = false;
            return rep;
        }
        prod /= 1.0 - w;
    }
    rep.value = prod - 1.0;
    rep.inside = rep.value < delta * delta;
    return rep;
}

/// Largest coefficient distance between two series over the union of
/// their supports.
template <class T>
double max_coeff_distance(const Series<T>& f, const Series<T>& g)
{
    double m = 0.0;
    for (const auto& [a, v] : f.coeffs())
        m = std::max(m, abs_size(ring_traits<T>::add(v, ring_traits<T>::neg(g.coeff(a)))));
    for (const auto& [a, v] : g.coeffs())
        if (f.coeffs().find(a) == f.coeffs().end())
            m = std::max(m, abs_size(v));
    return m;
}

} // namespace wns
