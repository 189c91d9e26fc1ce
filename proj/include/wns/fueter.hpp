#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>

#include "wns/errors.hpp"
#include "wns/matrix.hpp"
#include "wns/multiindex.hpp"
#include "wns/quaternion.hpp"
#include "wns/series.hpp"

namespace wns {

using Exp3 = std::array<std::uint32_t, 3>;
using Exp4 = std::array<std::uint32_t, 4>;

namespace detail {
template <class S, class Exp>
class QPolyBase {
public:
    using term_map = std::map<Exp, Quaternion<S>>;

    const term_map& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Quaternion<S> coeff(const Exp& e) const
    {
        const auto it = terms_.find(e);
        return it == terms_.end() ? Quaternion<S>() : it->second;
    }
    void add_term(const Exp& e, const Quaternion<S>& q)
    {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!ring_traits<Quaternion<S>>::is_zero(q))
                terms_.emplace(e, q);
            return;
        }
        it->second = it->second + q;
        if (ring_traits<Quaternion<S>>::is_zero(it->second))
            terms_.erase(it);
    }

    std::uint32_t degree() const
    {
        std::uint32_t d = 0;
        for (const auto& [e, q] : terms_) {
            std::uint32_t w = 0;
            for (const std::uint32_t k : e)
                w += k;
            d = std::max(d, w);
        }
        return d;
    }
    double max_abs_coeff() const
    {
        double m = 0.0;
        for (const auto& [e, q] : terms_)
            m = std::max(m, abs_size(q));
        return m;
    }

    friend bool operator==(const QPolyBase& a, const QPolyBase& b)
    {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const QPolyBase& a, const QPolyBase& b) { return !(a == b); }

protected:
    term_map terms_;
};

inline std::uint32_t exp_weight(const Exp3& e) { return e[0] + e[1] + e[2]; }
inline std::uint32_t exp_weight(const Exp4& e) { return e[0] + e[1] + e[2] + e[3]; }
} // namespace detail

/// Quaternion-coefficient polynomial in the real variables x1, x2, x3.
/// Terms are monomial times a right coefficient: x^a * q; real monomials
/// commute with everything, so products multiply coefficients in order.
template <class S>
class QPoly3 : public detail::QPolyBase<S, Exp3> {
public:
    QPoly3() = default;
    static QPoly3 constant(Quaternion<S> q)
    {
        QPoly3 p;
        p.add_term(Exp3{0, 0, 0}, q);
        return p;
    }
    static QPoly3 monomial(const Exp3& e, Quaternion<S> q = Quaternion<S>::real(S(1)))
    {
        QPoly3 p;
        p.add_term(e, q);
        return p;
    }
};

/// Quaternion-coefficient polynomial in x0, x1, x2, x3 (right
/// coefficients).
template <class S>
class QPoly4 : public detail::QPolyBase<S, Exp4> {
public:
    QPoly4() = default;
    static QPoly4 constant(Quaternion<S> q)
    {
        QPoly4 p;
        p.add_term(Exp4{0, 0, 0, 0}, q);
        return p;
    }
    static QPoly4 monomial(const Exp4& e, Quaternion<S> q = Quaternion<S>::real(S(1)))
    {
        QPoly4 p;
        p.add_term(e, q);
        return p;
    }
};

template <class S, class P>
P qpoly_add(const P& a, const P& b)
{
    P r = a;
    for (const auto& [e, q] : b.terms())
        r.add_term(e, q);
    return r;
}
template <class S>
QPoly3<S> operator+(const QPoly3<S>& a, const QPoly3<S>& b) { return qpoly_add<S>(a, b); }
template <class S>
QPoly4<S> operator+(const QPoly4<S>& a, const QPoly4<S>& b) { return qpoly_add<S>(a, b); }

template <class S, class P>
P qpoly_neg(const P& a)
{
    P r;
    for (const auto& [e, q] : a.terms())
        r.add_term(e, -q);
    return r;
}
template <class S>
QPoly3<S> operator-(const QPoly3<S>& a, const QPoly3<S>& b)
{
    return qpoly_add<S>(a, qpoly_neg<S>(b));
}
template <class S>
QPoly4<S> operator-(const QPoly4<S>& a, const QPoly4<S>& b)
{
    return qpoly_add<S>(a, qpoly_neg<S>(b));
}

/// Right multiplication by a constant quaternion (the coefficient side).
template <class S>
QPoly4<S> scaled_right(const QPoly4<S>& a, const Quaternion<S>& q)
{
    QPoly4<S> r;
    for (const auto& [e, c] : a.terms())
        r.add_term(e, c * q);
    return r;
}
template <class S>
QPoly3<S> scaled_right(const QPoly3<S>& a, const Quaternion<S>& q)
{
    QPoly3<S> r;
    for (const auto& [e, c] : a.terms())
        r.add_term(e, c * q);
    return r;
}

/// Noncommutative pointwise product of 3-variable polynomials:
/// (x^a q)(x^b r) = x^{a+b} (q r).
template <class S>
QPoly3<S> mul3(const QPoly3<S>& a, const QPoly3<S>& b)
{
    QPoly3<S> r;
    for (const auto& [ea, qa] : a.terms())
        for (const auto& [eb, qb] : b.terms())
            r.add_term(Exp3{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, qa * qb);
    return r;
}

/// The operator e1 d/dx1 + e2 d/dx2 + e3 d/dx3, units acting by left
/// multiplication on coefficients.
template <class S>
QPoly3<S> vector_dirac3(const QPoly3<S>& f)
{
    QPoly3<S> r;
    for (const auto& [e, q] : f.terms())
        for (std::uint32_t i = 0; i < 3; ++i) {
            if (e[i] == 0)
                continue;
            Exp3 down = e;
            --down[i];
            r.add_term(down,
                       Quaternion<S>::unit(i + 1) *
                           ring_traits<Quaternion<S>>::scale_ratio(q, e[i], 1));
        }
    return r;
}

/// Unique polynomial extension f with Df = 0 and f|_{x0=0} = phi,
/// built from the closed form f = sum_k ((-x0)^k / k!) L^k phi with
/// L = vector_dirac3. Exact over exact scalar rings.
template <class S>
QPoly4<S> ck_extend(const QPoly3<S>& phi)
{
    QPoly4<S> f;
    QPoly3<S> cur = phi;
    std::int64_t kfact = 1;
    for (std::uint32_t k = 0; !cur.empty(); ++k) {
        if (k > 0 && __builtin_mul_overflow(kfact, static_cast<std::int64_t>(k), &kfact))
            throw std::overflow_error("factorial overflow in extension");
        const std::int64_t num = (k % 2 == 0) ? 1 : -1;
        for (const auto& [e, q] : cur.terms())
            f.add_term(Exp4{k, e[0], e[1], e[2]},
                       ring_traits<Quaternion<S>>::scale_ratio(q, num, kfact));
        cur = vector_dirac3(cur);
    }
    return f;
}

/// Restriction to x0 = 0.
template <class S>
QPoly3<S> restrict_x0(const QPoly4<S>& f)
{
    QPoly3<S> r;
    for (const auto& [e, q] : f.terms())
        if (e[0] == 0)
            r.add_term(Exp3{e[1], e[2], e[3]}, q);
    return r;
}

/// Left application of D = d/dx0 + e1 d/dx1 + e2 d/dx2 + e3 d/dx3;
/// vanishes exactly on CK extensions.
template <class S>
QPoly4<S> dirac_apply(const QPoly4<S>& f)
{
    QPoly4<S> r;
    for (const auto& [e, q] : f.terms())
        for (std::uint32_t i = 0; i < 4; ++i) {
            if (e[i] == 0)
                continue;
            Exp4 down = e;
            --down[i];
            Quaternion<S> c = ring_traits<Quaternion<S>>::scale_ratio(q, e[i], 1);
            if (i > 0)
                c = Quaternion<S>::unit(i) * c;
            r.add_term(down, c);
        }
    return r;
}

/// The i-th real component of each coefficient, as a real polynomial;
/// the four components of dirac_apply are the classical first-order
/// system residuals.
template <class S>
std::map<Exp4, S> real_component(const QPoly4<S>& f, std::size_t i)
{
    std::map<Exp4, S> r;
    for (const auto& [e, q] : f.terms())
        if (!(q[i] == S(0)))
            r.emplace(e, q[i]);
    return r;
}

/// Product through restriction: f . g = extend(restrict(f) restrict(g)).
template <class S>
QPoly4<S> ck_product(const QPoly4<S>& f, const QPoly4<S>& g)
{
    return ck_extend(mul3(restrict_x0(f), restrict_x0(g)));
}

/// Extension of x^a: the degree-|a| building block; zeta_l = x_l - e_l x0.
template <class S>
QPoly4<S> fueter_monomial(const Exp3& a)
{
    return ck_extend(QPoly3<S>::monomial(a));
}

inline Exp3 exp3_of(const MultiIndex& a)
{
    if (a.max_position() > 3)
        throw validation_error("multi-index support must lie in {1,2,3}");
    return Exp3{a.exponent(1), a.exponent(2), a.exponent(3)};
}

template <class S>
QPoly4<S> truncated4(const QPoly4<S>& f, std::uint32_t degree)
{
    QPoly4<S> r;
    for (const auto& [e, q] : f.terms())
        if (detail::exp_weight(e) <= degree)
            r.add_term(e, q);
    return r;
}

template <class S>
struct ring_traits<QPoly4<S>> {
    using value_type = QPoly4<S>;
    using P = QPoly4<S>;
    static constexpr bool commutative = false;
    static constexpr bool scalar = false;

    static P zero(Shape = {}) { return P(); }
    static P one(Shape = {}) { return P::constant(Quaternion<S>::real(S(1))); }
    static Shape shape_of(const P&) { return {}; }
    static Shape mul_shape(Shape, Shape) { return {}; }
    static bool is_zero(const P& v) { return v.empty(); }
    static P add(const P& a, const P& b) { return a + b; }
    static P neg(const P& a) { return qpoly_neg<S>(a); }
    static P mul(const P& a, const P& b) { return ck_product(a, b); }
    static P conj(const P&) { throw validation_error("no conjugation on polynomials"); }
    static P scale_ratio(const P& v, std::int64_t num, std::int64_t den)
    {
        P r;
        for (const auto& [e, q] : v.terms())
            r.add_term(e, ring_traits<Quaternion<S>>::scale_ratio(q, num, den));
        return r;
    }
    static P invert(const P& v)
    {
        const QPoly3<S> r = restrict_x0(v);
        if (r.terms().size() == 1 && r.terms().begin()->first == Exp3{0, 0, 0})
            return P::constant(ring_traits<Quaternion<S>>::invert(r.terms().begin()->second));
        throw numeric_error("only constant polynomials are invertible directly");
    }
    static double abs2(const P& v)
    {
        double s = 0.0;
        for (const auto& [e, q] : v.terms())
            s += ring_traits<Quaternion<S>>::abs2(q);
        return s;
    }
};

/// Matrix CK product with total-degree truncation of every entry.
template <class S>
Matrix<QPoly4<S>> ck_matmul(const Matrix<QPoly4<S>>& a, const Matrix<QPoly4<S>>& b,
                            std::uint32_t degree)
{
    if (a.cols() != b.rows())
        throw validation_error("matrix product dimension mismatch");
    Matrix<QPoly4<S>> r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).empty())
                continue;
            for (int j = 0; j < b.cols(); ++j) {
                if (b.at(k, j).empty())
                    continue;
                r.at(i, j) =
                    r.at(i, j) + truncated4(ck_product(a.at(i, k), b.at(k, j)), degree);
            }
        }
    return r;
}

/// Truncated sum of CK powers sum_{n=0..degree} G^{n.}; multiplying by
/// (I - G) under the CK product gives I up to the truncation degree.
/// Requires the restriction of G to have a vanishing constant term.
template <class S>
Matrix<QPoly4<S>> ck_von_neumann_inv(const Matrix<QPoly4<S>>& g, std::uint32_t degree)
{
    if (g.rows() != g.cols())
        throw validation_error("inversion requires a square matrix");
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (!ring_traits<Quaternion<S>>::is_zero(
                    restrict_x0(g.at(i, j)).coeff(Exp3{0, 0, 0})))
                throw validation_error("restriction must have zero constant term");
    const int n = g.rows();
    Matrix<QPoly4<S>> acc(n, n);
    for (int i = 0; i < n; ++i)
        acc.at(i, i) = ring_traits<QPoly4<S>>::one();
    Matrix<QPoly4<S>> power = acc;
    for (std::uint32_t k = 1; k <= degree; ++k) {
        power = ck_matmul(power, g, degree);
        acc = acc + power;
    }
    return acc;
}

/// Fueter-tagged matrix series to polynomial matrix: entry (i,j) is
/// sum_alpha zeta^alpha (c_alpha)_{ij} with right coefficients.
template <class S>
Matrix<QPoly4<S>> fueter_expand(const Series<Matrix<Quaternion<S>>>& f)
{
    if (f.basis() != Basis::fueter)
        throw validation_error("fueter_expand expects a fueter-basis series");
    Matrix<QPoly4<S>> r(f.shape().rows, f.shape().cols);
    for (const auto& [a, m] : f.coeffs()) {
        const QPoly4<S> zeta = fueter_monomial<S>(exp3_of(a));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (!ring_traits<Quaternion<S>>::is_zero(m.at(i, j)))
                    r.at(i, j) = r.at(i, j) + scaled_right(zeta, m.at(i, j));
    }
    return r;
}

/// Monomial-tagged matrix series read as real-variable polynomials in
/// x1, x2, x3 (right coefficients).
template <class S>
Matrix<QPoly3<S>> monomial3_expand(const Series<Matrix<Quaternion<S>>>& f)
{
    if (f.basis() != Basis::monomial)
        throw validation_error("monomial3_expand expects a monomial-basis series");
    Matrix<QPoly3<S>> r(f.shape().rows, f.shape().cols);
    for (const auto& [a, m] : f.coeffs()) {
        const Exp3 e = exp3_of(a);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (!ring_traits<Quaternion<S>>::is_zero(m.at(i, j)))
                    r.at(i, j) = r.at(i, j) + QPoly3<S>::monomial(e, m.at(i, j));
    }
    return r;
}

template <class S>
struct ring_traits<QPoly3<S>> {
    using value_type = QPoly3<S>;
    using P = QPoly3<S>;
    static constexpr bool commutative = false;
    static constexpr bool scalar = false;

    static P zero(Shape = {}) { return P(); }
    static P one(Shape = {}) { return P::constant(Quaternion<S>::real(S(1))); }
    static Shape shape_of(const P&) { return {}; }
    static Shape mul_shape(Shape, Shape) { return {}; }
    static bool is_zero(const P& v) { return v.empty(); }
    static P add(const P& a, const P& b) { return a + b; }
    static P neg(const P& a) { return qpoly_neg<S>(a); }
    static P mul(const P& a, const P& b) { return mul3(a, b); }
    static P conj(const P&) { throw validation_error("no conjugation on polynomials"); }
    static P scale_ratio(const P& v, std::int64_t num, std::int64_t den)
    {
        P r;
        for (const auto& [e, q] : v.terms())
            r.add_term(e, ring_traits<Quaternion<S>>::scale_ratio(q, num, den));
        return r;
    }
    static P invert(const P& v)
    {
        if (v.terms().size() == 1 && v.terms().begin()->first == Exp3{0, 0, 0})
            return P::constant(ring_traits<Quaternion<S>>::invert(v.terms().begin()->second));
        throw numeric_error("only constant polynomials are invertible directly");
    }
    static double abs2(const P& v)
    {
        double s = 0.0;
        for (const auto& [e, q] : v.terms())
            s += ring_traits<Quaternion<S>>::abs2(q);
        return s;
    }
};

template <class S>
Matrix<QPoly3<S>> matrix_restrict(const Matrix<QPoly4<S>>& f)
{
    Matrix<QPoly3<S>> r(f.rows(), f.cols());
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j)
            r.at(i, j) = restrict_x0(f.at(i, j));
    return r;
}

} // namespace wns
