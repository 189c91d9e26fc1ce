#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "wns/rings.hpp"

namespace wns {

/// Quaternion over a commutative scalar ring S, stored as components on
/// the basis e0 = 1, e1, e2, e3 with e1*e2 = e3, e2*e3 = e1, e3*e1 = e2
/// and ei*ei = -e0 for i > 0.
template <class S>
class Quaternion {
public:
    Quaternion() : c_{S(0), S(0), S(0), S(0)} {}
    Quaternion(S w, S x, S y, S z) : c_{std::move(w), std::move(x), std::move(y), std::move(z)}
    {
    }

    static Quaternion real(S w) { return Quaternion(std::move(w), S(0), S(0), S(0)); }
    /// Basis element e_i, i in 0..3.
    static Quaternion unit(std::size_t i)
    {
        Quaternion q;
        q.c_.at(i) = S(1);
        return q;
    }

    const S& operator[](std::size_t i) const { return c_.at(i); }
    S& operator[](std::size_t i) { return c_.at(i); }
    const std::array<S, 4>& components() const { return c_; }

    Quaternion conjugate() const { return Quaternion(c_[0], -c_[1], -c_[2], -c_[3]); }

    /// Sum of squared components, computed exactly in S.
    S norm2() const { return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3]; }

    Quaternion scaled(const S& s) const
    {
        return Quaternion(c_[0] * s, c_[1] * s, c_[2] * s, c_[3] * s);
    }

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b)
    {
        return Quaternion(a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2],
                          a.c_[3] + b.c_[3]);
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b)
    {
        return Quaternion(a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2],
                          a.c_[3] - b.c_[3]);
    }
    Quaternion operator-() const { return Quaternion(-c_[0], -c_[1], -c_[2], -c_[3]); }

    friend Quaternion operator*(const Quaternion& a, const Quaternion& b)
    {
        const S& w = a.c_[0];
        const S& x = a.c_[1];
        const S& y = a.c_[2];
        const S& z = a.c_[3];
        const S& W = b.c_[0];
        const S& X = b.c_[1];
        const S& Y = b.c_[2];
        const S& Z = b.c_[3];
        return Quaternion(w * W - x * X - y * Y - z * Z, w * X + x * W + y * Z - z * Y,
                          w * Y + y * W + z * X - x * Z, w * Z + z * W + x * Y - y * X);
    }

    friend bool operator==(const Quaternion& a, const Quaternion& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }

private:
    std::array<S, 4> c_;
};

template <class S>
struct ring_traits<Quaternion<S>> {
    using value_type = Quaternion<S>;
    using Q = Quaternion<S>;
    static constexpr bool commutative = false;
    static constexpr bool scalar = true;

    static Q zero(Shape = {}) { return Q(); }
    static Q one(Shape = {}) { return Q::real(S(1)); }
    static Shape shape_of(const Q&) { return {}; }
    static Shape mul_shape(Shape, Shape) { return {}; }
    static bool is_zero(const Q& v)
    {
        for (std::size_t i = 0; i < 4; ++i)
            if (!(v[i] == S(0)))
                return false;
        return true;
    }
    static Q add(const Q& a, const Q& b) { return a + b; }
    static Q neg(const Q& a) { return -a; }
    static Q mul(const Q& a, const Q& b) { return a * b; }
    static Q conj(const Q& a) { return a.conjugate(); }
    static Q scale_ratio(const Q& v, std::int64_t num, std::int64_t den)
    {
        return Q(ring_traits<S>::scale_ratio(v[0], num, den),
                 ring_traits<S>::scale_ratio(v[1], num, den),
                 ring_traits<S>::scale_ratio(v[2], num, den),
                 ring_traits<S>::scale_ratio(v[3], num, den));
    }
    static Q invert(const Q& v)
    {
        const S n2 = v.norm2();
        if (n2 == S(0))
            throw numeric_error("division by zero quaternion");
        return v.conjugate().scaled(ring_traits<S>::invert(n2));
    }
    static double abs2(const Q& v)
    {
        double r = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
            r += ring_traits<S>::abs2(v[i]);
        return r;
    }
};

/// Mixed scaling by a central (real) scalar.
template <class S>
Quaternion<S> scale_value(const Quaternion<S>& q, const S& s)
{
    return q.scaled(s);
}

} // namespace wns
