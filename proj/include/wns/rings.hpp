#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "wns/errors.hpp"

namespace wns {

/// Matrix shape of a coefficient; scalars are 1x1.
struct Shape {
    int rows = 1;
    int cols = 1;

    bool is_square() const { return rows == cols; }
    bool is_scalar() const { return rows == 1 && cols == 1; }
    friend bool operator==(const Shape& a, const Shape& b)
    {
        return a.rows == b.rows && a.cols == b.cols;
    }
    friend bool operator!=(const Shape& a, const Shape& b) { return !(a == b); }
};

/// Coefficient-ring access point. Specializations provide:
///   zero(Shape), one(Shape), shape_of, is_zero, add, neg, mul, conj,
///   scale_ratio (exact rational scaling), invert (unit inverse),
///   abs2 (squared size functional: |.|^2, Frobenius^2 for matrices),
///   mul_shape, and the flags `commutative` / `scalar`.
template <class T>
struct ring_traits;

/// Ready-made traits for commutative fields that behave like built-in
/// arithmetic types (double, exact rationals, ...).
template <class F>
struct field_ring_traits {
    using value_type = F;
    static constexpr bool commutative = true;
    static constexpr bool scalar = true;

    static F zero(Shape = {}) { return F(0); }
    static F one(Shape = {}) { return F(1); }
    static Shape shape_of(const F&) { return {}; }
    static Shape mul_shape(Shape, Shape) { return {}; }
    static bool is_zero(const F& v) { return v == F(0); }
    static F add(const F& a, const F& b) { return a + b; }
    static F neg(const F& a) { return -a; }
    static F mul(const F& a, const F& b) { return a * b; }
    static F conj(const F& a) { return a; }
    static F scale_ratio(const F& v, std::int64_t num, std::int64_t den)
    {
        return v * F(num) / F(den);
    }
    static F invert(const F& a)
    {
        if (is_zero(a))
            throw numeric_error("division by zero in coefficient ring");
        return F(1) / a;
    }
    static double abs2(const F& v)
    {
        const double d = static_cast<double>(v);
        return d * d;
    }
};

template <>
struct ring_traits<double> : field_ring_traits<double> {};

template <>
struct ring_traits<std::complex<double>> {
    using value_type = std::complex<double>;
    using C = std::complex<double>;
    static constexpr bool commutative = true;
    static constexpr bool scalar = true;

    static C zero(Shape = {}) { return C(0.0); }
    static C one(Shape = {}) { return C(1.0); }
    static Shape shape_of(const C&) { return {}; }
    static Shape mul_shape(Shape, Shape) { return {}; }
    static bool is_zero(const C& v) { return v == C(0.0); }
    static C add(const C& a, const C& b) { return a + b; }
    static C neg(const C& a) { return -a; }
    static C mul(const C& a, const C& b) { return a * b; }
    static C conj(const C& a) { return std::conj(a); }
    static C scale_ratio(const C& v, std::int64_t num, std::int64_t den)
    {
        return v * static_cast<double>(num) / static_cast<double>(den);
    }
    static C invert(const C& a)
    {
        if (is_zero(a))
            throw numeric_error("division by zero in coefficient ring");
        return C(1.0) / a;
    }
    static double abs2(const C& v) { return std::norm(v); }
};

/// |v| under the ring's size functional.
template <class T>
double abs_size(const T& v)
{
    return std::sqrt(ring_traits<T>::abs2(v));
}

/// Ring element from an exact integer ratio.
template <class T>
T from_ratio(std::int64_t num, std::int64_t den, Shape s = {})
{
    return ring_traits<T>::scale_ratio(ring_traits<T>::one(s), num, den);
}

// scale_value(coefficient, point-scalar): mixed multiplication used by
// series evaluation. Overloads for further coefficient types live beside
// those types.
inline double scale_value(double c, double s) { return c * s; }
inline std::complex<double> scale_value(double c, std::complex<double> s) { return c * s; }
inline std::complex<double> scale_value(std::complex<double> c, std::complex<double> s)
{
    return c * s;
}
inline std::complex<double> scale_value(std::complex<double> c, double s) { return c * s; }

/// Fallback for any commutative scalar ring evaluated at same-ring points.
template <class T>
    requires(ring_traits<T>::scalar && ring_traits<T>::commutative)
T scale_value(const T& c, const T& s)
{
    return ring_traits<T>::mul(c, s);
}

} // namespace wns
