#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wns/errors.hpp"
#include "wns/matrix.hpp"
#include "wns/series.hpp"

namespace wns {

/// State-space data (D, C, {A_k}, {B_k}) for the transfer-function-style
/// expression D + C (I - sum_k z_k A_k)^{-1} (sum_k z_k B_k). The same
/// data serves the monomial, chaos, and Fueter readings; only the basis
/// tag of the extracted series differs.
template <class T>
struct Realization {
    Matrix<T> D;              // p x q
    Matrix<T> C;              // p x N
    std::vector<Matrix<T>> A; // M entries, each N x N
    std::vector<Matrix<T>> B; // M entries, each N x q

    int out_dim() const { return D.rows(); }
    int in_dim() const { return D.cols(); }
    int state_dim() const { return C.cols(); }
    int num_vars() const { return static_cast<int>(A.size()); }

    void validate() const
    {
        if (D.rows() < 1 || D.cols() < 1)
            throw validation_error("realization D must be nonempty");
        if (C.rows() != D.rows())
            throw validation_error("realization C row count must match D");
        if (A.size() != B.size())
            throw validation_error("realization A and B lists must have equal length");
        const int n = state_dim();
        for (const auto& a : A)
            if (a.rows() != n || a.cols() != n)
                throw validation_error("realization A_k must be square of the state dimension");
        for (const auto& b : B)
            if (b.rows() != n || b.cols() != D.cols())
                throw validation_error("realization B_k must be state_dim x in_dim");
    }

    static Realization constant(Matrix<T> d)
    {
        Realization r;
        r.D = std::move(d);
        r.C = Matrix<T>(r.D.rows(), 0);
        return r;
    }

    /// Same data extended to m variables by zero matrices.
    Realization padded(int m) const
    {
        if (m < num_vars())
            throw validation_error("cannot pad to fewer variables");
        Realization r = *this;
        while (r.num_vars() < m) {
            r.A.emplace_back(state_dim(), state_dim());
            r.B.emplace_back(state_dim(), in_dim());
        }
        return r;
    }

    Realization negated() const
    {
        Realization r = *this;
        r.D = -r.D;
        r.C = -r.C;
        return r;
    }
};

/// Degree-1 series sum_k z_k M_k used for both zA and zB.
template <class T>
Series<Matrix<T>> linear_pencil_series(const std::vector<Matrix<T>>& mats, int degree,
                                       int max_var, Shape shape)
{
    Series<Matrix<T>> s(Basis::monomial, degree, max_var, shape);
    if (degree < 1)
        return s;
    for (std::size_t k = 0; k < mats.size(); ++k)
        s.add_to_coeff(MultiIndex::unit(static_cast<std::uint32_t>(k + 1)), mats[k]);
    return s;
}

/// Series of C (I - zA)^{-1} V for a state-space vector or matrix V
/// (N x c); the n-th order coefficients are the words C A_{w_1} ... V.
template <class T>
Series<Matrix<T>> state_output_series(const Realization<T>& r, const Matrix<T>& v, int degree)
{
    r.validate();
    if (v.rows() != r.state_dim())
        throw validation_error("state vector dimension mismatch");
    const int m = r.num_vars();
    const int n = r.state_dim();
    const Shape out{r.out_dim(), v.cols()};
    if (n == 0)
        return Series<Matrix<T>>(Basis::monomial, degree, m, out);
    const auto za = linear_pencil_series(r.A, degree, m, Shape{n, n});
    const auto resolvent =
        wick_inv(sub(Series<Matrix<T>>::unit(Basis::monomial, degree, m, Shape{n, n}), za));
    const auto cs =
        Series<Matrix<T>>::constant(Basis::monomial, degree, m, r.C);
    const auto vs = Series<Matrix<T>>::constant(Basis::monomial, degree, m, v);
    return wick_mul(wick_mul(cs, resolvent), vs);
}

/// Expands the realization to a truncated series in the requested basis.
template <class T>
Series<Matrix<T>> to_series(const Realization<T>& r, int degree, Basis basis)
{
    r.validate();
    if (degree < 0)
        throw validation_error("series degree must be nonnegative");
    const int m = r.num_vars();
    const int n = r.state_dim();
    const Shape out{r.out_dim(), r.in_dim()};
    Series<Matrix<T>> result(Basis::monomial, degree, m, out);
    if (!r.D.is_zero())
        result.set_coeff(MultiIndex{}, r.D);
    if (n > 0 && degree >= 1) {
        const auto za = linear_pencil_series(r.A, degree, m, Shape{n, n});
        const auto zb = linear_pencil_series(r.B, degree, m, Shape{n, r.in_dim()});
        const auto resolvent = wick_inv(
            sub(Series<Matrix<T>>::unit(Basis::monomial, degree, m, Shape{n, n}), za));
        const auto cs = Series<Matrix<T>>::constant(Basis::monomial, degree, m, r.C);
        result = add(result, wick_mul(wick_mul(cs, resolvent), zb));
    }
    return result.with_basis(basis);
}

template <class T>
struct EvalReport {
    Matrix<T> value;
    double cond1 = 1.0;
};

/// Direct evaluation by one linear solve; reports the one-norm condition
/// number of the resolvent pencil. z[k] is the value of variable k+1.
template <class T>
EvalReport<T> eval(const Realization<T>& r, const std::vector<T>& z)
{
    r.validate();
    if (static_cast<int>(z.size()) > r.num_vars())
        throw validation_error("evaluation point has more coordinates than variables");
    const int n = r.state_dim();
    EvalReport<T> rep;
    if (n == 0) {
        rep.value = r.D;
        return rep;
    }
    Matrix<T> pencil = Matrix<T>::identity(n);
    Matrix<T> zb(n, r.in_dim());
    for (std::size_t k = 0; k < z.size(); ++k) {
        pencil = pencil - r.A[k].scaled_left(z[k]);
        zb = zb + r.B[k].scaled_left(z[k]);
    }
    const Matrix<T> x = pencil.solve(zb);
    rep.value = r.D + r.C * x;
    rep.cond1 = pencil.norm1() * pencil.inverse().norm1();
    return rep;
}

/// Cascade product: series of the result is the (noncommutative)
/// convolution product of the factor series.
template <class T>
Realization<T> product(const Realization<T>& r1in, const Realization<T>& r2in)
{
    r1in.validate();
    r2in.validate();
    if (r1in.in_dim() != r2in.out_dim())
        throw validation_error("realization product inner dimension mismatch");
    const int m = std::max(r1in.num_vars(), r2in.num_vars());
    const Realization<T> r1 = r1in.padded(m);
    const Realization<T> r2 = r2in.padded(m);
    const int n1 = r1.state_dim();
    Realization<T> r;
    r.D = r1.D * r2.D;
    r.C = Matrix<T>::hstack(r1.C, r1.D * r2.C);
    r.A.reserve(m);
    r.B.reserve(m);
    for (int k = 0; k < m; ++k) {
        Matrix<T> a = Matrix<T>::block_diag(r1.A[k], r2.A[k]);
        a.paste(0, n1, r1.B[k] * r2.C);
        r.A.push_back(std::move(a));
        r.B.push_back(Matrix<T>::vstack(r1.B[k] * r2.D, r2.B[k]));
    }
    return r;
}

/// Parallel sum by block-diagonal concatenation.
template <class T>
Realization<T> sum(const Realization<T>& r1in, const Realization<T>& r2in)
{
    r1in.validate();
    r2in.validate();
    if (r1in.out_dim() != r2in.out_dim() || r1in.in_dim() != r2in.in_dim())
        throw validation_error("realization sum shape mismatch");
    const int m = std::max(r1in.num_vars(), r2in.num_vars());
    const Realization<T> r1 = r1in.padded(m);
    const Realization<T> r2 = r2in.padded(m);
    Realization<T> r;
    r.D = r1.D + r2.D;
    r.C = Matrix<T>::hstack(r1.C, r2.C);
    for (int k = 0; k < m; ++k) {
        r.A.push_back(Matrix<T>::block_diag(r1.A[k], r2.A[k]));
        r.B.push_back(Matrix<T>::vstack(r1.B[k], r2.B[k]));
    }
    return r;
}

/// Inverse under the cascade product: D^{-1} - D^{-1} C (I - z(A - B D^{-1} C))^{-1} z B D^{-1}.
template <class T>
Realization<T> inverse(const Realization<T>& rin)
{
    rin.validate();
    if (rin.out_dim() != rin.in_dim())
        throw validation_error("realization inverse requires a square D");
    const Matrix<T> dinv = rin.D.inverse();
    Realization<T> r;
    r.D = dinv;
    r.C = -(dinv * rin.C);
    for (int k = 0; k < rin.num_vars(); ++k) {
        r.A.push_back(rin.A[k] - rin.B[k] * (dinv * rin.C));
        r.B.push_back(rin.B[k] * dinv);
    }
    return r;
}

/// Residual of the backward-shift identity
/// R_k [C(I-zA)^{-1} f] = C(I-zA)^{-1} A_k f, which holds when the A_k
/// commute; callers see the failure size otherwise.
template <class T>
Series<Matrix<T>> leibenzon_realization_residual(const Realization<T>& r, const Matrix<T>& f,
                                                 std::uint32_t k, int degree)
{
    const auto lhs_src = state_output_series(r, f, degree);
    const auto lhs = leibenzon(lhs_src, k);
    if (k < 1 || k > static_cast<std::uint32_t>(r.num_vars())) {
        return lhs; // A_k = 0 outside the variable range, so the rhs vanishes
    }
    const auto rhs = state_output_series(r, r.A[k - 1] * f, degree);
    return sub(lhs, rhs);
}

/// True when the realization reproduces every stored coefficient of the
/// series at its truncation order, within tol.
template <class T>
bool is_rational_witness(const Series<Matrix<T>>& f, const Realization<T>& r, double tol)
{
    const auto g = to_series(r, f.degree(), f.basis());
    if (g.shape() != f.shape())
        return false;
    return max_coeff_distance(f, g) <= tol;
}

} // namespace wns
