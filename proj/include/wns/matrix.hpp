#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "wns/errors.hpp"
#include "wns/rings.hpp"

namespace wns {

/// Dense row-major matrix over a (possibly noncommutative) coefficient
/// ring T. Row operations multiply on the left, so elimination is valid
/// over division rings such as the quaternions.
template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                ring_traits<T>::zero())
    {
        if (rows < 0 || cols < 0)
            throw validation_error("matrix dimensions must be nonnegative");
    }

    static Matrix identity(int n)
    {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = ring_traits<T>::one();
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows)
    {
        const int r = static_cast<int>(rows.size());
        const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
        Matrix m(r, c);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c)
                throw validation_error("ragged matrix rows");
            int j = 0;
            for (const auto& v : row)
                m.at(i, j++) = v;
            ++i;
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Shape shape() const { return Shape{rows_, cols_}; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& at(int i, int j)
    {
        check_index(i, j);
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const T& at(int i, int j) const
    {
        check_index(i, j);
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        a.check_same_shape(b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            r.data_[i] = ring_traits<T>::add(a.data_[i], b.data_[i]);
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        a.check_same_shape(b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            r.data_[i] = ring_traits<T>::add(a.data_[i], ring_traits<T>::neg(b.data_[i]));
        return r;
    }
    Matrix operator-() const
    {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            r.data_[i] = ring_traits<T>::neg(data_[i]);
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw validation_error("matrix product dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const T& aik = a.at(i, k);
                if (ring_traits<T>::is_zero(aik))
                    continue;
                for (int j = 0; j < b.cols_; ++j)
                    r.at(i, j) =
                        ring_traits<T>::add(r.at(i, j), ring_traits<T>::mul(aik, b.at(k, j)));
            }
        return r;
    }

    Matrix scaled_left(const T& s) const
    {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            r.data_[i] = ring_traits<T>::mul(s, data_[i]);
        return r;
    }
    Matrix scaled_right(const T& s) const
    {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            r.data_[i] = ring_traits<T>::mul(data_[i], s);
        return r;
    }
    Matrix scaled_ratio(std::int64_t num, std::int64_t den) const
    {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            r.data_[i] = ring_traits<T>::scale_ratio(data_[i], num, den);
        return r;
    }

    Matrix transpose() const
    {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r.at(j, i) = at(i, j);
        return r;
    }
    Matrix conjugate_transpose() const
    {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r.at(j, i) = ring_traits<T>::conj(at(i, j));
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    bool is_zero() const
    {
        for (const T& v : data_)
            if (!ring_traits<T>::is_zero(v))
                return false;
        return true;
    }

    /// Max column sum of entry sizes.
    double norm1() const
    {
        double best = 0.0;
        for (int j = 0; j < cols_; ++j) {
            double s = 0.0;
            for (int i = 0; i < rows_; ++i)
                s += abs_size(at(i, j));
            best = std::max(best, s);
        }
        return best;
    }
    double frobenius2() const
    {
        double s = 0.0;
        for (const T& v : data_)
            s += ring_traits<T>::abs2(v);
        return s;
    }

    /// Solves A * X = B by Gaussian elimination with partial pivoting.
    /// Throws numeric_error when a pivot column is exactly zero.
    Matrix solve(Matrix b) const
    {
        if (rows_ != cols_)
            throw validation_error("solve requires a square matrix");
        if (b.rows_ != rows_)
            throw validation_error("solve right-hand side row mismatch");
        Matrix a = *this;
        const int n = rows_;
        for (int p = 0; p < n; ++p) {
            int best = p;
            double best_size = abs_size(a.at(p, p));
            for (int i = p + 1; i < n; ++i) {
                const double s = abs_size(a.at(i, p));
                if (s > best_size) {
                    best = i;
                    best_size = s;
                }
            }
            if (ring_traits<T>::is_zero(a.at(best, p)))
                throw numeric_error("singular matrix");
            if (best != p) {
                a.swap_rows(p, best);
                b.swap_rows(p, best);
            }
            for (int i = p + 1; i < n; ++i) {
                if (ring_traits<T>::is_zero(a.at(i, p)))
                    continue;
                const T m =
                    ring_traits<T>::mul(a.at(i, p), ring_traits<T>::invert(a.at(p, p)));
                for (int j = p; j < n; ++j)
                    a.at(i, j) = ring_traits<T>::add(
                        a.at(i, j), ring_traits<T>::neg(ring_traits<T>::mul(m, a.at(p, j))));
                for (int j = 0; j < b.cols_; ++j)
                    b.at(i, j) = ring_traits<T>::add(
                        b.at(i, j), ring_traits<T>::neg(ring_traits<T>::mul(m, b.at(p, j))));
            }
        }
        Matrix x(n, b.cols_);
        for (int p = n - 1; p >= 0; --p) {
            const T inv_p = ring_traits<T>::invert(a.at(p, p));
            for (int j = 0; j < b.cols_; ++j) {
                T acc = b.at(p, j);
                for (int k = p + 1; k < n; ++k)
                    acc = ring_traits<T>::add(
                        acc, ring_traits<T>::neg(ring_traits<T>::mul(a.at(p, k), x.at(k, j))));
                x.at(p, j) = ring_traits<T>::mul(inv_p, acc);
            }
        }
        return x;
    }

    Matrix inverse() const { return solve(identity(rows_)); }

    /// One-norm condition estimate norm1(A) * norm1(inv(A)).
    double cond1() const { return norm1() * inverse().norm1(); }

    static Matrix block_diag(const Matrix& a, const Matrix& b)
    {
        Matrix r(a.rows_ + b.rows_, a.cols_ + b.cols_);
        r.paste(0, 0, a);
        r.paste(a.rows_, a.cols_, b);
        return r;
    }
    static Matrix hstack(const Matrix& a, const Matrix& b)
    {
        if (a.rows_ != b.rows_)
            throw validation_error("hstack row mismatch");
        Matrix r(a.rows_, a.cols_ + b.cols_);
        r.paste(0, 0, a);
        r.paste(0, a.cols_, b);
        return r;
    }
    static Matrix vstack(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.cols_)
            throw validation_error("vstack column mismatch");
        Matrix r(a.rows_ + b.rows_, a.cols_);
        r.paste(0, 0, a);
        r.paste(a.rows_, 0, b);
        return r;
    }
    void paste(int i0, int j0, const Matrix& block)
    {
        for (int i = 0; i < block.rows_; ++i)
            for (int j = 0; j < block.cols_; ++j)
                at(i0 + i, j0 + j) = block.at(i, j);
    }

private:
    void check_index(int i, int j) const
    {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw validation_error("matrix index out of range");
    }
    void check_same_shape(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw validation_error("matrix shape mismatch");
    }
    void swap_rows(int i, int k)
    {
        if (i == k)
            return;
        for (int j = 0; j < cols_; ++j)
            std::swap(at(i, j), at(k, j));
    }

    int rows_;
    int cols_;
    std::vector<T> data_;
};

template <class T>
struct ring_traits<Matrix<T>> {
    using value_type = Matrix<T>;
    using M = Matrix<T>;
    static constexpr bool commutative = false;
    static constexpr bool scalar = false;

    static M zero(Shape s = {}) { return M(s.rows, s.cols); }
    static M one(Shape s = {})
    {
        if (!s.is_square())
            throw validation_error("identity requires a square shape");
        return M::identity(s.rows);
    }
    static Shape shape_of(const M& v) { return v.shape(); }
    static Shape mul_shape(Shape a, Shape b)
    {
        if (a.cols != b.rows)
            throw validation_error("matrix product dimension mismatch");
        return Shape{a.rows, b.cols};
    }
    static bool is_zero(const M& v) { return v.is_zero(); }
    static M add(const M& a, const M& b) { return a + b; }
    static M neg(const M& a) { return -a; }
    static M mul(const M& a, const M& b) { return a * b; }
    static M conj(const M& a) { return a.conjugate_transpose(); }
    static M scale_ratio(const M& v, std::int64_t num, std::int64_t den)
    {
        return v.scaled_ratio(num, den);
    }
    static M invert(const M& v)
    {
        if (!v.shape().is_square())
            throw validation_error("matrix inverse requires a square matrix");
        return v.inverse();
    }
    static double abs2(const M& v) { return v.frobenius2(); }
};

/// Entrywise mixed scaling; promotes the entry type (e.g. real matrix at
/// a complex point).
template <class T, class S>
auto scale_value(const Matrix<T>& m, const S& s) -> Matrix<decltype(scale_value(T{}, s))>
{
    using R = decltype(scale_value(T{}, s));
    Matrix<R> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r.at(i, j) = scale_value(m.at(i, j), s);
    return r;
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi sweeps,
/// returned in increasing order.
inline std::vector<double> symmetric_eigenvalues(Matrix<double> a, int max_sweeps = 64)
{
    if (a.rows() != a.cols())
        throw validation_error("eigenvalues require a square matrix");
    const int n = a.rows();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                off += a.at(p, q) * a.at(p, q);
        if (off < 1e-30)
            break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (apq == 0.0)
                    continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a.at(p, k);
                    const double aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i)
        ev[i] = a.at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Eigenvalues of a complex Hermitian matrix via the real symmetric
/// embedding [[Re, -Im], [Im, Re]]; each eigenvalue appears twice there,
/// so every second one is kept.
inline std::vector<double> hermitian_eigenvalues(const Matrix<std::complex<double>>& h)
{
    if (h.rows() != h.cols())
        throw validation_error("eigenvalues require a square matrix");
    const int n = h.rows();
    Matrix<double> em(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::complex<double> v = h.at(i, j);
            em.at(i, j) = v.real();
            em.at(i, j + n) = -v.imag();
            em.at(i + n, j) = v.imag();
            em.at(i + n, j + n) = v.real();
        }
    const std::vector<double> doubled = symmetric_eigenvalues(std::move(em));
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i)
        ev[i] = doubled[static_cast<std::size_t>(2 * i)];
    return ev;
}

} // namespace wns
