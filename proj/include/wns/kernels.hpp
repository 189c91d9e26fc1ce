#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "wns/errors.hpp"
#include "wns/matrix.hpp"

namespace wns {

/// Finite-support point of the sequence space; v[i] is coordinate i+1.
struct L2Point {
    std::vector<std::complex<double>> v;

    L2Point() = default;
    explicit L2Point(std::vector<std::complex<double>> coords) : v(std::move(coords)) {}

    std::size_t size() const { return v.size(); }
    std::complex<double> coord(std::size_t pos) const
    {
        return (pos >= 1 && pos <= v.size()) ? v[pos - 1] : std::complex<double>(0.0);
    }
    double norm2() const
    {
        double s = 0.0;
        for (const auto& c : v)
            s += std::norm(c);
        return s;
    }
};

/// sum_k z_k conj(w_k).
inline std::complex<double> l2_inner(const L2Point& z, const L2Point& w)
{
    std::complex<double> s = 0.0;
    const std::size_t n = std::min(z.size(), w.size());
    for (std::size_t i = 0; i < n; ++i)
        s += z.v[i] * std::conj(w.v[i]);
    return s;
}

/// 1 / (1 - <z,w>), the complete Nevanlinna-Pick kernel of the ball.
inline std::complex<double> arveson_kernel(const L2Point& z, const L2Point& w)
{
    const std::complex<double> d = 1.0 - l2_inner(z, w);
    if (d == std::complex<double>(0.0))
        throw numeric_error("kernel pole: <z,w> = 1");
    return 1.0 / d;
}

/// exp(<z,w>).
inline std::complex<double> fock_kernel(const L2Point& z, const L2Point& w)
{
    return std::exp(l2_inner(z, w));
}

/// Ball automorphism building block
/// b_a(z) = ((1-|a|^2)^{1/2} / (1 - <z,a>)) (z - a)(I - a*a)^{-1/2},
/// rows acted on from the right; the rank-one inverse square root is
/// applied in closed form.
inline L2Point blaschke(const L2Point& a, const L2Point& z)
{
    const double na2 = a.norm2();
    if (!(na2 < 1.0))
        throw validation_error("blaschke parameter must lie in the open unit ball");
    const std::complex<double> denom = 1.0 - l2_inner(z, a);
    if (denom == std::complex<double>(0.0))
        throw numeric_error("blaschke pole: <z,a> = 1");
    const std::size_t n = std::max(z.size(), a.size());
    L2Point r;
    r.v.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        r.v[i] = z.coord(i + 1) - a.coord(i + 1);
    if (na2 > 0.0) {
        // (I - a*a)^{-1/2} acts on row v as v + c <v,a> a with
        // c = ((1-|a|^2)^{-1/2} - 1)/|a|^2.
        const double c = (1.0 / std::sqrt(1.0 - na2) - 1.0) / na2;
        std::complex<double> va = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            va += r.v[i] * std::conj(a.coord(i + 1));
        for (std::size_t i = 0; i < n; ++i)
            r.v[i] += c * va * a.coord(i + 1);
    }
    const std::complex<double> scale = std::sqrt(1.0 - na2) / denom;
    for (auto& c : r.v)
        c *= scale;
    return r;
}

/// Both sides of the kernel identity
/// (1 - <b_a(z), b_a(w)>)/(1 - <z,w>) = (1-|a|^2)/((1-<z,a>)(1-<a,w>)).
struct BlaschkeIdentity {
    std::complex<double> lhs;
    std::complex<double> rhs;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
};

inline BlaschkeIdentity blaschke_kernel_identity(const L2Point& a, const L2Point& z,
                                                 const L2Point& w)
{
    BlaschkeIdentity out;
    const std::complex<double> dzw = 1.0 - l2_inner(z, w);
    const std::complex<double> dza = 1.0 - l2_inner(z, a);
    const std::complex<double> daw = 1.0 - l2_inner(a, w);
    if (dzw == std::complex<double>(0.0) || dza == std::complex<double>(0.0) ||
        daw == std::complex<double>(0.0))
        throw numeric_error("kernel pole in identity evaluation");
    const L2Point bz = blaschke(a, z);
    const L2Point bw = blaschke(a, w);
    out.lhs = (1.0 - l2_inner(bz, bw)) / dzw;
    out.rhs = (1.0 - a.norm2()) / (dza * daw);
    out.abs_residual = std::abs(out.lhs - out.rhs);
    const double denom = std::max(std::abs(out.rhs), 1e-300);
    out.rel_residual = out.abs_residual / denom;
    return out;
}

using PointFn = std::function<std::complex<double>(const L2Point&)>;
using KernelFn = std::function<std::complex<double>(const L2Point&, const L2Point&)>;

/// Gram matrix of a kernel on a point list with a PSD report; the
/// eigenvalue test symmetrizes first and records how far from Hermitian
/// the raw Gram was.
struct KernelGram {
    Matrix<std::complex<double>> gram;
    double hermiticity_residual = 0.0;
    double min_eigenvalue = 0.0;
    bool is_psd = false;
};

inline KernelGram build_gram(const std::vector<L2Point>& points, const KernelFn& k,
                             double psd_tol = 1e-10)
{
    const int n = static_cast<int>(points.size());
    KernelGram out;
    out.gram = Matrix<std::complex<double>>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.gram.at(i, j) = k(points[static_cast<std::size_t>(i)],
                                  points[static_cast<std::size_t>(j)]);
    Matrix<std::complex<double>> h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto sym = 0.5 * (out.gram.at(i, j) + std::conj(out.gram.at(j, i)));
            h.at(i, j) = sym;
            out.hermiticity_residual =
                std::max(out.hermiticity_residual, std::abs(out.gram.at(i, j) - sym));
        }
    if (n > 0) {
        const std::vector<double> ev = hermitian_eigenvalues(h);
        out.min_eigenvalue = ev.front();
    }
    out.is_psd = out.min_eigenvalue >= -psd_tol;
    return out;
}

/// Gram of K_s(z,w) = (1 - s(z) conj(s(w)))/(1 - <z,w>); PSD exactly
/// when s is a contractive multiplier.
inline KernelGram schur_gram(const PointFn& s, const std::vector<L2Point>& points,
                             double psd_tol = 1e-10)
{
    return build_gram(
        points,
        [&s](const L2Point& z, const L2Point& w) {
            const std::complex<double> d = 1.0 - l2_inner(z, w);
            if (d == std::complex<double>(0.0))
                throw numeric_error("kernel pole: <z,w> = 1");
            return (1.0 - s(z) * std::conj(s(w))) / d;
        },
        psd_tol);
}

/// Max residual of the decomposition
/// 1 - s(z) conj(s(w)) = sum_l (1 - z_l conj(w_l)) k_l(z,w)
/// over all ordered point pairs; kernels[l] evaluates k_{l+1}.
inline double agler_residual(const PointFn& s, const std::vector<KernelFn>& kernels,
                             const std::vector<L2Point>& points)
{
    double worst = 0.0;
    for (const L2Point& z : points)
        for (const L2Point& w : points) {
            std::complex<double> rhs = 0.0;
            for (std::size_t l = 0; l < kernels.size(); ++l)
                rhs += (1.0 - z.coord(l + 1) * std::conj(w.coord(l + 1))) * kernels[l](z, w);
            worst = std::max(worst, std::abs(1.0 - s(z) * std::conj(s(w)) - rhs));
        }
    return worst;
}

} // namespace wns
