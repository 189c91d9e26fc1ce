// Command-line front end over the JSON interchange format. Every
// subcommand reads JSON (inline argument or file path), writes one JSON
// document to standard output, and exits 0 (success), 2 (validation
// failure), or 3 (numeric failure such as a singular pivot).
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "wns/fueter.hpp"
#include "wns/json_io.hpp"
#include "wns/kernels.hpp"
#include "wns/multiindex.hpp"
#include "wns/quaternion.hpp"
#include "wns/realization.hpp"
#include "wns/series.hpp"
#include "wns/whitenoise.hpp"

namespace {

using wns::json;
using Cplx = std::complex<double>;
using Quat = wns::Quaternion<double>;

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw wns::validation_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// JSON argument: text starting with '{' or '[' is inline, anything
/// else is a file path.
json load_json_arg(const std::string& arg)
{
    const auto first = arg.find_first_not_of(" \t\r\n");
    const bool inline_json =
        first != std::string::npos && (arg[first] == '{' || arg[first] == '[');
    return json::parse(inline_json ? arg : slurp(arg));
}

template <class Fn>
std::string dispatch_ring(const json& j, Fn&& fn)
{
    const std::string ring = wns::parse_ring_tag(j);
    if (ring == "real")
        return fn(std::type_identity<double>{});
    if (ring == "complex")
        return fn(std::type_identity<Cplx>{});
    return fn(std::type_identity<Quat>{});
}

template <class T>
std::string matrix_value_json(const wns::Matrix<T>& m)
{
    return m.shape().is_scalar() ? wns::value_to_json(m.at(0, 0)) : wns::value_to_json(m);
}

template <class T, class F>
auto map_series(const wns::Series<wns::Matrix<T>>& s, F&& f)
{
    using U = decltype(f(std::declval<T>()));
    wns::Series<wns::Matrix<U>> out(s.basis(), s.degree(), s.max_var(), s.shape());
    for (const auto& [a, m] : s.coeffs()) {
        wns::Matrix<U> mm(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                mm.at(i, j) = f(m.at(i, j));
        out.set_coeff(a, mm);
    }
    return out;
}

wns::Realization<Cplx> complexify(const wns::Realization<double>& r)
{
    const auto lift = [](const wns::Matrix<double>& m) {
        wns::Matrix<Cplx> mm(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                mm.at(i, j) = m.at(i, j);
        return mm;
    };
    wns::Realization<Cplx> out;
    out.D = lift(r.D);
    out.C = lift(r.C);
    for (const auto& a : r.A)
        out.A.push_back(lift(a));
    for (const auto& b : r.B)
        out.B.push_back(lift(b));
    return out;
}

template <class T>
wns::Series<T> scalarize(const wns::Series<wns::Matrix<T>>& s, const char* what)
{
    if (!s.shape().is_scalar())
        throw wns::validation_error(std::string(what) + " needs scalar (1x1) coefficients");
    wns::Series<T> out(s.basis(), s.degree(), s.max_var());
    for (const auto& [a, m] : s.coeffs())
        out.set_coeff(a, m.at(0, 0));
    return out;
}

/// Same coefficients under a new truncation degree (terms beyond it drop).
template <class T>
wns::Series<T> retarget_degree(const wns::Series<T>& s, int degree)
{
    wns::Series<T> out(s.basis(), degree, s.max_var(), s.shape());
    for (const auto& [a, v] : s.coeffs())
        if (a.weight() <= static_cast<std::uint64_t>(degree))
            out.set_coeff(a, v);
    return out;
}

bool point_is_real(const wns::L2Point& p)
{
    for (const auto& c : p.v)
        if (c.imag() != 0.0)
            return false;
    return true;
}

std::vector<double> real_coords(const wns::L2Point& p)
{
    std::vector<double> out(p.v.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = p.v[i].real();
    return out;
}

/// Quaternion-valued point [[pos, number|[w,x,y,z]], ...].
std::vector<Quat> parse_quat_point(const json& j)
{
    if (!j.is_array())
        throw wns::validation_error("point must be an array of [position,value] pairs");
    std::vector<Quat> out;
    for (const json& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer())
            throw wns::validation_error("point entries must be [position,value]");
        const long long pos = pair[0].get<long long>();
        if (pos < 1)
            throw wns::validation_error("point positions start at 1");
        if (static_cast<std::size_t>(pos) > out.size())
            out.resize(static_cast<std::size_t>(pos));
        out[static_cast<std::size_t>(pos - 1)] = wns::parse_value<Quat>(pair[1]);
    }
    return out;
}

std::vector<wns::L2Point> parse_point_list(const json& j)
{
    if (!j.is_array())
        throw wns::validation_error("points must be an array of sparse points");
    std::vector<wns::L2Point> out;
    for (const json& p : j)
        out.push_back(wns::parse_point(p));
    return out;
}

std::string complex_json(const Cplx& v) { return wns::value_to_json(v); }

std::string mc_report_json(const wns::MCReport& r)
{
    return "{\"estimate\":" + wns::json_num(r.estimate) +
           ",\"std_error\":" + wns::json_num(r.std_error) + ",\"n\":" + std::to_string(r.n) +
           ",\"seed\":" + std::to_string(r.seed) + "}";
}

std::string gram_json(const wns::KernelGram& g)
{
    std::string out = "{\"points\":" + std::to_string(g.gram.rows());
    out += ",\"min_eigenvalue\":" + wns::json_num(g.min_eigenvalue);
    out += ",\"hermiticity_residual\":" + wns::json_num(g.hermiticity_residual);
    out += std::string(",\"is_psd\":") + (g.is_psd ? "true" : "false");
    out += ",\"gram\":" + wns::value_to_json(g.gram) + "}";
    return out;
}

/// Pathwise value of a chaos-basis series at a real sample point:
/// sum_alpha H_alpha(x) c_alpha.
template <class T>
wns::Matrix<T> chaos_path_value(const wns::Series<wns::Matrix<T>>& f,
                                const std::vector<double>& x)
{
    wns::Matrix<T> acc(f.shape().rows, f.shape().cols);
    for (const auto& [a, m] : f.coeffs())
        acc = acc + scale_value(m, wns::chaos_eval(a, x));
    return acc;
}

/// Diagonal-coefficient kernel sum_alpha c_alpha z^alpha conj(w)^alpha,
/// evaluated as the series at the coordinatewise product z_i conj(w_i).
Cplx diagonal_kernel_value(const wns::Series<Cplx>& k, const wns::L2Point& z,
                           const wns::L2Point& w)
{
    const std::size_t n = std::max(z.size(), w.size());
    std::vector<Cplx> mixed(n);
    for (std::size_t i = 1; i <= n; ++i)
        mixed[i - 1] = z.coord(i) * std::conj(w.coord(i));
    return evaluate(k, mixed);
}

int emit_error(const std::string& kind, const std::string& message, int code)
{
    std::cout << "{\"error\":\"" << kind << "\",\"message\":" << wns::json_escape(message)
              << "}\n";
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{
        "Symbolic-numeric calculator for truncated chaos/power series, state-space "
        "realizations, quaternionic hyperholomorphic polynomials, reproducing kernels, "
        "and seeded Monte Carlo checks. JSON in (inline or file path), JSON out. "
        "Defaults: degree 6, max_var 4, tolerance 1e-12, seed 42, samples 100000."};
    app.require_subcommand(1);
    std::string output;

    // ---- series algebra --------------------------------------------------
    std::string mul_f, mul_g;
    int mul_pow = -1;
    auto* wick_mul_cmd = app.add_subcommand(
        "wick-mul", "Convolution (Wick) product of two series, or a power with --pow");
    wick_mul_cmd->add_option("F", mul_f, "series JSON (inline or file)")->required();
    wick_mul_cmd->add_option("G", mul_g, "second series JSON");
    wick_mul_cmd->add_option("--pow", mul_pow, "nonnegative power of F instead of a product");
    wick_mul_cmd->callback([&] {
        const json jf = load_json_arg(mul_f);
        output = dispatch_ring(jf, [&](auto tag) {
            using T = typename decltype(tag)::type;
            const auto f = wns::parse_series<T>(jf);
            if (mul_pow >= 0) {
                if (!mul_g.empty())
                    throw wns::validation_error("--pow takes a single series");
                return wns::series_to_json(wick_pow(f, mul_pow));
            }
            if (mul_g.empty())
                throw wns::validation_error("wick-mul needs a second series or --pow");
            const auto g = wns::parse_series<T>(load_json_arg(mul_g));
            return wns::series_to_json(wick_mul(f, g));
        });
    });

    std::string inv_f;
    int inv_degree = -1;
    auto* wick_inv_cmd =
        app.add_subcommand("wick-inv", "Convolution inverse by degree recursion");
    wick_inv_cmd->add_option("F", inv_f, "series JSON")->required();
    wick_inv_cmd->add_option("--degree", inv_degree, "re-target truncation degree");
    wick_inv_cmd->callback([&] {
        const json jf = load_json_arg(inv_f);
        output = dispatch_ring(jf, [&](auto tag) {
            using T = typename decltype(tag)::type;
            auto f = wns::parse_series<T>(jf);
            if (inv_degree >= 0)
                f = retarget_degree(f, inv_degree);
            return wns::series_to_json(wick_inv(f));
        });
    });

    std::string ht_f;
    bool ht_inverse = false;
    int ht_n = -1;
    double ht_x = 0.0;
    auto* hermite_cmd = app.add_subcommand(
        "hermite", "Coefficient-preserving basis transform (chaos <-> monomial); "
                   "--n prints one Hermite polynomial instead");
    hermite_cmd->add_option("F", ht_f, "series JSON");
    hermite_cmd->add_flag("--inverse", ht_inverse, "monomial -> chaos direction");
    hermite_cmd->add_option("--n", ht_n, "degree of the polynomial to print");
    hermite_cmd->add_option("--at", ht_x, "also evaluate the polynomial here");
    hermite_cmd->callback([&] {
        if (ht_n >= 0) {
            const bool ht_has_x = hermite_cmd->count("--at") > 0;
            const wns::HermitePoly h(ht_n);
            std::string out = "{\"degree\":" + std::to_string(ht_n) + ",\"coeffs\":[";
            for (std::size_t i = 0; i < h.coeffs().size(); ++i) {
                if (i)
                    out += ',';
                out += std::to_string(h.coeffs()[i]);
            }
            out += "]";
            if (ht_has_x)
                out += ",\"value\":" + wns::json_num(h.eval(ht_x));
            output = out + "}";
            return;
        }
        if (ht_f.empty())
            throw wns::validation_error("hermite needs a series or --n");
        const json jf = load_json_arg(ht_f);
        output = dispatch_ring(jf, [&](auto tag) {
            using T = typename decltype(tag)::type;
            const auto f = wns::parse_series<T>(jf);
            return wns::series_to_json(ht_inverse ? inverse_hermite(f) : hermite_transform(f));
        });
    });

    std::string ev_f, ev_at;
    auto* evaluate_cmd = app.add_subcommand(
        "evaluate", "Evaluate a monomial series at a sparse point; chaos series are "
                    "evaluated pathwise at real points");
    evaluate_cmd->add_option("F", ev_f, "series JSON")->required();
    evaluate_cmd->add_option("--at", ev_at, "point [[pos,value],...]")->required();
    evaluate_cmd->callback([&] {
        const json jf = load_json_arg(ev_f);
        const wns::L2Point pt = wns::parse_point(load_json_arg(ev_at));
        output = dispatch_ring(jf, [&](auto tag) -> std::string {
            using T = typename decltype(tag)::type;
            const auto f = wns::parse_series<T>(jf);
            if (f.basis() == wns::Basis::chaos) {
                if (!point_is_real(pt))
                    throw wns::validation_error(
                        "chaos-basis evaluation expects a real sample point");
                return "{\"value\":" + matrix_value_json(chaos_path_value(f, real_coords(pt))) +
                       "}";
            }
            if (f.basis() == wns::Basis::fueter)
                throw wns::validation_error(
                    "fueter-basis series evaluate through the ck- subcommands");
            if constexpr (std::is_same_v<T, double>) {
                if (!point_is_real(pt)) {
                    const auto fc = map_series(f, [](double v) { return Cplx(v); });
                    return "{\"value\":" + matrix_value_json(evaluate(fc, pt.v)) + "}";
                }
                return "{\"value\":" + matrix_value_json(evaluate(f, real_coords(pt))) + "}";
            } else if constexpr (std::is_same_v<T, Cplx>) {
                return "{\"value\":" + matrix_value_json(evaluate(f, pt.v)) + "}";
            } else {
                if (!point_is_real(pt))
                    throw wns::validation_error(
                        "quaternion series evaluate at real points only");
                return "{\"value\":" + matrix_value_json(evaluate(f, real_coords(pt))) + "}";
            }
        });
    });

    std::string nm_f, nm_pair, nm_space = "white_noise";
    int nm_q = 1;
    auto* norms_cmd = app.add_subcommand(
        "norms", "All graded-space norms of a series; --pair computes one inner product");
    norms_cmd->add_option("F", nm_f, "series JSON")->required();
    norms_cmd->add_option("--q", nm_q, "Kondratiev/Hida weight parameter (default 1)");
    norms_cmd->add_option("--pair", nm_pair, "second series for an inner product");
    norms_cmd->add_option("--space", nm_space,
                          "inner-product space: p, white_noise, arveson, fock");
    norms_cmd->callback([&] {
        const json jf = load_json_arg(nm_f);
        output = dispatch_ring(jf, [&](auto tag) -> std::string {
            using T = typename decltype(tag)::type;
            const auto f = wns::parse_series<T>(jf);
            if (!nm_pair.empty()) {
                const auto g = wns::parse_series<T>(load_json_arg(nm_pair));
                const T v = inner_product(scalarize(f, "inner product"),
                                          scalarize(g, "inner product"),
                                          wns::inner_space_from_name(nm_space));
                return "{\"space\":\"" + nm_space + "\",\"inner\":" + wns::value_to_json(v) +
                       "}";
            }
            const auto r = norms(f, nm_q);
            std::string out = "{\"q\":" + std::to_string(r.q);
            out += ",\"white_noise2\":" + wns::json_num(r.white_noise2);
            out += ",\"p_space2\":" + wns::json_num(r.p_space2);
            out += ",\"arveson2\":" + wns::json_num(r.arveson2);
            out += ",\"fock2\":" + wns::json_num(r.fock2);
            out += ",\"kondratiev2\":" + wns::json_num(r.kondratiev2);
            out += ",\"hida2\":" + wns::json_num(r.hida2);
            out += ",\"white_noise\":" + wns::json_num(r.white_noise);
            out += ",\"p_space\":" + wns::json_num(r.p_space);
            out += ",\"arveson\":" + wns::json_num(r.arveson);
            out += ",\"fock\":" + wns::json_num(r.fock);
            out += ",\"kondratiev\":" + wns::json_num(r.kondratiev);
            out += ",\"hida\":" + wns::json_num(r.hida);
            return out + "}";
        });
    });

    std::string lb_f, lb_realization, lb_state;
    std::uint32_t lb_var = 1;
    int lb_degree = 6;
    auto* leibenzon_cmd = app.add_subcommand(
        "leibenzon", "Backward-shift operator R_j on a series; with --realization, the "
                     "residual of its state-space intertwining identity");
    leibenzon_cmd->add_option("F", lb_f, "series JSON");
    leibenzon_cmd->add_option("--var", lb_var, "variable index j >= 1 (default 1)");
    leibenzon_cmd->add_option("--realization", lb_realization, "realization JSON");
    leibenzon_cmd->add_option("--state", lb_state,
                              "state vector (N x 1 matrix JSON) for the identity check");
    leibenzon_cmd->add_option("--degree", lb_degree, "identity-check degree (default 6)");
    leibenzon_cmd->callback([&] {
        if (!lb_realization.empty()) {
            const json jr = load_json_arg(lb_realization);
            if (lb_state.empty())
                throw wns::validation_error("--realization needs --state");
            output = dispatch_ring(jr, [&](auto tag) {
                using T = typename decltype(tag)::type;
                const auto r = wns::parse_realization<T>(jr);
                const auto f = wns::parse_matrix<T>(load_json_arg(lb_state));
                const auto resid = leibenzon_realization_residual(r, f, lb_var, lb_degree);
                return "{\"max_residual\":" + wns::json_num(resid.max_abs_coeff()) + "}";
            });
            return;
        }
        if (lb_f.empty())
            throw wns::validation_error("leibenzon needs a series or --realization");
        const json jf = load_json_arg(lb_f);
        output = dispatch_ring(jf, [&](auto tag) {
            using T = typename decltype(tag)::type;
            return wns::series_to_json(leibenzon(wns::parse_series<T>(jf), lb_var));
        });
    });

    std::string gl_f;
    auto* gleason_cmd = app.add_subcommand(
        "gleason-check", "Residual of f - f(0) = sum_j z_j R_j f on a series");
    gleason_cmd->add_option("F", gl_f, "series JSON")->required();
    gleason_cmd->callback([&] {
        const json jf = load_json_arg(gl_f);
        output = dispatch_ring(jf, [&](auto tag) {
            using T = typename decltype(tag)::type;
            const auto resid = gleason_residual(wns::parse_series<T>(jf));
            return "{\"max_residual\":" + wns::json_num(resid.max_abs_coeff()) + "}";
        });
    });

    std::string kq_z;
    int kq_q = 1;
    double kq_delta = 1.0;
    auto* kq_cmd = app.add_subcommand(
        "kq-member", "Membership of |z| in the geometric neighborhood K_q(delta)");
    kq_cmd->add_option("--z", kq_z, "coordinate magnitudes as a JSON array")->required();
    kq_cmd->add_option("--q", kq_q, "weight exponent (default 1)");
    kq_cmd->add_option("--delta", kq_delta, "radius parameter (default 1)");
    kq_cmd->callback([&] {
        const json jz = load_json_arg(kq_z);
        if (!jz.is_array())
            throw wns::validation_error("--z must be a JSON array of nonnegative numbers");
        std::vector<double> z;
        for (const json& t : jz)
            z.push_back(wns::parse_double(t, "coordinate magnitude"));
        const auto rep = wns::kq_membership(z, kq_q, kq_delta);
        std::string out = "{\"value\":";
        out += rep.divergent ? "null" : wns::json_num(rep.value);
        out += std::string(",\"divergent\":") + (rep.divergent ? "true" : "false");
        out += std::string(",\"inside\":") + (rep.inside ? "true" : "false") + "}";
        output = out;
    });

    // ---- realizations ------------------------------------------------------
    std::string rs_r, rs_basis = "monomial", rs_match;
    int rs_degree = 6;
    double rs_tol = 1e-12;
    auto* rseries_cmd = app.add_subcommand(
        "realize-series", "Truncated series of D + C(I-zA)^{-1}zB; --match tests a series "
                          "against the realization");
    rseries_cmd->add_option("R", rs_r, "realization JSON")->required();
    rseries_cmd->add_option("--degree", rs_degree, "truncation degree (default 6)");
    rseries_cmd->add_option("--basis", rs_basis, "output basis tag (default monomial)");
    rseries_cmd->add_option("--match", rs_match, "series JSON to compare coefficientwise");
    rseries_cmd->add_option("--tol", rs_tol, "match tolerance (default 1e-12)");
    rseries_cmd->callback([&] {
        const json jr = load_json_arg(rs_r);
        output = dispatch_ring(jr, [&](auto tag) -> std::string {
            using T = typename decltype(tag)::type;
            const auto r = wns::parse_realization<T>(jr);
            if (!rs_match.empty()) {
                const auto f = wns::parse_series<T>(load_json_arg(rs_match));
                const bool ok = is_rational_witness(f, r, rs_tol);
                return std::string("{\"matches\":") + (ok ? "true" : "false") +
                       ",\"tolerance\":" + wns::json_num(rs_tol) + "}";
            }
            const auto f = to_series(r, rs_degree, wns::parse_basis(json(rs_basis)));
            return wns::series_to_json(f);
        });
    });

    std::string re_r, re_at;
    auto* reval_cmd =
        app.add_subcommand("realize-eval", "Evaluate a realization at a finite point");
    reval_cmd->add_option("R", re_r, "realization JSON")->required();
    reval_cmd->add_option("--at", re_at, "point [[pos,value],...]")->required();
    reval_cmd->callback([&] {
        const json jr = load_json_arg(re_r);
        const json jp = load_json_arg(re_at);
        const std::string ring = wns::parse_ring_tag(jr);
        if (ring == "quaternion") {
            const auto r = wns::parse_realization<Quat>(jr);
            const auto rep = eval(r, parse_quat_point(jp));
            output = "{\"value\":" + matrix_value_json(rep.value) +
                     ",\"cond1\":" + wns::json_num(rep.cond1) + "}";
            return;
        }
        const wns::L2Point pt = wns::parse_point(jp);
        if (ring == "real" && point_is_real(pt)) {
            const auto r = wns::parse_realization<double>(jr);
            const auto rep = eval(r, real_coords(pt));
            output = "{\"value\":" + matrix_value_json(rep.value) +
                     ",\"cond1\":" + wns::json_num(rep.cond1) + "}";
            return;
        }
        const auto r = ring == "real" ? complexify(wns::parse_realization<double>(jr))
                                      : wns::parse_realization<Cplx>(jr);
        const auto rep = eval(r, pt.v);
        output = "{\"value\":" + matrix_value_json(rep.value) +
                 ",\"cond1\":" + wns::json_num(rep.cond1) + "}";
    });

    std::string rp_r1, rp_r2;
    auto* rprod_cmd = app.add_subcommand(
        "realize-product", "Cascade realization of the product (block formulas)");
    rprod_cmd->add_option("R1", rp_r1, "realization JSON")->required();
    rprod_cmd->add_option("R2", rp_r2, "realization JSON")->required();
    rprod_cmd->callback([&] {
        const json j1 = load_json_arg(rp_r1);
        output = dispatch_ring(j1, [&](auto tag) {
            using T = typename decltype(tag)::type;
            const auto r1 = wns::parse_realization<T>(j1);
            const auto r2 = wns::parse_realization<T>(load_json_arg(rp_r2));
            return wns::realization_to_json(product(r1, r2));
        });
    });

    std::string rs1, rs2;
    auto* rsum_cmd =
        app.add_subcommand("realize-sum", "Block-diagonal realization of the sum");
    rsum_cmd->add_option("R1", rs1, "realization JSON")->required();
    rsum_cmd->add_option("R2", rs2, "realization JSON")->required();
    rsum_cmd->callback([&] {
        const json j1 = load_json_arg(rs1);
        output = dispatch_ring(j1, [&](auto tag) {
            using T = typename decltype(tag)::type;
            const auto r1 = wns::parse_realization<T>(j1);
            const auto r2 = wns::parse_realization<T>(load_json_arg(rs2));
            return wns::realization_to_json(sum(r1, r2));
        });
    });

    std::string ri_r;
    auto* rinv_cmd = app.add_subcommand(
        "realize-inverse", "Realization of the inverse (requires invertible D)");
    rinv_cmd->add_option("R", ri_r, "realization JSON")->required();
    rinv_cmd->callback([&] {
        const json jr = load_json_arg(ri_r);
        output = dispatch_ring(jr, [&](auto tag) {
            using T = typename decltype(tag)::type;
            return wns::realization_to_json(inverse(wns::parse_realization<T>(jr)));
        });
    });

    // ---- quaternionic polynomials -------------------------------------------
    std::string ce_phi, ce_restrict;
    auto* ck_extend_cmd = app.add_subcommand(
        "ck-extend", "Hyperholomorphic extension of a polynomial in x1,x2,x3; "
                     "--restrict goes the other way");
    ck_extend_cmd->add_option("PHI", ce_phi, "3-variable polynomial JSON");
    ck_extend_cmd->add_option("--restrict", ce_restrict,
                              "4-variable polynomial JSON to restrict to x0 = 0");
    ck_extend_cmd->callback([&] {
        if (!ce_restrict.empty()) {
            const auto f = wns::parse_qpoly4(load_json_arg(ce_restrict));
            output = wns::qpoly3_to_json(wns::restrict_x0(f));
            return;
        }
        if (ce_phi.empty())
            throw wns::validation_error("ck-extend needs a polynomial or --restrict");
        const auto phi = wns::parse_qpoly3(load_json_arg(ce_phi));
        output = wns::qpoly4_to_json(wns::ck_extend(phi));
    });

    std::string cp_f, cp_g, cp_invert;
    int cp_degree = 6;
    auto* ck_product_cmd = app.add_subcommand(
        "ck-product", "Cauchy-Kovalevskaya product of two hyperholomorphic polynomials; "
                      "--invert sums the geometric series of one");
    ck_product_cmd->add_option("F", cp_f, "4-variable polynomial JSON");
    ck_product_cmd->add_option("G", cp_g, "4-variable polynomial JSON");
    ck_product_cmd->add_option("--invert", cp_invert,
                               "polynomial with vanishing constant restriction");
    ck_product_cmd->add_option("--degree", cp_degree, "inversion degree (default 6)");
    ck_product_cmd->callback([&] {
        if (!cp_invert.empty()) {
            wns::Matrix<wns::QPoly4<double>> g(1, 1);
            g.at(0, 0) = wns::parse_qpoly4(load_json_arg(cp_invert));
            const auto inv =
                wns::ck_von_neumann_inv(g, static_cast<std::uint32_t>(cp_degree));
            output = wns::qpoly4_to_json(inv.at(0, 0));
            return;
        }
        if (cp_f.empty() || cp_g.empty())
            throw wns::validation_error("ck-product needs two polynomials or --invert");
        const auto f = wns::parse_qpoly4(load_json_arg(cp_f));
        const auto g = wns::parse_qpoly4(load_json_arg(cp_g));
        output = wns::qpoly4_to_json(wns::ck_product(f, g));
    });

    std::string dc_f;
    double dc_tol = 1e-12;
    auto* dirac_cmd = app.add_subcommand(
        "dirac-check", "Left Cauchy-Fueter operator applied to a polynomial");
    dirac_cmd->add_option("F", dc_f, "4-variable polynomial JSON")->required();
    dirac_cmd->add_option("--tol", dc_tol, "hyperholomorphy tolerance (default 1e-12)");
    dirac_cmd->callback([&] {
        const auto f = wns::parse_qpoly4(load_json_arg(dc_f));
        const auto df = wns::dirac_apply(f);
        const double worst = df.max_abs_coeff();
        output = "{\"derivative\":" + wns::qpoly4_to_json(df) +
                 ",\"max_abs_coeff\":" + wns::json_num(worst) +
                 ",\"hyperholomorphic\":" + (worst <= dc_tol ? "true" : "false") + "}";
    });

    std::string fm_exps;
    auto* fmono_cmd = app.add_subcommand(
        "fueter-monomial", "Hyperholomorphic monomial zeta^alpha from exponents [a1,a2,a3]");
    fmono_cmd->add_option("--exps", fm_exps, "JSON array [a1,a2,a3]")->required();
    fmono_cmd->callback([&] {
        const json je = load_json_arg(fm_exps);
        if (!je.is_array() || je.size() != 3)
            throw wns::validation_error("--exps must be [a1,a2,a3]");
        wns::Exp3 e{};
        for (std::size_t i = 0; i < 3; ++i)
            e[i] = static_cast<std::uint32_t>(wns::parse_nonneg_int(je[i], "exponent"));
        output = wns::qpoly4_to_json(wns::fueter_monomial<double>(e));
    });

    // ---- kernels -------------------------------------------------------------
    std::string kg_points, kg_kernel = "arveson", kg_s;
    double kg_tol = 1e-10;
    auto* gram_cmd = app.add_subcommand(
        "kernel-gram", "Gram matrix and PSD report of a kernel on a point list");
    gram_cmd->add_option("--points", kg_points, "array of sparse points")->required();
    gram_cmd->add_option("--kernel", kg_kernel, "arveson, fock, or schur (default arveson)");
    gram_cmd->add_option("--s", kg_s, "multiplier series (monomial, complex) for schur");
    gram_cmd->add_option("--psd-tol", kg_tol, "PSD tolerance (default 1e-10)");
    gram_cmd->callback([&] {
        const auto points = parse_point_list(load_json_arg(kg_points));
        wns::KernelGram g;
        if (kg_kernel == "arveson") {
            g = wns::build_gram(points, [](const wns::L2Point& z, const wns::L2Point& w) {
                return wns::arveson_kernel(z, w);
            }, kg_tol);
        } else if (kg_kernel == "fock") {
            g = wns::build_gram(points, [](const wns::L2Point& z, const wns::L2Point& w) {
                return wns::fock_kernel(z, w);
            }, kg_tol);
        } else if (kg_kernel == "schur") {
            if (kg_s.empty())
                throw wns::validation_error("schur kernel needs --s");
            const auto s =
                scalarize(wns::parse_series<Cplx>(load_json_arg(kg_s)), "multiplier");
            if (s.basis() != wns::Basis::monomial)
                throw wns::validation_error("multiplier series must be monomial-basis");
            g = wns::schur_gram(
                [&s](const wns::L2Point& z) { return evaluate(s, z.v); }, points, kg_tol);
        } else {
            throw wns::validation_error("kernel must be arveson, fock, or schur");
        }
        output = gram_json(g);
    });

    std::string bc_a, bc_z, bc_w;
    auto* blaschke_cmd = app.add_subcommand(
        "blaschke-check", "Blaschke factor b_a(z); with --w also its kernel identity");
    blaschke_cmd->add_option("--a", bc_a, "automorphism parameter point")->required();
    blaschke_cmd->add_option("--z", bc_z, "argument point")->required();
    blaschke_cmd->add_option("--w", bc_w, "second point for the identity residual");
    blaschke_cmd->callback([&] {
        const auto a = wns::parse_point(load_json_arg(bc_a));
        const auto z = wns::parse_point(load_json_arg(bc_z));
        std::string out = "{\"image\":" + wns::point_to_json(wns::blaschke(a, z));
        if (!bc_w.empty()) {
            const auto w = wns::parse_point(load_json_arg(bc_w));
            const auto id = wns::blaschke_kernel_identity(a, z, w);
            out += ",\"identity\":{\"lhs\":" + complex_json(id.lhs);
            out += ",\"rhs\":" + complex_json(id.rhs);
            out += ",\"abs_residual\":" + wns::json_num(id.abs_residual);
            out += ",\"rel_residual\":" + wns::json_num(id.rel_residual) + "}";
        }
        output = out + "}";
    });

    std::string ag_s, ag_kernels, ag_points;
    auto* agler_cmd = app.add_subcommand(
        "agler-check", "Residual of 1 - s(z)conj(s(w)) = sum_l (1 - z_l conj(w_l)) k_l; "
                       "kernels are diagonal-coefficient series");
    agler_cmd->add_option("--s", ag_s, "multiplier series (monomial, complex)")->required();
    agler_cmd->add_option("--kernels", ag_kernels, "array of kernel series")->required();
    agler_cmd->add_option("--points", ag_points, "array of sparse points")->required();
    agler_cmd->callback([&] {
        const auto s = scalarize(wns::parse_series<Cplx>(load_json_arg(ag_s)), "multiplier");
        if (s.basis() != wns::Basis::monomial)
            throw wns::validation_error("multiplier series must be monomial-basis");
        const json jk = load_json_arg(ag_kernels);
        if (!jk.is_array())
            throw wns::validation_error("--kernels must be an array of series");
        std::vector<wns::Series<Cplx>> kseries;
        for (const json& k : jk) {
            auto ks = scalarize(wns::parse_series<Cplx>(k), "kernel");
            if (ks.basis() != wns::Basis::monomial)
                throw wns::validation_error("kernel series must be monomial-basis");
            kseries.push_back(std::move(ks));
        }
        const auto points = parse_point_list(load_json_arg(ag_points));
        std::vector<wns::KernelFn> kernels;
        for (const auto& ks : kseries)
            kernels.push_back([&ks](const wns::L2Point& z, const wns::L2Point& w) {
                return diagonal_kernel_value(ks, z, w);
            });
        const double resid = wns::agler_residual(
            [&s](const wns::L2Point& z) { return evaluate(s, z.v); }, kernels, points);
        output = "{\"max_residual\":" + wns::json_num(resid) + "}";
    });

    // ---- Monte Carlo ----------------------------------------------------------
    std::string mi_alpha, mi_beta;
    std::uint64_t mi_samples = 100000, mi_seed = 42;
    auto* mc_inner_cmd = app.add_subcommand(
        "mc-inner", "Monte Carlo estimate of E[H_alpha H_beta] (exact: delta alpha!)");
    mc_inner_cmd->add_option("--alpha", mi_alpha, "multi-index [[pos,exp],...]")->required();
    mc_inner_cmd->add_option("--beta", mi_beta, "multi-index [[pos,exp],...]")->required();
    mc_inner_cmd->add_option("--samples", mi_samples, "sample count (default 100000)");
    mc_inner_cmd->add_option("--seed", mi_seed, "RNG seed (default 42)");
    mc_inner_cmd->callback([&] {
        const auto a = wns::parse_multiindex(load_json_arg(mi_alpha));
        const auto b = wns::parse_multiindex(load_json_arg(mi_beta));
        output = mc_report_json(wns::mc_inner(a, b, mi_samples, mi_seed));
    });

    std::string mm_f, mm_with;
    std::uint64_t mm_samples = 100000, mm_seed = 42;
    auto* mc_moment_cmd = app.add_subcommand(
        "mc-moment", "Monte Carlo mean of a real chaos series; --pointwise-with estimates "
                     "the pointwise-product moment E[F G]");
    mc_moment_cmd->add_option("F", mm_f, "real chaos-basis series JSON")->required();
    mc_moment_cmd->add_option("--pointwise-with", mm_with, "second real chaos series");
    mc_moment_cmd->add_option("--samples", mm_samples, "sample count (default 100000)");
    mc_moment_cmd->add_option("--seed", mm_seed, "RNG seed (default 42)");
    mc_moment_cmd->callback([&] {
        const auto f =
            scalarize(wns::parse_series<double>(load_json_arg(mm_f)), "moment estimation");
        if (!mm_with.empty()) {
            const auto g = scalarize(wns::parse_series<double>(load_json_arg(mm_with)),
                                     "moment estimation");
            output = mc_report_json(
                wns::mc_pointwise_product_moment(f, g, mm_samples, mm_seed));
            return;
        }
        output = mc_report_json(wns::mc_series_moment(f, mm_samples, mm_seed));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return emit_error("validation", e.what(), 2);
    } catch (const wns::numeric_error& e) {
        return emit_error("numeric", e.what(), 3);
    } catch (const std::overflow_error& e) {
        return emit_error("numeric", e.what(), 3);
    } catch (const wns::validation_error& e) {
        return emit_error("validation", e.what(), 2);
    } catch (const nlohmann::json::exception& e) {
        return emit_error("validation", e.what(), 2);
    } catch (const std::exception& e) {
        return emit_error("validation", e.what(), 2);
    }
    std::cout << output << "\n";
    return 0;
}
