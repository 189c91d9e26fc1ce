#pragma once

#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "wns/errors.hpp"
#include "wns/kernels.hpp"
#include "wns/matrix.hpp"
#include "wns/multiindex.hpp"
#include "wns/quaternion.hpp"
#include "wns/realization.hpp"
#include "wns/series.hpp"
#include "wns/fueter.hpp"

namespace wns {

using json = nlohmann::json;

// ---- deterministic emission -------------------------------------------

/// Floating-point number as JSON text with 17 significant digits;
/// round-trips exactly and normalizes the sign of zero.
inline std::string json_num(double v)
{
    if (!std::isfinite(v))
        throw numeric_error("cannot serialize a non-finite number");
    if (v == 0.0)
        v = 0.0; // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string json_escape(const std::string& s)
{
    std::string out = "\"";
    for (const char c : s) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\t':
            out += "\\t";
            break;
        case '\r':
            out += "\\r";
            break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
    return out;
}

inline std::string value_to_json(double v) { return json_num(v); }
inline std::string value_to_json(const std::complex<double>& v)
{
    return "[" + json_num(v.real()) + "," + json_num(v.imag()) + "]";
}
inline std::string value_to_json(const Quaternion<double>& v)
{
    return "[" + json_num(v[0]) + "," + json_num(v[1]) + "," + json_num(v[2]) + "," +
           json_num(v[3]) + "]";
}

template <class T>
std::string value_to_json(const Matrix<T>& m)
{
    std::string out = "[";
    for (int i = 0; i < m.rows(); ++i) {
        if (i)
            out += ',';
        out += '[';
        for (int j = 0; j < m.cols(); ++j) {
            if (j)
                out += ',';
            out += value_to_json(m.at(i, j));
        }
        out += ']';
    }
    out += ']';
    return out;
}

template <class T>
const char* ring_name();
template <>
inline const char* ring_name<double>()
{
    return "real";
}
template <>
inline const char* ring_name<std::complex<double>>()
{
    return "complex";
}
template <>
inline const char* ring_name<Quaternion<double>>()
{
    return "quaternion";
}

inline std::string multiindex_to_json(const MultiIndex& a)
{
    std::string out = "[";
    bool first = true;
    for (const auto& [pos, exp] : a.entries()) {
        if (!first)
            out += ',';
        first = false;
        out += '[' + std::to_string(pos) + ',' + std::to_string(exp) + ']';
    }
    out += ']';
    return out;
}

template <class T>
std::string series_to_json(const Series<Matrix<T>>& s)
{
    std::string out = "{\"basis\":";
    out += json_escape(basis_name(s.basis()));
    out += ",\"degree\":" + std::to_string(s.degree());
    out += ",\"max_var\":" + std::to_string(s.max_var());
    out += ",\"shape\":[" + std::to_string(s.shape().rows) + ',' +
           std::to_string(s.shape().cols) + ']';
    out += ",\"ring\":";
    out += json_escape(ring_name<T>());
    out += ",\"terms\":[";
    bool first = true;
    for (const auto& [a, v] : s.coeffs()) {
        if (!first)
            out += ',';
        first = false;
        out += "{\"alpha\":" + multiindex_to_json(a) + ",\"value\":";
        out += s.shape().is_scalar() ? value_to_json(v.at(0, 0)) : value_to_json(v);
        out += '}';
    }
    out += "]}";
    return out;
}

template <class T>
std::string realization_to_json(const Realization<T>& r)
{
    std::string out = "{\"ring\":";
    out += json_escape(ring_name<T>());
    out += ",\"D\":" + value_to_json(r.D);
    out += ",\"C\":" + value_to_json(r.C);
    out += ",\"A\":[";
    for (std::size_t k = 0; k < r.A.size(); ++k) {
        if (k)
            out += ',';
        out += value_to_json(r.A[k]);
    }
    out += "],\"B\":[";
    for (std::size_t k = 0; k < r.B.size(); ++k) {
        if (k)
            out += ',';
        out += value_to_json(r.B[k]);
    }
    out += "]}";
    return out;
}

inline std::string qpoly4_to_json(const QPoly4<double>& p)
{
    std::string out = "{\"terms\":[";
    bool first = true;
    for (const auto& [e, q] : p.terms()) {
        if (!first)
            out += ',';
        first = false;
        out += "{\"exps\":[" + std::to_string(e[0]) + ',' + std::to_string(e[1]) + ',' +
               std::to_string(e[2]) + ',' + std::to_string(e[3]) + "],\"value\":";
        out += value_to_json(q);
        out += '}';
    }
    out += "]}";
    return out;
}

inline std::string qpoly3_to_json(const QPoly3<double>& p)
{
    std::string out = "{\"terms\":[";
    bool first = true;
    for (const auto& [e, q] : p.terms()) {
        if (!first)
            out += ',';
        first = false;
        out += "{\"exps\":[" + std::to_string(e[0]) + ',' + std::to_string(e[1]) + ',' +
               std::to_string(e[2]) + "],\"value\":";
        out += value_to_json(q);
        out += '}';
    }
    out += "]}";
    return out;
}

inline std::string point_to_json(const L2Point& p)
{
    std::string out = "[";
    bool first = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.v[i] == std::complex<double>(0.0))
            continue;
        if (!first)
            out += ',';
        first = false;
        out += '[' + std::to_string(i + 1) + ',' + value_to_json(p.v[i]) + ']';
    }
    out += ']';
    return out;
}

// ---- strict parsing -----------------------------------------------------

inline void check_fields(const json& j, std::initializer_list<const char*> allowed)
{
    if (!j.is_object())
        throw validation_error("expected a JSON object");
    for (const auto& [key, val] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a)
                ok = true;
        if (!ok)
            throw validation_error("unknown field: " + key);
    }
}

inline const json& require_field(const json& j, const char* name)
{
    const auto it = j.find(name);
    if (it == j.end())
        throw validation_error(std::string("missing field: ") + name);
    return *it;
}

inline double parse_double(const json& j, const char* what)
{
    if (!j.is_number())
        throw validation_error(std::string(what) + " must be a number");
    return j.get<double>();
}

inline int parse_nonneg_int(const json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw validation_error(std::string(what) + " must be a nonnegative integer");
    return static_cast<int>(j.get<long long>());
}

template <class T>
T parse_value(const json& j);

template <>
inline double parse_value<double>(const json& j)
{
    if (!j.is_number())
        throw validation_error("real value must be a number");
    return j.get<double>();
}

template <>
inline std::complex<double> parse_value<std::complex<double>>(const json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw validation_error("complex value must be a number or [re,im]");
}

template <>
inline Quaternion<double> parse_value<Quaternion<double>>(const json& j)
{
    if (j.is_number())
        return Quaternion<double>::real(j.get<double>());
    if (j.is_array() && j.size() == 4) {
        double c[4];
        for (std::size_t i = 0; i < 4; ++i) {
            if (!j[i].is_number())
                throw validation_error("quaternion components must be numbers");
            c[i] = j[i].get<double>();
        }
        return {c[0], c[1], c[2], c[3]};
    }
    throw validation_error("quaternion value must be a number or [w,x,y,z]");
}

template <class T>
Matrix<T> parse_matrix(const json& j)
{
    if (!j.is_array() || j.empty())
        throw validation_error("matrix must be a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    if (!j[0].is_array() || j[0].empty())
        throw validation_error("matrix rows must be nonempty arrays");
    const int cols = static_cast<int>(j[0].size());
    Matrix<T> m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw validation_error("matrix rows must have equal length");
        for (int k = 0; k < cols; ++k)
            m.at(i, k) = parse_value<T>(row[static_cast<std::size_t>(k)]);
    }
    return m;
}

inline MultiIndex parse_multiindex(const json& j)
{
    if (!j.is_array())
        throw validation_error("multi-index must be an array of [position,exponent] pairs");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
    for (const json& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number_integer())
            throw validation_error("multi-index entries must be [position,exponent]");
        const long long pos = pair[0].get<long long>();
        const long long exp = pair[1].get<long long>();
        if (pos < 1 || exp < 0)
            throw validation_error("multi-index positions start at 1, exponents at 0");
        entries.emplace_back(static_cast<std::uint32_t>(pos), static_cast<std::uint32_t>(exp));
    }
    return MultiIndex::of(entries);
}

inline std::string parse_ring_tag(const json& j)
{
    const json& r = require_field(j, "ring");
    if (!r.is_string())
        throw validation_error("ring must be a string");
    const std::string name = r.get<std::string>();
    if (name != "real" && name != "complex" && name != "quaternion")
        throw validation_error("ring must be real, complex, or quaternion");
    return name;
}

inline Basis parse_basis(const json& j)
{
    if (!j.is_string())
        throw validation_error("basis must be a string");
    const std::string b = j.get<std::string>();
    if (b == "chaos")
        return Basis::chaos;
    if (b == "monomial")
        return Basis::monomial;
    if (b == "fueter")
        return Basis::fueter;
    throw validation_error("basis must be chaos, monomial, or fueter");
}

/// Series with matrix coefficients of the declared shape; a [1,1] shape
/// accepts bare scalar values.
template <class T>
Series<Matrix<T>> parse_series(const json& j)
{
    check_fields(j, {"basis", "degree", "max_var", "shape", "ring", "terms"});
    if (parse_ring_tag(j) != ring_name<T>())
        throw validation_error("series ring does not match the requested ring");
    const Basis basis = parse_basis(require_field(j, "basis"));
    const int degree = parse_nonneg_int(require_field(j, "degree"), "degree");
    const int max_var = parse_nonneg_int(require_field(j, "max_var"), "max_var");
    Shape shape{1, 1};
    if (j.contains("shape")) {
        const json& sh = j["shape"];
        if (!sh.is_array() || sh.size() != 2)
            throw validation_error("shape must be [rows,cols]");
        shape.rows = parse_nonneg_int(sh[0], "shape rows");
        shape.cols = parse_nonneg_int(sh[1], "shape cols");
    }
    Series<Matrix<T>> s(basis, degree, max_var, shape);
    const json& terms = require_field(j, "terms");
    if (!terms.is_array())
        throw validation_error("terms must be an array");
    for (const json& term : terms) {
        check_fields(term, {"alpha", "value"});
        const MultiIndex a = parse_multiindex(require_field(term, "alpha"));
        const json& v = require_field(term, "value");
        // A [1,1] shape accepts the bare scalar encoding; nested rows
        // ([[...]]) always parse as a matrix.
        const bool nested = v.is_array() && !v.empty() && v[0].is_array();
        Matrix<T> m;
        if (shape.is_scalar() && !nested)
            m = Matrix<T>::from_rows({{parse_value<T>(v)}});
        else
            m = parse_matrix<T>(v);
        if (m.shape() != shape)
            throw validation_error("term value shape does not match the series shape");
        s.add_to_coeff(a, m);
    }
    return s;
}

template <class T>
Realization<T> parse_realization(const json& j)
{
    check_fields(j, {"ring", "D", "C", "A", "B"});
    if (parse_ring_tag(j) != ring_name<T>())
        throw validation_error("realization ring does not match the requested ring");
    Realization<T> r;
    r.D = parse_matrix<T>(require_field(j, "D"));
    const json& cj = require_field(j, "C");
    const json& aj = require_field(j, "A");
    const json& bj = require_field(j, "B");
    if (!aj.is_array() || !bj.is_array())
        throw validation_error("A and B must be arrays of matrices");
    // An empty C (state dimension 0) may be written as [] or [[]].
    if (cj.is_array() && (cj.empty() || (cj.size() == 1 && cj[0].is_array() && cj[0].empty())))
        r.C = Matrix<T>(r.D.rows(), 0);
    else
        r.C = parse_matrix<T>(cj);
    for (const json& m : aj)
        r.A.push_back(parse_matrix<T>(m));
    for (const json& m : bj)
        r.B.push_back(parse_matrix<T>(m));
    r.validate();
    return r;
}

template <class S, class Exp, class P>
P parse_qpoly_impl(const json& j)
{
    check_fields(j, {"terms"});
    const json& terms = require_field(j, "terms");
    if (!terms.is_array())
        throw validation_error("terms must be an array");
    P p;
    for (const json& term : terms) {
        check_fields(term, {"exps", "value"});
        const json& ej = require_field(term, "exps");
        Exp e{};
        if (!ej.is_array() || ej.size() != e.size())
            throw validation_error("exps has the wrong arity");
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = static_cast<std::uint32_t>(parse_nonneg_int(ej[i], "exponent"));
        p.add_term(e, parse_value<Quaternion<double>>(require_field(term, "value")));
    }
    return p;
}

inline QPoly3<double> parse_qpoly3(const json& j)
{
    return parse_qpoly_impl<double, Exp3, QPoly3<double>>(j);
}
inline QPoly4<double> parse_qpoly4(const json& j)
{
    return parse_qpoly_impl<double, Exp4, QPoly4<double>>(j);
}

/// Sparse complex point: [[position, value], ...].
inline L2Point parse_point(const json& j)
{
    if (!j.is_array())
        throw validation_error("point must be an array of [position,value] pairs");
    L2Point p;
    for (const json& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer())
            throw validation_error("point entries must be [position,value]");
        const long long pos = pair[0].get<long long>();
        if (pos < 1)
            throw validation_error("point positions start at 1");
        const std::complex<double> v = parse_value<std::complex<double>>(pair[1]);
        if (static_cast<std::size_t>(pos) > p.v.size())
            p.v.resize(static_cast<std::size_t>(pos));
        p.v[static_cast<std::size_t>(pos - 1)] = v;
    }
    return p;
}

} // namespace wns
