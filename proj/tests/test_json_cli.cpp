// JSON interchange and CLI behavior: parse/emit round trips, strict field
// validation, and byte-for-byte golden comparisons of every subcommand.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <complex>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "wns/fueter.hpp"
#include "wns/json_io.hpp"
#include "wns/quaternion.hpp"
#include "wns/realization.hpp"
#include "wns/series.hpp"

#include "support/cli_cases.hpp"
#include "support/common.hpp"

using namespace wns;
using wns_test::Rng;

namespace {

using Cplx = std::complex<double>;
using Quat = Quaternion<double>;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <class T>
Series<Matrix<T>> wrap1x1(const Series<T>& s)
{
    Series<Matrix<T>> out(s.basis(), s.degree(), s.max_var(), {1, 1});
    for (const auto& [a, v] : s.coeffs()) {
        Matrix<T> m(1, 1);
        m.at(0, 0) = v;
        out.set_coeff(a, m);
    }
    return out;
}

template <class T>
void check_series_roundtrip(const Series<Matrix<T>>& s)
{
    const std::string text = series_to_json(s);
    const auto parsed = parse_series<T>(json::parse(text));
    REQUIRE(parsed.basis() == s.basis());
    REQUIRE(parsed.degree() == s.degree());
    REQUIRE(parsed.max_var() == s.max_var());
    REQUIRE(max_coeff_distance(parsed, s) == 0.0);
    REQUIRE(series_to_json(parsed) == text);
}

} // namespace

TEST_CASE("series JSON round trips across rings and shapes")
{
    Rng rng(2026);
    const auto real_gen = [&] { return rng.sym(2.0); };
    const auto cplx_gen = [&] { return Cplx(rng.sym(1.0), rng.sym(1.0)); };
    const auto quat_gen = [&] {
        return Quat(rng.sym(1.0), rng.sym(1.0), rng.sym(1.0), rng.sym(1.0));
    };

    for (int trial = 0; trial < 10; ++trial) {
        check_series_roundtrip(wrap1x1(
            wns_test::random_series<double>(rng, Basis::monomial, 4, 3, 0.5, real_gen)));
        check_series_roundtrip(wrap1x1(
            wns_test::random_series<Cplx>(rng, Basis::chaos, 3, 2, 0.5, cplx_gen)));
        check_series_roundtrip(wrap1x1(
            wns_test::random_series<Quat>(rng, Basis::fueter, 3, 3, 0.5, quat_gen)));
    }

    // Matrix coefficients survive with shape intact.
    Series<Matrix<double>> m(Basis::monomial, 3, 2, {2, 3});
    Matrix<double> v(2, 3);
    v.at(0, 0) = 1.5;
    v.at(1, 2) = -0.25;
    m.set_coeff(MultiIndex::of({{1, 1}, {2, 1}}), v);
    check_series_roundtrip(m);
}

TEST_CASE("realization JSON round trips across rings")
{
    Rng rng(77);
    const auto r = wns_test::random_realization(rng, 2, 2, 3, 2, 0.5);
    const auto text = realization_to_json(r);
    const auto parsed = parse_realization<double>(json::parse(text));
    REQUIRE(realization_to_json(parsed) == text);
    REQUIRE(max_coeff_distance(to_series(parsed, 4, Basis::monomial),
                               to_series(r, 4, Basis::monomial)) == 0.0);

    Realization<Quat> q;
    q.D = Matrix<Quat>::identity(1);
    q.C = Matrix<Quat>(1, 2);
    q.C.at(0, 0) = Quat::unit(1);
    q.A = {Matrix<Quat>(2, 2)};
    q.A[0].at(0, 1) = Quat::unit(2);
    q.B = {Matrix<Quat>(2, 1)};
    q.B[0].at(1, 0) = Quat::unit(3);
    const auto qtext = realization_to_json(q);
    REQUIRE(realization_to_json(parse_realization<Quat>(json::parse(qtext))) == qtext);
}

TEST_CASE("quaternionic polynomial JSON round trips")
{
    QPoly3<double> phi;
    phi.add_term({2, 0, 0}, Quat::real(1.0));
    phi.add_term({0, 1, 1}, Quat::unit(3));
    const auto text = qpoly3_to_json(phi);
    REQUIRE(qpoly3_to_json(parse_qpoly3(json::parse(text))) == text);

    const auto f = ck_extend(phi);
    const auto ftext = qpoly4_to_json(f);
    const auto reparsed = parse_qpoly4(json::parse(ftext));
    REQUIRE(qpoly4_to_json(reparsed) == ftext);
    REQUIRE(restrict_x0(reparsed).terms().size() == phi.terms().size());
}

TEST_CASE("multi-index and point JSON round trips")
{
    const MultiIndex a = MultiIndex::of({{1, 2}, {4, 1}});
    REQUIRE(parse_multiindex(json::parse(multiindex_to_json(a))) == a);

    L2Point p;
    p.v = {Cplx(0.5, 0), Cplx(0, 0), Cplx(-0.25, 1.0)};
    const auto text = point_to_json(p);
    const auto parsed = parse_point(json::parse(text));
    REQUIRE(parsed.coord(1) == p.coord(1));
    REQUIRE(parsed.coord(2) == p.coord(2));
    REQUIRE(parsed.coord(3) == p.coord(3));
}

TEST_CASE("strict parsing rejects malformed documents")
{
    const char* good = R"({"basis":"monomial","degree":2,"max_var":1,"shape":[1,1],
                           "ring":"real","terms":[]})";
    REQUIRE_NOTHROW(parse_series<double>(json::parse(good)));

    // Unknown and missing fields.
    REQUIRE_THROWS_AS(parse_series<double>(json::parse(
                          R"({"basis":"monomial","degree":2,"max_var":1,"shape":[1,1],
                              "ring":"real","terms":[],"extra":0})")),
                      validation_error);
    // shape is optional and defaults to scalar [1,1]; degree is required.
    REQUIRE(parse_series<double>(json::parse(
                                     R"({"basis":"monomial","degree":2,"max_var":1,
                                         "ring":"real","terms":[]})"))
                .shape()
                .is_scalar());
    REQUIRE_THROWS_AS(parse_series<double>(json::parse(
                          R"({"basis":"monomial","max_var":1,"shape":[1,1],
                              "ring":"real","terms":[]})")),
                      validation_error);

    // Ring tag must match the requested coefficient type.
    REQUIRE_THROWS_AS(parse_series<Cplx>(json::parse(
                          R"({"basis":"monomial","degree":2,"max_var":1,"shape":[1,1],
                              "ring":"real","terms":[]})")),
                      validation_error);

    // Multi-index entries: positions start at 1, exponents nonnegative.
    REQUIRE_THROWS_AS(parse_multiindex(json::parse("[[0,1]]")), validation_error);
    REQUIRE_THROWS_AS(parse_multiindex(json::parse("[[1,-1]]")), validation_error);
    REQUIRE_THROWS_AS(parse_multiindex(json::parse("[1,2]")), validation_error);

    // Realizations reject inconsistent block dimensions at parse time.
    REQUIRE_THROWS_AS(parse_realization<double>(json::parse(
                          R"({"ring":"real","D":[[0]],"C":[[1]],
                              "A":[[[2],[3]]],"B":[[[3]]]})")),
                      validation_error);

    // Term values must fit the declared shape.
    REQUIRE_THROWS_AS(parse_series<double>(json::parse(
                          R"({"basis":"monomial","degree":2,"max_var":1,"shape":[2,2],
                              "ring":"real","terms":[{"alpha":[],"value":[[1,0]]}]})")),
                      validation_error);
}

TEST_CASE("non-finite values are refused by the emitter")
{
    REQUIRE_THROWS_AS(json_num(std::numeric_limits<double>::infinity()), numeric_error);
    REQUIRE_THROWS_AS(json_num(std::numeric_limits<double>::quiet_NaN()), numeric_error);
    REQUIRE(json_num(-0.0) == "0");
    REQUIRE(json_num(0.1) == "0.10000000000000001");
}

TEST_CASE("CLI golden files: exit codes and exact bytes")
{
    const std::string cli = WNS_CLI_PATH;
    const std::string fixtures = WNS_FIXTURES_DIR;
    for (const auto& c : wns_test::cli_cases()) {
        INFO("case " << c.name);
        const auto r = wns_test::run_cli(cli, fixtures, c);
        CHECK(r.exit_code == c.expected_exit);
        const std::string golden = read_file(fixtures + "/golden/" + std::string(c.name) +
                                             ".txt");
        CHECK(r.out == golden);
    }
}

TEST_CASE("CLI output is bit-deterministic across repeated runs")
{
    const std::string cli = WNS_CLI_PATH;
    const std::string fixtures = WNS_FIXTURES_DIR;
    for (const char* name :
         {"mc_inner", "mc_moment", "mc_pointwise", "kernel_gram_arveson", "norms_q2"}) {
        const auto it = std::find_if(wns_test::cli_cases().begin(),
                                     wns_test::cli_cases().end(),
                                     [&](const auto& c) { return std::string(c.name) == name; });
        REQUIRE(it != wns_test::cli_cases().end());
        const auto first = wns_test::run_cli(cli, fixtures, *it);
        const auto second = wns_test::run_cli(cli, fixtures, *it);
        INFO("case " << name);
        CHECK(first.out == second.out);
        CHECK(first.exit_code == second.exit_code);
    }
}

TEST_CASE("CLI accepts the same document inline and from a file")
{
    const std::string cli = WNS_CLI_PATH;
    const std::string fixtures = WNS_FIXTURES_DIR;
    const std::string doc = read_file(fixtures + "/series_geom.json");
    // Trailing newline in the file is irrelevant to parsing; strip for inline.
    std::string inline_doc = doc;
    while (!inline_doc.empty() &&
           (inline_doc.back() == '\n' || inline_doc.back() == '\r'))
        inline_doc.pop_back();
    const wns_test::CliCase by_file{"tmp", {"wick-inv", "@series_geom.json"}, 0};
    const wns_test::CliCase by_inline{"tmp", {"wick-inv", inline_doc}, 0};
    const auto a = wns_test::run_cli(cli, fixtures, by_file);
    const auto b = wns_test::run_cli(cli, fixtures, by_inline);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    REQUIRE(a.out == b.out);
}
