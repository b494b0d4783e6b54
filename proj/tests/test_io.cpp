#include <catch2/catch_amalgamated.hpp>

#include "fdiff/io.hpp"
#include "support.hpp"

using namespace test;

namespace {

std::string parse_error_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("series JSON layout", "[io]")
{
    const RSeries s = poly(2, 5, {{{1, 0}, Q(1, 2)}, {{0, 3}, Q(-4)}});
    const Json j = to_json(s);
    CHECK(j["nvars"] == 2);
    CHECK(j["trunc"]["max_total_degree"] == 5);
    CHECK(j["trunc"]["min_exponent"] == Json::array({0, 0}));
    REQUIRE(j["terms"].size() == 2);
    CHECK(j["terms"][0]["c"].get<std::string>().find('/') != std::string::npos);
    CHECK_FALSE(j.contains("certified_degree"));
    CHECK(to_json(s.with_precision(3))["certified_degree"] == 3);
}

TEST_CASE("JSON round trips", "[io][property]")
{
    Rng rng(100);
    for (int t = 0; t < 10; ++t) {
        const Truncation tr(3, 6, Exponent(std::vector<int>{-1, 0, -2}));
        const RSeries s = random_series(tr, rng, SampleShape{-3, 5, 9, 0.4});
        CHECK(series_from_json(parse_json_text(to_json(s).dump())) == s);
        CHECK(to_json(series_from_json(to_json(s))).dump() == to_json(s).dump());
        const RSeries p = s.with_precision(4);
        CHECK(series_from_json(to_json(p)).certified_degree() == 4);

        const RFormalMap x = random_group_element(2, 5, rng);
        CHECK(map_from_json(to_json(x)) == x);
        const RBiField phi = random_skew_bifield(2, 5, rng, SampleShape{1, 3, 3, 0.5});
        CHECK(bifield_from_json(to_json(phi)) == phi);
        const RTriField r = cybe_residual(phi);
        CHECK(trifield_from_json(to_json(r)) == r);
        const RBiVector a = induced_alpha(phi);
        CHECK(bivector_from_json(to_json(a)) == a);
    }

    const GeneratorTuple g = canonical_generators(IntegerMatrix({{1, 2}, {0, 1}}), 6);
    CHECK(generators_from_json(to_json(g)) == g);
    const IntegerMatrix d({{1, 2}, {3, 4}});
    CHECK(matrix_from_json(to_json(d)) == d);

    const JetBiField pi = jet_pi(RFormalMap::identity(1, 4), w1_canonical(1, 4), w1_canonical(1, 4));
    CHECK(bifield_from_json(to_json(pi)) == pi);

    const PBiField om = omega_bifield(w1_canonical(1, 6), SymbolicJet::make(1, false, 6));
    CHECK(pbifield_from_json(to_json(om)) == om);
    const auto table = bracket_table(om, 3, false);
    const auto back = brackets_from_json(to_json(table));
    REQUIRE(back.size() == table.size());
    for (std::size_t k = 0; k < table.size(); ++k) {
        CHECK(back[k].poly == table[k].poly);
        CHECK(label_from_json(label_json(table[k].a)).index == table[k].a.index);
    }
    const CoeffPoly c = appendix_n1(3, 4, 1);
    CHECK(poly_from_json(to_json(c)) == c);
}

TEST_CASE("parse errors carry a location", "[io]")
{
    Json j = to_json(poly(1, 4, {{{1}, Q(1)}}));
    j["terms"][0]["c"] = "1/0";
    CHECK(parse_error_of([&] { series_from_json(j); }).find("/terms/0/c") != std::string::npos);

    Json k = to_json(poly(1, 4, {{{1}, Q(1)}}));
    k.erase("trunc");
    CHECK(parse_error_of([&] { series_from_json(k); }).find("trunc") != std::string::npos);

    Json m = to_json(IntegerMatrix({{1, 0}, {0, 1}}));
    m["rows"][1][0] = "x";
    CHECK(parse_error_of([&] { matrix_from_json(m); }).find("/rows/1/0") != std::string::npos);
    m["rows"][1][0] = 500;
    CHECK_FALSE(parse_error_of([&] { matrix_from_json(m); }).empty());

    Json b = to_json(w1_canonical(1, 4));
    b["components"][0][0]["nvars"] = 3;
    CHECK_FALSE(parse_error_of([&] { bifield_from_json(b); }).empty());

    CHECK(parse_error_of([] { parse_json_text("{\"a\": ", "doc.json"); }).find("doc.json") != std::string::npos);
    CHECK(parse_error_of([] { read_json_file("/nonexistent/file.json"); }).find("/nonexistent/file.json") != std::string::npos);
}

TEST_CASE("text and LaTeX formatting", "[io]")
{
    const RSeries phi = poly(2, 8, {{{2, 1}, Q(1)}, {{1, 2}, Q(-1)}});
    CHECK(to_latex(phi, variable_names(1, 2, true)) == "u^{2}v - uv^{2}");
    CHECK(to_text(phi, variable_names(1, 2, false)) == "u^2*v - u*v^2");

    const RSeries q = poly(2, 4, {{{2, 1}, Q(1, 2)}, {{0, 0}, Q(-3)}});
    CHECK(to_text(q, variable_names(2, 1, false)) == "-3 + 1/2*u1^2*u2");
    CHECK(to_latex(q, variable_names(2, 1, true)) == "-3 + \\frac{1}{2}(u^{1})^{2}u^{2}");
    CHECK(to_text(poly(1, 4, {}), variable_names(1, 1, false)) == "0");

    CHECK(variable_names(1, 3, false) == std::vector<std::string>{"u", "v", "w"});
    CHECK(variable_names(2, 2, false) == std::vector<std::string>{"u1", "u2", "v1", "v2"});

    CHECK(label_to_latex(Indeterminate{'x', 1, {3}}) == "x_{3}");
    CHECK(label_to_latex(Indeterminate{'x', 2, {1, 0}}) == "x^{2}_{10}");
}
