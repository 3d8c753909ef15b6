#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "localinv/json_io.hpp"

using namespace localinv;

namespace {

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST_CASE("monomial round trip") {
    const DimensionVector d({2, 3});
    for (const auto& t : enumerate_generators(MultiDegree{{2, 1}}, d)) {
        const auto j = to_json(t);
        CHECK(monomial_from_json(j) == t);
        CHECK(monomial_from_json(Json::parse(j.dump())) == t);
    }
}

TEST_CASE("monomial accepts one-line arrays") {
    const auto a = monomial_from_json(Json::parse(R"j({"M":[1,1,2],"sigma":["(1 2)(3)","(2 3)"]})j"));
    const auto b = monomial_from_json(Json::parse(R"j({"M":[1,1,2],"sigma":[[2,1,3],[1,3,2]]})j"));
    CHECK(a == b);
    CHECK(a.M.m == 2);
    const auto c = monomial_from_json(Json::parse(R"j({"M":[1],"sigma":["id"],"m":3})j"));
    CHECK(c.M.m == 3);
}

TEST_CASE("monomial errors name the field") {
    auto msg = error_of([] { monomial_from_json(Json::parse(R"j({"sigma":["id"]})j")); });
    CHECK(starts_with(msg, "monomial: missing field \"M\""));
    msg = error_of([] { monomial_from_json(Json::parse(R"j({"M":[1,2],"sigma":["(1 3)"]})j")); });
    CHECK(starts_with(msg, "monomial.sigma[0]"));
    msg = error_of([] { monomial_from_json(Json::parse(R"j({"M":[1,"x"],"sigma":["id"]})j")); });
    CHECK(starts_with(msg, "monomial.M[1]"));
    msg = error_of([] { monomial_from_json(Json::parse(R"j({"M":[1],"sigma":[]})j")); });
    CHECK(starts_with(msg, "monomial.sigma"));
    CHECK_THROWS_AS(monomial_from_json(Json::parse("[1,2]")), ParseError);
}

TEST_CASE("endomorphism round trip with rationals") {
    auto e = random_endotuple(DimensionVector({2, 2}), 1, 3).members[0];
    e.entries(0, 1) = Scalar(-7, 3);
    const auto j = to_json(e);
    CHECK(j["entries"][0][1] == "-7/3");
    const auto back = endomorphism_from_json(j);
    CHECK(back.entries == e.entries);
    CHECK(back.dims == e.dims);
}

TEST_CASE("simple endomorphism round trip") {
    const auto s = random_simple_endos(DimensionVector({2, 3}), 1, 4)[0];
    const auto back = simple_endo_from_json(to_json(s));
    CHECK(back.factors == s.factors);
}

TEST_CASE("endomorphism input files") {
    const auto simple = random_simple_endos(DimensionVector({2, 2}), 2, 1);
    Json list = Json::array({to_json(simple[0]), to_json(simple[1])});
    auto in = endo_input_from_json(list);
    CHECK(in.all_simple);
    CHECK(in.tuple.size() == 2);
    CHECK(in.tuple.members[1].entries == kron_expand(simple[1]).entries);

    const auto bare = endo_input_from_json(to_json(simple[0]));
    CHECK(bare.tuple.size() == 1);

    Json mixed = Json::array({to_json(simple[0]), to_json(kron_expand(simple[1]))});
    CHECK(starts_with(error_of([&] { endo_input_from_json(mixed); }), "endomorphisms[1]"));

    Json bad = Json::parse(R"j({"dims":[2],"entries":[["1","0"],["0"]]})j");
    CHECK(starts_with(error_of([&] { endomorphism_from_json(bad); }), "endomorphism.entries"));
    Json word = Json::parse(R"j({"dims":[1],"entries":[["one"]]})j");
    CHECK_THROWS_AS(endomorphism_from_json(word), ParseError);
    Json zero_den = Json::parse(R"j({"dims":[1],"entries":[["1/0"]]})j");
    CHECK_THROWS_AS(endomorphism_from_json(zero_den), ParseError);
}

TEST_CASE("read_json_arg") {
    CHECK(read_json_arg(R"j({"a":1})j")["a"] == 1);
    CHECK(read_json_arg("[1,2]").size() == 2);
    CHECK(starts_with(error_of([] { read_json_arg("{oops"); }), "inline JSON"));
    CHECK(starts_with(error_of([] { read_json_arg("/nonexistent/file.json"); }), "/nonexistent/file.json"));

    const std::string path = "json_io_test_input.json";
    {
        std::ofstream out(path);
        out << R"j({"M":[1],"sigma":["id","id"]})j";
    }
    CHECK(monomial_from_json(read_json_arg(path)).factors() == 2);
    std::remove(path.c_str());
}

TEST_CASE("report serialization") {
    const auto b = to_json(degree_bounds(2, DimensionVector({2, 2})));
    CHECK(b["segre"] == 32);
    CHECK(b["final"].is_null());
    CHECK(b["girth_small_dim"] == Json::array({3, 3}));

    const auto r = to_json(reconstruct_rational(hs_single(1, 2, 30)));
    CHECK(r["status"] == "ok");
    CHECK(r["numerator_is_one"] == true);
    CHECK(r["rational"]["num"] == Json::array({"1"}));

    const auto inc = to_json(reconstruct_rational(PowerSeries{{1, 5, 2, 9}}));
    CHECK(inc["status"] == "inconclusive");
    CHECK(inc.contains("reason"));

    const auto s = to_json(PowerSeries{{1, Scalar(1, 2)}});
    CHECK(s["N"] == 1);
    CHECK(s["coeffs"][1] == "1/2");

    const auto t = to_json(enumerate_generators(MultiDegree{{2}}, DimensionVector({2, 2}))[0]);
    const auto plan = to_json(plan_contraction(monomial_from_json(t), DimensionVector({2, 2})));
    CHECK(plan.contains("steps"));
    CHECK(plan.contains("total_cost"));
}
