#include <doctest.h>

#include <random>

#include "cocycle/experiment.hpp"

using namespace cocycle;

namespace {

Rational q(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

} // namespace

TEST_CASE("group value records") {
    CHECK(to_json(GroupValue::rational(q(1, 3))) == Json::parse(R"({"t":"rat","n":1,"d":3})"));
    CHECK(to_json(GroupValue::dyadic(Integer(3), 3)) == Json::parse(R"({"t":"dy","n":3,"k":3})"));
    CHECK(to_json(GroupValue::integer(Integer(5))) == Json::parse(R"({"t":"int","n":5})"));
    CHECK(to_json(GroupValue::mod(3, 4)) == Json::parse(R"({"t":"mod","r":3,"m":4})"));
    CHECK(to_json(GroupValue::vector({q(1, 2), q(0)})) == Json::parse(R"({"t":"vec","v":["1/2","0"]})"));
    CHECK(group_value_from_json(Json::parse(R"({"t":"dy","n":3,"k":3})")) == GroupValue::dyadic(q(3, 8)));
    CHECK(group_value_from_json(Json::parse(R"({"t":"rat","n":2,"d":4})")) == GroupValue::rational(q(1, 2)));

    Integer big("123456789012345678901234567890", 10);
    Json jb = to_json(GroupValue::integer(big));
    CHECK(jb["n"].is_string());
    CHECK(group_value_from_json(jb) == GroupValue::integer(big));

    CHECK_THROWS_AS(group_value_from_json(Json::parse(R"({"t":"zz"})")), ParseError);
    CHECK_THROWS_AS(group_value_from_json(Json::parse(R"({"t":"rat","n":1,"d":0})")), ParseError);
    CHECK_THROWS_AS(group_value_from_json(Json::parse(R"({"n":1})")), ParseError);
}

TEST_CASE("round trips") {
    Rng rng(3);
    for (GroupTag tag : {GroupTag::integer(), GroupTag::rational(), GroupTag::dyadic(), GroupTag::mod(5),
                         GroupTag::vector(3), GroupTag::approx_real()}) {
        CylinderFunction f = random_function(rng, BaseVector::parse("2,3,2"), 2, tag);
        CHECK(cylinder_function_from_json(Json::parse(to_json(f).dump())) == f);
    }
    GeneratorFamily fam = random_family(rng, 3, 4, GroupTag::rational());
    Json jf = to_json(fam);
    CHECK(jf["N"] == 3);
    CHECK(jf["tables"][0].size() == 8);
    CHECK(family_from_json(jf) == fam);

    for (const MeasureSpec& mu :
         {MeasureSpec::uniform(), MeasureSpec::bernoulli({{q(1, 2), q(1, 2)}}),
          MeasureSpec::markov({q(1, 3), q(2, 3)}, {{q(1, 2), q(1, 2)}, {q(1, 4), q(3, 4)}}),
          MeasureSpec::dirac(Prefix({0, 1, 1})),
          MeasureSpec::mixture({q(1, 2), q(1, 2)}, {MeasureSpec::uniform(), MeasureSpec::dirac(Prefix({1}))})}) {
        PrefixSpace s(BaseVector::binary(3), 3);
        MeasureSpec back = measure_from_json(Json::parse(to_json(mu).dump()));
        CHECK(back.masses(s) == mu.masses(s));
    }
    CHECK(measures_from_json(Json::parse(R"(["uniform", {"type":"dirac","point":[1]}])")).size() == 2);

    OdometerModel t(BaseVector::binary(3));
    FullGroupElement p = periodic_approx(MarkerSequence(t), 2);
    CHECK(full_group_element_from_json(to_json(p)) == p);
    Json towers = to_json(TowerDecomposition(t, MarkerSequence(t).marker(2)));
    CHECK(towers["towers"][0]["height"] == 4);

    CylinderFunction h(BaseVector::binary(2), 2, GroupTag::integer(),
                       {GroupValue::integer(1), GroupValue::integer(-1), GroupValue::integer(1), GroupValue::integer(-1)});
    auto cert = coboundary_solve(ZCocycle(OdometerModel(BaseVector::binary(2)), h)).certificate;
    REQUIRE(cert.has_value());
    Json jc = to_json(*cert);
    CHECK(jc["M"] == "1");
    CoboundaryCertificate back = certificate_from_json(jc);
    CHECK(back.transfer == cert->transfer);
    CHECK(back.spread == cert->spread);
}

TEST_CASE("reports") {
    Report empty;
    empty.columns = {"n", "tau3"};
    CHECK(render_csv(empty) == "n,tau3\n");

    Report r;
    r.id = "density";
    r.seed = 9;
    r.columns = {"n", "tau3"};
    r.add_row({Scalar(1), Scalar(q(1, 8))});
    r.add_row({Scalar(2), Scalar(0.5)});
    r.check("bound", true, "ok");
    r.check("other", false);
    CHECK(render_csv(r) == "n,tau3\n1,1/8\n2," + Scalar(0.5).to_string() + "\n");
    CHECK_FALSE(r.passed());
    Json j = report_to_json(r);
    CHECK(j["rows"][0][1]["q"] == "1/8");
    CHECK(j["rows"][0][1]["d"] == 0.125);
    CHECK(j["rows"][1][1]["q"].is_null());
    Report back = report_from_json(Json::parse(j.dump()));
    CHECK(back == r);
    CHECK(report_to_json(back).dump() == j.dump());
    CHECK_THROWS_AS(r.add_row({Scalar(1)}), DomainError);
    CHECK_THROWS_AS(parse_format("xml"), ParseError);
}

TEST_CASE("config files and value parsing") {
    ExperimentConfig c = config_from_json(Json::parse(
        R"({"depth":4,"group":"mod:3","seed":77,"eps0":"1/8","measures":["uniform"],"generator":"1,2"})"));
    CHECK(c.depth == 4);
    CHECK(c.bases == BaseVector::binary(4));
    CHECK(c.group == GroupTag::mod(3));
    CHECK(c.seed == 77);
    CHECK(c.eps0 == q(1, 8));
    CylinderFunction g = parse_generator(*c.generator, c.bases, c.depth, c.group);
    CHECK(g.depth() == 1);
    CHECK(g.at(1) == GroupValue::mod(2, 3));

    ExperimentConfig d = config_from_json(Json::parse(R"({"bases":"3,2","depth":4})"));
    CHECK(d.bases == BaseVector({3, 2, 2, 2}));
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"depth":0})")), DomainError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"eps0":"-1"})")), DomainError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"seed":"x"})")), ParseError);

    CHECK(parse_group_value("1/2;3", GroupTag::vector(2)) == GroupValue::vector({q(1, 2), q(3)}));
    CHECK(parse_group_value("-1", GroupTag::mod(4)) == GroupValue::mod(3, 4));
    CHECK_THROWS_AS(parse_group_value("1/3", GroupTag::dyadic()), ParseError);
    CHECK_THROWS_AS(parse_group_value("1/3", GroupTag::integer()), ParseError);
    CHECK_THROWS_AS(parse_generator("1,2,3", BaseVector::binary(3), 3, GroupTag::integer()), ParseError);
}

TEST_CASE("suites are deterministic") {
    ExperimentConfig c;
    c.samples = 20;
    for (const auto& name : suite_names()) {
        Report a = run_suite(c, name), b = run_suite(c, name);
        CHECK(render_csv(a) == render_csv(b));
        CHECK(report_to_json(a).dump() == report_to_json(b).dump());
        CHECK(a.passed());
    }
    CHECK_THROWS_AS(run_suite(c, "nope"), UsageError);
}

TEST_CASE("suite examples") {
    ExperimentConfig c;
    c.depth = 6;
    c.bases = BaseVector::binary(6);
    c.measures = {MeasureSpec::bernoulli({{q(1, 2), q(1, 2)}})};
    Report density = run_suite(c, "density");
    CHECK(density.columns == std::vector<std::string>{"n", "tau3"});
    REQUIRE(density.rows.size() == 5);
    for (const auto& row : density.rows)
        CHECK(row[1] <= Scalar(Rational(1, 1u << row[0].exact().get_num().get_ui())));

    c.family = "zero";
    Report odo = run_suite(c, "odometer");
    CHECK(odo.passed());
    CHECK(odo.rows.size() == 1);

    ExperimentConfig g;
    g.depth = 3;
    g.bases = BaseVector::binary(3);
    g.group = GroupTag::integer();
    g.generator = "1";
    Report gh = run_suite(g, "gh");
    CHECK(gh.passed());
    bool saw_slope = false, saw_decision = false;
    for (const auto& chk : gh.checks) {
        saw_slope |= chk.name == "growth slope 1";
        saw_decision |= chk.name == "decision not coboundary";
    }
    CHECK(saw_slope);
    CHECK(saw_decision);
    // sum over the window 2j+1 is 2j+1
    for (const auto& row : gh.rows)
        CHECK(row[1] == Scalar(2) * row[0] + Scalar(1));
}
