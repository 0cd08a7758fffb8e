#include <doctest.h>

#include <fstream>

#include "gen.hpp"
#include "qlogic/io.hpp"

using namespace ql;
using ql::io::json;

TEST_SUITE("io") {
  TEST_CASE("expressions survive the JSON round trip") {
    std::mt19937 rng(61);
    for (int i = 0; i < 200; ++i) {
      const Expr e = qltest::random_formula(rng, 4, {var("p"), var("q"), top(), bot()},
                                            {Kind::And, Kind::Or, Kind::Impl, Kind::Coimpl, Kind::SNot, Kind::Delta});
      CHECK(equal(io::expr_from_json(json::parse(io::to_json(e).dump())), e));
    }
  }

  TEST_CASE("valuations and models round trip") {
    Valuation v{{"p", UnitRational(1, 3)}, {"B(p & q)", UnitRational::one()}};
    CHECK(io::valuation_from_json(io::to_json(v)) == v);
    TwistValuation t{{"p", {UnitRational(1, 2), UnitRational::zero()}}};
    CHECK(io::twist_valuation_from_json(io::to_json(t)) == t);
    FourValuation f{{"p", Four::b}, {"q", Four::n}};
    CHECK(io::four_valuation_from_json(io::to_json(f)) == f);

    const Frame fr = make_frame(2, {UnitRational::zero(), UnitRational(1, 4), UnitRational(1, 2), UnitRational::one()});
    const Frame fr2 = io::frame_from_json(io::to_json(fr));
    CHECK(fr2.states == 2);
    CHECK(fr2.mu == fr.mu);

    G2KripkeModel k{3, {2, 0, 1}, {{"p", 0b101}}, {{"p", 0b001}}};
    const G2KripkeModel k2 = io::kripke_model_from_json(io::to_json(k));
    CHECK(k2.rank == k.rank);
    CHECK(k2.vplus == k.vplus);
    CHECK(k2.vminus == k.vminus);

    BeliefModel b{fr, {{"p", 0b01}}, {{"p", 0b10}}};
    const BeliefModel b2 = io::belief_model_from_json(io::to_json(b));
    CHECK(b2.vplus == b.vplus);
    CHECK(b2.vminus == b.vminus);

    GardenforsModel g{2, {{Rational(1, 2), Rational(1, 2)}, {Rational(0), Rational(1)}}, {{"p", 0b10}}};
    const GardenforsModel g2 = io::gardenfors_model_from_json(io::to_json(g));
    CHECK(g2.weights == g.weights);
    CHECK(g2.v == g.v);

    OrderInstance o{2, {0, 1, 1, 2}};
    CHECK(io::order_from_json(io::to_json(o)).rank == o.rank);
  }

  TEST_CASE("verdicts keep their witnesses") {
    Verdict v{false, Valuation{{"p", UnitRational::one()}}, std::nullopt};
    const Verdict w = io::verdict_from_json(io::to_json(v));
    CHECK_FALSE(w.holds);
    REQUIRE(w.witness);
    CHECK(*w.witness == *v.witness);
    Verdict t{false, std::nullopt, TwistValuation{{"p", TwistValue::top()}}};
    const Verdict u = io::verdict_from_json(io::to_json(t));
    REQUIRE(u.twist);
    CHECK(*u.twist == *t.twist);
  }

  TEST_CASE("derivations round trip through JSON") {
    std::ifstream in(std::string(QL_TEST_DATA) + "/reg.json");
    const Derivation d = io::derivation_from_json(json::parse(in));
    const Derivation e = io::derivation_from_json(io::to_json(d));
    REQUIRE(e.steps.size() == d.steps.size());
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
      CHECK(e.steps[i].formula == d.steps[i].formula);
      CHECK(e.steps[i].just.kind == d.steps[i].just.kind);
      CHECK(e.steps[i].just.refs == d.steps[i].just.refs);
      CHECK(e.steps[i].just.using_ == d.steps[i].just.using_);
    }
    CHECK(e.goal == d.goal);
    CHECK(e.calculus == d.calculus);
  }

  TEST_CASE("malformed input is rejected") {
    CHECK_THROWS(io::frame_from_json(json::parse(R"({"states": 2, "mu": {"[]": "0"}})")));
    CHECK_THROWS(io::valuation_from_json(json::parse(R"({"p": "3/2"})")));
    CHECK_THROWS(io::expr_from_json(json::parse(R"({"kind": "nosuch"})")));
  }
}
