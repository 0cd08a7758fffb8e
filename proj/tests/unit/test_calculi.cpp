#include <doctest.h>

#include <fstream>

#include "gen.hpp"
#include "qlogic/decide.hpp"
#include "qlogic/io.hpp"
#include "qlogic/qp.hpp"

using namespace ql;

namespace {

Derivation load(const std::string& name) {
  std::ifstream in(std::string(QL_TEST_DATA) + "/" + name + ".json");
  return io::derivation_from_json(io::json::parse(in));
}

std::set<std::string> metas(const Expr& e) {
  std::set<std::string> out;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    if (x->kind == Kind::Meta) out.insert(x->name);
    for (const auto& k : x->kids) go(k);
  };
  go(e);
  return out;
}

Binding random_binding(std::mt19937& rng, const Expr& pattern, Lang l) {
  std::vector<Kind> ops;
  if (l == Lang::BIG) ops = {Kind::And, Kind::Or, Kind::Impl, Kind::Coimpl};
  else if (l == Lang::G2ORD) ops = {Kind::And, Kind::Or, Kind::Impl, Kind::Coimpl, Kind::Neg};
  else ops = {Kind::And, Kind::Or, Kind::NImpl, Kind::NCoimpl, Kind::Neg};
  Binding b;
  for (const auto& m : metas(pattern)) b.push_back({m, qltest::random_formula(rng, 2, qltest::pq(), ops)});
  return b;
}

}  // namespace

TEST_SUITE("calculi") {
  TEST_CASE("classical validity") {
    CHECK(cpl_valid(parse(Lang::CPL, "p | ~p").root));
    CHECK(cpl_valid(parse(Lang::CPL, "(p => q) <-> (~q => ~p)").root));
    CHECK_FALSE(cpl_valid(parse(Lang::CPL, "p => q").root));
    Expr big = var("x0");
    for (int i = 1; i <= 20; ++i) big = mk(Kind::Or, big, var("x" + std::to_string(i)));
    CHECK_THROWS(cpl_valid(big));
    CHECK(cpl_valid_abstract(parse(Lang::QP, "(p <= q) | ~(p <= q)").root));
    CHECK(cpl_valid_abstract(parse(Lang::QP, "(p << q) => (p <= q)").root));
    CHECK_FALSE(cpl_valid_abstract(parse(Lang::QP, "p <= q").root));
  }

  TEST_CASE("every unconditional propositional schema is sound") {
    std::mt19937 rng(51);
    const std::vector<std::pair<CalculusId, Lang>> cs = {
        {CalculusId::HBIG, Lang::BIG}, {CalculusId::HG2ORD, Lang::G2ORD}, {CalculusId::HG2NEL, Lang::G2NEL}};
    for (const auto& [c, l] : cs)
      for (const auto& name : schema_names(c)) {
        const auto text = schema_pattern(c, name);
        if (!text) continue;
        const Expr pat = parse_pattern(l, *text);
        for (int i = 0; i < 5; ++i) {
          const Expr f = instantiate(pat, random_binding(rng, pat, l));
          CAPTURE(calculus_name(c));
          CAPTURE(print(f));
          CHECK((l == Lang::BIG ? big_valid(f) : g2_entails(l, {}, f)).holds);
          CHECK(match_axiom(c, f).has_value());
        }
      }
  }

  TEST_CASE("side conditions gate the QG schemas") {
    const auto m = match_axiom(CalculusId::HQG, parse(Lang::QG, "B(p & q) -> B(p)").root);
    REQUIRE(m);
    CHECK(m->schema == "reg");
    CHECK_FALSE(match_axiom(CalculusId::HQG, parse(Lang::QG, "B(p) -> B(p & q)").root));
    CHECK(match_axiom(CalculusId::HQG, parse(Lang::QG, "snot delta (B(Top) -> B(Bot))").root));
    CHECK(match_axiom(CalculusId::HQPG_TOP, parse(Lang::QG, "B(p | ~p)").root));
    CHECK_FALSE(match_axiom(CalculusId::HQG, parse(Lang::QG, "B(p | ~p)").root));
    CHECK_FALSE(match_axiom(CalculusId::HBIG, parse(Lang::BIG, "p -> q").root));
  }

  TEST_CASE("KPS and A4 are recognized with their list length") {
    std::mt19937 rng(52);
    for (int m = 1; m <= 3; ++m) {
      std::vector<Expr> a, b;
      for (int i = 0; i < m; ++i) {
        a.push_back(qltest::random_formula(rng, 1, qltest::pqr(), {Kind::And, Kind::Not}));
        b.push_back(qltest::random_formula(rng, 1, qltest::pqr(), {Kind::Or, Kind::Not}));
      }
      CAPTURE(print(kps_instance(a, b)));
      const auto k = match_axiom(CalculusId::HQPG, kps_instance(a, b));
      REQUIRE(k);
      CHECK(k->schema == "KPS");
      CHECK(k->m == m);
      const auto q = match_axiom(CalculusId::HQP, a4_instance(a, b));
      REQUIRE(q);
      CHECK(q->schema == "A4");
      CHECK(q->m == m);
    }
  }

  TEST_CASE("associativity-commutativity normal form") {
    CHECK(equal(ac_normalize(parse(Lang::BIG, "(q & p) & r").root), ac_normalize(parse(Lang::BIG, "p & (r & q)").root)));
    CHECK_FALSE(equal(ac_normalize(parse(Lang::BIG, "p -> q").root), ac_normalize(parse(Lang::BIG, "q -> p").root)));
  }

  TEST_CASE("modus ponens derivation with premises") {
    Derivation d;
    d.calculus = CalculusId::HBIG;
    d.premises = {"p", "p -> q"};
    d.goal = "q";
    d.steps = {{"p", {Justification::Kind::Premise}},
               {"p -> q", {Justification::Kind::Premise}},
               {"q", {Justification::Kind::MP, "", 0, {1, 2}}}};
    const CheckReport r = check_derivation(d);
    CHECK(r.accepted);
    CHECK(r.steps[2].tainted);
    d.goal = "p & q";
    const CheckReport g = check_derivation(d);
    CHECK_FALSE(g.accepted);
    CHECK(g.first_failure == 0);
  }

  TEST_CASE("necessitation is refused on premise-dependent steps") {
    Derivation d;
    d.calculus = CalculusId::HBIG;
    d.premises = {"p"};
    d.steps = {{"p", {Justification::Kind::Premise}}, {"delta p", {Justification::Kind::Nec, "", 0, {1}}}};
    const CheckReport r = check_derivation(d);
    CHECK_FALSE(r.accepted);
    CHECK(r.first_failure == 2);
    d.premises.clear();
    d.steps = {{"p -> p | q", {Justification::Kind::Axiom, "A2a"}}, {"delta (p -> p | q)", {Justification::Kind::Nec, "", 0, {1}}}};
    CHECK(check_derivation(d).accepted);
  }

  TEST_CASE("axiom steps report the matched schema and reject wrong names") {
    Derivation d;
    d.calculus = CalculusId::HBIG;
    d.steps = {{"(p & q) -> p", {Justification::Kind::Axiom, "A4a"}}};
    const CheckReport r = check_derivation(d);
    CHECK(r.accepted);
    CHECK(r.steps[0].detail == "A4a");
    d.steps[0].just.name = "A3";
    CHECK_FALSE(check_derivation(d).accepted);
  }

  TEST_CASE("RFDE sequent derivation") {
    Derivation d;
    d.calculus = CalculusId::RFDE;
    d.steps = {{"p & q |- p", {Justification::Kind::Axiom, "and_e1"}},
               {"p |- p | r", {Justification::Kind::Axiom, "or_i1"}},
               {"p & q |- p | r", {Justification::Kind::Rule, "trans", 0, {1, 2}}}};
    CHECK(check_derivation(d).accepted);
    d.steps[2].formula = "p & q |- r";
    CHECK_FALSE(check_derivation(d).accepted);
  }

  TEST_CASE("stored derivations are accepted and a broken citation is rejected") {
    for (const char* n : {"a0_delta", "additivity", "reg"}) {
      CAPTURE(n);
      CHECK(check_derivation(load(n)).accepted);
    }
    Derivation d = load("a0_delta");
    d.steps[2].just.using_.pop_back();
    const CheckReport r = check_derivation(d);
    CHECK_FALSE(r.accepted);
    CHECK(r.first_failure == 3);
  }
}
