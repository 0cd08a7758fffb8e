#include <doctest.h>

#include "gen.hpp"
#include "qlogic/algebra.hpp"

using namespace ql;

TEST_SUITE("syntax") {
  TEST_CASE("printed formulas parse back to the same tree") {
    const std::vector<std::pair<Lang, std::string>> corpus = {
        {Lang::CPL, "~(p <-> q) => p"},
        {Lang::BD, "neg (p & q) | p"},
        {Lang::BIG, "p -> (q -< r)"},
        {Lang::BIG, "delta (p -> q) | snot p"},
        {Lang::BIG, "(p & q) | r -> p"},
        {Lang::G2ORD, "neg (p -> q) -< r"},
        {Lang::G2NEL, "p ~> (q o- neg r)"},
        {Lang::QG, "B(p & ~q) -> B(p)"},
        {Lang::MCB, "delta1 (C(p) -> C(neg q))"},
        {Lang::NMCB, "deltaN (C(p) ==> C(q)) | deltaN (C(q) ==> C(p))"},
        {Lang::QP, "(p <= q) => (r << s)"},
        {Lang::QP, "(p ~~ q) & ~(p <= Top)"},
    };
    for (const auto& [l, text] : corpus) {
      CAPTURE(text);
      const Expr e = parse(l, text).root;
      CHECK(equal(parse(l, print(e)).root, e));
    }
  }

  TEST_CASE("round trip holds for random formulas") {
    std::mt19937 rng(7);
    const std::vector<std::pair<Lang, std::vector<Kind>>> langs = {
        {Lang::BIG, {Kind::And, Kind::Or, Kind::Impl, Kind::Coimpl, Kind::SNot, Kind::Delta, Kind::Iff}},
        {Lang::G2ORD, {Kind::And, Kind::Or, Kind::Impl, Kind::Coimpl, Kind::Neg, Kind::SNot, Kind::Delta1}},
        {Lang::G2NEL, {Kind::And, Kind::Or, Kind::NImpl, Kind::NCoimpl, Kind::Neg, Kind::DeltaN, Kind::SImpl}},
        {Lang::CPL, {Kind::And, Kind::Or, Kind::Mat, Kind::Not, Kind::Iff}},
    };
    for (const auto& [l, ops] : langs)
      for (int i = 0; i < 300; ++i) {
        const Expr e = qltest::random_formula(rng, 5, {var("p"), var("q"), top(), bot()}, ops);
        CAPTURE(print(e));
        CHECK(equal(parse(l, print(e)).root, e));
      }
  }

  TEST_CASE("syntax and language errors are reported") {
    CHECK_THROWS_AS(parse(Lang::BIG, "p &"), SyntaxError);
    CHECK_THROWS_AS(parse(Lang::BIG, "(p | q"), SyntaxError);
    CHECK_THROWS_AS(parse(Lang::BIG, "neg p"), LanguageError);
    CHECK_THROWS_AS(parse(Lang::QG, "p -> B(q)"), LanguageError);
    CHECK_THROWS(parse(Lang::QG, "B(B(p))"));
    try {
      parse(Lang::BIG, "p & & q");
      FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
      CHECK(e.position > 0);
    }
  }

  TEST_CASE("desugaring removes sugar and preserves biG values") {
    std::mt19937 rng(11);
    const std::vector<Kind> ops = {Kind::And, Kind::Or, Kind::Impl, Kind::Coimpl, Kind::SNot, Kind::Delta, Kind::Iff};
    for (int i = 0; i < 200; ++i) {
      const Expr e = qltest::random_formula(rng, 4, {var("p"), var("q"), top(), bot()}, ops);
      const Formula d = desugar({Lang::BIG, e});
      std::function<bool(const Expr&)> clean = [&](const Expr& x) {
        if (is_sugar(x->kind)) return false;
        for (const auto& k : x->kids)
          if (!clean(k)) return false;
        return true;
      };
      CAPTURE(print(e));
      CHECK(clean(d.root));
      const std::set<std::string> extra = [&] {
        std::set<std::string> s = vars(d.root);
        for (const auto& v : vars(e)) s.erase(v);
        return s;
      }();
      for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
          for (int z = 0; z <= 2; ++z) {
            Valuation v{{"p", UnitRational(a, 2)}, {"q", UnitRational(b, 2)}};
            Valuation w = v;
            for (const auto& x : extra) w[x] = UnitRational(z, 2);
            CHECK(eval_big(d.root, w) == eval_big(e, v));
          }
    }
  }

  TEST_CASE("normalize folds defining expansions back into sugar") {
    const Expr e = parse(Lang::BIG, "(p -> q) & (q -> p)").root;
    CHECK(equal(normalize(e, Lang::BIG), parse(Lang::BIG, "p <-> q").root));
  }

  TEST_CASE("structural queries") {
    const Expr e = parse(Lang::QG, "B(p & q) -> (B(r) | B(p & q))").root;
    CHECK(depth(e) == 4);  // inner connectives count
    CHECK(vars(e) == std::set<std::string>{"p", "q", "r"});
    CHECK(atoms(e).size() == 2);
    const std::string z = fresh_var({e});
    CHECK(vars(e).count(z) == 0);
    CHECK(is_sif(parse(Lang::QP, "(p <= q) & ~(q << r)")));
    CHECK_FALSE(is_sif(parse(Lang::QP, "p & (p <= q)")));
    const std::set<std::string> l = lits(parse(Lang::BD, "neg p & (q | neg neg r)"));
    CHECK(l.count("neg p") == 1);
    CHECK(l.count("q") == 1);
  }

  TEST_CASE("patterns instantiate metavariables by name") {
    const Expr pat = parse_pattern(Lang::BIG, "$a -> ($a | $b)");
    const Expr inst = instantiate(pat, {{"a", var("p")}, {"b", parse(Lang::BIG, "q & r").root}});
    CHECK(equal(inst, parse(Lang::BIG, "p -> (p | (q & r))").root));
  }
}
