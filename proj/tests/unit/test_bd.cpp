#include <doctest.h>

#include "gen.hpp"
#include "qlogic/bd.hpp"

using namespace ql;

namespace {

const Four kFour[4] = {Four::f, Four::n, Four::b, Four::t};
const std::vector<Kind> kOps = {Kind::And, Kind::Or, Kind::Neg};

Expr bd(const char* s) { return parse(Lang::BD, s).root; }

}  // namespace

TEST_SUITE("bd") {
  TEST_CASE("four values are pairs of told-true and told-false") {
    for (Four v : kFour) {
      CHECK(four_make(four_true(v), four_false(v)) == v);
      CHECK(four_from_char(four_char(v)) == v);
      CHECK(four_leq(Four::f, v));
      CHECK(four_leq(v, Four::t));
    }
    CHECK_FALSE(four_leq(Four::b, Four::n));
    CHECK_FALSE(four_leq(Four::n, Four::b));
  }

  TEST_CASE("point support agrees with four-valued evaluation") {
    std::mt19937 rng(5);
    for (int i = 0; i < 300; ++i) {
      const Expr e = qltest::random_formula(rng, 5, qltest::pq(), kOps);
      for (Four a : kFour)
        for (Four b : kFour) {
          FourValuation v{{"p", a}, {"q", b}};
          const Support s = support(single_point_counterpart(v), 0, e);
          const Four x = four_eval(v, e);
          CHECK(s.pos == four_true(x));
          CHECK(s.neg == four_false(x));
        }
    }
  }

  TEST_CASE("valid sequents hold on random multi-state models") {
    std::mt19937 rng(9);
    int valid = 0;
    for (int i = 0; i < 200; ++i) {
      const Expr a = qltest::random_formula(rng, 3, qltest::pq(), kOps);
      const Expr b = qltest::random_formula(rng, 3, qltest::pq(), kOps);
      const BDVerdict v = bd_entails(a, b);
      if (!v.holds) {
        CHECK_FALSE(four_leq(four_eval(v.witness, a), four_eval(v.witness, b)));
        continue;
      }
      ++valid;
      for (int k = 0; k < 10; ++k) {
        BDModel m;
        m.states = 3;
        m.vplus = {{"p", rng() & 7}, {"q", rng() & 7}};
        m.vminus = {{"p", rng() & 7}, {"q", rng() & 7}};
        CHECK(sequent_valid_on_model(m, a, b));
      }
    }
    CHECK(valid > 0);
  }

  TEST_CASE("De Morgan and double negation are BD-valid; explosion and excluded middle are not") {
    CHECK(bd_entails(bd("neg (p & q)"), bd("neg p | neg q")).holds);
    CHECK(bd_entails(bd("neg p | neg q"), bd("neg (p & q)")).holds);
    CHECK(bd_entails(bd("neg neg p"), bd("p")).holds);
    CHECK(bd_entails(bd("p & (q | r)"), bd("(p & q) | (p & r)")).holds);
    CHECK_FALSE(bd_entails(bd("p & neg p"), bd("q")).holds);
    CHECK_FALSE(bd_entails(bd("q"), bd("p | neg p")).holds);
  }

  TEST_CASE("negation swaps truth sets") {
    BDModel m{3, {{"p", 0b011}}, {{"p", 0b110}}};
    validate(m);
    auto [pos, neg] = truth_sets(m, bd("neg p"));
    CHECK(pos == 0b110);
    CHECK(neg == 0b011);
    auto [cp, cn] = truth_sets(m, bd("p & neg p"));
    CHECK(cp == 0b010);
    CHECK(cn == 0b111);
  }
}
