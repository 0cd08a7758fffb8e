#include <doctest.h>

#include "gen.hpp"
#include "qlogic/decide.hpp"
#include "qlogic/kripke.hpp"

using namespace ql;

namespace {

std::vector<Kind> ops(Lang l) {
  if (l == Lang::G2NEL) return {Kind::And, Kind::Or, Kind::NImpl, Kind::NCoimpl, Kind::Neg};
  return {Kind::And, Kind::Or, Kind::Impl, Kind::Coimpl, Kind::Neg};
}

// Random chain on n states with random up-set supports for p and q.
G2KripkeModel random_chain(std::mt19937& rng, int n) {
  G2KripkeModel m;
  m.states = n;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  m.rank = perm;
  auto up = [&] {
    const int cut = static_cast<int>(rng() % (n + 1));
    Mask x = 0;
    for (int s = 0; s < n; ++s)
      if (m.rank[s] >= cut) x |= Mask(1) << s;
    return x;
  };
  m.vplus = {{"p", up()}, {"q", up()}};
  m.vminus = {{"p", up()}, {"q", up()}};
  return m;
}

}  // namespace

TEST_SUITE("kripke") {
  TEST_CASE("validation rejects non-persistent valuations") {
    G2KripkeModel m{2, {0, 1}, {{"p", 0b01}}, {}};
    CHECK_THROWS(validate(m));
    m.vplus["p"] = 0b10;
    CHECK_NOTHROW(validate(m));
    CHECK(up_set(m, 0) == 0b11);
    CHECK(down_set(m, 0) == 0b01);
  }

  TEST_CASE("supports are persistent under the corrected clause") {
    std::mt19937 rng(31);
    for (Lang l : {Lang::G2ORD, Lang::G2NEL})
      for (int i = 0; i < 300; ++i) {
        const G2KripkeModel m = random_chain(rng, 1 + static_cast<int>(rng() % 4));
        const Expr e = qltest::random_formula(rng, 4, {var("p"), var("q"), top(), bot()}, ops(l));
        auto [pos, neg] = ksets(m, e, l);
        CAPTURE(print(e));
        CHECK(is_up_set(m, pos));
        CHECK(is_up_set(m, neg));
      }
  }

  TEST_CASE("the printed negative clause of co-implication is not persistent") {
    // p -< q with p never false and q false only at the top state.
    G2KripkeModel m{2, {0, 1}, {}, {{"q", 0b10}}};
    const Expr e = parse(Lang::G2ORD, "p -< q").root;
    CHECK(is_up_set(m, ksets(m, e, Lang::G2ORD).second));
    CHECK_FALSE(is_up_set(m, ksets(m, e, Lang::G2ORD, CoimplReading::AsPrinted).second));
  }

  TEST_CASE("Kripke validity on small chains matches algebraic validity") {
    std::mt19937 rng(32);
    for (Lang l : {Lang::G2ORD, Lang::G2NEL})
      for (int i = 0; i < 150; ++i) {
        const Expr e = qltest::random_formula(rng, 4, qltest::pq(), ops(l));
        CAPTURE(print(e));
        const KVerdict k = kentails({}, e, l, 4);
        CHECK(k.holds == g2_entails(l, {}, e).holds);
        if (!k.holds) {
          REQUIRE(k.model);
          CHECK_NOTHROW(validate(*k.model));
        }
      }
  }

  TEST_CASE("valuation and chain counterparts") {
    TwistValuation e{{"p", {UnitRational(1, 3), UnitRational::one()}}, {"q", {UnitRational(2, 3), UnitRational::zero()}}};
    const G2KripkeModel m = valuation_to_model(e);
    CHECK_NOTHROW(validate(m));
    const TwistValuation back = model_to_valuation(m).solution;
    // Order facts among the four coordinates and the constants survive the round trip.
    std::vector<UnitRational> a = {e.at("p").t, e.at("p").f, e.at("q").t, e.at("q").f};
    std::vector<UnitRational> b = {back.at("p").t, back.at("p").f, back.at("q").t, back.at("q").f};
    for (int i = 0; i < 4; ++i) {
      CHECK(a[i].is_one() == b[i].is_one());
      CHECK(a[i].is_zero() == b[i].is_zero());
      for (int j = 0; j < 4; ++j) CHECK((a[i] <= a[j]) == (b[i] <= b[j]));
    }
    CHECK(globally_pos(m, parse(Lang::G2ORD, "q -> p | neg p").root, Lang::G2ORD) ==
          eval_g2(Lang::G2ORD, parse(Lang::G2ORD, "q -> p | neg p").root, e).t.is_one());
  }
}
