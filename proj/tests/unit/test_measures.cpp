#include <doctest.h>

#include "gen.hpp"
#include "qlogic/measures.hpp"

using namespace ql;

namespace {

Expr qg(const char* s) { return parse(Lang::QG, s).root; }

Frame frame2(int a, int b, int c, int d, int den) {
  return make_frame(2, {UnitRational(a, den), UnitRational(b, den), UnitRational(c, den), UnitRational(d, den)});
}

}  // namespace

TEST_SUITE("measures") {
  TEST_CASE("CPL extensions") {
    std::map<std::string, Mask> v{{"p", 0b0011}, {"q", 0b0101}};
    CHECK(cpl_extension(parse(Lang::CPL, "p & ~q").root, 4, v) == 0b0010);
    CHECK(cpl_extension(parse(Lang::CPL, "p => q").root, 4, v) == 0b1101);
    CHECK(cpl_extension(top(), 4, v) == 0b1111);
    CHECK_THROWS(cpl_extension(parse(Lang::CPL, "r").root, 4, v));
  }

  TEST_CASE("measure properties report violating subsets") {
    CHECK(check_property(frame2(0, 1, 1, 2, 2), Property::monotone).holds);
    const PropertyResult r = check_property(frame2(0, 2, 1, 1, 2), Property::monotone);
    CHECK_FALSE(r.holds);
    CHECK_FALSE(r.witness.empty());
    CHECK_FALSE(check_property(frame2(0, 0, 0, 0, 1), Property::nontrivial).holds);
    CHECK(check_property(frame2(0, 1, 1, 2, 2), Property::capacity).holds);
    CHECK(check_property(frame2(0, 1, 1, 2, 2), Property::muKPS, 2).holds);
  }

  TEST_CASE("frame enumeration respects the requested class") {
    std::size_t all = 0, cap = 0;
    for_each_frame(2, 3, FrameClass{}, [&](const Frame& f) {
      ++all;
      CHECK(check_property(f, Property::monotone).holds);
      CHECK(check_property(f, Property::nontrivial).holds);
      return true;
    });
    for_each_frame(2, 3, FrameClass{true, true, true}, [&](const Frame& f) {
      ++cap;
      CHECK(f.mu[0].is_zero());
      CHECK(f.mu[3].is_one());
      return true;
    });
    CHECK(all == 46);
    CHECK(cap > 0);
    CHECK(cap < all);
  }

  TEST_CASE("B-atoms read the measure of the extension") {
    UncertaintyModel m{frame2(0, 1, 2, 3, 3), {{"p", 0b01}, {"q", 0b10}}};
    CHECK(eval_qg(m, qg("B(p)")) == UnitRational(1, 3));
    CHECK(eval_qg(m, qg("B(p | q)")).is_one());
    CHECK(eval_qg(m, qg("B(p) -> B(q)")).is_one());
    CHECK(eval_qg(m, qg("B(q) -> B(p)")) == UnitRational(1, 3));
  }

  TEST_CASE("monotone frames validate regularity instances") {
    const Expr reg = qg("B(p & q) -> B(p | r)");
    for_each_frame(2, 3, FrameClass{}, [&](const Frame& f) {
      CHECK(frame_validates(f, reg, Layer::QG).holds);
      return true;
    });
  }

  TEST_CASE("QG correspondences hold on the smallest grid") {
    for (const auto& nf : named_formulas()) {
      if (nf.layer != Layer::QG) continue;
      CAPTURE(nf.name);
      const CorrespondenceReport r = correspondence_test(nf, 2, 2);
      CHECK(r.mismatches.empty());
      CHECK(r.agree == r.frames);
    }
  }

  TEST_CASE("QBel witnesses exist exactly on muPM violations") {
    for_each_frame(2, 2, FrameClass{}, [&](const Frame& f) {
      const bool pm = check_property(f, Property::muPM).holds;
      const auto w = qbel_witness(f);
      CHECK(w.has_value() == !pm);
      if (w) CHECK(eval_qg(w->model, w->formula).is_zero());
      return true;
    });
  }

  TEST_CASE("countermodel search finds nothing for valid formulas and something otherwise") {
    const SearchBounds b{3, 3};
    CHECK_FALSE(find_frame_countermodel({}, qg("B(p & q) -> B(p)"), Layer::QG, FrameClass{}, b));
    const auto c = find_frame_countermodel({}, qg("B(p) -> B(q)"), Layer::QG, FrameClass{}, b);
    REQUIRE(c);
    REQUIRE(c->qg);
    CHECK_FALSE(eval_qg(*c->qg, qg("B(p) -> B(q)")).is_one());
  }

  TEST_CASE("belief layer reads both supports") {
    BeliefModel m{frame2(0, 1, 1, 2, 2), {{"p", 0b01}}, {{"p", 0b11}}};
    const TwistValue v = eval_layer(m, Lang::MCB, parse(Lang::MCB, "C(p)").root);
    CHECK(v == TwistValue{UnitRational(1, 2), UnitRational::one()});
    const TwistValue n = eval_layer(m, Lang::MCB, parse(Lang::MCB, "C(neg p)").root);
    CHECK(n == TwistValue{UnitRational::one(), UnitRational(1, 2)});
  }

  TEST_CASE("canonical model copies the valuation on its atoms") {
    Valuation e{{"B(p)", UnitRational(1, 2)}, {"B(p & q)", UnitRational(1, 4)}};
    const std::vector<Expr> fs = {qg("B(p) -> B(p & q)")};
    const UncertaintyModel m = canonical_qg_model(e, fs);
    CHECK(eval_qg(m, qg("B(p)")) == UnitRational(1, 2));
    CHECK(eval_qg(m, qg("B(p & q)")) == UnitRational(1, 4));
    Valuation bad{{"B(p)", UnitRational(1, 4)}, {"B(p & q)", UnitRational(1, 2)}};
    CHECK_THROWS(canonical_qg_model(bad, fs));
  }
}
