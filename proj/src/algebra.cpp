#include "qlogic/algebra.hpp"

namespace ql {

UnitRational::UnitRational(const Rational& q) : q_(q) {
  if (q < Rational(0) || q > Rational(1)) throw std::domain_error("value " + q.str() + " outside [0,1]");
}

bool twist_leq(const TwistValue& a, const TwistValue& b) { return a.t <= b.t && a.f >= b.f; }

UnitRational godel_impl(const UnitRational& a, const UnitRational& b) { return a <= b ? UnitRational::one() : b; }

UnitRational godel_coimpl(const UnitRational& b, const UnitRational& a) { return b <= a ? UnitRational::zero() : b; }

namespace {

UnitRational bool_value(bool b) { return b ? UnitRational::one() : UnitRational::zero(); }

}  // namespace

UnitRational eval_big(const Expr& f, const AtomFn& atom) {
  const auto& k = f->kids;
  switch (f->kind) {
    case Kind::Var:
    case Kind::B: return atom(f);
    case Kind::Top: return UnitRational::one();
    case Kind::Bot: return UnitRational::zero();
    case Kind::And: return meet(eval_big(k[0], atom), eval_big(k[1], atom));
    case Kind::Or: return join(eval_big(k[0], atom), eval_big(k[1], atom));
    case Kind::Impl: return godel_impl(eval_big(k[0], atom), eval_big(k[1], atom));
    case Kind::Coimpl: return godel_coimpl(eval_big(k[0], atom), eval_big(k[1], atom));
    case Kind::SNot: return bool_value(eval_big(k[0], atom).is_zero());
    case Kind::Delta: return bool_value(eval_big(k[0], atom).is_one());
    case Kind::Iff: {
      UnitRational a = eval_big(k[0], atom), b = eval_big(k[1], atom);
      return meet(godel_impl(a, b), godel_impl(b, a));
    }
    default: throw EvalError("connective '" + kind_name(f->kind) + "' is not a biG connective");
  }
}

UnitRational eval_big(const Expr& f, const Valuation& e) {
  return eval_big(f, [&](const Expr& a) -> UnitRational {
    auto it = e.find(print(a));
    if (it == e.end()) throw EvalError("unbound atom " + print(a));
    return it->second;
  });
}

TwistValue g2_neg(const TwistValue& a) { return {a.f, a.t}; }
TwistValue g2_and(const TwistValue& a, const TwistValue& b) { return {meet(a.t, b.t), join(a.f, b.f)}; }
TwistValue g2_or(const TwistValue& a, const TwistValue& b) { return {join(a.t, b.t), meet(a.f, b.f)}; }
TwistValue g2_impl(const TwistValue& a, const TwistValue& b) {
  return {godel_impl(a.t, b.t), godel_coimpl(b.f, a.f)};
}
TwistValue g2_coimpl(const TwistValue& a, const TwistValue& b) {
  return {godel_coimpl(a.t, b.t), godel_impl(b.f, a.f)};
}
// Falsity of a Nelson implication: antecedent true and consequent false.
TwistValue g2_nimpl(const TwistValue& a, const TwistValue& b) { return {godel_impl(a.t, b.t), meet(a.t, b.f)}; }
TwistValue g2_ncoimpl(const TwistValue& a, const TwistValue& b) {
  return {godel_coimpl(a.t, b.t), join(a.f, b.t)};
}

TwistValue eval_g2(Lang variant, const Expr& f, const TwistAtomFn& atom) {
  const bool nel = is_nelson(variant);
  if (!is_twist(variant)) throw EvalError("eval_g2 needs a G2 variant");
  if (!permitted(nel ? Lang::G2NEL : Lang::G2ORD, f->kind) && !is_modal(f->kind))
    throw EvalError("connective '" + kind_name(f->kind) + "' is not part of " + lang_name(variant));
  const auto& k = f->kids;
  auto ev = [&](int i) { return eval_g2(variant, k[i], atom); };
  switch (f->kind) {
    case Kind::Var:
    case Kind::C: return atom(f);
    case Kind::Top: return TwistValue::top();
    case Kind::Bot: return TwistValue::bottom();
    case Kind::Neg: return g2_neg(ev(0));
    case Kind::And: return g2_and(ev(0), ev(1));
    case Kind::Or: return g2_or(ev(0), ev(1));
    case Kind::Impl: return g2_impl(ev(0), ev(1));
    case Kind::Coimpl: return g2_coimpl(ev(0), ev(1));
    case Kind::NImpl: return g2_nimpl(ev(0), ev(1));
    case Kind::NCoimpl: return g2_ncoimpl(ev(0), ev(1));
    case Kind::SNot: {
      // x -> 0 in the variant's own implication, with 0 = (0,1).
      TwistValue x = ev(0);
      return nel ? g2_nimpl(x, TwistValue::bottom()) : g2_impl(x, TwistValue::bottom());
    }
    case Kind::Delta1: {
      TwistValue x = ev(0);
      return (x.t.is_one() && x.f.is_zero()) ? TwistValue::top() : TwistValue::bottom();
    }
    case Kind::DeltaN: return ev(0).t.is_one() ? TwistValue::top() : TwistValue::bottom();
    case Kind::DeltaBangN: {
      TwistValue x = ev(0);
      return (x.t.is_one() && x.f.is_zero()) ? TwistValue::top() : TwistValue::bottom();
    }
    case Kind::Iff: {
      TwistValue a = ev(0), b = ev(1);
      return nel ? g2_and(g2_nimpl(a, b), g2_nimpl(b, a)) : g2_and(g2_impl(a, b), g2_impl(b, a));
    }
    case Kind::SImpl: {
      TwistValue a = ev(0), b = ev(1);
      return g2_and(g2_nimpl(a, b), g2_nimpl(g2_neg(b), g2_neg(a)));
    }
    case Kind::SIff: {
      TwistValue a = ev(0), b = ev(1);
      auto s = [](const TwistValue& x, const TwistValue& y) {
        return g2_and(g2_nimpl(x, y), g2_nimpl(g2_neg(y), g2_neg(x)));
      };
      return g2_and(s(a, b), s(b, a));
    }
    default: throw EvalError("connective '" + kind_name(f->kind) + "' is not a G2 connective");
  }
}

TwistValue eval_g2(Lang variant, const Expr& f, const TwistValuation& e) {
  return eval_g2(variant, f, [&](const Expr& a) -> TwistValue {
    auto it = e.find(print(a));
    if (it == e.end()) throw EvalError("unbound atom " + print(a));
    return it->second;
  });
}

}  // namespace ql
