#pragma once

#include <functional>
#include <map>
#include <string>

#include "qlogic/rational.hpp"
#include "qlogic/syntax.hpp"

namespace ql {

// A rational in [0,1]; the bound is checked on construction.
class UnitRational {
public:
  UnitRational() = default;
  explicit UnitRational(const Rational& q);
  UnitRational(std::int64_t n, std::int64_t d) : UnitRational(Rational(n, d)) {}
  static UnitRational parse(std::string_view s) { return UnitRational(Rational::parse(s)); }
  static UnitRational zero() { return UnitRational(); }
  static UnitRational one() { return UnitRational(Rational(1)); }

  const Rational& value() const { return q_; }
  std::string str() const { return q_.str(); }
  bool is_zero() const { return q_.num() == 0; }
  bool is_one() const { return q_.num() == 1 && q_.den() == 1; }

  friend bool operator==(const UnitRational& a, const UnitRational& b) { return a.q_ == b.q_; }
  friend auto operator<=>(const UnitRational& a, const UnitRational& b) { return a.q_ <=> b.q_; }

private:
  Rational q_{0};
};

// (truth, falsity) in the twist product; ordered by truth up, falsity down.
struct TwistValue {
  UnitRational t, f;
  friend bool operator==(const TwistValue&, const TwistValue&) = default;
  static TwistValue top() { return {UnitRational::one(), UnitRational::zero()}; }
  static TwistValue bottom() { return {UnitRational::zero(), UnitRational::one()}; }
};

bool twist_leq(const TwistValue& a, const TwistValue& b);

UnitRational godel_impl(const UnitRational& a, const UnitRational& b);
UnitRational godel_coimpl(const UnitRational& b, const UnitRational& a);  // b -< a
inline UnitRational meet(const UnitRational& a, const UnitRational& b) { return a < b ? a : b; }
inline UnitRational join(const UnitRational& a, const UnitRational& b) { return a < b ? b : a; }

// Atoms are keyed by their printed form: "p", "B(p & q)", "C(neg r)".
using Valuation = std::map<std::string, UnitRational>;
using TwistValuation = std::map<std::string, TwistValue>;

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using AtomFn = std::function<UnitRational(const Expr&)>;
using TwistAtomFn = std::function<TwistValue(const Expr&)>;

// biG and the outer layer of QG. Sugar is evaluated from its value table.
UnitRational eval_big(const Expr& f, const AtomFn& atom);
UnitRational eval_big(const Expr& f, const Valuation& e);

// variant is G2ORD or G2NEL (MCB/NMCB are accepted as their outer variants).
TwistValue eval_g2(Lang variant, const Expr& f, const TwistAtomFn& atom);
TwistValue eval_g2(Lang variant, const Expr& f, const TwistValuation& e);

// Twist-level connectives, shared by the evaluator and table-driven tests.
TwistValue g2_neg(const TwistValue& a);
TwistValue g2_and(const TwistValue& a, const TwistValue& b);
TwistValue g2_or(const TwistValue& a, const TwistValue& b);
TwistValue g2_impl(const TwistValue& a, const TwistValue& b);
TwistValue g2_coimpl(const TwistValue& a, const TwistValue& b);
TwistValue g2_nimpl(const TwistValue& a, const TwistValue& b);
TwistValue g2_ncoimpl(const TwistValue& a, const TwistValue& b);

}  // namespace ql
