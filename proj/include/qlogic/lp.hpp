#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qlogic/rational.hpp"

namespace ql::lp {

using Q = boost::multiprecision::cpp_rational;

enum class Sense { Le, Eq, Ge };

struct Row {
  std::vector<Q> a;
  Sense sense = Sense::Le;
  Q b;
};

struct Result {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Q value;
  std::vector<Q> x;
};

// max c.x subject to rows and x >= 0; two-phase tableau simplex with Bland's
// rule, so it terminates and is exact.
Result maximize(const std::vector<Q>& c, const std::vector<Row>& rows);

Q to_q(const Rational& r);
Rational to_rational(const Q& q);  // throws std::overflow_error beyond int64

}  // namespace ql::lp
