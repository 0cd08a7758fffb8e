#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qlogic/measures.hpp"

namespace ql {

// weights[x][s] is P_x({s}); each row sums to 1.
struct GardenforsModel {
  int states = 1;
  std::vector<std::vector<Rational>> weights;
  std::map<std::string, Mask> v;
};

void validate(const GardenforsModel& m);
Rational prob(const std::vector<Rational>& w, Mask x);
Mask qp_extension(const GardenforsModel& m, const Expr& f);
bool qp_sat(const GardenforsModel& m, int x, const Expr& f);
bool qp_true(const GardenforsModel& m, const Expr& f);

// QP SIF -> QG.
Expr translate_sif(const Expr& f);

// The balanced disjunction: i from 0 to m, K and L of size i in lexicographic
// order, each conjunct phi°_1 & ... & phi°_m & chi°_1 & ... & chi°_m.
Expr balance_disjunction(const std::vector<Expr>& phis, const std::vector<Expr>& chis);
Expr e_notation(const std::vector<Expr>& phis, const std::vector<Expr>& chis);    // (D) ~~ Top
Expr e_g_notation(const std::vector<Expr>& phis, const std::vector<Expr>& chis);  // delta(B(D) <-> B(Top))
// m is the list length.
Expr a4_instance(const std::vector<Expr>& phis, const std::vector<Expr>& psis);
Expr kps_instance(const std::vector<Expr>& phis, const std::vector<Expr>& chis);

UncertaintyModel g_counterpart(const GardenforsModel& m, int x);

// A total preorder on the subsets of W by rank (subset mask -> rank).
struct OrderInstance {
  int states = 1;
  std::vector<int> rank;
};
struct MeasureWitness {
  std::vector<Rational> weights;
  Rational epsilon;
};

inline constexpr int kMaxLpStates = 12;

// Maximizes eps subject to w >= 0, sum w = 1, w(X) + eps <= w(Y) on strict
// pairs and w(X) = w(Y) on ties; a witness exists iff the optimum is positive.
std::optional<MeasureWitness> represent_order_lp(int states, const std::vector<std::pair<Mask, Mask>>& strict,
                                                 const std::vector<std::pair<Mask, Mask>>& equal);
std::optional<MeasureWitness> represent_order_lp(const OrderInstance& o);
bool witness_agrees(const OrderInstance& o, const MeasureWitness& w);
OrderInstance order_of(const Frame& f);

struct QpCounterpart {
  GardenforsModel model;
  int state = 0;
  MeasureWitness witness;
};
std::optional<QpCounterpart> qp_counterpart(const UncertaintyModel& m);

}  // namespace ql
