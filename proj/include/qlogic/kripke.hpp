#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlogic/algebra.hpp"
#include "qlogic/bd.hpp"

namespace ql {

// A finite linear frame: rank[s] is the position of state s in the chain
// (0 = bottom). Valuations must be up-sets.
struct G2KripkeModel {
  int states = 1;
  std::vector<int> rank;
  std::map<std::string, Mask> vplus, vminus;
};

// The negative clause of -< as printed quantifies over s' <= s and is not
// persistent; the corrected clause quantifies over s' >= s and mirrors the
// algebraic table e2(a -< b) = e2(b) ->G e2(a).
enum class CoimplReading { Corrected, AsPrinted };

void validate(const G2KripkeModel& m);  // throws on a non-chain rank or a non-up-set valuation
Mask up_set(const G2KripkeModel& m, int s);
Mask down_set(const G2KripkeModel& m, int s);
bool is_up_set(const G2KripkeModel& m, Mask x);

// variant selects the meaning of sugar (G2ORD or G2NEL); unlisted variables have empty supports.
std::pair<Mask, Mask> ksets(const G2KripkeModel& m, const Expr& f, Lang variant,
                            CoimplReading r = CoimplReading::Corrected);
Support ksupport(const G2KripkeModel& m, int s, const Expr& f, Lang variant,
                 CoimplReading r = CoimplReading::Corrected);

struct KVerdict {
  bool holds = true;
  std::optional<G2KripkeModel> model;  // present iff !holds
  int state = -1;
};

// Searches all chains of 1..max_states states with all up-set valuations.
KVerdict kentails(const std::vector<Expr>& gamma, const Expr& f, Lang variant, int max_states,
                  CoimplReading r = CoimplReading::Corrected);

// Finite-chain counterpart of a twist valuation: 0 is the empty set, 1 the
// whole chain, and the i-th smallest interior value the top i states.
G2KripkeModel valuation_to_model(const TwistValuation& e);

struct ValuationReport {
  std::vector<std::string> constraints;  // the order facts the valuation must satisfy
  TwistValuation solution;               // |up-set| / |W|
};
ValuationReport model_to_valuation(const G2KripkeModel& m);

// Every state of the chain supports f (positively / negatively).
bool globally_pos(const G2KripkeModel& m, const Expr& f, Lang variant);
bool globally_neg(const G2KripkeModel& m, const Expr& f, Lang variant);

}  // namespace ql
