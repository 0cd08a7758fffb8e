#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qlogic/algebra.hpp"

namespace ql {

// A fails-verdict carries the refuting valuation: `witness` for biG/QG,
// `twist` for the G2 variants.
struct Verdict {
  bool holds = true;
  std::optional<Valuation> witness;
  std::optional<TwistValuation> twist;
};

// Enumerates every order type of n items against the constants 0 and 1:
// level[i] is 0 (value 0), L+1 (value 1) or one of the nonempty interior
// levels 1..L. visit returns false to stop; the result is false iff stopped.
bool for_each_order_type(int n, const std::function<bool(const std::vector<int>& level, int L)>& visit);
std::size_t count_order_types(int n);

// Atoms may be variables or opaque B-atoms. theorems must take value 1 in
// every valuation considered (they act as a filter, not as premises).
Verdict big_valid(const Expr& f);
Verdict big_entails(const std::vector<Expr>& gamma, const Expr& f, const std::vector<Expr>& theorems = {});
// Reference decision over the full grid {0, 1/d, ..., 1}; exponential, for cross-checks.
Verdict big_entails_grid(const std::vector<Expr>& gamma, const Expr& f, int d);

// variant: G2ORD/MCB (both coordinates) or G2NEL/NMCB (truth coordinate only).
// theorems are filtered as entailed by the empty set.
Verdict g2_entails(Lang variant, const std::vector<Expr>& gamma, const Expr& f,
                   const std::vector<Expr>& theorems = {});
Verdict g2_entails_grid(Lang variant, const std::vector<Expr>& gamma, const Expr& f, int d);

// reg and nontriv instances over the B-atoms of the formulas plus B(Top), B(Bot).
std::vector<Expr> qg_saturation(const std::vector<Expr>& formulas);
Verdict qg_entails(const std::vector<Expr>& xi, const Expr& alpha);

}  // namespace ql
