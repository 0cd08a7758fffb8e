#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "qlogic/syntax.hpp"

namespace ql {

using Mask = std::uint64_t;

inline Mask full_mask(int n) { return n >= 64 ? ~Mask(0) : ((Mask(1) << n) - 1); }

// States are 0..states-1. A variable listed on one side only has an empty other side.
struct BDModel {
  int states = 1;
  std::map<std::string, Mask> vplus, vminus;
};

// Belnap-Dunn values, read as (told-true, told-false) pairs.
enum class Four { f, n, b, t };
using FourValuation = std::map<std::string, Four>;

bool four_true(Four v);   // t or b
bool four_false(Four v);  // f or b
Four four_make(bool told_true, bool told_false);
bool four_leq(Four a, Four b);
char four_char(Four v);
Four four_from_char(char c);

struct Support {
  bool pos = false, neg = false;
  friend bool operator==(const Support&, const Support&) = default;
};

void validate(const BDModel& m);
Support support(const BDModel& m, int s, const Expr& f);
// (|f|+, |f|-) as state masks.
std::pair<Mask, Mask> truth_sets(const BDModel& m, const Expr& f);
bool sequent_valid_on_model(const BDModel& m, const Expr& phi, const Expr& chi);

struct BDVerdict {
  bool holds = true;
  FourValuation witness;  // set iff !holds
};

// Validity of phi |- chi over all four-valued assignments.
BDVerdict bd_entails(const Expr& phi, const Expr& chi);
Four four_eval(const FourValuation& v, const Expr& f);
BDModel single_point_counterpart(const FourValuation& v);

}  // namespace ql
