#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlogic/algebra.hpp"
#include "qlogic/bd.hpp"

namespace ql {

// Dense table over all subsets of W, indexed by bitmask; |W| <= 16.
struct Frame {
  int states = 1;
  std::vector<UnitRational> mu;  // size 2^states
};

struct UncertaintyModel {
  Frame frame;
  std::map<std::string, Mask> v;
};

struct BeliefModel {
  Frame frame;  // the measure is called pi here
  std::map<std::string, Mask> vplus, vminus;
};

inline constexpr int kMaxMeasureStates = 16;

void validate(const Frame& f);  // size and bounds only; measure flags are checked by check_property
Frame make_frame(int states, std::vector<UnitRational> mu);

// ||phi|| for a CPL formula; unbound variables throw.
Mask cpl_extension(const Expr& phi, int states, const std::map<std::string, Mask>& v);

UnitRational eval_qg(const UncertaintyModel& m, const Expr& alpha);
// variant: MCB or NMCB.
TwistValue eval_layer(const BeliefModel& m, Lang variant, const Expr& alpha);

enum class Property {
  monotone, nontrivial, capacity,
  cond_I, cond_II, cond_III, cond_IV,
  muPM, muKPS,
  mcb_I, mcb_II, mcb_III, mcb_IV
};
std::string property_name(Property p);
Property property_from_name(std::string_view name);

struct PropertyResult {
  bool holds = true;
  std::vector<Mask> witness;  // the violating tuple of subsets
};

// m is used by muKPS only (the number of compared pairs, 1..kMaxKpsPairs).
inline constexpr int kMaxKpsPairs = 6;
PropertyResult check_property(const Frame& f, Property p, int m = 0);

// Named formulas of the correspondence results, over p and q.
enum class Layer { QG, MCB, NMCB };
std::string layer_name(Layer l);
Layer layer_from_name(std::string_view name);
Lang layer_lang(Layer l);
struct NamedFormula {
  std::string name;
  Layer layer;
  Property condition;
  std::string text;
};
const std::vector<NamedFormula>& named_formulas();
const NamedFormula& named_formula(std::string_view name);

struct FrameVerdict {
  bool holds = true;
  std::optional<UncertaintyModel> qg_counter;
  std::optional<BeliefModel> layer_counter;
};

// At most four variables; QG and NMCB need value (truth) 1, MCB needs (1, 0).
FrameVerdict frame_validates(const Frame& f, const Expr& formula, Layer layer);

// Frames on the grid {0, 1/d, ..., 1} in lexicographic order of the table.
struct FrameClass {
  bool monotone = true;
  bool nontrivial = true;
  bool capacity = false;
};
void for_each_frame(int states, int d, const FrameClass& cls, const std::function<bool(const Frame&)>& visit);

struct CorrespondenceReport {
  std::string name;
  int states = 0, grid = 0;
  std::size_t frames = 0, agree = 0;
  std::vector<Frame> mismatches;  // frames where validity and the condition disagree
};
CorrespondenceReport correspondence_test(const NamedFormula& nf, int states, int d);

// QBel: phi, chi, psi with CPL |- phi => chi, CPL |- ~(chi & psi), CPL |/- chi => phi.
Expr qbel_instance(const Expr& phi, const Expr& chi, const Expr& psi);
// A violation (X, Y, Z) of muPM turned into a falsifying model of a QBel instance.
struct QBelWitness {
  UncertaintyModel model;
  Expr formula;
  UnitRational value;
};
std::optional<QBelWitness> qbel_witness(const Frame& f);
// Every QBel instance whose formulas have depth <= 2 over p, q, r evaluates to 1
// on every valuation; instances are grouped by truth table.
struct QBelSweep {
  bool all_one = true;
  std::size_t classes = 0, instances = 0;
  std::optional<UncertaintyModel> counter;
  Expr formula;
};
QBelSweep qbel_sweep(const Frame& f);
CorrespondenceReport qbel_correspondence(int states, int d);

struct SearchBounds {
  int max_states = 4;
  int grid = 4;
};
struct Countermodel {
  std::optional<UncertaintyModel> qg;
  std::optional<BeliefModel> layer;
};
// Ascending |W|, then grid denominator 2..grid, then lexicographic measure.
std::optional<Countermodel> find_frame_countermodel(const std::vector<Expr>& xi, const Expr& alpha, Layer layer,
                                                    const FrameClass& cls, const SearchBounds& b);

// W = subsets of the variables (literals for MCB); the measure copies e on
// definable sets and takes suprema elsewhere. Throws if e is not monotone
// along definable inclusions.
UncertaintyModel canonical_qg_model(const Valuation& e, const std::vector<Expr>& formulas);
BeliefModel canonical_mcb_model(const TwistValuation& e, const std::vector<Expr>& formulas);

}  // namespace ql
