#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlogic/syntax.hpp"

namespace ql {

// Truth-table decision for CPL formulas over at most 20 variables.
bool cpl_valid(const Expr& f);
// QP formulas read propositionally: each comparison chi <= chi' is an opaque
// atom (~~ and << are unfolded into <= first).
bool cpl_valid_abstract(const Expr& f);

enum class CalculusId { HBIG, HG2ORD, HG2NEL, HQG, HQPG, HQPG_TOP, HQP, HMCB, HNMCB, RFDE };

std::string calculus_name(CalculusId c);
CalculusId calculus_from_name(std::string_view name);
Lang calculus_lang(CalculusId c);  // RFDE -> BD
std::vector<std::string> schema_names(CalculusId c);
// Pattern text of a table schema ($name metavariables); nullopt for the
// structural families (KPS, A4, PC) and the RFDE sequents.
std::optional<std::string> schema_pattern(CalculusId c, std::string_view name);

using Binding = std::vector<std::pair<std::string, Expr>>;

struct AxiomMatch {
  std::string schema;
  Binding binding;
  int m = 0;  // list length for KPS_m / A4_m
};

// Largest m accepted for the KPS and A4 families.
inline constexpr int kMaxKpsM = 4;

// Fully unfolds sugar in language l while keeping Top and Bot as constants,
// after folding leaf tautologies such as p -> p to Top. Two formulas are the
// same step iff their canonical forms are equal.
Expr canonical(const Expr& e, Lang l);
Expr unfold(const Expr& e, Lang l);

// Flattens and sorts & / | at every layer (associativity-commutativity normal form).
Expr ac_normalize(const Expr& e);

// extensions: optional schema families such as "QBel".
std::optional<AxiomMatch> match_axiom(CalculusId c, const Expr& f, const std::vector<std::string>& extensions = {});
// RFDE axiom sequents.
std::optional<AxiomMatch> match_sequent_axiom(const Expr& lhs, const Expr& rhs);

struct Justification {
  enum class Kind { Premise, Axiom, MP, Nec, From, Rule };
  Kind kind = Kind::Premise;
  std::string name;          // axiom schema (optional check) or sequent rule
  int m = 0;                 // requested KPS_m / A4_m, 0 = any
  std::vector<int> refs;     // 1-based earlier steps
  std::vector<std::string> using_;  // schema instances available to a From step
};

struct Step {
  std::string formula;
  Justification just;
};

struct Derivation {
  CalculusId calculus = CalculusId::HBIG;
  std::vector<std::string> premises;
  std::optional<std::string> goal;
  std::vector<Step> steps;
  std::vector<std::string> extensions;
};

struct StepVerdict {
  bool ok = false;
  bool tainted = false;  // depends on a premise
  std::string detail;    // matched schema, or the failure reason
};

struct CheckReport {
  bool accepted = false;
  std::vector<StepVerdict> steps;
  int first_failure = 0;  // 1-based; 0 when accepted or when only the goal failed
  std::string reason;
};

CheckReport check_derivation(const Derivation& d);

// (lhs, rhs) of an RFDE sequent "phi |- chi".
std::pair<Expr, Expr> parse_sequent(std::string_view text);

}  // namespace ql
