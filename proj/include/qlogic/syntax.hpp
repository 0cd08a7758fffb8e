#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ql {

enum class Lang { CPL, BD, BIG, G2ORD, G2NEL, QG, MCB, NMCB, QP };

// Primitive kinds first; everything from Top on is sugar that desugar() removes.
// Meta appears only in schema patterns.
enum class Kind {
  Var, Not, Neg, And, Or, Impl, Coimpl, NImpl, NCoimpl, Mat, Leq, B, C,
  Top, Bot, SNot, Delta, Delta1, DeltaN, DeltaBangN, Iff, Approx, Less, SImpl, SIff,
  Meta
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  std::string name;  // Var and Meta only
  std::vector<Expr> kids;
};

struct Formula {
  Lang lang;
  Expr root;
};

struct SyntaxError : std::runtime_error {
  SyntaxError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct LanguageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// construction
Expr var(std::string name);
Expr meta(std::string name);
Expr mk(Kind k, Expr a = nullptr, Expr b = nullptr);
inline Expr top() { return mk(Kind::Top); }
inline Expr bot() { return mk(Kind::Bot); }

int arity(Kind k);
bool is_sugar(Kind k);
bool is_modal(Kind k);  // B or C
std::string kind_name(Kind k);
Kind kind_from_name(std::string_view name);
std::string lang_name(Lang l);
Lang lang_from_name(std::string_view name);
Lang inner_lang(Lang outer);  // CPL for QG, BD for MCB/NMCB
bool permitted(Lang l, Kind k);
bool is_nelson(Lang l);  // G2NEL, NMCB
bool is_twist(Lang l);   // G2ORD, G2NEL, MCB, NMCB

// Throws LanguageError naming the offending connective.
void check_language(Lang l, const Expr& e);

bool equal(const Expr& a, const Expr& b);
struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const;
};
int compare(const Expr& a, const Expr& b);
int depth(const Expr& e);
std::size_t size(const Expr& e);

std::set<std::string> vars(const Expr& e);
// Distinct subformulas of the outer layer; modal atoms are leaves.
std::vector<Expr> subformulas(const Expr& e);
// Lit(f) of a BD formula, as "p" / "neg p".
std::set<std::string> lits(const Formula& f);
// Outer atoms (variables or modal atoms) in first-occurrence order, deduplicated.
std::vector<Expr> atoms(const Expr& e);
void collect_atoms(const Expr& e, std::vector<Expr>& out);

bool is_sif(const Formula& f);
// A name that does not occur in any of the given expressions.
std::string fresh_var(const std::vector<Expr>& avoid);

Formula desugar(const Formula& f);
// Inverse direction of desugar: folds defining expansions back into sugar
// nodes so that schema matching is insensitive to how a user spelled them.
Expr normalize(const Expr& e, Lang l);

// Substitutes Meta nodes by name.
Expr instantiate(const Expr& pattern, const std::vector<std::pair<std::string, Expr>>& binding);

Formula parse(Lang l, std::string_view text);
Expr parse_pattern(Lang l, std::string_view text);  // accepts $name metavariables
std::string print(const Expr& e);
inline std::string print(const Formula& f) { return print(f.root); }

}  // namespace ql
