#include "qlogic/syntax.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>

namespace ql {

namespace {

struct KindInfo {
  Kind kind;
  const char* name;
  int arity;
};

constexpr std::array<KindInfo, 26> kKinds{{
    {Kind::Var, "var", 0},        {Kind::Not, "not", 1},          {Kind::Neg, "neg", 1},
    {Kind::And, "and", 2},        {Kind::Or, "or", 2},            {Kind::Impl, "impl", 2},
    {Kind::Coimpl, "coimpl", 2},  {Kind::NImpl, "nimpl", 2},      {Kind::NCoimpl, "ncoimpl", 2},
    {Kind::Mat, "mat", 2},        {Kind::Leq, "leq", 2},          {Kind::B, "B", 1},
    {Kind::C, "C", 1},            {Kind::Top, "top", 0},          {Kind::Bot, "bot", 0},
    {Kind::SNot, "snot", 1},      {Kind::Delta, "delta", 1},      {Kind::Delta1, "delta1", 1},
    {Kind::DeltaN, "deltaN", 1},  {Kind::DeltaBangN, "deltaBangN", 1},
    {Kind::Iff, "iff", 2},        {Kind::Approx, "approx", 2},    {Kind::Less, "less", 2},
    {Kind::SImpl, "simpl", 2},    {Kind::SIff, "siff", 2},        {Kind::Meta, "meta", 0},
}};

const KindInfo& info(Kind k) { return kKinds[static_cast<std::size_t>(k)]; }

}  // namespace

Expr var(std::string name) { return std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}}); }
Expr meta(std::string name) { return std::make_shared<const Node>(Node{Kind::Meta, std::move(name), {}}); }

Expr mk(Kind k, Expr a, Expr b) {
  std::vector<Expr> kids;
  if (a) kids.push_back(std::move(a));
  if (b) kids.push_back(std::move(b));
  if ((int)kids.size() != arity(k)) throw std::invalid_argument("wrong arity for " + kind_name(k));
  return std::make_shared<const Node>(Node{k, {}, std::move(kids)});
}

int arity(Kind k) { return info(k).arity; }
bool is_sugar(Kind k) { return k >= Kind::Top && k != Kind::Meta; }
bool is_modal(Kind k) { return k == Kind::B || k == Kind::C; }
std::string kind_name(Kind k) { return info(k).name; }

Kind kind_from_name(std::string_view name) {
  for (const auto& i : kKinds)
    if (name == i.name) return i.kind;
  throw std::invalid_argument("unknown node kind '" + std::string(name) + "'");
}

std::string lang_name(Lang l) {
  switch (l) {
    case Lang::CPL: return "cpl";
    case Lang::BD: return "bd";
    case Lang::BIG: return "big";
    case Lang::G2ORD: return "g2ord";
    case Lang::G2NEL: return "g2nel";
    case Lang::QG: return "qg";
    case Lang::MCB: return "mcb";
    case Lang::NMCB: return "nmcb";
    case Lang::QP: return "qp";
  }
  return "?";
}

Lang lang_from_name(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Lang l : {Lang::CPL, Lang::BD, Lang::BIG, Lang::G2ORD, Lang::G2NEL, Lang::QG, Lang::MCB, Lang::NMCB, Lang::QP})
    if (lang_name(l) == s) return l;
  throw std::invalid_argument("unknown language '" + std::string(name) + "'");
}

Lang inner_lang(Lang outer) {
  switch (outer) {
    case Lang::QG: return Lang::CPL;
    case Lang::MCB:
    case Lang::NMCB: return Lang::BD;
    default: throw LanguageError(lang_name(outer) + " has no inner layer");
  }
}

bool is_nelson(Lang l) { return l == Lang::G2NEL || l == Lang::NMCB; }
bool is_twist(Lang l) { return l == Lang::G2ORD || l == Lang::G2NEL || l == Lang::MCB || l == Lang::NMCB; }

bool permitted(Lang l, Kind k) {
  using K = Kind;
  if (k == K::Meta) return true;
  auto in = [k](std::initializer_list<K> ks) { return std::find(ks.begin(), ks.end(), k) != ks.end(); };
  switch (l) {
    case Lang::CPL: return in({K::Var, K::Not, K::And, K::Or, K::Mat, K::Top, K::Bot, K::Iff});
    case Lang::BD: return in({K::Var, K::Neg, K::And, K::Or});
    case Lang::BIG: return in({K::Var, K::And, K::Or, K::Impl, K::Coimpl, K::Top, K::Bot, K::SNot, K::Delta, K::Iff});
    case Lang::QG: return in({K::B, K::And, K::Or, K::Impl, K::Coimpl, K::Top, K::Bot, K::SNot, K::Delta, K::Iff});
    case Lang::G2ORD:
      return in({K::Var, K::Neg, K::And, K::Or, K::Impl, K::Coimpl, K::Top, K::Bot, K::SNot, K::Delta1, K::Iff});
    case Lang::MCB:
      return in({K::C, K::Neg, K::And, K::Or, K::Impl, K::Coimpl, K::Top, K::Bot, K::SNot, K::Delta1, K::Iff});
    case Lang::G2NEL:
      return in({K::Var, K::Neg, K::And, K::Or, K::NImpl, K::NCoimpl, K::Top, K::Bot, K::SNot, K::DeltaN,
                 K::DeltaBangN, K::Iff, K::SImpl, K::SIff});
    case Lang::NMCB:
      return in({K::C, K::Neg, K::And, K::Or, K::NImpl, K::NCoimpl, K::Top, K::Bot, K::SNot, K::DeltaN,
                 K::DeltaBangN, K::Iff, K::SImpl, K::SIff});
    case Lang::QP:
      return in({K::Var, K::Not, K::And, K::Or, K::Mat, K::Leq, K::Top, K::Bot, K::Iff, K::Approx, K::Less});
  }
  return false;
}

void check_language(Lang l, const Expr& e) {
  if (!permitted(l, e->kind))
    throw LanguageError("connective '" + kind_name(e->kind) + "' is not part of language " + lang_name(l));
  if (is_modal(e->kind)) {
    Lang in = inner_lang(l);
    if ((e->kind == Kind::B) != (in == Lang::CPL))
      throw LanguageError("modal atom " + kind_name(e->kind) + " is not part of language " + lang_name(l));
    check_language(in, e->kids[0]);
    return;
  }
  for (const auto& k : e->kids) check_language(l, k);
}

int compare(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (int c = a->name.compare(b->name); c != 0) return c < 0 ? -1 : 1;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (int c = compare(a->kids[i], b->kids[i]); c != 0) return c;
  return 0;
}

bool equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
bool ExprLess::operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }

int depth(const Expr& e) {
  int d = 0;
  for (const auto& k : e->kids) d = std::max(d, depth(k) + 1);
  return d;
}

std::size_t size(const Expr& e) {
  std::size_t n = 1;
  for (const auto& k : e->kids) n += size(k);
  return n;
}

std::set<std::string> vars(const Expr& e) {
  std::set<std::string> out;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    if (x->kind == Kind::Var) out.insert(x->name);
    for (const auto& k : x->kids) go(k);
  };
  go(e);
  return out;
}

std::vector<Expr> subformulas(const Expr& e) {
  std::set<Expr, ExprLess> seen;
  std::vector<Expr> out;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    if (!is_modal(x->kind))
      for (const auto& k : x->kids) go(k);
    if (seen.insert(x).second) out.push_back(x);
  };
  go(e);
  return out;
}

std::set<std::string> lits(const Formula& f) {
  if (f.lang != Lang::BD) throw LanguageError("lits is defined for BD formulas only");
  std::set<std::string> out;
  // Lit(f): literals among the subformulas; the negation of a variable
  // counts only when it occurs as written.
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    if (x->kind == Kind::Var) out.insert(x->name);
    if (x->kind == Kind::Neg && x->kids[0]->kind == Kind::Var) out.insert("neg " + x->kids[0]->name);
    for (const auto& k : x->kids) go(k);
  };
  go(f.root);
  return out;
}

void collect_atoms(const Expr& e, std::vector<Expr>& out) {
  if (e->kind == Kind::Var || is_modal(e->kind)) {
    for (const auto& a : out)
      if (equal(a, e)) return;
    out.push_back(e);
    return;
  }
  for (const auto& k : e->kids) collect_atoms(k, out);
}

std::vector<Expr> atoms(const Expr& e) {
  std::vector<Expr> out;
  collect_atoms(e, out);
  return out;
}

bool is_sif(const Formula& f) {
  if (f.lang != Lang::QP) throw LanguageError("is_sif expects a QP formula");
  std::function<bool(const Expr&)> free_of_leq = [&](const Expr& x) {
    if (x->kind == Kind::Leq || x->kind == Kind::Approx || x->kind == Kind::Less) return false;
    for (const auto& k : x->kids)
      if (!free_of_leq(k)) return false;
    return true;
  };
  std::function<bool(const Expr&)> sif = [&](const Expr& x) {
    switch (x->kind) {
      case Kind::Leq:
      case Kind::Approx:
      case Kind::Less: return free_of_leq(x->kids[0]) && free_of_leq(x->kids[1]);
      case Kind::Not: return sif(x->kids[0]);
      case Kind::And:
      case Kind::Or:
      case Kind::Mat: return sif(x->kids[0]) && sif(x->kids[1]);
      default: return false;
    }
  };
  return sif(f.root);
}

std::string fresh_var(const std::vector<Expr>& avoid) {
  std::set<std::string> used;
  for (const auto& e : avoid) {
    auto v = vars(e);
    used.insert(v.begin(), v.end());
  }
  std::string base = "z_top";
  if (!used.count(base)) return base;
  for (int i = 0;; ++i)
    if (!used.count(base + std::to_string(i))) return base + std::to_string(i);
}

namespace {

// Expansion of every sugar node in language l. `fresh` is an atom of the
// outer layer (a variable, or B(z)/C(z) in two-layered languages).
Expr expand(const Expr& e, Lang l, const Expr& fresh, const Expr& inner_fresh) {
  using K = Kind;
  if (is_modal(e->kind)) return mk(e->kind, expand(e->kids[0], inner_lang(l), inner_fresh, inner_fresh));
  std::vector<Expr> k;
  for (const auto& c : e->kids) k.push_back(expand(c, l, fresh, inner_fresh));
  auto a = [&]() { return k[0]; };
  auto b = [&]() { return k[1]; };
  const bool nel = is_nelson(l);
  const bool classical = l == Lang::CPL || l == Lang::QP;
  const K imp = classical ? K::Mat : nel ? K::NImpl : K::Impl;
  auto zero = [&]() {
    if (classical) return mk(K::Not, mk(K::Mat, fresh, fresh));
    if (nel) return mk(K::NCoimpl, mk(K::NImpl, fresh, fresh), mk(K::NImpl, fresh, fresh));
    return mk(K::Coimpl, fresh, fresh);
  };
  auto one = [&]() {
    if (classical) return mk(K::Mat, fresh, fresh);
    if (nel) return mk(K::NImpl, zero(), zero());
    return mk(K::Impl, fresh, fresh);
  };
  auto snot = [&](const Expr& x) { return classical ? mk(K::Not, x) : mk(imp, x, zero()); };
  auto simpl = [&](const Expr& x, const Expr& y) {
    return mk(K::And, mk(K::NImpl, x, y), mk(K::NImpl, mk(K::Neg, y), mk(K::Neg, x)));
  };
  auto delta_n = [&](const Expr& x) { return snot(mk(K::NCoimpl, one(), x)); };
  switch (e->kind) {
    case K::Top: return one();
    case K::Bot: return zero();
    case K::SNot: return snot(a());
    case K::Delta: return mk(K::Impl, mk(K::Coimpl, one(), a()), zero());
    case K::Delta1: {
      auto x = mk(K::Coimpl, one(), a());
      return mk(K::And, snot(x), mk(K::Neg, snot(snot(x))));
    }
    case K::DeltaN: return delta_n(a());
    case K::DeltaBangN: return delta_n(simpl(one(), a()));
    case K::Iff: return mk(K::And, mk(imp, a(), b()), mk(imp, b(), a()));
    case K::SImpl: return simpl(a(), b());
    case K::SIff: return mk(K::And, simpl(a(), b()), simpl(b(), a()));
    case K::Approx: return mk(K::And, mk(K::Leq, a(), b()), mk(K::Leq, b(), a()));
    case K::Less: return mk(K::And, mk(K::Leq, a(), b()), mk(K::Not, mk(K::Leq, b(), a())));
    default:
      if (e->kids.empty()) return e;
      return std::make_shared<const Node>(Node{e->kind, e->name, std::move(k)});
  }
}

bool is_leaf_atom(const Expr& e) { return e->kind == Kind::Var || is_modal(e->kind) || e->kind == Kind::Meta; }

}  // namespace

Formula desugar(const Formula& f) {
  std::string z = fresh_var({f.root});
  Expr zv = var(z);
  Expr fresh = zv;
  if (f.lang == Lang::QG) fresh = mk(Kind::B, zv);
  if (f.lang == Lang::MCB || f.lang == Lang::NMCB) fresh = mk(Kind::C, zv);
  return Formula{f.lang, expand(f.root, f.lang, fresh, zv)};
}

Expr normalize(const Expr& e, Lang l) {
  using K = Kind;
  if (is_modal(e->kind)) return mk(e->kind, normalize(e->kids[0], inner_lang(l)));
  if (e->kids.empty()) return e;
  std::vector<Expr> k;
  for (const auto& c : e->kids) k.push_back(normalize(c, l));
  Expr x = std::make_shared<const Node>(Node{e->kind, e->name, k});
  auto is = [](const Expr& y, K kind) { return y->kind == kind; };
  const bool nel = is_nelson(l);
  const bool classical = l == Lang::CPL || l == Lang::QP;
  if (classical) {
    if (is(x, K::Mat) && is_leaf_atom(k[0]) && equal(k[0], k[1])) return top();
    if (is(x, K::Not) && is(k[0], K::Top)) return bot();
    if (is(x, K::And) && is(k[0], K::Mat) && is(k[1], K::Mat) && equal(k[0]->kids[0], k[1]->kids[1]) &&
        equal(k[0]->kids[1], k[1]->kids[0]))
      return mk(K::Iff, k[0]->kids[0], k[0]->kids[1]);
    if (is(x, K::And) && is(k[0], K::Leq) && is(k[1], K::Leq) && equal(k[0]->kids[0], k[1]->kids[1]) &&
        equal(k[0]->kids[1], k[1]->kids[0]))
      return mk(K::Approx, k[0]->kids[0], k[0]->kids[1]);
    if (is(x, K::And) && is(k[0], K::Leq) && is(k[1], K::Not) && is(k[1]->kids[0], K::Leq) &&
        equal(k[0]->kids[0], k[1]->kids[0]->kids[1]) && equal(k[0]->kids[1], k[1]->kids[0]->kids[0]))
      return mk(K::Less, k[0]->kids[0], k[0]->kids[1]);
    return x;
  }
  if (nel) {
    if (is(x, K::NCoimpl) && is(k[0], K::NImpl) && is(k[1], K::NImpl) && is_leaf_atom(k[0]->kids[0]) &&
        equal(k[0]->kids[0], k[0]->kids[1]) && equal(k[0], k[1]))
      return bot();
    if (is(x, K::NImpl) && is(k[0], K::Bot) && is(k[1], K::Bot)) return top();
    if (is(x, K::NImpl) && is(k[1], K::Bot)) return mk(K::SNot, k[0]);
    if (is(x, K::SNot) && is(k[0], K::NCoimpl) && is(k[0]->kids[0], K::Top)) return mk(K::DeltaN, k[0]->kids[1]);
    if (is(x, K::DeltaN) && is(k[0], K::SImpl) && is(k[0]->kids[0], K::Top)) return mk(K::DeltaBangN, k[0]->kids[1]);
    if (is(x, K::And) && is(k[0], K::NImpl) && is(k[1], K::NImpl)) {
      const auto& p = k[0]->kids;
      const auto& q = k[1]->kids;
      if (is(q[0], K::Neg) && is(q[1], K::Neg) && equal(q[0]->kids[0], p[1]) && equal(q[1]->kids[0], p[0]))
        return mk(K::SImpl, p[0], p[1]);
      if (equal(p[0], q[1]) && equal(p[1], q[0])) return mk(K::Iff, p[0], p[1]);
    }
    if (is(x, K::And) && is(k[0], K::SImpl) && is(k[1], K::SImpl) && equal(k[0]->kids[0], k[1]->kids[1]) &&
        equal(k[0]->kids[1], k[1]->kids[0]))
      return mk(K::SIff, k[0]->kids[0], k[0]->kids[1]);
    return x;
  }
  if (l == Lang::BD) return x;
  // Gödel-style outer languages: BIG, QG, G2ORD, MCB.
  if (is(x, K::Impl) && is_leaf_atom(k[0]) && equal(k[0], k[1])) return top();
  if (is(x, K::Coimpl) && is_leaf_atom(k[0]) && equal(k[0], k[1])) return bot();
  if (is(x, K::Impl) && is(k[1], K::Bot)) {
    // delta is biG sugar only; in G2 the same shape is merely snot(Top -< a).
    if ((l == Lang::BIG || l == Lang::QG) && is(k[0], K::Coimpl) && is(k[0]->kids[0], K::Top))
      return mk(K::Delta, k[0]->kids[1]);
    return mk(K::SNot, k[0]);
  }
  if (is(x, K::And) && is(k[0], K::Impl) && is(k[1], K::Impl) && equal(k[0]->kids[0], k[1]->kids[1]) &&
      equal(k[0]->kids[1], k[1]->kids[0]))
    return mk(K::Iff, k[0]->kids[0], k[0]->kids[1]);
  // delta1 a := snot(Top -< a) & neg snot snot(Top -< a)
  if (is(x, K::And) && is(k[0], K::SNot) && is(k[1], K::Neg) && is(k[0]->kids[0], K::Coimpl) &&
      is(k[0]->kids[0]->kids[0], K::Top)) {
    const Expr& inner = k[1]->kids[0];
    if (is(inner, K::SNot) && is(inner->kids[0], K::SNot) && equal(inner->kids[0]->kids[0], k[0]->kids[0]))
      return mk(K::Delta1, k[0]->kids[0]->kids[1]);
  }
  return x;
}

Expr instantiate(const Expr& pattern, const std::vector<std::pair<std::string, Expr>>& binding) {
  if (pattern->kind == Kind::Meta) {
    for (const auto& [n, v] : binding)
      if (n == pattern->name) return v;
    throw std::invalid_argument("unbound metavariable $" + pattern->name);
  }
  if (pattern->kids.empty()) return pattern;
  std::vector<Expr> k;
  for (const auto& c : pattern->kids) k.push_back(instantiate(c, binding));
  return std::make_shared<const Node>(Node{pattern->kind, pattern->name, std::move(k)});
}

// ---------------------------------------------------------------- parsing

namespace {

enum class Tok { Ident, Meta, LParen, RParen, Op, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

const std::vector<std::string> kOps = {"<==>", "<->", "==>", "<=", "<<", "=>", "->", "-<", "~>", "~~", "~", "&", "|"};

std::vector<Token> lex(std::string_view s, bool allow_meta) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto word_char = [](char c) { return std::isalnum((unsigned char)c) || c == '_'; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    if (c == '(' || c == ')') {
      out.push_back({c == '(' ? Tok::LParen : Tok::RParen, std::string(1, c), i});
      ++i;
      continue;
    }
    if (c == '$' && allow_meta) {
      std::size_t j = i + 1;
      while (j < s.size() && word_char(s[j])) ++j;
      if (j == i + 1) throw SyntaxError("empty metavariable name", i);
      out.push_back({Tok::Meta, std::string(s.substr(i + 1, j - i - 1)), i});
      i = j;
      continue;
    }
    if (std::isalpha((unsigned char)c)) {
      std::size_t j = i;
      while (j < s.size() && word_char(s[j])) ++j;
      std::string w(s.substr(i, j - i));
      // "o-" is the Nelson co-implication unless it starts "->" or "-<".
      if (w == "o" && j < s.size() && s[j] == '-' && (j + 1 >= s.size() || (s[j + 1] != '>' && s[j + 1] != '<'))) {
        out.push_back({Tok::Op, "o-", i});
        i = j + 1;
        continue;
      }
      out.push_back({Tok::Ident, w, i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& op : kOps) {
      if (s.substr(i, op.size()) == op) {
        out.push_back({Tok::Op, op, i});
        i += op.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

const std::map<std::string, Kind> kUnaryWords = {{"neg", Kind::Neg},       {"snot", Kind::SNot},
                                                 {"delta", Kind::Delta},   {"delta1", Kind::Delta1},
                                                 {"deltaN", Kind::DeltaN}, {"deltaBangN", Kind::DeltaBangN}};
const std::map<std::string, Kind> kImplOps = {{"->", Kind::Impl},  {"-<", Kind::Coimpl}, {"~>", Kind::NImpl},
                                              {"o-", Kind::NCoimpl}, {"=>", Kind::Mat},  {"<->", Kind::Iff},
                                              {"==>", Kind::SImpl}, {"<==>", Kind::SIff}};
const std::map<std::string, Kind> kCmpOps = {{"<=", Kind::Leq}, {"~~", Kind::Approx}, {"<<", Kind::Less}};

bool valid_var(const std::string& w) {
  if (w.empty() || !(w[0] >= 'a' && w[0] <= 'z')) return false;
  for (char c : w)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  return true;
}

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Expr run() {
    Expr e = cmp();
    if (peek().type != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

private:
  const Token& peek() const { return t_[i_]; }
  Token take() { return t_[i_++]; }
  [[noreturn]] void fail(const std::string& m) const { throw SyntaxError(m, peek().pos); }
  bool is_op(const std::map<std::string, Kind>& ops) const { return peek().type == Tok::Op && ops.count(peek().text); }

  Expr cmp() {
    Expr l = impl();
    if (is_op(kCmpOps)) {
      Kind k = kCmpOps.at(take().text);
      Expr r = impl();
      if (is_op(kCmpOps)) fail("comparisons do not chain; add parentheses");
      return mk(k, l, r);
    }
    return l;
  }

  Expr impl() {
    Expr l = disj();
    if (is_op(kImplOps)) {
      Kind k = kImplOps.at(take().text);
      return mk(k, l, impl());
    }
    return l;
  }

  Expr disj() {
    Expr l = conj();
    while (peek().type == Tok::Op && peek().text == "|") {
      take();
      l = mk(Kind::Or, l, conj());
    }
    return l;
  }

  Expr conj() {
    Expr l = unary();
    while (peek().type == Tok::Op && peek().text == "&") {
      take();
      l = mk(Kind::And, l, unary());
    }
    return l;
  }

  Expr unary() {
    if (peek().type == Tok::Op && peek().text == "~") {
      take();
      return mk(Kind::Not, unary());
    }
    if (peek().type == Tok::Ident && kUnaryWords.count(peek().text)) {
      Kind k = kUnaryWords.at(take().text);
      return mk(k, unary());
    }
    return atom();
  }

  Expr atom() {
    const Token& tk = peek();
    switch (tk.type) {
      case Tok::LParen: {
        take();
        Expr e = cmp();
        if (peek().type != Tok::RParen) fail("expected ')'");
        take();
        return e;
      }
      case Tok::Meta: return meta(take().text);
      case Tok::Ident: {
        std::string w = tk.text;
        if (w == "Top") return take(), top();
        if (w == "Bot") return take(), bot();
        if (w == "B" || w == "C") {
          take();
          if (peek().type != Tok::LParen) fail("modal atom " + w + " needs parentheses");
          take();
          Expr e = cmp();
          if (peek().type != Tok::RParen) fail("expected ')'");
          take();
          return mk(w == "B" ? Kind::B : Kind::C, e);
        }
        if (!valid_var(w)) fail("'" + w + "' is not a variable");
        take();
        return var(w);
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + tk.text + "'");
    }
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
};

// Precedence levels: comparisons 0, implications 1, | 2, & 3, prefix 4, atoms 5.
int prec(Kind k) {
  switch (k) {
    case Kind::Leq:
    case Kind::Approx:
    case Kind::Less: return 0;
    case Kind::Impl:
    case Kind::Coimpl:
    case Kind::NImpl:
    case Kind::NCoimpl:
    case Kind::Mat:
    case Kind::Iff:
    case Kind::SImpl:
    case Kind::SIff: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::Not:
    case Kind::Neg:
    case Kind::SNot:
    case Kind::Delta:
    case Kind::Delta1:
    case Kind::DeltaN:
    case Kind::DeltaBangN: return 4;
    default: return 5;
  }
}

const char* op_text(Kind k) {
  switch (k) {
    case Kind::Leq: return "<=";
    case Kind::Approx: return "~~";
    case Kind::Less: return "<<";
    case Kind::Impl: return "->";
    case Kind::Coimpl: return "-<";
    case Kind::NImpl: return "~>";
    case Kind::NCoimpl: return "o-";
    case Kind::Mat: return "=>";
    case Kind::Iff: return "<->";
    case Kind::SImpl: return "==>";
    case Kind::SIff: return "<==>";
    case Kind::Or: return "|";
    case Kind::And: return "&";
    case Kind::Neg: return "neg";
    case Kind::SNot: return "snot";
    case Kind::Delta: return "delta";
    case Kind::Delta1: return "delta1";
    case Kind::DeltaN: return "deltaN";
    case Kind::DeltaBangN: return "deltaBangN";
    default: return "?";
  }
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

}  // namespace

Formula parse(Lang l, std::string_view text) {
  Expr e = Parser(lex(text, false)).run();
  check_language(l, e);
  return Formula{l, e};
}

Expr parse_pattern(Lang l, std::string_view text) {
  Expr e = Parser(lex(text, true)).run();
  check_language(l, e);
  return e;
}

std::string print(const Expr& e) {
  const Kind k = e->kind;
  switch (k) {
    case Kind::Var: return e->name;
    case Kind::Meta: return "$" + e->name;
    case Kind::Top: return "Top";
    case Kind::Bot: return "Bot";
    case Kind::B: return "B(" + print(e->kids[0]) + ")";
    case Kind::C: return "C(" + print(e->kids[0]) + ")";
    default: break;
  }
  const int p = prec(k);
  if (p == 4) {
    std::string s = print(e->kids[0]);
    if (prec(e->kids[0]->kind) < 4) s = paren(s);
    if (k == Kind::Not) return (s[0] == '~' ? "~ " : "~") + s;
    return std::string(op_text(k)) + " " + s;
  }
  std::string l = print(e->kids[0]), r = print(e->kids[1]);
  const int pl = prec(e->kids[0]->kind), pr = prec(e->kids[1]->kind);
  if (p == 1) {  // right-associative
    if (pl <= 1) l = paren(l);
    if (pr < 1) r = paren(r);
  } else if (p == 0) {
    if (pl <= 0) l = paren(l);
    if (pr <= 0) r = paren(r);
  } else {  // left-associative & and |
    if (pl < p) l = paren(l);
    if (pr <= p) r = paren(r);
  }
  return l + " " + op_text(k) + " " + r;
}

}  // namespace ql
