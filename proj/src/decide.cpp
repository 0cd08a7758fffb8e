#include "qlogic/decide.hpp"

#include <optional>
#include <type_traits>
#include <unordered_map>

#include "qlogic/calculi.hpp"

namespace ql {

bool for_each_order_type(int n, const std::function<bool(const std::vector<int>& level, int L)>& visit) {
  // block[i]: -1 for the 0-level, -2 for the 1-level, else an interior block id.
  // order lists interior block ids bottom-up; each new block is inserted at
  // every position, so each ordered partition arises exactly once.
  std::vector<int> block(n), order, level(n);
  int next_id = 0;
  std::function<bool(int)> go = [&](int i) -> bool {
    if (i == n) {
      const int L = static_cast<int>(order.size());
      std::vector<int> pos(next_id, 0);
      for (int j = 0; j < L; ++j) pos[order[j]] = j + 1;
      for (int t = 0; t < n; ++t) level[t] = block[t] == -1 ? 0 : block[t] == -2 ? L + 1 : pos[block[t]];
      return visit(level, L);
    }
    for (int b : {-1, -2}) {
      block[i] = b;
      if (!go(i + 1)) return false;
    }
    for (int id : std::vector<int>(order)) {
      block[i] = id;
      if (!go(i + 1)) return false;
    }
    const int id = next_id++;
    for (std::size_t j = 0; j <= order.size(); ++j) {
      order.insert(order.begin() + static_cast<long>(j), id);
      block[i] = id;
      bool cont = go(i + 1);
      order.erase(order.begin() + static_cast<long>(j));
      if (!cont) {
        --next_id;
        return false;
      }
    }
    --next_id;
    return true;
  };
  return go(0);
}

std::size_t count_order_types(int n) {
  // fubini[m] = ordered set partitions of m items; binom built by Pascal.
  std::vector<std::vector<std::size_t>> c(n + 1, std::vector<std::size_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
  }
  std::vector<std::size_t> fubini(n + 1, 0);
  fubini[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int j = 1; j <= m; ++j) fubini[m] += c[m][j] * fubini[m - j];
  std::size_t total = 0;
  for (int j = 0; j <= n; ++j) total += c[n][j] * (std::size_t(1) << j) * fubini[n - j];
  return total;
}

namespace {

// Outer atoms shared by a query, addressed by node identity during evaluation.
struct AtomTable {
  std::vector<Expr> atoms;
  std::unordered_map<std::string, int> by_text;
  std::unordered_map<const Node*, int> by_node;

  void add(const Expr& f) {
    if (f->kind == Kind::Var || is_modal(f->kind)) {
      auto [it, fresh] = by_text.emplace(print(f), static_cast<int>(atoms.size()));
      if (fresh) atoms.push_back(f);
      by_node[f.get()] = it->second;
      return;
    }
    for (const auto& k : f->kids) add(k);
  }
  int operator[](const Expr& a) const { return by_node.at(a.get()); }
};

void check_big(const Expr& f) {
  if (f->kind == Kind::B) {
    check_language(Lang::CPL, f->kids[0]);
    return;
  }
  if (!permitted(Lang::BIG, f->kind) && !permitted(Lang::QG, f->kind))
    throw LanguageError("connective '" + kind_name(f->kind) + "' is not a biG connective");
  for (const auto& k : f->kids) check_big(k);
}

void check_g2(Lang outer, const Expr& f) {
  if (f->kind == Kind::C) {
    check_language(Lang::BD, f->kids[0]);
    return;
  }
  if (!permitted(is_nelson(outer) ? Lang::G2NEL : Lang::G2ORD, f->kind))
    throw LanguageError("connective '" + kind_name(f->kind) + "' is not part of " + lang_name(outer));
  for (const auto& k : f->kids) check_g2(outer, k);
}

// biG values matter only up to order, so order-type search runs on integer
// levels 0..T with a postfix program per formula.
struct LevelProgram {
  enum Op : int { Atom, Top, Bot, And, Or, Impl, Coimpl, SNot, Delta, Iff };
  std::vector<std::pair<Op, int>> code;

  LevelProgram(const Expr& f, const AtomTable& t) { emit(f, t); }
  void emit(const Expr& f, const AtomTable& t) {
    for (const auto& k : f->kids)
      if (f->kind != Kind::B) emit(k, t);
    switch (f->kind) {
      case Kind::Var:
      case Kind::B: code.push_back({Atom, t[f]}); return;
      case Kind::Top: code.push_back({Top, 0}); return;
      case Kind::Bot: code.push_back({Bot, 0}); return;
      case Kind::And: code.push_back({And, 0}); return;
      case Kind::Or: code.push_back({Or, 0}); return;
      case Kind::Impl: code.push_back({Impl, 0}); return;
      case Kind::Coimpl: code.push_back({Coimpl, 0}); return;
      case Kind::SNot: code.push_back({SNot, 0}); return;
      case Kind::Delta: code.push_back({Delta, 0}); return;
      case Kind::Iff: code.push_back({Iff, 0}); return;
      default: throw EvalError("connective '" + kind_name(f->kind) + "' is not a biG connective");
    }
  }
  int run(const std::vector<int>& level, int T, std::vector<int>& st) const {
    st.clear();
    auto imp = [T](int a, int b) { return a <= b ? T : b; };
    for (const auto& [op, arg] : code) {
      if (op == Atom) {
        st.push_back(level[arg]);
        continue;
      }
      if (op == Top || op == Bot) {
        st.push_back(op == Top ? T : 0);
        continue;
      }
      if (op == SNot || op == Delta) {
        int& a = st.back();
        a = op == SNot ? (a == 0 ? T : 0) : (a == T ? T : 0);
        continue;
      }
      const int b = st.back();
      st.pop_back();
      int& a = st.back();
      switch (op) {
        case And: a = std::min(a, b); break;
        case Or: a = std::max(a, b); break;
        case Impl: a = imp(a, b); break;
        case Coimpl: a = a <= b ? 0 : a; break;
        default: a = std::min(imp(a, b), imp(b, a)); break;
      }
    }
    return st.back();
  }
};

struct BigQuery {
  std::vector<Expr> gamma, theorems;
  Expr goal;
  AtomTable table;
  std::vector<LevelProgram> gamma_p, theorem_p;
  std::optional<LevelProgram> goal_p;
  mutable std::vector<int> stack;

  BigQuery(const std::vector<Expr>& g, const Expr& f, const std::vector<Expr>& th) : gamma(g), theorems(th), goal(f) {
    for (const auto& x : gamma) check_big(x), table.add(x);
    for (const auto& x : theorems) check_big(x), table.add(x);
    check_big(goal);
    table.add(goal);
    for (const auto& x : gamma) gamma_p.emplace_back(x, table);
    for (const auto& x : theorems) theorem_p.emplace_back(x, table);
    goal_p.emplace(goal, table);
  }

  bool refutes_levels(const std::vector<int>& level, int T) const {
    for (const auto& t : theorem_p)
      if (t.run(level, T, stack) != T) return false;
    int inf = T;
    for (const auto& g : gamma_p) inf = std::min(inf, g.run(level, T, stack));
    return inf > goal_p->run(level, T, stack);
  }

  // Returns true iff the valuation refutes the query.
  bool refutes(const std::vector<UnitRational>& vals) const {
    AtomFn atom = [&](const Expr& a) { return vals[table[a]]; };
    for (const auto& t : theorems)
      if (!eval_big(t, atom).is_one()) return false;
    UnitRational inf = UnitRational::one();
    for (const auto& g : gamma) inf = meet(inf, eval_big(g, atom));
    return !(inf <= eval_big(goal, atom));
  }

  Verdict fail(const std::vector<UnitRational>& vals) const {
    Valuation w;
    for (std::size_t i = 0; i < table.atoms.size(); ++i) w[print(table.atoms[i])] = vals[i];
    return {false, w, std::nullopt};
  }
};

struct G2Query {
  Lang variant;
  std::vector<Expr> gamma, theorems;
  Expr goal;
  AtomTable table;

  G2Query(Lang v, const std::vector<Expr>& g, const Expr& f, const std::vector<Expr>& th)
      : variant(v), gamma(g), theorems(th), goal(f) {
    if (!is_twist(v)) throw LanguageError("g2_entails needs a G2 variant, got " + lang_name(v));
    const Lang outer = is_nelson(v) ? Lang::NMCB : Lang::MCB;
    for (const auto& x : gamma) check_g2(outer, x), table.add(x);
    for (const auto& x : theorems) check_g2(outer, x), table.add(x);
    check_g2(outer, goal);
    table.add(goal);
  }

  bool entailed(const std::vector<TwistValue>& gv, const TwistValue& x) const {
    UnitRational inf = UnitRational::one(), sup = UnitRational::zero();
    for (const auto& g : gv) inf = meet(inf, g.t), sup = join(sup, g.f);
    if (!(inf <= x.t)) return false;
    return is_nelson(variant) || sup >= x.f;
  }

  // vals holds (truth, falsity) of atom i at 2i, 2i+1.
  bool refutes(const std::vector<UnitRational>& vals) const {
    TwistAtomFn atom = [&](const Expr& a) {
      int i = table[a];
      return TwistValue{vals[2 * i], vals[2 * i + 1]};
    };
    for (const auto& t : theorems)
      if (!entailed({}, eval_g2(variant, t, atom))) return false;
    std::vector<TwistValue> gv;
    for (const auto& g : gamma) gv.push_back(eval_g2(variant, g, atom));
    return !entailed(gv, eval_g2(variant, goal, atom));
  }

  Verdict fail(const std::vector<UnitRational>& vals) const {
    TwistValuation w;
    for (std::size_t i = 0; i < table.atoms.size(); ++i) w[print(table.atoms[i])] = {vals[2 * i], vals[2 * i + 1]};
    return {false, std::nullopt, w};
  }
};

// Order types of n values placed on the grid with denominator n+1.
template <class Query>
Verdict search_order_types(const Query& q, int n) {
  Verdict out;
  std::vector<UnitRational> vals(n);
  const auto denom = static_cast<std::int64_t>(n + 1);
  for_each_order_type(n, [&](const std::vector<int>& level, int L) {
    if constexpr (std::is_same_v<Query, BigQuery>) {
      if (!q.refutes_levels(level, L + 1)) return true;
    }
    for (int i = 0; i < n; ++i)
      vals[i] = level[i] == L + 1 ? UnitRational::one() : UnitRational(level[i], denom);
    if (!q.refutes(vals)) return true;
    out = q.fail(vals);
    return false;
  });
  return out;
}

template <class Query>
Verdict search_grid(const Query& q, int n, int d) {
  if (d < 1) throw std::invalid_argument("grid denominator must be at least 1");
  std::vector<int> idx(n, 0);
  std::vector<UnitRational> vals(n);
  while (true) {
    for (int i = 0; i < n; ++i) vals[i] = UnitRational(idx[i], d);
    if (q.refutes(vals)) return q.fail(vals);
    int i = 0;
    while (i < n && idx[i] == d) idx[i++] = 0;
    if (i == n) return {};
    ++idx[i];
  }
}

}  // namespace

Verdict big_valid(const Expr& f) { return big_entails({}, f); }

Verdict big_entails(const std::vector<Expr>& gamma, const Expr& f, const std::vector<Expr>& theorems) {
  BigQuery q(gamma, f, theorems);
  return search_order_types(q, static_cast<int>(q.table.atoms.size()));
}

Verdict big_entails_grid(const std::vector<Expr>& gamma, const Expr& f, int d) {
  BigQuery q(gamma, f, {});
  return search_grid(q, static_cast<int>(q.table.atoms.size()), d);
}

Verdict g2_entails(Lang variant, const std::vector<Expr>& gamma, const Expr& f, const std::vector<Expr>& theorems) {
  G2Query q(variant, gamma, f, theorems);
  return search_order_types(q, 2 * static_cast<int>(q.table.atoms.size()));
}

Verdict g2_entails_grid(Lang variant, const std::vector<Expr>& gamma, const Expr& f, int d) {
  G2Query q(variant, gamma, f, {});
  return search_grid(q, 2 * static_cast<int>(q.table.atoms.size()), d);
}

std::vector<Expr> qg_saturation(const std::vector<Expr>& formulas) {
  AtomTable t;
  for (const auto& f : formulas) {
    check_language(Lang::QG, f);
    t.add(f);
  }
  t.add(mk(Kind::B, top()));
  t.add(mk(Kind::B, bot()));
  std::vector<Expr> inner;
  for (const auto& a : t.atoms) inner.push_back(a->kids[0]);
  std::vector<Expr> out;
  for (std::size_t i = 0; i < inner.size(); ++i)
    for (std::size_t j = 0; j < inner.size(); ++j) {
      if (i == j) continue;
      if (cpl_valid(mk(Kind::Mat, inner[i], inner[j]))) out.push_back(mk(Kind::Impl, t.atoms[i], t.atoms[j]));
      if (cpl_valid(inner[i]) && cpl_valid(mk(Kind::Not, inner[j])))
        out.push_back(mk(Kind::SNot, mk(Kind::Delta, mk(Kind::Impl, t.atoms[i], t.atoms[j]))));
    }
  return out;
}

Verdict qg_entails(const std::vector<Expr>& xi, const Expr& alpha) {
  std::vector<Expr> all(xi);
  all.push_back(alpha);
  return big_entails(xi, alpha, qg_saturation(all));
}

}  // namespace ql
