#include "qlogic/qp.hpp"

#include <algorithm>
#include <numeric>

#include "qlogic/lp.hpp"

namespace ql {

void validate(const GardenforsModel& m) {
  if (m.states < 1 || m.states > kMaxMeasureStates)
    throw std::invalid_argument("Gardenfors models need 1.." + std::to_string(kMaxMeasureStates) + " states");
  if (static_cast<int>(m.weights.size()) != m.states)
    throw std::invalid_argument("every state needs its own probability measure");
  for (int x = 0; x < m.states; ++x) {
    const auto& w = m.weights[x];
    if (static_cast<int>(w.size()) != m.states)
      throw std::invalid_argument("measure of state " + std::to_string(x) + " must weigh every state");
    Rational sum = 0;
    for (const auto& q : w) {
      if (q < Rational(0)) throw std::invalid_argument("negative weight at state " + std::to_string(x));
      sum += q;
    }
    if (sum != Rational(1)) throw std::invalid_argument("weights of state " + std::to_string(x) + " sum to " + sum.str());
  }
  for (const auto& [p, x] : m.v)
    if (x & ~full_mask(m.states)) throw std::invalid_argument("valuation of " + p + " names a missing state");
}

Rational prob(const std::vector<Rational>& w, Mask x) {
  Rational sum = 0;
  for (std::size_t s = 0; s < w.size(); ++s)
    if (x >> s & 1) sum += w[s];
  return sum;
}

namespace {

Mask extension(const GardenforsModel& m, const Expr& f) {
  const Mask all = full_mask(m.states);
  const auto& k = f->kids;
  auto ext = [&](const Expr& e) { return extension(m, e); };
  switch (f->kind) {
    case Kind::Var: {
      auto it = m.v.find(f->name);
      if (it == m.v.end()) throw EvalError("unbound variable " + f->name);
      return it->second;
    }
    case Kind::Top: return all;
    case Kind::Bot: return 0;
    case Kind::Not: return all & ~ext(k[0]);
    case Kind::And: return ext(k[0]) & ext(k[1]);
    case Kind::Or: return ext(k[0]) | ext(k[1]);
    case Kind::Mat: return (all & ~ext(k[0])) | ext(k[1]);
    case Kind::Iff: return all & ~(ext(k[0]) ^ ext(k[1]));
    case Kind::Leq: {
      Mask a = ext(k[0]), b = ext(k[1]), out = 0;
      for (int x = 0; x < m.states; ++x)
        if (prob(m.weights[x], a) <= prob(m.weights[x], b)) out |= Mask(1) << x;
      return out;
    }
    case Kind::Approx: return ext(mk(Kind::Leq, k[0], k[1])) & ext(mk(Kind::Leq, k[1], k[0]));
    case Kind::Less: return ext(mk(Kind::Leq, k[0], k[1])) & ~ext(mk(Kind::Leq, k[1], k[0]));
    default: throw LanguageError("connective '" + kind_name(f->kind) + "' is not part of language QP");
  }
}

}  // namespace

Mask qp_extension(const GardenforsModel& m, const Expr& f) {
  validate(m);
  check_language(Lang::QP, f);
  return extension(m, f);
}

bool qp_sat(const GardenforsModel& m, int x, const Expr& f) {
  if (x < 0 || x >= m.states) throw std::out_of_range("state " + std::to_string(x) + " out of range");
  return (qp_extension(m, f) >> x & 1) != 0;
}

bool qp_true(const GardenforsModel& m, const Expr& f) { return qp_extension(m, f) == full_mask(m.states); }

namespace {

Expr translate(const Expr& f) {
  const auto& k = f->kids;
  switch (f->kind) {
    case Kind::Leq: return mk(Kind::Delta, mk(Kind::Impl, mk(Kind::B, k[0]), mk(Kind::B, k[1])));
    case Kind::Approx: return mk(Kind::And, translate(mk(Kind::Leq, k[0], k[1])), translate(mk(Kind::Leq, k[1], k[0])));
    case Kind::Less:
      return mk(Kind::And, translate(mk(Kind::Leq, k[0], k[1])), mk(Kind::SNot, translate(mk(Kind::Leq, k[1], k[0]))));
    case Kind::Not: return mk(Kind::SNot, translate(k[0]));
    case Kind::Mat: return mk(Kind::Impl, translate(k[0]), translate(k[1]));
    case Kind::And:
    case Kind::Or:
    case Kind::Iff: return mk(f->kind, translate(k[0]), translate(k[1]));
    default: throw LanguageError("not a simple inequality formula");
  }
}

Expr chain(Kind k, const std::vector<Expr>& xs) {
  Expr out = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) out = mk(k, out, xs[i]);
  return out;
}

// All size-i subsets of {0..m-1} in lexicographic order.
std::vector<std::vector<bool>> combinations(int m, int i) {
  std::vector<std::vector<bool>> out;
  std::vector<int> pick(i);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<bool> in(m, false);
    for (int p : pick) in[p] = true;
    out.push_back(in);
    int j = i - 1;
    while (j >= 0 && pick[j] == m - i + j) --j;
    if (j < 0) return out;
    ++pick[j];
    for (int t = j + 1; t < i; ++t) pick[t] = pick[t - 1] + 1;
  }
}

void check_lists(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.empty() || a.size() != b.size()) throw std::invalid_argument("formula lists must be nonempty and of equal length");
}

Expr delta_leq(const Expr& a, const Expr& b) { return mk(Kind::Delta, mk(Kind::Impl, mk(Kind::B, a), mk(Kind::B, b))); }

}  // namespace

Expr translate_sif(const Expr& f) {
  check_language(Lang::QP, f);
  if (!is_sif(Formula{Lang::QP, f})) throw LanguageError("not a simple inequality formula: " + print(f));
  return translate(f);
}

Expr balance_disjunction(const std::vector<Expr>& phis, const std::vector<Expr>& chis) {
  check_lists(phis, chis);
  const int m = static_cast<int>(phis.size());
  std::vector<Expr> disjuncts;
  for (int i = 0; i <= m; ++i) {
    auto subsets = combinations(m, i);
    for (const auto& K : subsets)
      for (const auto& L : subsets) {
        std::vector<Expr> conj;
        for (int j = 0; j < m; ++j) conj.push_back(K[j] ? mk(Kind::Not, phis[j]) : phis[j]);
        for (int j = 0; j < m; ++j) conj.push_back(L[j] ? mk(Kind::Not, chis[j]) : chis[j]);
        disjuncts.push_back(chain(Kind::And, conj));
      }
  }
  return chain(Kind::Or, disjuncts);
}

Expr e_notation(const std::vector<Expr>& phis, const std::vector<Expr>& chis) {
  return mk(Kind::Approx, balance_disjunction(phis, chis), top());
}

Expr e_g_notation(const std::vector<Expr>& phis, const std::vector<Expr>& chis) {
  return mk(Kind::Delta, mk(Kind::Iff, mk(Kind::B, balance_disjunction(phis, chis)), mk(Kind::B, top())));
}

Expr a4_instance(const std::vector<Expr>& phis, const std::vector<Expr>& psis) {
  check_lists(phis, psis);
  const std::size_t m = phis.size();
  std::vector<Expr> conj = {e_notation(phis, psis)};
  for (std::size_t i = 0; i + 1 < m; ++i) conj.push_back(mk(Kind::Leq, phis[i], psis[i]));
  return mk(Kind::Mat, chain(Kind::And, conj), mk(Kind::Leq, psis[m - 1], phis[m - 1]));
}

Expr kps_instance(const std::vector<Expr>& phis, const std::vector<Expr>& chis) {
  check_lists(phis, chis);
  const std::size_t m = phis.size();
  std::vector<Expr> conj = {e_g_notation(phis, chis)};
  for (std::size_t i = 0; i + 1 < m; ++i) conj.push_back(delta_leq(phis[i], chis[i]));
  return mk(Kind::Impl, chain(Kind::And, conj), delta_leq(chis[m - 1], phis[m - 1]));
}

UncertaintyModel g_counterpart(const GardenforsModel& m, int x) {
  validate(m);
  if (x < 0 || x >= m.states) throw std::out_of_range("state " + std::to_string(x) + " out of range");
  UncertaintyModel out;
  out.frame.states = m.states;
  out.v = m.v;
  for (Mask s = 0; s <= full_mask(m.states); ++s) out.frame.mu.emplace_back(prob(m.weights[x], s));
  return out;
}

namespace {

void check_order(const OrderInstance& o) {
  if (o.states < 1 || o.states > kMaxLpStates)
    throw std::invalid_argument("order representation needs 1.." + std::to_string(kMaxLpStates) + " states");
  if (o.rank.size() != (std::size_t(1) << o.states)) throw std::invalid_argument("order must rank every subset");
}

// Subsets grouped into rank classes, lowest first.
std::vector<std::vector<Mask>> rank_classes(const OrderInstance& o) {
  std::map<int, std::vector<Mask>> by;
  for (Mask x = 0; x < o.rank.size(); ++x) by[o.rank[x]].push_back(x);
  std::vector<std::vector<Mask>> out;
  for (auto& [r, xs] : by) out.push_back(std::move(xs));
  return out;
}

}  // namespace

std::optional<MeasureWitness> represent_order_lp(int states, const std::vector<std::pair<Mask, Mask>>& strict,
                                                 const std::vector<std::pair<Mask, Mask>>& equal) {
  if (states < 1 || states > kMaxLpStates)
    throw std::invalid_argument("order representation needs 1.." + std::to_string(kMaxLpStates) + " states");
  using lp::Q;
  const int n = states;  // columns 0..n-1 are weights, column n is eps
  std::vector<lp::Row> rows;
  lp::Row sum{std::vector<Q>(n + 1, Q(1)), lp::Sense::Eq, Q(1)};
  sum.a[n] = 0;
  rows.push_back(sum);
  auto diff = [&](Mask x, Mask y) {
    std::vector<Q> a(n + 1, Q(0));
    for (int s = 0; s < n; ++s) a[s] = int(x >> s & 1) - int(y >> s & 1);
    return a;
  };
  for (auto [x, y] : strict) {
    auto a = diff(x, y);
    a[n] = 1;
    rows.push_back({a, lp::Sense::Le, Q(0)});
  }
  for (auto [x, y] : equal) rows.push_back({diff(x, y), lp::Sense::Eq, Q(0)});
  std::vector<Q> cap(n + 1, Q(0));
  cap[n] = 1;
  rows.push_back({cap, lp::Sense::Le, Q(1)});
  std::vector<Q> obj(n + 1, Q(0));
  obj[n] = 1;
  auto r = lp::maximize(obj, rows);
  if (r.status != lp::Result::Status::Optimal || r.value <= 0) return std::nullopt;
  MeasureWitness w;
  for (int s = 0; s < n; ++s) w.weights.push_back(lp::to_rational(r.x[s]));
  w.epsilon = lp::to_rational(r.value);
  return w;
}

std::optional<MeasureWitness> represent_order_lp(const OrderInstance& o) {
  check_order(o);
  auto classes = rank_classes(o);
  std::vector<std::pair<Mask, Mask>> strict, equal;
  // Consecutive classes suffice: the strict chain is transitive.
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = 1; j < classes[i].size(); ++j) equal.push_back({classes[i][0], classes[i][j]});
    if (i + 1 < classes.size()) strict.push_back({classes[i][0], classes[i + 1][0]});
  }
  return represent_order_lp(o.states, strict, equal);
}

bool witness_agrees(const OrderInstance& o, const MeasureWitness& w) {
  check_order(o);
  if (static_cast<int>(w.weights.size()) != o.states || !(w.epsilon > Rational(0))) return false;
  Rational sum = 0;
  for (const auto& q : w.weights) {
    if (q < Rational(0)) return false;
    sum += q;
  }
  if (sum != Rational(1)) return false;
  auto classes = rank_classes(o);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const Rational p = prob(w.weights, classes[i][0]);
    for (Mask x : classes[i])
      if (prob(w.weights, x) != p) return false;
    if (i + 1 < classes.size() && !(p < prob(w.weights, classes[i + 1][0]))) return false;
  }
  return true;
}

OrderInstance order_of(const Frame& f) {
  validate(f);
  if (f.states > kMaxLpStates) throw std::invalid_argument("order representation is bounded to 12 states");
  std::vector<UnitRational> vals(f.mu);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  OrderInstance o{f.states, {}};
  for (const auto& v : f.mu)
    o.rank.push_back(static_cast<int>(std::lower_bound(vals.begin(), vals.end(), v) - vals.begin()));
  return o;
}

std::optional<QpCounterpart> qp_counterpart(const UncertaintyModel& m) {
  auto o = order_of(m.frame);
  auto w = represent_order_lp(o);
  if (!w) return std::nullopt;
  GardenforsModel g{m.frame.states, std::vector<std::vector<Rational>>(m.frame.states, w->weights), m.v};
  return QpCounterpart{g, 0, *w};
}

}  // namespace ql
