#include "qlogic/kripke.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace ql {

Mask up_set(const G2KripkeModel& m, int s) {
  Mask out = 0;
  for (int t = 0; t < m.states; ++t)
    if (m.rank[t] >= m.rank[s]) out |= Mask(1) << t;
  return out;
}

Mask down_set(const G2KripkeModel& m, int s) {
  Mask out = 0;
  for (int t = 0; t < m.states; ++t)
    if (m.rank[t] <= m.rank[s]) out |= Mask(1) << t;
  return out;
}

bool is_up_set(const G2KripkeModel& m, Mask x) {
  for (int s = 0; s < m.states; ++s)
    if ((x >> s & 1) && (up_set(m, s) & ~x)) return false;
  return true;
}

void validate(const G2KripkeModel& m) {
  if (m.states < 1 || m.states > 64) throw std::invalid_argument("Kripke model needs 1..64 states");
  if (static_cast<int>(m.rank.size()) != m.states) throw std::invalid_argument("rank must list every state");
  std::vector<int> sorted(m.rank);
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < m.states; ++i)
    if (sorted[i] != i) throw std::invalid_argument("rank must be a permutation of 0..states-1");
  for (const auto* side : {&m.vplus, &m.vminus})
    for (const auto& [p, x] : *side) {
      if (x & ~full_mask(m.states)) throw std::invalid_argument("valuation of " + p + " names a missing state");
      if (!is_up_set(m, x)) throw std::invalid_argument("valuation of " + p + " is not upward closed");
    }
}

namespace {

// Sugar in terms of primitives and the constants Top = (W, {}), Bot = ({}, W).
Expr expand_sugar(const Expr& f, bool nel) {
  const auto& k = f->kids;
  const Kind imp = nel ? Kind::NImpl : Kind::Impl;
  switch (f->kind) {
    case Kind::SNot: return mk(imp, k[0], bot());
    case Kind::Delta1: {
      Expr x = mk(Kind::Coimpl, top(), k[0]);
      return mk(Kind::And, mk(Kind::SNot, x), mk(Kind::Neg, mk(Kind::SNot, mk(Kind::SNot, x))));
    }
    case Kind::DeltaN: return mk(Kind::SNot, mk(Kind::NCoimpl, top(), k[0]));
    case Kind::DeltaBangN: return mk(Kind::DeltaN, mk(Kind::SImpl, top(), k[0]));
    case Kind::Iff: return mk(Kind::And, mk(imp, k[0], k[1]), mk(imp, k[1], k[0]));
    case Kind::SImpl:
      return mk(Kind::And, mk(Kind::NImpl, k[0], k[1]), mk(Kind::NImpl, mk(Kind::Neg, k[1]), mk(Kind::Neg, k[0])));
    case Kind::SIff: return mk(Kind::And, mk(Kind::SImpl, k[0], k[1]), mk(Kind::SImpl, k[1], k[0]));
    default: throw LanguageError("connective '" + kind_name(f->kind) + "' has no Kripke clause");
  }
}

struct Evaluator {
  const G2KripkeModel& m;
  bool nel;
  CoimplReading reading;
  std::vector<Mask> up, down;
  Mask all;

  Evaluator(const G2KripkeModel& model, bool n, CoimplReading r) : m(model), nel(n), reading(r) {
    all = full_mask(m.states);
    for (int s = 0; s < m.states; ++s) up.push_back(up_set(m, s)), down.push_back(down_set(m, s));
  }

  template <class Pred>
  Mask states_where(Pred p) const {
    Mask out = 0;
    for (int s = 0; s < m.states; ++s)
      if (p(s)) out |= Mask(1) << s;
    return out;
  }

  std::pair<Mask, Mask> eval(const Expr& f) const {
    switch (f->kind) {
      case Kind::Var: {
        auto ip = m.vplus.find(f->name), in = m.vminus.find(f->name);
        return {ip == m.vplus.end() ? 0 : ip->second, in == m.vminus.end() ? 0 : in->second};
      }
      case Kind::Top: return {all, 0};
      case Kind::Bot: return {0, all};
      case Kind::Neg: {
        auto [p, n] = eval(f->kids[0]);
        return {n, p};
      }
      case Kind::And: {
        auto a = eval(f->kids[0]), b = eval(f->kids[1]);
        return {a.first & b.first, a.second | b.second};
      }
      case Kind::Or: {
        auto a = eval(f->kids[0]), b = eval(f->kids[1]);
        return {a.first | b.first, a.second & b.second};
      }
      case Kind::Impl:
      case Kind::NImpl: {
        auto a = eval(f->kids[0]), b = eval(f->kids[1]);
        Mask pos = states_where([&](int s) { return (up[s] & a.first & ~b.first) == 0; });
        Mask neg = f->kind == Kind::NImpl ? (a.first & b.second)
                                          : states_where([&](int s) { return (down[s] & ~a.second & b.second) != 0; });
        return {pos, neg};
      }
      case Kind::Coimpl:
      case Kind::NCoimpl: {
        auto a = eval(f->kids[0]), b = eval(f->kids[1]);
        Mask pos = states_where([&](int s) { return (down[s] & a.first & ~b.first) != 0; });
        Mask neg;
        if (f->kind == Kind::NCoimpl)
          neg = a.second | b.first;
        else if (reading == CoimplReading::Corrected)
          neg = states_where([&](int s) { return (up[s] & b.second & ~a.second) == 0; });
        else
          neg = states_where([&](int s) { return (down[s] & ~a.second & b.second) == 0; });
        return {pos, neg};
      }
      default: return eval(expand_sugar(f, nel));
    }
  }
};

}  // namespace

std::pair<Mask, Mask> ksets(const G2KripkeModel& m, const Expr& f, Lang variant, CoimplReading r) {
  if (!is_twist(variant)) throw LanguageError("Kripke semantics needs a G2 variant");
  check_language(is_nelson(variant) ? Lang::G2NEL : Lang::G2ORD, f);
  validate(m);
  return Evaluator(m, is_nelson(variant), r).eval(f);
}

Support ksupport(const G2KripkeModel& m, int s, const Expr& f, Lang variant, CoimplReading r) {
  if (s < 0 || s >= m.states) throw std::out_of_range("state " + std::to_string(s) + " out of range");
  auto [p, n] = ksets(m, f, variant, r);
  return {(p >> s & 1) != 0, (n >> s & 1) != 0};
}

bool globally_pos(const G2KripkeModel& m, const Expr& f, Lang variant) {
  return ksets(m, f, variant).first == full_mask(m.states);
}

bool globally_neg(const G2KripkeModel& m, const Expr& f, Lang variant) {
  return ksets(m, f, variant).second == full_mask(m.states);
}

KVerdict kentails(const std::vector<Expr>& gamma, const Expr& f, Lang variant, int max_states, CoimplReading r) {
  std::set<std::string> names = vars(f);
  for (const auto& g : gamma) {
    auto v = vars(g);
    names.insert(v.begin(), v.end());
  }
  std::vector<std::string> vs(names.begin(), names.end());
  const bool nel = is_nelson(variant);
  check_language(nel ? Lang::G2NEL : Lang::G2ORD, f);
  for (const auto& g : gamma) check_language(nel ? Lang::G2NEL : Lang::G2ORD, g);
  for (int n = 1; n <= max_states; ++n) {
    // On the chain 0 < 1 < ... < n-1, the up-sets are the top segments [k, n).
    G2KripkeModel m;
    m.states = n;
    for (int s = 0; s < n; ++s) m.rank.push_back(s);
    const std::size_t slots = 2 * vs.size();
    std::vector<int> cut(slots, 0);
    auto segment = [&](int k) { return full_mask(n) & ~full_mask(k); };
    while (true) {
      for (std::size_t i = 0; i < vs.size(); ++i) {
        m.vplus[vs[i]] = segment(cut[2 * i]);
        m.vminus[vs[i]] = segment(cut[2 * i + 1]);
      }
      Evaluator ev(m, nel, r);
      Mask prem = full_mask(n);
      for (const auto& g : gamma) prem &= ev.eval(g).first;
      Mask bad = prem & ~ev.eval(f).first;
      if (bad) {
        int s = 0;
        while (!(bad >> s & 1)) ++s;
        return {false, m, s};
      }
      std::size_t i = 0;
      while (i < slots && cut[i] == n) cut[i++] = 0;
      if (i == slots) break;
      ++cut[i];
    }
  }
  return {};
}

G2KripkeModel valuation_to_model(const TwistValuation& e) {
  std::set<UnitRational> distinct;
  for (const auto& [p, x] : e) distinct.insert(x.t), distinct.insert(x.f);
  std::vector<UnitRational> interior;
  for (const auto& v : distinct)
    if (!v.is_zero() && !v.is_one()) interior.push_back(v);
  G2KripkeModel m;
  m.states = static_cast<int>(distinct.size()) + 1;
  for (int s = 0; s < m.states; ++s) m.rank.push_back(s);
  auto to_set = [&](const UnitRational& v) -> Mask {
    if (v.is_zero()) return 0;
    if (v.is_one()) return full_mask(m.states);
    auto i = static_cast<int>(std::lower_bound(interior.begin(), interior.end(), v) - interior.begin()) + 1;
    return full_mask(m.states) & ~full_mask(m.states - i);
  };
  for (const auto& [p, x] : e) {
    m.vplus[p] = to_set(x.t);
    m.vminus[p] = to_set(x.f);
  }
  return m;
}

ValuationReport model_to_valuation(const G2KripkeModel& m) {
  validate(m);
  ValuationReport out;
  auto value = [&](Mask x) { return UnitRational(std::popcount(x), m.states); };
  std::vector<std::pair<std::string, Mask>> sides;
  std::set<std::string> names;
  for (const auto& [p, x] : m.vplus) names.insert(p);
  for (const auto& [p, x] : m.vminus) names.insert(p);
  for (const auto& p : names) {
    auto ip = m.vplus.find(p), in = m.vminus.find(p);
    Mask pos = ip == m.vplus.end() ? 0 : ip->second, neg = in == m.vminus.end() ? 0 : in->second;
    out.solution[p] = {value(pos), value(neg)};
    sides.push_back({"e1(" + p + ")", pos});
    sides.push_back({"e2(" + p + ")", neg});
  }
  const Mask all = full_mask(m.states);
  for (const auto& [name, x] : sides) {
    if (x == all) out.constraints.push_back(name + " = 1");
    if (x == 0) out.constraints.push_back(name + " = 0");
  }
  for (const auto& [a, x] : sides)
    for (const auto& [b, y] : sides)
      if (a != b && (x & ~y) == 0) out.constraints.push_back(a + " <= " + b);
  return out;
}

}  // namespace ql
