#include "qlogic/measures.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <set>

#include "qlogic/calculi.hpp"

namespace ql {

namespace {

std::size_t table_size(int states) { return std::size_t(1) << states; }

void check_states(int states) {
  if (states < 1 || states > kMaxMeasureStates)
    throw std::invalid_argument("measure tables need 1.." + std::to_string(kMaxMeasureStates) + " states");
}

const UnitRational& at(const Frame& f, Mask x) { return f.mu[x]; }

std::vector<std::string> inner_vars(const std::vector<Expr>& fs) {
  std::set<std::string> names;
  for (const auto& f : fs) {
    auto v = vars(f);
    names.insert(v.begin(), v.end());
  }
  return {names.begin(), names.end()};
}

// Calls visit for every assignment of the n slots to masks of `states` states.
bool for_each_assignment(std::size_t slots, int states, const std::function<bool(const std::vector<Mask>&)>& visit) {
  std::vector<Mask> a(slots, 0);
  const Mask top = full_mask(states);
  while (true) {
    if (!visit(a)) return false;
    std::size_t i = 0;
    while (i < slots && a[i] == top) a[i++] = 0;
    if (i == slots) return true;
    ++a[i];
  }
}

}  // namespace

void validate(const Frame& f) {
  check_states(f.states);
  if (f.mu.size() != table_size(f.states))
    throw std::invalid_argument("measure table must list all " + std::to_string(table_size(f.states)) + " subsets");
}

Frame make_frame(int states, std::vector<UnitRational> mu) {
  Frame f{states, std::move(mu)};
  validate(f);
  return f;
}

Mask cpl_extension(const Expr& phi, int states, const std::map<std::string, Mask>& v) {
  const Mask all = full_mask(states);
  const auto& k = phi->kids;
  switch (phi->kind) {
    case Kind::Var: {
      auto it = v.find(phi->name);
      if (it == v.end()) throw EvalError("unbound variable " + phi->name);
      return it->second & all;
    }
    case Kind::Top: return all;
    case Kind::Bot: return 0;
    case Kind::Not: return all & ~cpl_extension(k[0], states, v);
    case Kind::And: return cpl_extension(k[0], states, v) & cpl_extension(k[1], states, v);
    case Kind::Or: return cpl_extension(k[0], states, v) | cpl_extension(k[1], states, v);
    case Kind::Mat: return (all & ~cpl_extension(k[0], states, v)) | cpl_extension(k[1], states, v);
    case Kind::Iff: {
      Mask a = cpl_extension(k[0], states, v), b = cpl_extension(k[1], states, v);
      return all & ~(a ^ b);
    }
    default: throw LanguageError("connective '" + kind_name(phi->kind) + "' is not part of language CPL");
  }
}

UnitRational eval_qg(const UncertaintyModel& m, const Expr& alpha) {
  validate(m.frame);
  check_language(Lang::QG, alpha);
  return eval_big(alpha, [&](const Expr& a) -> UnitRational {
    if (a->kind != Kind::B) throw EvalError("unexpected atom " + print(a));
    return at(m.frame, cpl_extension(a->kids[0], m.frame.states, m.v));
  });
}

TwistValue eval_layer(const BeliefModel& m, Lang variant, const Expr& alpha) {
  if (variant != Lang::MCB && variant != Lang::NMCB) throw LanguageError("eval_layer needs MCB or NMCB");
  validate(m.frame);
  check_language(variant, alpha);
  BDModel bd{m.frame.states, m.vplus, m.vminus};
  return eval_g2(variant, alpha, [&](const Expr& a) -> TwistValue {
    if (a->kind != Kind::C) throw EvalError("unexpected atom " + print(a));
    for (const auto& p : vars(a->kids[0]))
      if (!m.vplus.count(p) && !m.vminus.count(p)) throw EvalError("unbound variable " + p);
    auto [pos, neg] = truth_sets(bd, a->kids[0]);
    return {at(m.frame, pos), at(m.frame, neg)};
  });
}

std::string property_name(Property p) {
  switch (p) {
    case Property::monotone: return "monotone";
    case Property::nontrivial: return "nontrivial";
    case Property::capacity: return "capacity";
    case Property::cond_I: return "cond_I";
    case Property::cond_II: return "cond_II";
    case Property::cond_III: return "cond_III";
    case Property::cond_IV: return "cond_IV";
    case Property::muPM: return "muPM";
    case Property::muKPS: return "muKPS";
    case Property::mcb_I: return "mcb_I";
    case Property::mcb_II: return "mcb_II";
    case Property::mcb_III: return "mcb_III";
    case Property::mcb_IV: return "mcb_IV";
  }
  return "?";
}

Property property_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Property::mcb_IV); ++i)
    if (property_name(static_cast<Property>(i)) == name) return static_cast<Property>(i);
  throw std::invalid_argument("unknown property '" + std::string(name) + "'");
}

namespace {

using Tuple = std::vector<Mask>;

PropertyResult ok() { return {}; }
PropertyResult bad(Tuple t) { return {false, std::move(t)}; }

PropertyResult check_monotone(const Frame& f) {
  const std::size_t size = table_size(f.states);
  for (Mask x = 0; x < size; ++x)
    for (int s = 0; s < f.states; ++s)
      if (!(x >> s & 1) && at(f, x) > at(f, x | Mask(1) << s)) return bad({x, x | Mask(1) << s});
  return ok();
}

// Calls test on every k-tuple of subsets; stops at the first false.
PropertyResult for_all_tuples(const Frame& f, std::size_t k, const std::function<bool(const Tuple&)>& test) {
  PropertyResult r;
  for_each_assignment(k, f.states, [&](const Tuple& t) {
    if (test(t)) return true;
    r = bad(t);
    return false;
  });
  return r;
}

// Difference vectors d(w) = |{i: w in X_i}| - |{i: w in Y_i}| over m-1 pairs with
// mu(X_i) <= mu(Y_i); a strict pair closing the balance is a violation.
PropertyResult check_kps(const Frame& f, int m) {
  if (m < 1 || m > kMaxKpsPairs)
    throw std::invalid_argument("muKPS needs 1 <= m <= " + std::to_string(kMaxKpsPairs));
  const int n = f.states;
  const int span = 2 * (m - 1) + 1;
  std::size_t cells = 1;
  for (int i = 0; i < n; ++i) {
    cells *= static_cast<std::size_t>(span);
    if (cells > 4'000'000) throw std::invalid_argument("muKPS bound exceeded: too many states for this m");
  }
  const Mask size = table_size(n);
  std::vector<std::pair<Mask, Mask>> allowed, strict;
  for (Mask x = 0; x < size; ++x)
    for (Mask y = 0; y < size; ++y) {
      if (at(f, x) <= at(f, y)) allowed.push_back({x, y});
      if (at(f, x) < at(f, y)) strict.push_back({x, y});
    }
  std::vector<std::size_t> stride(n);
  for (int i = 0, s = 1; i < n; ++i, s *= span) stride[i] = static_cast<std::size_t>(s);
  const int off = m - 1;
  auto encode = [&](const std::vector<int>& d) {
    std::size_t c = 0;
    for (int i = 0; i < n; ++i) c += static_cast<std::size_t>(d[i] + off) * stride[i];
    return c;
  };
  auto decode = [&](std::size_t c) {
    std::vector<int> d(n);
    for (int i = 0; i < n; ++i) d[i] = static_cast<int>(c / stride[i] % span) - off;
    return d;
  };
  // level[k][c] = (previous cell, pair index) of a sum of k allowed pairs; none when unreachable.
  constexpr std::size_t none = ~std::size_t(0);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> level(m);
  level[0].assign(cells, {none, none});
  std::vector<int> zero(n, 0);
  level[0][encode(zero)] = {0, 0};
  auto reached = [&](int k, std::size_t c) { return level[k][c].first != none; };
  for (int k = 1; k < m; ++k) {
    level[k].assign(cells, {none, none});
    for (std::size_t c = 0; c < cells; ++c) {
      if (!reached(k - 1, c)) continue;
      auto d = decode(c);
      for (std::size_t p = 0; p < allowed.size(); ++p) {
        auto [x, y] = allowed[p];
        std::vector<int> e(d);
        bool inside = true;
        for (int i = 0; i < n && inside; ++i) {
          e[i] += int(x >> i & 1) - int(y >> i & 1);
          inside = e[i] >= -off && e[i] <= off;
        }
        if (!inside) continue;
        std::size_t ce = encode(e);
        if (!reached(k, ce)) level[k][ce] = {c, p};
      }
    }
  }
  for (auto [x, y] : strict) {
    std::vector<int> need(n);
    bool inside = true;
    for (int i = 0; i < n; ++i) {
      need[i] = int(y >> i & 1) - int(x >> i & 1);
      inside = inside && need[i] >= -off && need[i] <= off;
    }
    if (!inside) continue;
    std::size_t c = encode(need);
    if (!reached(m - 1, c)) continue;
    Tuple xs, ys;
    for (int k = m - 1; k >= 1; --k) {
      auto [prev, p] = level[k][c];
      xs.push_back(allowed[p].first);
      ys.push_back(allowed[p].second);
      c = prev;
    }
    std::reverse(xs.begin(), xs.end());
    std::reverse(ys.begin(), ys.end());
    xs.push_back(x);
    ys.push_back(y);
    xs.insert(xs.end(), ys.begin(), ys.end());
    return bad(xs);
  }
  return ok();
}

}  // namespace

PropertyResult check_property(const Frame& f, Property p, int m) {
  validate(f);
  const Mask all = full_mask(f.states);
  const UnitRational zero = UnitRational::zero(), one = UnitRational::one();
  auto mu = [&](Mask x) -> const UnitRational& { return at(f, x); };
  switch (p) {
    case Property::monotone: return check_monotone(f);
    case Property::nontrivial: return mu(all) > mu(0) ? ok() : bad({0, all});
    case Property::capacity: {
      auto r = check_monotone(f);
      if (!r.holds) return r;
      if (!mu(0).is_zero()) return bad({0});
      if (!mu(all).is_one()) return bad({all});
      return ok();
    }
    case Property::cond_I:
      return for_all_tuples(f, 1, [&](const Tuple& t) { return (mu(t[0]) == one) == (mu(all & ~t[0]) == zero); });
    case Property::cond_II:
      return for_all_tuples(f, 2, [&](const Tuple& t) {
        const Mask y = t[0], y2 = t[1];
        if (!(mu(y & y2) == zero && mu(y) > zero && mu(y2) > zero)) return true;
        return mu(y | y2) > mu(y) && mu(y | y2) > mu(y2);
      });
    case Property::cond_III:
    case Property::mcb_IV:
      return for_all_tuples(f, 2, [&](const Tuple& t) { return mu(t[0]) != zero || mu(t[0] | t[1]) == mu(t[1]); });
    case Property::cond_IV: return check_property(f, Property::capacity);
    case Property::muPM:
      return for_all_tuples(f, 3, [&](const Tuple& t) {
        const Mask x = t[0], y = t[1], z = t[2];
        if ((x & ~y) || x == y || !(mu(x) < mu(y)) || (y & z)) return true;
        return mu(x | z) < mu(y | z);
      });
    case Property::muKPS: return check_kps(f, m);
    case Property::mcb_I:
      return for_all_tuples(f, 4, [&](const Tuple& t) {
        const Mask x = t[0], x2 = t[1], y = t[2], y2 = t[3];
        if (!(mu(x & x2) == zero && mu(y | y2) == one && mu(x) != zero && mu(x2) != zero && mu(y) != one &&
              mu(y2) != one))
          return true;
        return (mu(x | x2) > mu(x) && mu(x | x2) > mu(x2)) || (mu(y & y2) < mu(y) && mu(y & y2) < mu(y2));
      });
    case Property::mcb_II:
      return for_all_tuples(f, 4, [&](const Tuple& t) {
        const Mask x = t[0], x2 = t[1], y = t[2], y2 = t[3];
        if (!(mu(x) == zero && mu(y) == one)) return true;
        return mu(x | x2) == mu(x2) && mu(y & y2) == mu(y2);
      });
    case Property::mcb_III:
      return for_all_tuples(f, 2, [&](const Tuple& t) {
        const Mask y = t[0], y2 = t[1];
        if ((y & y2) || !(mu(y) > zero && mu(y2) > zero)) return true;
        return mu(y | y2) > mu(y) && mu(y | y2) > mu(y2);
      });
  }
  return ok();
}

std::string layer_name(Layer l) {
  switch (l) {
    case Layer::QG: return "QG";
    case Layer::MCB: return "MCB";
    case Layer::NMCB: return "NMCB";
  }
  return "?";
}

Layer layer_from_name(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  if (s == "QG") return Layer::QG;
  if (s == "MCB") return Layer::MCB;
  if (s == "NMCB") return Layer::NMCB;
  throw std::invalid_argument("unknown layer '" + std::string(name) + "'");
}

Lang layer_lang(Layer l) { return l == Layer::QG ? Lang::QG : l == Layer::MCB ? Lang::MCB : Lang::NMCB; }

const std::vector<NamedFormula>& named_formulas() {
  // q stands for p'.
  static const std::vector<NamedFormula> table = {
      {"1compl", Layer::QG, Property::cond_I, "delta B(p) <-> snot B(~p)"},
      {"disj+", Layer::QG, Property::cond_II,
       "(snot B(p & q) & snot snot B(p) & snot snot B(q)) -> (snot delta(B(p | q) -> B(p)) & snot delta(B(p | q) -> "
       "B(q)))"},
      {"disj0", Layer::QG, Property::cond_III, "snot B(p) -> delta(B(q) <-> B(p | q))"},
      {"cap", Layer::QG, Property::cond_IV, "B(Top) & snot B(Bot)"},
      {"disj+neg", Layer::MCB, Property::mcb_I,
       "(delta1 snot C(p & q) & snot delta1 snot C(p) & snot delta1 snot C(q)) -> (snot delta1(C(p | q) -> C(p)) & "
       "snot delta1(C(p | q) -> C(q)))"},
      {"disj0neg", Layer::MCB, Property::mcb_II, "delta1 snot C(p) -> delta1(C(q) <-> C(p | q))"},
      {"disj+N", Layer::NMCB, Property::mcb_III,
       "(deltaN snot C(p & q) & snot snot C(p) & snot snot C(q)) ~> (snot deltaN(C(p | q) ~> C(p)) & snot "
       "deltaN(C(p | q) ~> C(q)))"},
      {"disj0N", Layer::NMCB, Property::mcb_IV, "deltaN snot C(p) ~> deltaN(C(q) <-> C(p | q))"},
  };
  return table;
}

const NamedFormula& named_formula(std::string_view name) {
  for (const auto& nf : named_formulas())
    if (nf.name == name) return nf;
  throw std::invalid_argument("unknown named formula '" + std::string(name) + "'");
}

namespace {

constexpr int kMaxFrameVars = 4;

bool twist_entailed(Lang variant, const std::vector<TwistValue>& gv, const TwistValue& x) {
  UnitRational inf = UnitRational::one(), sup = UnitRational::zero();
  for (const auto& g : gv) inf = meet(inf, g.t), sup = join(sup, g.f);
  if (!(inf <= x.t)) return false;
  return is_nelson(variant) || sup >= x.f;
}

// Searches the inner valuations of one frame for a model refuting xi |= alpha.
FrameVerdict refute_on_frame(const Frame& f, const std::vector<Expr>& xi, const Expr& alpha, Layer layer) {
  std::vector<Expr> all(xi);
  all.push_back(alpha);
  const Lang lang = layer_lang(layer);
  for (const auto& x : all) check_language(lang, x);
  auto names = inner_vars(all);
  if (static_cast<int>(names.size()) > kMaxFrameVars)
    throw std::invalid_argument("frame validity is bounded to " + std::to_string(kMaxFrameVars) + " variables");
  FrameVerdict out;
  if (layer == Layer::QG) {
    UncertaintyModel m{f, {}};
    for_each_assignment(names.size(), f.states, [&](const std::vector<Mask>& a) {
      for (std::size_t i = 0; i < names.size(); ++i) m.v[names[i]] = a[i];
      UnitRational inf = UnitRational::one();
      for (const auto& x : xi) inf = meet(inf, eval_qg(m, x));
      if (inf <= eval_qg(m, alpha)) return true;
      out.holds = false;
      out.qg_counter = m;
      return false;
    });
    return out;
  }
  BeliefModel m{f, {}, {}};
  for_each_assignment(2 * names.size(), f.states, [&](const std::vector<Mask>& a) {
    for (std::size_t i = 0; i < names.size(); ++i) m.vplus[names[i]] = a[2 * i], m.vminus[names[i]] = a[2 * i + 1];
    std::vector<TwistValue> gv;
    for (const auto& x : xi) gv.push_back(eval_layer(m, lang, x));
    if (twist_entailed(lang, gv, eval_layer(m, lang, alpha))) return true;
    out.holds = false;
    out.layer_counter = m;
    return false;
  });
  return out;
}

bool in_class(const Frame& f, const FrameClass& cls) {
  if (cls.monotone && !check_monotone(f).holds) return false;
  if (cls.nontrivial && !(at(f, full_mask(f.states)) > at(f, 0))) return false;
  if (cls.capacity && !check_property(f, Property::capacity).holds) return false;
  return true;
}

}  // namespace

FrameVerdict frame_validates(const Frame& f, const Expr& formula, Layer layer) {
  validate(f);
  return refute_on_frame(f, {}, formula, layer);
}

void for_each_frame(int states, int d, const FrameClass& cls, const std::function<bool(const Frame&)>& visit) {
  check_states(states);
  if (d < 2) throw std::invalid_argument("grid denominator must be at least 2");
  const std::size_t size = table_size(states);
  std::vector<UnitRational> grid;
  for (int i = 0; i <= d; ++i) grid.emplace_back(i, d);
  Frame f{states, std::vector<UnitRational>(size)};
  std::vector<int> idx(size, 0);
  bool stop = false;
  // Masks are filled in increasing order, so every proper subset is set first.
  std::function<void(Mask)> go = [&](Mask x) {
    if (stop) return;
    if (x == size) {
      if (in_class(f, cls) && !visit(f)) stop = true;
      return;
    }
    int lo = 0, hi = d;
    if (cls.monotone || cls.capacity)
      for (int s = 0; s < states; ++s)
        if (x >> s & 1) lo = std::max(lo, idx[x & ~(Mask(1) << s)]);
    if (cls.capacity && x == 0) hi = 0;
    if (cls.capacity && x == size - 1) lo = d;
    for (int i = lo; i <= hi && !stop; ++i) {
      idx[x] = i;
      f.mu[x] = grid[i];
      go(x + 1);
    }
  };
  go(0);
}

CorrespondenceReport correspondence_test(const NamedFormula& nf, int states, int d) {
  CorrespondenceReport r{nf.name, states, d, 0, 0, {}};
  Expr formula = parse(layer_lang(nf.layer), nf.text).root;
  for_each_frame(states, d, FrameClass{}, [&](const Frame& f) {
    ++r.frames;
    bool valid = frame_validates(f, formula, nf.layer).holds;
    bool cond = check_property(f, nf.condition).holds;
    if (valid == cond)
      ++r.agree;
    else
      r.mismatches.push_back(f);
    return true;
  });
  return r;
}

Expr qbel_instance(const Expr& phi, const Expr& chi, const Expr& psi) {
  auto b = [](const Expr& x) { return mk(Kind::B, x); };
  Expr lhs = mk(Kind::SNot, mk(Kind::Delta, mk(Kind::Impl, b(chi), b(phi))));
  Expr rhs = mk(Kind::SNot, mk(Kind::Delta, mk(Kind::Impl, b(mk(Kind::Or, chi, psi)), b(mk(Kind::Or, phi, psi)))));
  return mk(Kind::Impl, lhs, rhs);
}

std::optional<QBelWitness> qbel_witness(const Frame& f) {
  auto r = check_property(f, Property::muPM);
  if (r.holds) return std::nullopt;
  const Mask x = r.witness[0], y = r.witness[1], z = r.witness[2];
  // ||p|| = X, ||p | q|| = Y, ||~p & ~q & r|| = Z; psi must be disjoint from chi.
  UncertaintyModel m{f, {{"p", x}, {"q", y & ~x}, {"r", z}}};
  Expr p = var("p"), q = var("q"), rr = var("r");
  Expr psi = mk(Kind::And, mk(Kind::And, mk(Kind::Not, p), mk(Kind::Not, q)), rr);
  Expr formula = qbel_instance(p, mk(Kind::Or, p, q), psi);
  return QBelWitness{m, formula, eval_qg(m, formula)};
}

namespace {

// Truth tables (bit i = value under assignment i of p, q, r) of CPL formulas
// over p, q, r with depth <= 2, with one representative and a multiplicity each.
struct QBelClasses {
  std::map<int, Expr> rep;
  std::map<int, std::size_t> count;
  std::vector<std::array<int, 3>> triples;
};

const QBelClasses& qbel_classes() {
  static const QBelClasses table = [] {
    QBelClasses c;
    const std::vector<std::string> names = {"p", "q", "r"};
    auto tt = [&](const Expr& e) {
      int bits = 0;
      for (int i = 0; i < 8; ++i) {
        std::map<std::string, Mask> v;
        for (int j = 0; j < 3; ++j) v[names[j]] = (i >> j & 1) ? 1 : 0;
        if (cpl_extension(e, 1, v)) bits |= 1 << i;
      }
      return bits;
    };
    std::vector<std::vector<Expr>> by_depth(3);
    for (const auto& n : names) by_depth[0].push_back(var(n));
    for (int d = 1; d <= 2; ++d) {
      std::vector<Expr> lower;
      for (int e = 0; e < d; ++e) lower.insert(lower.end(), by_depth[e].begin(), by_depth[e].end());
      for (const auto& a : by_depth[d - 1]) by_depth[d].push_back(mk(Kind::Not, a));
      for (const auto& a : lower)
        for (const auto& b : lower) {
          if (depth(a) != d - 1 && depth(b) != d - 1) continue;
          for (Kind k : {Kind::And, Kind::Or, Kind::Mat}) by_depth[d].push_back(mk(k, a, b));
        }
    }
    for (const auto& layer : by_depth)
      for (const auto& e : layer) {
        int t = tt(e);
        if (!c.rep.count(t)) c.rep[t] = e;
        ++c.count[t];
      }
    for (const auto& [a, ea] : c.rep)
      for (const auto& [b, eb] : c.rep) {
        if ((a & ~b) || !(b & ~a)) continue;
        for (const auto& [g, eg] : c.rep)
          if (!(b & g)) c.triples.push_back({a, b, g});
      }
    return c;
  }();
  return table;
}

struct RealizedTriple {
  std::array<int, 3> classes;
  std::map<std::string, Mask> v;
};

// Distinct (||phi||, ||chi||, ||psi||) over all valuations of p, q, r on `states` states.
const std::vector<RealizedTriple>& realized_triples(int states) {
  static std::map<int, std::vector<RealizedTriple>> cache;
  auto it = cache.find(states);
  if (it != cache.end()) return it->second;
  if (states > 4) throw std::invalid_argument("QBel sweeps are bounded to 4 states");
  const auto& c = qbel_classes();
  std::vector<RealizedTriple> out;
  std::vector<char> seen(std::size_t(1) << (3 * states), 0);
  std::array<Mask, 256> ext{};
  for_each_assignment(3, states, [&](const std::vector<Mask>& a) {
    // pattern[i]: states whose (p, q, r) membership is assignment i.
    std::array<Mask, 8> pattern{};
    for (int s = 0; s < states; ++s) {
      int i = int(a[0] >> s & 1) | int(a[1] >> s & 1) << 1 | int(a[2] >> s & 1) << 2;
      pattern[i] |= Mask(1) << s;
    }
    for (const auto& [t, e] : c.rep) {
      Mask x = 0;
      for (int i = 0; i < 8; ++i)
        if (t >> i & 1) x |= pattern[i];
      ext[t] = x;
    }
    for (const auto& tr : c.triples) {
      std::size_t key = ext[tr[0]] | ext[tr[1]] << states | ext[tr[2]] << (2 * states);
      if (seen[key]) continue;
      seen[key] = 1;
      out.push_back({tr, {{"p", a[0]}, {"q", a[1]}, {"r", a[2]}}});
    }
    return true;
  });
  return cache.emplace(states, std::move(out)).first->second;
}

}  // namespace

QBelSweep qbel_sweep(const Frame& f) {
  validate(f);
  const auto& c = qbel_classes();
  QBelSweep out;
  out.classes = c.triples.size();
  for (const auto& tr : c.triples) out.instances += c.count.at(tr[0]) * c.count.at(tr[1]) * c.count.at(tr[2]);
  for (const auto& rt : realized_triples(f.states)) {
    UncertaintyModel m{f, rt.v};
    Expr formula = qbel_instance(c.rep.at(rt.classes[0]), c.rep.at(rt.classes[1]), c.rep.at(rt.classes[2]));
    if (!eval_qg(m, formula).is_one()) {
      out.all_one = false;
      out.counter = m;
      out.formula = formula;
      return out;
    }
  }
  return out;
}

CorrespondenceReport qbel_correspondence(int states, int d) {
  CorrespondenceReport r{"QBel", states, d, 0, 0, {}};
  for_each_frame(states, d, FrameClass{}, [&](const Frame& f) {
    ++r.frames;
    auto w = qbel_witness(f);
    bool agree = w ? w->value.is_zero() : qbel_sweep(f).all_one;
    if (agree)
      ++r.agree;
    else
      r.mismatches.push_back(f);
    return true;
  });
  return r;
}

std::optional<Countermodel> find_frame_countermodel(const std::vector<Expr>& xi, const Expr& alpha, Layer layer,
                                                    const FrameClass& cls, const SearchBounds& b) {
  if (b.max_states < 1 || b.max_states > 4 || b.grid < 2 || b.grid > 4)
    throw std::invalid_argument("countermodel search bounds: 1 <= states <= 4, 2 <= grid <= 4");
  std::optional<Countermodel> found;
  for (int n = 1; n <= b.max_states && !found; ++n)
    for (int d = 2; d <= b.grid && !found; ++d)
      for_each_frame(n, d, cls, [&](const Frame& f) {
        auto v = refute_on_frame(f, xi, alpha, layer);
        if (v.holds) return true;
        found = Countermodel{v.qg_counter, v.layer_counter};
        return false;
      });
  return found;
}

namespace {

// mu on all subsets from its values on definable sets: sup over definable subsets.
std::vector<UnitRational> sup_extend(int states, const std::map<Mask, UnitRational>& definable) {
  for (const auto& [x, a] : definable)
    for (const auto& [y, b] : definable)
      if (!(x & ~y) && a > b)
        throw std::invalid_argument("valuation is not monotone along definable inclusions (" + a.str() + " > " +
                                    b.str() + ")");
  std::vector<UnitRational> mu(table_size(states));
  for (Mask x = 0; x < mu.size(); ++x)
    for (const auto& [y, b] : definable)
      if (!(y & ~x) && b > mu[x]) mu[x] = b;
  return mu;
}

void define(std::map<Mask, UnitRational>& table, Mask x, const UnitRational& val, const std::string& atom) {
  auto [it, fresh] = table.emplace(x, val);
  if (!fresh && it->second != val)
    throw std::invalid_argument("valuation assigns two values to one definable set (at " + atom + ")");
}

std::vector<Expr> modal_atoms(const std::vector<Expr>& formulas, Kind k) {
  std::vector<Expr> out;
  for (const auto& f : formulas) collect_atoms(f, out);
  std::vector<Expr> kept;
  std::set<std::string> seen;
  for (const auto& a : out)
    if (a->kind == k && seen.insert(print(a)).second) kept.push_back(a);
  return kept;
}

}  // namespace

UncertaintyModel canonical_qg_model(const Valuation& e, const std::vector<Expr>& formulas) {
  for (const auto& f : formulas) check_language(Lang::QG, f);
  auto names = inner_vars(formulas);
  if (names.size() > 4) throw std::invalid_argument("canonical QG model is bounded to 4 variables");
  const int states = 1 << names.size();
  UncertaintyModel m;
  m.frame.states = states;
  for (std::size_t i = 0; i < names.size(); ++i) {
    Mask x = 0;
    for (int w = 0; w < states; ++w)
      if (w >> i & 1) x |= Mask(1) << w;
    m.v[names[i]] = x;
  }
  std::map<Mask, UnitRational> definable;
  for (const auto& a : modal_atoms(formulas, Kind::B)) {
    auto it = e.find(print(a));
    if (it == e.end()) throw std::invalid_argument("valuation misses atom " + print(a));
    define(definable, cpl_extension(a->kids[0], states, m.v), it->second, print(a));
  }
  m.frame.mu = sup_extend(states, definable);
  return m;
}

BeliefModel canonical_mcb_model(const TwistValuation& e, const std::vector<Expr>& formulas) {
  for (const auto& f : formulas)
    if (!permitted(Lang::MCB, f->kind) && !permitted(Lang::NMCB, f->kind))
      throw LanguageError("canonical MCB model needs MCB or NMCB formulas");
  auto names = inner_vars(formulas);
  if (names.size() > 2) throw std::invalid_argument("canonical MCB model is bounded to 2 variables");
  // Literal 2i is the variable, 2i+1 its De Morgan negation; states are literal sets.
  const int states = 1 << (2 * names.size());
  BeliefModel m;
  m.frame.states = states;
  for (std::size_t i = 0; i < names.size(); ++i) {
    Mask pos = 0, neg = 0;
    for (int w = 0; w < states; ++w) {
      if (w >> (2 * i) & 1) pos |= Mask(1) << w;
      if (w >> (2 * i + 1) & 1) neg |= Mask(1) << w;
    }
    m.vplus[names[i]] = pos;
    m.vminus[names[i]] = neg;
  }
  BDModel bd{states, m.vplus, m.vminus};
  std::map<Mask, UnitRational> definable;
  for (const auto& a : modal_atoms(formulas, Kind::C)) {
    auto it = e.find(print(a));
    if (it == e.end()) throw std::invalid_argument("valuation misses atom " + print(a));
    auto [pos, neg] = truth_sets(bd, a->kids[0]);
    define(definable, pos, it->second.t, print(a));
    define(definable, neg, it->second.f, print(a));
  }
  // BD formulas never denote the empty set or W here, so these are free.
  define(definable, 0, UnitRational::zero(), "the empty set");
  define(definable, full_mask(states), UnitRational::one(), "W");
  m.frame.mu = sup_extend(states, definable);
  return m;
}

}  // namespace ql
