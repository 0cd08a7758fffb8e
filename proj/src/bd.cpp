#include "qlogic/bd.hpp"

#include <stdexcept>
#include <vector>

namespace ql {

bool four_true(Four v) { return v == Four::t || v == Four::b; }
bool four_false(Four v) { return v == Four::f || v == Four::b; }

Four four_make(bool tt, bool tf) {
  if (tt) return tf ? Four::b : Four::t;
  return tf ? Four::f : Four::n;
}

// Truth order of 4: more told-true, less told-false.
bool four_leq(Four a, Four b) {
  return (!four_true(a) || four_true(b)) && (!four_false(b) || four_false(a));
}

char four_char(Four v) {
  switch (v) {
    case Four::f: return 'f';
    case Four::n: return 'n';
    case Four::b: return 'b';
    case Four::t: return 't';
  }
  return '?';
}

Four four_from_char(char c) {
  switch (c) {
    case 'f': return Four::f;
    case 'n': return Four::n;
    case 'b': return Four::b;
    case 't': return Four::t;
    default: throw std::invalid_argument(std::string("not a four-valued constant: ") + c);
  }
}

void validate(const BDModel& m) {
  if (m.states < 1 || m.states > 64) throw std::invalid_argument("BD model needs 1..64 states");
  for (const auto* side : {&m.vplus, &m.vminus})
    for (const auto& [p, s] : *side)
      if (s & ~full_mask(m.states)) throw std::invalid_argument("support of " + p + " names a missing state");
}

namespace {

// A variable is bound once either support lists it; the other side defaults to empty.
std::pair<Mask, Mask> lookup(const BDModel& m, const std::string& p) {
  auto ip = m.vplus.find(p), in = m.vminus.find(p);
  if (ip == m.vplus.end() && in == m.vminus.end()) throw std::invalid_argument("unbound variable " + p);
  return {ip == m.vplus.end() ? 0 : ip->second, in == m.vminus.end() ? 0 : in->second};
}

void require_bd(const Expr& f) {
  if (!permitted(Lang::BD, f->kind)) throw LanguageError("connective '" + kind_name(f->kind) + "' is not part of BD");
}

}  // namespace

Support support(const BDModel& m, int s, const Expr& f) {
  if (s < 0 || s >= m.states) throw std::out_of_range("state " + std::to_string(s) + " out of range");
  require_bd(f);
  const Mask bit = Mask(1) << s;
  switch (f->kind) {
    case Kind::Var: {
      auto [pos, neg] = lookup(m, f->name);
      return {(pos & bit) != 0, (neg & bit) != 0};
    }
    case Kind::Neg: {
      Support a = support(m, s, f->kids[0]);
      return {a.neg, a.pos};
    }
    case Kind::And: {
      Support a = support(m, s, f->kids[0]), b = support(m, s, f->kids[1]);
      return {a.pos && b.pos, a.neg || b.neg};
    }
    default: {  // Or
      Support a = support(m, s, f->kids[0]), b = support(m, s, f->kids[1]);
      return {a.pos || b.pos, a.neg && b.neg};
    }
  }
}

std::pair<Mask, Mask> truth_sets(const BDModel& m, const Expr& f) {
  require_bd(f);
  const Mask all = full_mask(m.states);
  switch (f->kind) {
    case Kind::Var: {
      auto [pos, neg] = lookup(m, f->name);
      return {pos & all, neg & all};
    }
    case Kind::Neg: {
      auto [p, n] = truth_sets(m, f->kids[0]);
      return {n, p};
    }
    case Kind::And: {
      auto a = truth_sets(m, f->kids[0]), b = truth_sets(m, f->kids[1]);
      return {a.first & b.first, a.second | b.second};
    }
    default: {
      auto a = truth_sets(m, f->kids[0]), b = truth_sets(m, f->kids[1]);
      return {a.first | b.first, a.second & b.second};
    }
  }
}

bool sequent_valid_on_model(const BDModel& m, const Expr& phi, const Expr& chi) {
  auto a = truth_sets(m, phi), b = truth_sets(m, chi);
  return (a.first & ~b.first) == 0 && (b.second & ~a.second) == 0;
}

Four four_eval(const FourValuation& v, const Expr& f) {
  require_bd(f);
  switch (f->kind) {
    case Kind::Var: {
      auto it = v.find(f->name);
      if (it == v.end()) throw std::invalid_argument("unbound variable " + f->name);
      return it->second;
    }
    case Kind::Neg: {
      Four a = four_eval(v, f->kids[0]);
      return four_make(four_false(a), four_true(a));
    }
    case Kind::And: {
      Four a = four_eval(v, f->kids[0]), b = four_eval(v, f->kids[1]);
      return four_make(four_true(a) && four_true(b), four_false(a) || four_false(b));
    }
    default: {
      Four a = four_eval(v, f->kids[0]), b = four_eval(v, f->kids[1]);
      return four_make(four_true(a) || four_true(b), four_false(a) && four_false(b));
    }
  }
}

BDVerdict bd_entails(const Expr& phi, const Expr& chi) {
  auto vs = vars(phi);
  auto vc = vars(chi);
  vs.insert(vc.begin(), vc.end());
  std::vector<std::string> names(vs.begin(), vs.end());
  if (names.size() > 12) throw std::invalid_argument("bd_entails supports at most 12 variables");
  const std::size_t n = names.size();
  std::size_t total = std::size_t(1) << (2 * n);
  for (std::size_t code = 0; code < total; ++code) {
    FourValuation v;
    for (std::size_t i = 0; i < n; ++i) v[names[i]] = static_cast<Four>((code >> (2 * i)) & 3);
    if (!four_leq(four_eval(v, phi), four_eval(v, chi))) return {false, v};
  }
  return {true, {}};
}

BDModel single_point_counterpart(const FourValuation& v) {
  BDModel m;
  m.states = 1;
  for (const auto& [p, x] : v) {
    m.vplus[p] = four_true(x) ? 1 : 0;
    m.vminus[p] = four_false(x) ? 1 : 0;
  }
  return m;
}

}  // namespace ql
