#include "qlogic/calculi.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "qlogic/bd.hpp"
#include "qlogic/decide.hpp"
#include "qlogic/measures.hpp"
#include "qlogic/qp.hpp"

namespace ql {

bool cpl_valid(const Expr& f) {
  check_language(Lang::CPL, f);
  auto vs = vars(f);
  if (vs.size() > 20) throw std::invalid_argument("cpl_valid is bounded to 20 variables");
  std::vector<std::string> names(vs.begin(), vs.end());
  const int k = static_cast<int>(names.size());
  // The low six variables vary inside a 64-state block; the rest are fixed per block.
  const int low = std::min(k, 6);
  const int states = 1 << low;
  std::map<std::string, Mask> v;
  for (int i = 0; i < low; ++i) {
    Mask x = 0;
    for (int s = 0; s < states; ++s)
      if (s >> i & 1) x |= Mask(1) << s;
    v[names[i]] = x;
  }
  const long blocks = 1L << (k - low);
  for (long b = 0; b < blocks; ++b) {
    for (int i = low; i < k; ++i) v[names[i]] = (b >> (i - low) & 1) ? full_mask(states) : 0;
    if (cpl_extension(f, states, v) != full_mask(states)) return false;
  }
  return true;
}

bool cpl_valid_abstract(const Expr& f) {
  check_language(Lang::QP, f);
  std::map<std::string, Expr> atoms;
  std::function<Expr(const Expr&)> abstract = [&](const Expr& e) -> Expr {
    switch (e->kind) {
      case Kind::Leq: {
        std::string key = print(e);
        auto it = atoms.find(key);
        if (it == atoms.end()) it = atoms.emplace(key, var("cmp_" + std::to_string(atoms.size()))).first;
        return it->second;
      }
      case Kind::Approx: return abstract(mk(Kind::And, mk(Kind::Leq, e->kids[0], e->kids[1]), mk(Kind::Leq, e->kids[1], e->kids[0])));
      case Kind::Less:
        return abstract(mk(Kind::And, mk(Kind::Leq, e->kids[0], e->kids[1]), mk(Kind::Not, mk(Kind::Leq, e->kids[1], e->kids[0]))));
      default: {
        if (e->kids.empty()) return e;
        std::vector<Expr> k;
        for (const auto& c : e->kids) k.push_back(abstract(c));
        return std::make_shared<const Node>(Node{e->kind, e->name, k});
      }
    }
  };
  return cpl_valid(abstract(f));
}

std::string calculus_name(CalculusId c) {
  switch (c) {
    case CalculusId::HBIG: return "HBIG";
    case CalculusId::HG2ORD: return "HG2ORD";
    case CalculusId::HG2NEL: return "HG2NEL";
    case CalculusId::HQG: return "HQG";
    case CalculusId::HQPG: return "HQPG";
    case CalculusId::HQPG_TOP: return "HQPG_TOP";
    case CalculusId::HQP: return "HQP";
    case CalculusId::HMCB: return "HMCB";
    case CalculusId::HNMCB: return "HNMCB";
    case CalculusId::RFDE: return "RFDE";
  }
  return "?";
}

CalculusId calculus_from_name(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::toupper(ch); });
  for (int i = 0; i <= static_cast<int>(CalculusId::RFDE); ++i)
    if (calculus_name(static_cast<CalculusId>(i)) == s) return static_cast<CalculusId>(i);
  throw std::invalid_argument("unknown calculus '" + std::string(name) + "'");
}

Lang calculus_lang(CalculusId c) {
  switch (c) {
    case CalculusId::HBIG: return Lang::BIG;
    case CalculusId::HG2ORD: return Lang::G2ORD;
    case CalculusId::HG2NEL: return Lang::G2NEL;
    case CalculusId::HQG:
    case CalculusId::HQPG:
    case CalculusId::HQPG_TOP: return Lang::QG;
    case CalculusId::HQP: return Lang::QP;
    case CalculusId::HMCB: return Lang::MCB;
    case CalculusId::HNMCB: return Lang::NMCB;
    case CalculusId::RFDE: return Lang::BD;
  }
  return Lang::CPL;
}

namespace {

bool is_qg_family(CalculusId c) { return c == CalculusId::HQG || c == CalculusId::HQPG || c == CalculusId::HQPG_TOP; }
bool has_kps(CalculusId c) { return c == CalculusId::HQPG || c == CalculusId::HQPG_TOP; }

enum class Side { None, Reg, Nontriv, CapB, CapN, BDValid, QBel, PC };

struct Schema {
  std::string name;
  std::string text;
  Side side = Side::None;
};

// biG axioms 1-9 and prel, written with -> and -<.
const std::vector<Schema>& big_schemas() {
  static const std::vector<Schema> t = {
      {"A1", "($a -> $b) -> (($b -> $c) -> ($a -> $c))"},
      {"A2a", "$a -> ($a | $b)"},
      {"A2b", "$b -> ($a | $b)"},
      {"A3", "($a -> $c) -> (($b -> $c) -> (($a | $b) -> $c))"},
      {"A4a", "($a & $b) -> $a"},
      {"A4b", "($a & $b) -> $b"},
      {"A5", "($a -> $b) -> (($a -> $c) -> ($a -> ($b & $c)))"},
      {"A6a", "($a -> ($b -> $c)) -> (($a & $b) -> $c)"},
      {"A6b", "(($a & $b) -> $c) -> ($a -> ($b -> $c))"},
      {"A7", "($a -> $b) -> (snot $b -> snot $a)"},
      {"A8a", "($a -< $b) -> (Top -< ($a -> $b))"},
      {"A8b", "snot ($a -< $b) -> ($a -> $b)"},
      {"A9a", "$a -> ($b | ($a -< $b))"},
      {"A9b", "(($a -< $b) -< $c) -> ($a -< ($b | $c))"},
      {"prel1", "($a -> $b) | ($b -> $a)"},
      {"prel2", "Top -< (($a -< $b) & ($b -< $a))"},
  };
  return t;
}

std::string to_nelson(std::string s) {
  for (auto [from, to] : {std::pair<std::string, std::string>{" -> ", " ~> "}, {" -< ", " o- "}}) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
      s.replace(pos, from.size(), to);
      pos += to.size();
    }
  }
  // Leading or bracketed implications keep their spacing; no pattern starts with one.
  return s;
}

std::vector<Schema> schema_table(CalculusId c, const std::vector<std::string>& ext) {
  std::vector<Schema> out;
  auto has_ext = [&](const std::string& e) { return std::find(ext.begin(), ext.end(), e) != ext.end(); };
  const bool nel = c == CalculusId::HG2NEL || c == CalculusId::HNMCB;
  switch (c) {
    case CalculusId::RFDE: return out;
    case CalculusId::HQP:
      out = {
          {"A0", "((($a1 <-> $a2) ~~ Top) & (($b1 <-> $b2) ~~ Top)) => (($a1 <= $b1) <-> ($a2 <= $b2))"},
          {"A1", "Bot <= $a"},
          {"A2", "($a <= $b) | ($b <= $a)"},
          {"A3", "Bot << Top"},
      };
      return out;
    default: break;
  }
  for (const auto& s : big_schemas()) out.push_back({s.name, nel ? to_nelson(s.text) : s.text, s.side});
  if (c == CalculusId::HG2ORD || c == CalculusId::HMCB) {
    out.push_back({"neg", "neg neg $a <-> $a"});
    out.push_back({"DeM_and", "neg ($a & $b) <-> (neg $a | neg $b)"});
    out.push_back({"DeM_or", "neg ($a | $b) <-> (neg $a & neg $b)"});
    out.push_back({"DeM_impl", "neg ($a -> $b) <-> (neg $b -< neg $a)"});
    out.push_back({"DeM_coimpl", "neg ($a -< $b) <-> (neg $b -> neg $a)"});
  }
  if (nel) {
    out.push_back({"neg", "neg neg $a <-> $a"});
    out.push_back({"DeM_and", "neg ($a & $b) <-> (neg $a | neg $b)"});
    out.push_back({"DeM_or", "neg ($a | $b) <-> (neg $a & neg $b)"});
    out.push_back({"DeM_nimpl", "neg ($a ~> $b) <-> ($a & neg $b)"});
    out.push_back({"DeM_ncoimpl", "neg ($a o- $b) <-> (neg $a | $b)"});
  }
  if (is_qg_family(c)) {
    out.push_back({"reg", "B($a) -> B($b)", Side::Reg});
    out.push_back({"nontriv", "snot delta(B($a) -> B($b))", Side::Nontriv});
  }
  if (c == CalculusId::HQPG_TOP) {
    out.push_back({"capB", "B($a)", Side::CapB});
    out.push_back({"capN", "snot B($a)", Side::CapN});
  }
  if (is_qg_family(c) && has_ext("cap")) out.push_back({"cap", "B(Top) & snot B(Bot)"});
  if (is_qg_family(c) && has_ext("QBel"))
    out.push_back({"QBel", "snot delta(B($c) -> B($a)) -> snot delta(B($c | $d) -> B($a | $d))", Side::QBel});
  if (c == CalculusId::HMCB) {
    out.push_back({"HMCB_BD", "C($a) -> C($b)", Side::BDValid});
    out.push_back({"HMCB_neg", "C(neg $a) <-> neg C($a)"});
  }
  if (c == CalculusId::HNMCB) {
    out.push_back({"HNMCB_BD", "C($a) ==> C($b)", Side::BDValid});
    out.push_back({"HNMCB_neg", "C(neg $a) <==> neg C($a)"});
  }
  return out;
}

}  // namespace

std::optional<std::string> schema_pattern(CalculusId c, std::string_view name) {
  for (const auto& s : schema_table(c, {"cap", "QBel"}))
    if (s.name == name) return s.text;
  return std::nullopt;
}

std::vector<std::string> schema_names(CalculusId c) {
  std::vector<std::string> out;
  if (c == CalculusId::RFDE)
    return {"and_e1", "and_e2", "or_i1", "or_i2", "dem_and1", "dem_and2", "dem_or1", "dem_or2",
            "dneg1",  "dneg2",  "dist",  "id"};
  for (const auto& s : schema_table(c, {"cap", "QBel"})) out.push_back(s.name);
  if (c == CalculusId::HQP) out.insert(out.end(), {"A4", "PC"});
  if (has_kps(c)) out.push_back("KPS");
  return out;
}

Expr ac_normalize(const Expr& e) {
  if (e->kids.empty()) return e;
  if (e->kind == Kind::And || e->kind == Kind::Or) {
    std::vector<Expr> parts;
    std::function<void(const Expr&)> flatten = [&](const Expr& x) {
      if (x->kind == e->kind) {
        flatten(x->kids[0]);
        flatten(x->kids[1]);
      } else {
        parts.push_back(ac_normalize(x));
      }
    };
    flatten(e);
    std::sort(parts.begin(), parts.end(), ExprLess{});
    Expr out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out = mk(e->kind, out, parts[i]);
    return out;
  }
  std::vector<Expr> k;
  for (const auto& c : e->kids) k.push_back(ac_normalize(c));
  return std::make_shared<const Node>(Node{e->kind, e->name, k});
}

Expr unfold(const Expr& e, Lang l) {
  using K = Kind;
  if (is_modal(e->kind)) return mk(e->kind, normalize(e->kids[0], inner_lang(l)));
  if (e->kids.empty()) return e;
  std::vector<Expr> k;
  for (const auto& c : e->kids) k.push_back(unfold(c, l));
  const bool classical = l == Lang::CPL || l == Lang::QP;
  const bool nel = is_nelson(l);
  const K imp = classical ? K::Mat : nel ? K::NImpl : K::Impl;
  auto snot = [&](const Expr& x) { return classical ? mk(K::Not, x) : mk(imp, x, bot()); };
  auto simpl = [&](const Expr& x, const Expr& y) {
    return mk(K::And, mk(K::NImpl, x, y), mk(K::NImpl, mk(K::Neg, y), mk(K::Neg, x)));
  };
  auto delta_n = [&](const Expr& x) { return mk(K::NImpl, mk(K::NCoimpl, top(), x), bot()); };
  switch (e->kind) {
    case K::SNot: return snot(k[0]);
    case K::Delta: return mk(K::Impl, mk(K::Coimpl, top(), k[0]), bot());
    case K::Delta1: {
      Expr x = mk(K::Coimpl, top(), k[0]);
      return mk(K::And, snot(x), mk(K::Neg, snot(snot(x))));
    }
    case K::DeltaN: return delta_n(k[0]);
    case K::DeltaBangN: return delta_n(simpl(top(), k[0]));
    case K::Iff: return mk(K::And, mk(imp, k[0], k[1]), mk(imp, k[1], k[0]));
    case K::SImpl: return simpl(k[0], k[1]);
    case K::SIff: return mk(K::And, simpl(k[0], k[1]), simpl(k[1], k[0]));
    case K::Approx: return mk(K::And, mk(K::Leq, k[0], k[1]), mk(K::Leq, k[1], k[0]));
    case K::Less: return mk(K::And, mk(K::Leq, k[0], k[1]), mk(K::Not, mk(K::Leq, k[1], k[0])));
    default: return std::make_shared<const Node>(Node{e->kind, e->name, std::move(k)});
  }
}

Expr canonical(const Expr& e, Lang l) { return unfold(normalize(e, l), l); }

namespace {

Expr lookup(const Binding& b, const std::string& name) {
  for (const auto& [n, v] : b)
    if (n == name) return v;
  throw std::logic_error("schema side condition names unbound $" + name);
}

bool match(const Expr& pattern, const Expr& e, Binding& b) {
  if (pattern->kind == Kind::Meta) {
    for (const auto& [n, v] : b)
      if (n == pattern->name) return equal(v, e);
    b.push_back({pattern->name, e});
    return true;
  }
  if (pattern->kind != e->kind || pattern->name != e->name || pattern->kids.size() != e->kids.size()) return false;
  for (std::size_t i = 0; i < e->kids.size(); ++i)
    if (!match(pattern->kids[i], e->kids[i], b)) return false;
  return true;
}

bool side_holds(Side s, const Binding& b) {
  auto m = [&](const char* n) { return lookup(b, n); };
  switch (s) {
    case Side::None: return true;
    case Side::Reg: return cpl_valid(mk(Kind::Mat, m("a"), m("b")));
    case Side::Nontriv: return cpl_valid(m("a")) && cpl_valid(mk(Kind::Not, m("b")));
    case Side::CapB: return cpl_valid(m("a"));
    case Side::CapN: return cpl_valid(mk(Kind::Not, m("a")));
    case Side::BDValid: return bd_entails(m("a"), m("b")).holds;
    case Side::QBel:
      return cpl_valid(mk(Kind::Mat, m("a"), m("c"))) && cpl_valid(mk(Kind::Not, mk(Kind::And, m("c"), m("d")))) &&
             !cpl_valid(mk(Kind::Mat, m("c"), m("a")));
    case Side::PC: return true;
  }
  return false;
}

std::vector<Expr> conjuncts(const Expr& e) {
  std::vector<Expr> out;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    if (x->kind == Kind::And) {
      go(x->kids[0]);
      go(x->kids[1]);
    } else {
      out.push_back(x);
    }
  };
  go(e);
  return out;
}

void check_kps_bound(std::size_t m) {
  if (m > static_cast<std::size_t>(kMaxKpsM))
    throw std::length_error("KPS/A4 instances are recognized for m <= " + std::to_string(kMaxKpsM) + " only");
}

bool is_b_comparison(const Expr& x) {  // delta(B a -> B b)
  return x->kind == Kind::Delta && x->kids[0]->kind == Kind::Impl && x->kids[0]->kids[0]->kind == Kind::B &&
         x->kids[0]->kids[1]->kind == Kind::B;
}

// KPS_m with lists of length m: E_G & (m-1 comparisons) -> conclusion.
// Lists are read off the raw form first: normalize folds B(x) -> B(x) to Top,
// which hides the conclusion of instances whose last two entries coincide.
std::optional<AxiomMatch> match_kps_form(const Expr& n, const Expr& target) {
  if (n->kind != Kind::Impl || !is_b_comparison(n->kids[1])) return std::nullopt;
  auto cs = conjuncts(n->kids[0]);
  const Expr& eg = cs[0];
  if (eg->kind != Kind::Delta || eg->kids[0]->kind != Kind::Iff) return std::nullopt;
  std::vector<Expr> phis, chis;
  for (std::size_t i = 1; i < cs.size(); ++i) {
    if (!is_b_comparison(cs[i])) return std::nullopt;
    phis.push_back(cs[i]->kids[0]->kids[0]->kids[0]);
    chis.push_back(cs[i]->kids[0]->kids[1]->kids[0]);
  }
  chis.push_back(n->kids[1]->kids[0]->kids[0]->kids[0]);
  phis.push_back(n->kids[1]->kids[0]->kids[1]->kids[0]);
  check_kps_bound(phis.size());
  Expr gen = normalize(kps_instance(phis, chis), Lang::QG);
  if (!equal(ac_normalize(gen), ac_normalize(target))) return std::nullopt;
  Binding b;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    b.push_back({"phi" + std::to_string(i), phis[i]});
    b.push_back({"chi" + std::to_string(i), chis[i]});
  }
  return AxiomMatch{"KPS", b, static_cast<int>(phis.size())};
}

std::optional<AxiomMatch> match_kps(const Expr& f) {
  const Expr n = normalize(f, Lang::QG);
  if (auto m = match_kps_form(f, n)) return m;
  return match_kps_form(n, n);
}

std::optional<AxiomMatch> match_a4_form(const Expr& n, const Expr& target) {
  if (n->kind != Kind::Mat || n->kids[1]->kind != Kind::Leq) return std::nullopt;
  auto cs = conjuncts(n->kids[0]);
  if (cs[0]->kind != Kind::Approx) return std::nullopt;
  std::vector<Expr> phis, psis;
  for (std::size_t i = 1; i < cs.size(); ++i) {
    if (cs[i]->kind != Kind::Leq) return std::nullopt;
    phis.push_back(cs[i]->kids[0]);
    psis.push_back(cs[i]->kids[1]);
  }
  psis.push_back(n->kids[1]->kids[0]);
  phis.push_back(n->kids[1]->kids[1]);
  check_kps_bound(phis.size());
  Expr gen = normalize(a4_instance(phis, psis), Lang::QP);
  if (!equal(ac_normalize(gen), ac_normalize(target))) return std::nullopt;
  Binding b;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    b.push_back({"phi" + std::to_string(i), phis[i]});
    b.push_back({"psi" + std::to_string(i), psis[i]});
  }
  return AxiomMatch{"A4", b, static_cast<int>(phis.size())};
}

std::optional<AxiomMatch> match_a4(const Expr& f) {
  const Expr n = normalize(f, Lang::QP);
  if (auto m = match_a4_form(f, n)) return m;
  return match_a4_form(n, n);
}

bool name_fits(const std::string& wanted, const AxiomMatch& m, int wanted_m) {
  if (wanted_m != 0 && wanted_m != m.m) return false;
  if (wanted.empty() || wanted == m.schema) return true;
  // "A2" names the family {A2a, A2b}.
  return m.schema.size() == wanted.size() + 1 && m.schema.compare(0, wanted.size(), wanted) == 0;
}

std::optional<AxiomMatch> find_match(CalculusId c, const Expr& f, const std::vector<std::string>& ext,
                                     const std::string& wanted, int wanted_m) {
  const Lang l = calculus_lang(c);
  check_language(l, f);
  const Expr forms[2] = {unfold(f, l), canonical(f, l)};
  for (const auto& s : schema_table(c, ext)) {
    Expr pat = unfold(parse_pattern(l, s.text), l);
    for (const auto& form : forms) {
      Binding b;
      if (!match(pat, form, b) || !side_holds(s.side, b)) continue;
      AxiomMatch m{s.name, b, 0};
      if (name_fits(wanted, m, wanted_m)) return m;
    }
  }
  if (has_kps(c))
    if (auto m = match_kps(f); m && name_fits(wanted, *m, wanted_m)) return m;
  if (c == CalculusId::HQP) {
    if (auto m = match_a4(f); m && name_fits(wanted, *m, wanted_m)) return m;
    AxiomMatch pc{"PC", {}, 0};
    if (name_fits(wanted, pc, wanted_m) && cpl_valid_abstract(f)) return pc;
  }
  return std::nullopt;
}

struct SequentSchema {
  std::string name, lhs, rhs;
};

const std::vector<SequentSchema>& sequent_schemas() {
  static const std::vector<SequentSchema> t = {
      {"and_e1", "$a & $b", "$a"},
      {"and_e2", "$a & $b", "$b"},
      {"or_i1", "$a", "$a | $b"},
      {"or_i2", "$b", "$a | $b"},
      {"dem_and1", "neg ($a & $b)", "neg $a | neg $b"},
      {"dem_and2", "neg $a | neg $b", "neg ($a & $b)"},
      {"dem_or1", "neg ($a | $b)", "neg $a & neg $b"},
      {"dem_or2", "neg $a & neg $b", "neg ($a | $b)"},
      {"dneg1", "neg neg $a", "$a"},
      {"dneg2", "$a", "neg neg $a"},
      {"dist", "$a & ($b | $c)", "($a & $b) | ($a & $c)"},
      {"id", "$a", "$a"},
  };
  return t;
}

}  // namespace

std::optional<AxiomMatch> match_axiom(CalculusId c, const Expr& f, const std::vector<std::string>& extensions) {
  if (c == CalculusId::RFDE) throw std::invalid_argument("RFDE axioms are sequents; use match_sequent_axiom");
  return find_match(c, f, extensions, "", 0);
}

std::optional<AxiomMatch> match_sequent_axiom(const Expr& lhs, const Expr& rhs) {
  check_language(Lang::BD, lhs);
  check_language(Lang::BD, rhs);
  for (const auto& s : sequent_schemas()) {
    Binding b;
    if (match(parse_pattern(Lang::BD, s.lhs), lhs, b) && match(parse_pattern(Lang::BD, s.rhs), rhs, b))
      return AxiomMatch{s.name, b, 0};
  }
  return std::nullopt;
}

std::pair<Expr, Expr> parse_sequent(std::string_view text) {
  auto pos = text.find("|-");
  if (pos == std::string_view::npos) throw SyntaxError("sequent needs '|-'", 0);
  return {parse(Lang::BD, text.substr(0, pos)).root, parse(Lang::BD, text.substr(pos + 2)).root};
}

namespace {

struct StepFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A parsed line: a formula, or an RFDE sequent.
struct Line {
  Expr f, lhs, rhs;
};

class Checker {
public:
  explicit Checker(const Derivation& d) : d_(d), c_(d.calculus), l_(calculus_lang(d.calculus)) {}

  CheckReport run() {
    CheckReport r;
    std::vector<Line> premises;
    try {
      for (const auto& p : d_.premises) premises.push_back(parse_line(p));
    } catch (const std::exception& e) {
      r.reason = std::string("bad premise: ") + e.what();
      return r;
    }
    for (std::size_t i = 0; i < d_.steps.size(); ++i) {
      StepVerdict v;
      try {
        Line line = parse_line(d_.steps[i].formula);
        v = check_step(d_.steps[i], line, premises);
        lines_.push_back(line);
      } catch (const std::exception& e) {
        v.ok = false;
        v.detail = e.what();
        lines_.push_back({});
      }
      r.steps.push_back(v);
      taint_.push_back(v.tainted);
      if (!v.ok) {
        r.first_failure = static_cast<int>(i) + 1;
        r.reason = "step " + std::to_string(i + 1) + ": " + v.detail;
        return r;
      }
    }
    if (d_.steps.empty()) {
      r.reason = "derivation has no steps";
      return r;
    }
    if (d_.goal) {
      try {
        if (!same(parse_line(*d_.goal), lines_.back())) {
          r.reason = "last step is not the goal";
          return r;
        }
      } catch (const std::exception& e) {
        r.reason = std::string("bad goal: ") + e.what();
        return r;
      }
    }
    r.accepted = true;
    return r;
  }

private:
  Line parse_line(const std::string& text) const {
    if (c_ == CalculusId::RFDE) {
      auto [a, b] = parse_sequent(text);
      return {nullptr, a, b};
    }
    return {parse(l_, text).root, nullptr, nullptr};
  }

  bool same(const Line& a, const Line& b) const {
    if (c_ == CalculusId::RFDE) return a.lhs && b.lhs && equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
    return a.f && b.f && equal(canonical(a.f, l_), canonical(b.f, l_));
  }

  const Line& ref(int k, std::size_t here) const {
    if (k < 1 || static_cast<std::size_t>(k) > here) throw StepFailure("reference " + std::to_string(k) + " is not an earlier step");
    if (!lines_[k - 1].f && !lines_[k - 1].lhs) throw StepFailure("reference " + std::to_string(k) + " failed");
    return lines_[k - 1];
  }

  Kind implication() const {
    if (c_ == CalculusId::HQP) return Kind::Mat;
    if (c_ == CalculusId::HG2NEL || c_ == CalculusId::HNMCB) return Kind::NImpl;
    return Kind::Impl;
  }

  Expr nec_of(const Expr& x) const {
    switch (c_) {
      case CalculusId::HQP: return mk(Kind::Approx, x, top());
      case CalculusId::HG2NEL:
      case CalculusId::HNMCB: return mk(Kind::NImpl, mk(Kind::NCoimpl, top(), x), bot());
      default: return mk(Kind::Impl, mk(Kind::Coimpl, top(), x), bot());
    }
  }

  StepVerdict check_step(const Step& s, const Line& line, const std::vector<Line>& premises) {
    const std::size_t here = lines_.size();
    const auto& j = s.just;
    StepVerdict v;
    switch (j.kind) {
      case Justification::Kind::Premise: {
        for (const auto& p : premises)
          if (same(p, line)) return {true, true, "premise"};
        return {false, false, "not among the premises"};
      }
      case Justification::Kind::Axiom: {
        std::optional<AxiomMatch> m;
        if (c_ == CalculusId::RFDE) {
          m = match_sequent_axiom(line.lhs, line.rhs);
          if (m && !name_fits(j.name, *m, 0)) m.reset();
        } else {
          m = find_match(c_, line.f, d_.extensions, j.name, j.m);
        }
        if (!m) return {false, false, j.name.empty() ? "no axiom schema matches" : "not an instance of " + j.name};
        return {true, false, m->m ? m->schema + "_" + std::to_string(m->m) : m->schema};
      }
      case Justification::Kind::MP: {
        if (c_ == CalculusId::RFDE) return {false, false, "RFDE has no modus ponens"};
        if (j.refs.size() != 2) return {false, false, "mp needs two references"};
        const Line& a = ref(j.refs[0], here);
        const Line& b = ref(j.refs[1], here);
        const bool tainted = taint_[j.refs[0] - 1] || taint_[j.refs[1] - 1];
        auto fits = [&](const Line& minor, const Line& major) {
          return equal(canonical(mk(implication(), minor.f, line.f), l_), canonical(major.f, l_));
        };
        if (fits(a, b) || fits(b, a)) return {true, tainted, "mp"};
        return {false, false, "mp: neither reference is an implication from the other to this step"};
      }
      case Justification::Kind::Nec: {
        if (c_ == CalculusId::RFDE) return {false, false, "RFDE has no necessitation"};
        if (j.refs.size() != 1) return {false, false, "nec needs one reference"};
        const Line& a = ref(j.refs[0], here);
        if (taint_[j.refs[0] - 1]) return {false, false, "nec applied to a premise-dependent step"};
        if (!equal(canonical(nec_of(a.f), l_), canonical(line.f, l_))) return {false, false, "nec: wrong conclusion"};
        return {true, false, "nec"};
      }
      case Justification::Kind::From: return check_from(j, line, here);
      case Justification::Kind::Rule: return check_rule(j, line, here);
    }
    return v;
  }

  StepVerdict check_from(const Justification& j, const Line& line, std::size_t here) {
    if (c_ == CalculusId::RFDE) return {false, false, "RFDE steps use sequent rules"};
    std::vector<Expr> cited, used;
    bool tainted = false;
    for (int k : j.refs) {
      cited.push_back(ref(k, here).f);
      tainted = tainted || taint_[k - 1];
    }
    for (const auto& u : j.using_) {
      Expr e = parse(l_, u).root;
      if (!find_match(c_, e, d_.extensions, "", 0)) return {false, false, "using: not an axiom instance: " + u};
      used.push_back(e);
    }
    bool ok = false;
    switch (c_) {
      case CalculusId::HBIG:
      case CalculusId::HQG:
      case CalculusId::HQPG:
      case CalculusId::HQPG_TOP: ok = big_entails(cited, line.f, used).holds; break;
      case CalculusId::HG2ORD:
      case CalculusId::HMCB: ok = g2_entails(Lang::G2ORD, cited, line.f, used).holds; break;
      case CalculusId::HG2NEL:
      case CalculusId::HNMCB: ok = g2_entails(Lang::G2NEL, cited, line.f, used).holds; break;
      case CalculusId::HQP: {
        std::vector<Expr> all(cited);
        all.insert(all.end(), used.begin(), used.end());
        Expr goal = line.f;
        if (!all.empty()) {
          Expr conj = all[0];
          for (std::size_t i = 1; i < all.size(); ++i) conj = mk(Kind::And, conj, all[i]);
          goal = mk(Kind::Mat, conj, goal);
        }
        ok = cpl_valid_abstract(goal);
        break;
      }
      case CalculusId::RFDE: break;
    }
    if (!ok) return {false, false, "does not follow from the cited steps and axiom instances"};
    return {true, tainted, "from"};
  }

  StepVerdict check_rule(const Justification& j, const Line& line, std::size_t here) {
    if (c_ != CalculusId::RFDE) return {false, false, "sequent rules belong to RFDE"};
    if (j.refs.size() != 2) return {false, false, j.name + " needs two references"};
    const Line& a = ref(j.refs[0], here);
    const Line& b = ref(j.refs[1], here);
    const bool tainted = taint_[j.refs[0] - 1] || taint_[j.refs[1] - 1];
    bool ok = false;
    if (j.name == "or_e")
      ok = equal(a.rhs, b.rhs) && equal(line.rhs, a.rhs) && equal(line.lhs, mk(Kind::Or, a.lhs, b.lhs));
    else if (j.name == "and_i")
      ok = equal(a.lhs, b.lhs) && equal(line.lhs, a.lhs) && equal(line.rhs, mk(Kind::And, a.rhs, b.rhs));
    else if (j.name == "trans")
      ok = equal(a.rhs, b.lhs) && equal(line.lhs, a.lhs) && equal(line.rhs, b.rhs);
    else
      return {false, false, "unknown sequent rule '" + j.name + "'"};
    if (!ok) return {false, false, j.name + ": premises do not fit"};
    return {true, tainted, j.name};
  }

  const Derivation& d_;
  CalculusId c_;
  Lang l_;
  std::vector<Line> lines_;
  std::vector<bool> taint_;
};

}  // namespace

CheckReport check_derivation(const Derivation& d) { return Checker(d).run(); }

}  // namespace ql
