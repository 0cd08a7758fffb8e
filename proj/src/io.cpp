#include "qlogic/io.hpp"

namespace ql::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw FormatError("expected a rational string such as \"1/2\"");
}

UnitRational unit_from_json(const json& j) { return UnitRational(rational_from_json(j)); }

std::string subset_key(Mask m) { return mask_to_json(m).dump(); }

std::vector<UnitRational> mu_from_json(const json& j, int states) {
  if (states < 1 || states > kMaxMeasureStates) throw FormatError("states must be in 1.." + std::to_string(kMaxMeasureStates));
  const std::size_t n = std::size_t(1) << states;
  std::vector<UnitRational> mu(n);
  std::vector<char> seen(n, 0);
  for (auto it = j.begin(); it != j.end(); ++it) {
    Mask m = mask_from_json(json::parse(it.key()));
    if (m >= n) throw FormatError("measure key " + it.key() + " names a state outside W");
    mu[m] = unit_from_json(it.value());
    seen[m] = 1;
  }
  for (std::size_t m = 0; m < n; ++m)
    if (!seen[m]) throw FormatError("measure has no value for " + subset_key(m));
  return mu;
}

json mu_to_json(const std::vector<UnitRational>& mu) {
  json out = json::object();
  for (std::size_t m = 0; m < mu.size(); ++m) out[subset_key(m)] = mu[m].str();
  return out;
}

json valuation_json(const auto& v) {
  json out = json::object();
  for (const auto& [k, x] : v) out[k] = to_json(x);
  return out;
}

}  // namespace

json to_json(const Expr& e) {
  json out{{"kind", kind_name(e->kind)}, {"children", json::array()}};
  for (const auto& k : e->kids) out["children"].push_back(to_json(k));
  if (e->kind == Kind::Var || e->kind == Kind::Meta) out["var"] = e->name;
  return out;
}

Expr expr_from_json(const json& j) {
  Kind k = kind_from_name(field(j, "kind").get<std::string>());
  if (k == Kind::Var) return var(field(j, "var").get<std::string>());
  if (k == Kind::Meta) return meta(field(j, "var").get<std::string>());
  std::vector<Expr> kids;
  if (j.contains("children"))
    for (const auto& c : j.at("children")) kids.push_back(expr_from_json(c));
  if (static_cast<int>(kids.size()) != arity(k)) throw FormatError("wrong number of children for " + kind_name(k));
  return std::make_shared<const Node>(Node{k, {}, std::move(kids)});
}

json mask_to_json(Mask m) {
  json out = json::array();
  for (int s = 0; s < 64; ++s)
    if (m >> s & 1) out.push_back(s);
  return out;
}

Mask mask_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("a state set is an array of state indices");
  Mask m = 0;
  for (const auto& s : j) {
    int i = s.get<int>();
    if (i < 0 || i >= 64) throw FormatError("state index out of range");
    m |= Mask(1) << i;
  }
  return m;
}

json masks_to_json(const std::map<std::string, Mask>& v) {
  json out = json::object();
  for (const auto& [k, m] : v) out[k] = mask_to_json(m);
  return out;
}

std::map<std::string, Mask> masks_from_json(const json& j) {
  std::map<std::string, Mask> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = mask_from_json(it.value());
  return out;
}

json to_json(const Valuation& v) {
  json out = json::object();
  for (const auto& [k, x] : v) out[k] = x.str();
  return out;
}

Valuation valuation_from_json(const json& j) {
  Valuation v;
  for (auto it = j.begin(); it != j.end(); ++it) v[it.key()] = unit_from_json(it.value());
  return v;
}

json to_json(const TwistValue& v) { return json::array({v.t.str(), v.f.str()}); }

TwistValue twist_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("a twist value is a pair [\"t\", \"f\"]");
  return {unit_from_json(j[0]), unit_from_json(j[1])};
}

json to_json(const TwistValuation& v) { return valuation_json(v); }

TwistValuation twist_valuation_from_json(const json& j) {
  TwistValuation v;
  for (auto it = j.begin(); it != j.end(); ++it) v[it.key()] = twist_from_json(it.value());
  return v;
}

json to_json(const FourValuation& v) {
  json out = json::object();
  for (const auto& [k, x] : v) out[k] = std::string(1, four_char(x));
  return out;
}

FourValuation four_valuation_from_json(const json& j) {
  FourValuation v;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto s = it.value().get<std::string>();
    if (s.size() != 1) throw FormatError("a four-valued value is one of \"t\", \"f\", \"b\", \"n\"");
    v[it.key()] = four_from_char(s[0]);
  }
  return v;
}

json to_json(const BDModel& m) {
  return {{"states", m.states}, {"vplus", masks_to_json(m.vplus)}, {"vminus", masks_to_json(m.vminus)}};
}

BDModel bd_model_from_json(const json& j) {
  BDModel m;
  m.states = field(j, "states").get<int>();
  m.vplus = masks_from_json(j.value("vplus", json::object()));
  m.vminus = masks_from_json(j.value("vminus", json::object()));
  validate(m);
  return m;
}

json to_json(const G2KripkeModel& m) {
  return {{"states", m.states},
          {"order", m.rank},
          {"vplus", masks_to_json(m.vplus)},
          {"vminus", masks_to_json(m.vminus)}};
}

G2KripkeModel kripke_model_from_json(const json& j) {
  G2KripkeModel m;
  m.states = field(j, "states").get<int>();
  m.rank = field(j, "order").get<std::vector<int>>();
  m.vplus = masks_from_json(j.value("vplus", json::object()));
  m.vminus = masks_from_json(j.value("vminus", json::object()));
  validate(m);
  return m;
}

json to_json(const Frame& f) { return {{"states", f.states}, {"mu", mu_to_json(f.mu)}}; }

Frame frame_from_json(const json& j) {
  int n = field(j, "states").get<int>();
  return make_frame(n, mu_from_json(field(j, "mu"), n));
}

json to_json(const UncertaintyModel& m) {
  return {{"states", m.frame.states}, {"v", masks_to_json(m.v)}, {"mu", mu_to_json(m.frame.mu)}};
}

UncertaintyModel uncertainty_model_from_json(const json& j) {
  return {frame_from_json(j), masks_from_json(j.value("v", json::object()))};
}

json to_json(const BeliefModel& m) {
  return {{"states", m.frame.states},
          {"v", masks_to_json(m.vplus)},
          {"vminus", masks_to_json(m.vminus)},
          {"mu", mu_to_json(m.frame.mu)}};
}

BeliefModel belief_model_from_json(const json& j) {
  BeliefModel m;
  m.frame = frame_from_json(j);
  m.vplus = masks_from_json(j.contains("v") ? j.at("v") : j.value("vplus", json::object()));
  m.vminus = masks_from_json(j.value("vminus", json::object()));
  return m;
}

json to_json(const GardenforsModel& m) {
  json w = json::object();
  for (std::size_t x = 0; x < m.weights.size(); ++x) {
    json row = json::array();
    for (const auto& q : m.weights[x]) row.push_back(q.str());
    w[std::to_string(x)] = row;
  }
  return {{"states", m.states}, {"weights", w}, {"v", masks_to_json(m.v)}};
}

GardenforsModel gardenfors_model_from_json(const json& j) {
  GardenforsModel m;
  m.states = field(j, "states").get<int>();
  m.weights.assign(m.states, {});
  const json& w = field(j, "weights");
  for (int x = 0; x < m.states; ++x) {
    const json& row = field(w, std::to_string(x).c_str());
    for (const auto& q : row) m.weights[x].push_back(rational_from_json(q));
  }
  m.v = masks_from_json(j.value("v", json::object()));
  validate(m);
  return m;
}

json to_json(const MeasureWitness& w) {
  json ws = json::array();
  for (const auto& q : w.weights) ws.push_back(q.str());
  return {{"weights", ws}, {"epsilon", w.epsilon.str()}};
}

MeasureWitness measure_witness_from_json(const json& j) {
  MeasureWitness w;
  for (const auto& q : field(j, "weights")) w.weights.push_back(rational_from_json(q));
  w.epsilon = rational_from_json(field(j, "epsilon"));
  return w;
}

json to_json(const OrderInstance& o) { return {{"states", o.states}, {"rank", o.rank}}; }

OrderInstance order_from_json(const json& j) {
  OrderInstance o;
  o.states = field(j, "states").get<int>();
  o.rank = field(j, "rank").get<std::vector<int>>();
  if (o.states < 1 || o.states > kMaxLpStates || o.rank.size() != (std::size_t(1) << o.states))
    throw FormatError("an order ranks every subset of W, indexed by mask");
  return o;
}

json to_json(const Verdict& v) {
  json out{{"status", v.holds ? "holds" : "fails"}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  if (v.twist) out["witness"] = to_json(*v.twist);
  return out;
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  v.holds = field(j, "status").get<std::string>() == "holds";
  if (j.contains("witness")) {
    const json& w = j.at("witness");
    if (!w.empty() && w.begin()->is_array())
      v.twist = twist_valuation_from_json(w);
    else
      v.witness = valuation_from_json(w);
  }
  return v;
}

json to_json(const BDVerdict& v) {
  json out{{"status", v.holds ? "holds" : "fails"}};
  if (!v.holds) out["witness"] = to_json(v.witness);
  return out;
}

json to_json(const KVerdict& v) {
  json out{{"status", v.holds ? "holds" : "fails"}};
  if (v.model) {
    out["model"] = to_json(*v.model);
    out["state"] = v.state;
  }
  return out;
}

json to_json(const PropertyResult& r) {
  json out{{"status", r.holds ? "holds" : "fails"}};
  if (!r.holds) {
    out["witness"] = json::array();
    for (Mask m : r.witness) out["witness"].push_back(mask_to_json(m));
  }
  return out;
}

json to_json(const FrameVerdict& v) {
  json out{{"status", v.holds ? "holds" : "fails"}};
  if (v.qg_counter) out["countermodel"] = to_json(*v.qg_counter);
  if (v.layer_counter) out["countermodel"] = to_json(*v.layer_counter);
  return out;
}

json to_json(const CorrespondenceReport& r) {
  json out{{"name", r.name},
           {"states", r.states},
           {"grid", r.grid},
           {"frames", r.frames},
           {"agree", r.agree},
           {"status", r.mismatches.empty() ? "holds" : "fails"},
           {"mismatches", json::array()}};
  for (const auto& f : r.mismatches) out["mismatches"].push_back(to_json(f));
  return out;
}

json to_json(const QBelWitness& w) {
  return {{"model", to_json(w.model)}, {"formula", print(w.formula)}, {"value", w.value.str()}};
}

json to_json(const Countermodel& c) {
  json out = json::object();
  if (c.qg) out["qg"] = to_json(*c.qg);
  if (c.layer) out["layer"] = to_json(*c.layer);
  return out;
}

json to_json(const AxiomMatch& m) {
  json b = json::object();
  for (const auto& [k, v] : m.binding) b[k] = print(v);
  json out{{"schema", m.schema}, {"binding", b}};
  if (m.m) out["m"] = m.m;
  return out;
}

namespace {

json just_to_json(const Justification& j) {
  using K = Justification::Kind;
  switch (j.kind) {
    case K::Premise: return {{"premise", true}};
    case K::Axiom: {
      json out{{"axiom", j.name}};
      if (j.m) out["m"] = j.m;
      return out;
    }
    case K::MP: return {{"mp", j.refs}};
    case K::Nec: return {{"nec", j.refs.empty() ? 0 : j.refs[0]}};
    case K::From: return {{"from", j.refs}, {"using", j.using_}};
    case K::Rule: return {{"rule", j.name}, {"refs", j.refs}};
  }
  return {};
}

Justification just_from_json(const json& j) {
  using K = Justification::Kind;
  Justification out;
  if (j.contains("premise")) {
    out.kind = K::Premise;
  } else if (j.contains("axiom")) {
    out.kind = K::Axiom;
    if (j.at("axiom").is_string()) out.name = j.at("axiom").get<std::string>();
    out.m = j.value("m", 0);
  } else if (j.contains("mp")) {
    out.kind = K::MP;
    out.refs = j.at("mp").get<std::vector<int>>();
  } else if (j.contains("nec")) {
    out.kind = K::Nec;
    out.refs = {j.at("nec").get<int>()};
  } else if (j.contains("from")) {
    out.kind = K::From;
    out.refs = j.at("from").get<std::vector<int>>();
    out.using_ = j.value("using", std::vector<std::string>{});
  } else if (j.contains("rule")) {
    out.kind = K::Rule;
    out.name = j.at("rule").get<std::string>();
    out.refs = j.value("refs", std::vector<int>{});
  } else {
    throw FormatError("justification needs one of premise, axiom, mp, nec, from, rule");
  }
  return out;
}

}  // namespace

json to_json(const Derivation& d) {
  json out{{"calculus", calculus_name(d.calculus)}, {"premises", d.premises}, {"steps", json::array()}};
  if (d.goal) out["goal"] = *d.goal;
  if (!d.extensions.empty()) out["extensions"] = d.extensions;
  for (const auto& s : d.steps) out["steps"].push_back({{"formula", s.formula}, {"just", just_to_json(s.just)}});
  return out;
}

Derivation derivation_from_json(const json& j) {
  Derivation d;
  d.calculus = calculus_from_name(field(j, "calculus").get<std::string>());
  d.premises = j.value("premises", std::vector<std::string>{});
  if (j.contains("goal")) d.goal = j.at("goal").get<std::string>();
  d.extensions = j.value("extensions", std::vector<std::string>{});
  for (const auto& s : field(j, "steps"))
    d.steps.push_back({field(s, "formula").get<std::string>(), just_from_json(field(s, "just"))});
  return d;
}

json to_json(const CheckReport& r) {
  json out{{"status", r.accepted ? "accept" : "reject"}, {"steps", json::array()}};
  for (const auto& s : r.steps) out["steps"].push_back({{"ok", s.ok}, {"tainted", s.tainted}, {"detail", s.detail}});
  if (!r.accepted) {
    out["first_failure"] = r.first_failure;
    out["reason"] = r.reason;
  }
  return out;
}

}  // namespace ql::io
