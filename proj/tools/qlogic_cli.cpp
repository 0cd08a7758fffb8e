// qlogic: command-line front end. Prints JSON on stdout; exit 0 on
// holds/accept/true, 1 on fails/reject/false, 2 on usage or input errors.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qlogic/io.hpp"

namespace {

using ql::io::json;
using ql::io::to_json;

struct Options {
  std::string lang;
  std::string model;
  int grid = 4;
  int max_states = 4;
  unsigned seed = 1;
  bool json_out = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  if (path.empty()) throw UsageError("--model FILE is required");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return json::parse(in);
}

ql::Lang lang_or(const Options& o, ql::Lang fallback) { return o.lang.empty() ? fallback : ql::lang_from_name(o.lang); }

ql::Expr parse_in(ql::Lang l, const std::string& text) { return ql::parse(l, text).root; }

std::vector<ql::Expr> parse_all(ql::Lang l, const std::vector<std::string>& texts) {
  std::vector<ql::Expr> out;
  for (const auto& t : texts) out.push_back(parse_in(l, t));
  return out;
}

int emit(const json& j, bool ok, const Options& o) {
  std::cout << (o.json_out ? j.dump(2) : j.dump()) << "\n";
  return ok ? 0 : 1;
}

int emit_formula(const ql::Expr& e, const Options& o) {
  if (o.json_out)
    std::cout << json{{"formula", ql::print(e)}, {"ast", to_json(e)}}.dump(2) << "\n";
  else
    std::cout << ql::print(e) << "\n";
  return 0;
}

int status_code(const json& j) {
  const auto s = j.value("status", std::string("holds"));
  return s == "holds" || s == "accept" || s == "true" ? 0 : 1;
}

ql::Layer layer_arg(const std::string& s) { return ql::layer_from_name(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlogic: evaluators, decision procedures and proof checking for qualitative-uncertainty logics"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Options o;
  app.add_option("--lang", o.lang, "language: cpl bd big g2ord g2nel qg mcb nmcb qp");
  app.add_option("--model", o.model, "JSON model, valuation or derivation file");
  app.add_option("--grid", o.grid, "grid denominator bound")->check(CLI::Range(1, 64));
  app.add_option("--max-states", o.max_states, "state bound for searches")->check(CLI::Range(1, 16));
  app.add_option("--seed", o.seed, "accepted for uniformity with the test drivers; every command is deterministic");
  app.add_flag("--json", o.json_out, "indented JSON; formula results also carry their AST");

  std::string text, text2, layer = "qg", property, name, calculus;
  std::vector<std::string> premises, phis, chis, extensions, formulas;
  int state = 0, m = 0;
  bool reverse = false, capacity = false, as_printed = false;
  std::function<int()> run;

  auto formula_arg = [&](CLI::App* c) { c->add_option("formula", text, "formula text")->required(); };
  auto premise_opt = [&](CLI::App* c) { c->add_option("--premise,-p", premises, "premise formula (repeatable)"); };

  auto* parse = app.add_subcommand("parse", "parse a formula and print its AST");
  formula_arg(parse);
  parse->callback([&] {
    run = [&] { return emit(to_json(parse_in(lang_or(o, ql::Lang::QG), text)), true, o); };
  });

  auto* print = app.add_subcommand("print", "print a formula given as AST JSON (or text) in canonical syntax");
  print->add_option("input", text, "AST JSON or formula text")->required();
  print->callback([&] {
    run = [&] {
      ql::Expr e = !text.empty() && text[0] == '{' ? ql::io::expr_from_json(json::parse(text))
                                                   : parse_in(lang_or(o, ql::Lang::QG), text);
      if (!o.lang.empty()) ql::check_language(ql::lang_from_name(o.lang), e);
      return emit_formula(e, o);
    };
  });

  auto* eval_big = app.add_subcommand("eval-big", "value of a biG formula under a valuation file");
  formula_arg(eval_big);
  eval_big->callback([&] {
    run = [&] {
      auto v = ql::io::valuation_from_json(read_json_file(o.model));
      auto e = parse_in(lang_or(o, ql::Lang::BIG), text);
      return emit({{"value", ql::eval_big(e, v).str()}}, true, o);
    };
  });

  auto* eval_g2 = app.add_subcommand("eval-g2", "twist value of a G2 formula under a twist valuation file");
  formula_arg(eval_g2);
  eval_g2->callback([&] {
    run = [&] {
      auto v = ql::io::twist_valuation_from_json(read_json_file(o.model));
      ql::Lang l = lang_or(o, ql::Lang::G2ORD);
      return emit({{"value", to_json(ql::eval_g2(l, parse_in(l, text), v))}}, true, o);
    };
  });

  auto* eval_qg = app.add_subcommand("eval-qg", "value of a QG formula in an uncertainty model file");
  formula_arg(eval_qg);
  eval_qg->callback([&] {
    run = [&] {
      auto md = ql::io::uncertainty_model_from_json(read_json_file(o.model));
      return emit({{"value", ql::eval_qg(md, parse_in(ql::Lang::QG, text)).str()}}, true, o);
    };
  });

  auto* eval_layer = app.add_subcommand("eval-layer", "twist value of an MCB/NMCB formula in a belief model file");
  formula_arg(eval_layer);
  eval_layer->callback([&] {
    run = [&] {
      auto md = ql::io::belief_model_from_json(read_json_file(o.model));
      ql::Lang l = lang_or(o, ql::Lang::MCB);
      return emit({{"value", to_json(ql::eval_layer(md, l, parse_in(l, text)))}}, true, o);
    };
  });

  auto* bd = app.add_subcommand("bd-entails", "Belnap-Dunn validity of a sequent \"phi |- chi\"");
  bd->add_option("sequent", text, "sequent text")->required();
  bd->callback([&] {
    run = [&] {
      auto [l, r] = ql::parse_sequent(text);
      json j = to_json(ql::bd_entails(l, r));
      return emit(j, status_code(j) == 0, o);
    };
  });

  auto* decide = app.add_subcommand("decide", "decision procedures");
  decide->require_subcommand(1);
  auto* big_valid = decide->add_subcommand("big-valid", "biG validity");
  formula_arg(big_valid);
  big_valid->callback([&] {
    run = [&] {
      auto v = ql::big_valid(parse_in(lang_or(o, ql::Lang::BIG), text));
      return emit(to_json(v), v.holds, o);
    };
  });
  auto* big_ent = decide->add_subcommand("big-entails", "biG entailment from --premise formulas");
  formula_arg(big_ent);
  premise_opt(big_ent);
  big_ent->callback([&] {
    run = [&] {
      ql::Lang l = lang_or(o, ql::Lang::BIG);
      auto v = ql::big_entails(parse_all(l, premises), parse_in(l, text));
      return emit(to_json(v), v.holds, o);
    };
  });
  auto* g2_ent = decide->add_subcommand("g2-entails", "G2 entailment; --lang g2ord or g2nel");
  formula_arg(g2_ent);
  premise_opt(g2_ent);
  g2_ent->callback([&] {
    run = [&] {
      ql::Lang l = lang_or(o, ql::Lang::G2ORD);
      auto v = ql::g2_entails(l, parse_all(l, premises), parse_in(l, text));
      return emit(to_json(v), v.holds, o);
    };
  });
  auto* qg_ent = decide->add_subcommand("qg-entails", "QG entailment over the minimal frame class");
  formula_arg(qg_ent);
  premise_opt(qg_ent);
  qg_ent->callback([&] {
    run = [&] {
      auto v = ql::qg_entails(parse_all(ql::Lang::QG, premises), parse_in(ql::Lang::QG, text));
      return emit(to_json(v), v.holds, o);
    };
  });

  auto* kripke = app.add_subcommand("kripke", "G2 Kripke semantics");
  kripke->require_subcommand(1);
  auto* ksup = kripke->add_subcommand("support", "positive/negative support at --state");
  formula_arg(ksup);
  ksup->add_option("--state", state, "state index");
  ksup->add_flag("--as-printed", as_printed, "use the printed negative clause of -<");
  ksup->callback([&] {
    run = [&] {
      auto md = ql::io::kripke_model_from_json(read_json_file(o.model));
      ql::Lang l = lang_or(o, ql::Lang::G2ORD);
      auto r = as_printed ? ql::CoimplReading::AsPrinted : ql::CoimplReading::Corrected;
      auto s = ql::ksupport(md, state, parse_in(l, text), l, r);
      return emit({{"pos", s.pos}, {"neg", s.neg}}, true, o);
    };
  });
  auto* kent = kripke->add_subcommand("entails", "local entailment over chains of up to --max-states states");
  formula_arg(kent);
  premise_opt(kent);
  kent->add_flag("--as-printed", as_printed, "use the printed negative clause of -<");
  kent->callback([&] {
    run = [&] {
      ql::Lang l = lang_or(o, ql::Lang::G2ORD);
      auto r = as_printed ? ql::CoimplReading::AsPrinted : ql::CoimplReading::Corrected;
      auto v = ql::kentails(parse_all(l, premises), parse_in(l, text), l, o.max_states, r);
      return emit(to_json(v), v.holds, o);
    };
  });
  auto* kcp = kripke->add_subcommand("counterpart", "twist valuation to chain model, or back with --reverse");
  kcp->add_flag("--reverse", reverse, "read a Kripke model and produce the valuation");
  kcp->callback([&] {
    run = [&] {
      json in = read_json_file(o.model);
      if (!reverse) return emit(to_json(ql::valuation_to_model(ql::io::twist_valuation_from_json(in))), true, o);
      auto rep = ql::model_to_valuation(ql::io::kripke_model_from_json(in));
      return emit({{"constraints", rep.constraints}, {"valuation", to_json(rep.solution)}}, true, o);
    };
  });

  auto* model = app.add_subcommand("model", "measure frames and two-layered models");
  model->require_subcommand(1);
  auto* prop = model->add_subcommand("check-property", "check a measure property of a frame file");
  prop->add_option("property", property, "monotone nontrivial capacity cond_I..cond_IV muPM muKPS mcb_I..mcb_IV")
      ->required();
  prop->add_option("--m", m, "number of compared pairs for muKPS");
  prop->callback([&] {
    run = [&] {
      auto f = ql::io::frame_from_json(read_json_file(o.model));
      auto r = ql::check_property(f, ql::property_from_name(property), m);
      return emit(to_json(r), r.holds, o);
    };
  });
  auto* fv = model->add_subcommand("frame-validates", "validity of a formula on a frame file");
  formula_arg(fv);
  fv->add_option("--layer", layer, "qg, mcb or nmcb");
  fv->callback([&] {
    run = [&] {
      auto f = ql::io::frame_from_json(read_json_file(o.model));
      ql::Layer ly = layer_arg(layer);
      auto v = ql::frame_validates(f, parse_in(ql::layer_lang(ly), text), ly);
      return emit(to_json(v), v.holds, o);
    };
  });
  auto* corr = model->add_subcommand("correspondence", "exhaustive frame correspondence for a named formula");
  corr->add_option("name", name, "1compl disj+ disj0 cap disj+neg disj0neg disj+N disj0N QBel")->required();
  corr->callback([&] {
    run = [&] {
      auto r = name == "QBel" ? ql::qbel_correspondence(o.max_states, o.grid)
                              : ql::correspondence_test(ql::named_formula(name), o.max_states, o.grid);
      return emit(to_json(r), r.mismatches.empty(), o);
    };
  });
  auto* search = model->add_subcommand("search-countermodel", "bounded frame search refuting premises |= formula");
  formula_arg(search);
  premise_opt(search);
  search->add_option("--layer", layer, "qg, mcb or nmcb");
  search->add_flag("--capacity", capacity, "restrict to capacities");
  search->callback([&] {
    run = [&] {
      ql::Layer ly = layer_arg(layer);
      ql::Lang l = ql::layer_lang(ly);
      ql::FrameClass cls;
      cls.capacity = capacity;
      auto c = ql::find_frame_countermodel(parse_all(l, premises), parse_in(l, text), ly, cls,
                                           {o.max_states, o.grid});
      if (!c) return emit({{"status", "holds"}}, true, o);
      return emit({{"status", "fails"}, {"countermodel", to_json(*c)}}, false, o);
    };
  });
  auto* canon = model->add_subcommand("canonical", "canonical model from a valuation file over the given formulas");
  canon->add_option("formulas", formulas, "formulas whose modal atoms are realized")->required();
  canon->add_option("--layer", layer, "qg or mcb");
  canon->callback([&] {
    run = [&] {
      json in = read_json_file(o.model);
      ql::Layer ly = layer_arg(layer);
      auto fs = parse_all(ql::layer_lang(ly), formulas);
      if (ly == ql::Layer::QG) return emit(to_json(ql::canonical_qg_model(ql::io::valuation_from_json(in), fs)), true, o);
      return emit(to_json(ql::canonical_mcb_model(ql::io::twist_valuation_from_json(in), fs)), true, o);
    };
  });

  auto* qp = app.add_subcommand("qp", "qualitative probability");
  qp->require_subcommand(1);
  auto* sat = qp->add_subcommand("sat", "satisfaction at --state of a Gardenfors model file");
  formula_arg(sat);
  sat->add_option("--state", state, "pointed state");
  sat->callback([&] {
    run = [&] {
      auto md = ql::io::gardenfors_model_from_json(read_json_file(o.model));
      bool b = ql::qp_sat(md, state, parse_in(ql::Lang::QP, text));
      return emit({{"status", b ? "true" : "false"}}, b, o);
    };
  });
  auto* sif = qp->add_subcommand("translate-sif", "translate a SIF into QG");
  formula_arg(sif);
  sif->callback([&] { run = [&] { return emit_formula(ql::translate_sif(parse_in(ql::Lang::QP, text)), o); }; });
  auto list_opts = [&](CLI::App* c) {
    c->add_option("--phi", phis, "left list (repeatable)")->required();
    c->add_option("--chi", chis, "right list (repeatable)")->required();
  };
  auto* gen_e = qp->add_subcommand("gen-e", "E-notation phi_1..phi_m E chi_1..chi_m");
  list_opts(gen_e);
  gen_e->add_flag("--g", reverse, "the QG form delta(B(D) <-> B(Top))");
  gen_e->callback([&] {
    run = [&] {
      auto a = parse_all(ql::Lang::CPL, phis), b = parse_all(ql::Lang::CPL, chis);
      return emit_formula(reverse ? ql::e_g_notation(a, b) : ql::e_notation(a, b), o);
    };
  });
  auto* gen_kps = qp->add_subcommand("gen-kps", "KPS instance (QG); --a4 for the QP form");
  list_opts(gen_kps);
  gen_kps->add_flag("--a4", reverse, "the QP axiom A4 instance");
  gen_kps->callback([&] {
    run = [&] {
      auto a = parse_all(ql::Lang::CPL, phis), b = parse_all(ql::Lang::CPL, chis);
      return emit_formula(reverse ? ql::a4_instance(a, b) : ql::kps_instance(a, b), o);
    };
  });
  auto* qcp = qp->add_subcommand("counterpart", "Gardenfors model agreeing with an uncertainty model file");
  qcp->callback([&] {
    run = [&] {
      auto r = ql::qp_counterpart(ql::io::uncertainty_model_from_json(read_json_file(o.model)));
      if (!r) return emit({{"status", "fails"}}, false, o);
      return emit({{"status", "holds"}, {"model", to_json(r->model)}, {"state", r->state}, {"witness", to_json(r->witness)}},
                  true, o);
    };
  });
  auto* lp = qp->add_subcommand("represent-lp", "probability measure agreeing with an order or frame file");
  lp->callback([&] {
    run = [&] {
      json in = read_json_file(o.model);
      auto ord = in.contains("rank") ? ql::io::order_from_json(in) : ql::order_of(ql::io::frame_from_json(in));
      auto w = ql::represent_order_lp(ord);
      if (!w) return emit({{"status", "fails"}}, false, o);
      return emit({{"status", "holds"}, {"witness", to_json(*w)}}, true, o);
    };
  });

  auto* prove = app.add_subcommand("prove", "Hilbert calculi");
  prove->require_subcommand(1);
  auto* ma = prove->add_subcommand("match-axiom", "find the axiom schema a formula instantiates");
  ma->add_option("formula", text, "formula, or \"phi |- chi\" for RFDE")->required();
  ma->add_option("--calculus", calculus, "HBIG HG2ORD HG2NEL HQG HQPG HQPG_TOP HQP HMCB HNMCB RFDE")->required();
  ma->add_option("--ext", extensions, "extension schemas: cap, QBel");
  ma->callback([&] {
    run = [&] {
      auto c = ql::calculus_from_name(calculus);
      std::optional<ql::AxiomMatch> r;
      if (c == ql::CalculusId::RFDE) {
        auto [l, rr] = ql::parse_sequent(text);
        r = ql::match_sequent_axiom(l, rr);
      } else {
        r = ql::match_axiom(c, parse_in(ql::calculus_lang(c), text), extensions);
      }
      if (!r) return emit({{"status", "false"}}, false, o);
      json j = to_json(*r);
      j["status"] = "true";
      return emit(j, true, o);
    };
  });
  auto* check = prove->add_subcommand("check", "check a derivation file");
  check->add_option("file", text2, "derivation JSON (or use --model)");
  check->callback([&] {
    run = [&] {
      auto d = ql::io::derivation_from_json(read_json_file(text2.empty() ? o.model : text2));
      auto r = ql::check_derivation(d);
      return emit(to_json(r), r.accepted, o);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return run ? run() : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
