// Command-line front end: evaluation, equality, translation, axiom
// verification, synthesis, simplification, derivation replay and circuit
// import over the JSON file formats.  JSON reports go to stdout, prose to
// stderr.  Exit codes: 0 success / Equal / Valid / all-sound, 1 semantic
// failure (NotEqual / InvalidStep / unsound), 2 malformed input.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dzx/json_io.hpp"

using namespace dzx;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open file: " + path);
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Diagram load_diagram(const std::string& path) {
  try {
    return diagram_from_json(load_json(path));
  } catch (const JsonFormatError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct Options {
  std::string mode = "exact";
  double tol = 1e-9;
  unsigned seed = 0x5eed;
  int max_arity = 3;
};

int cmd_eval(const std::string& path, const Options& opt) {
  Diagram d = load_diagram(path);
  if (opt.mode == "exact")
    emit(matrix_to_json(interpret_exact(d)));
  else
    emit(matrix_to_json(interpret_float(d)));
  return 0;
}

int cmd_equal(const std::string& p1, const std::string& p2, const Options& opt) {
  Diagram a = load_diagram(p1), b = load_diagram(p2);
  EqualityResult r = opt.mode == "exact" ? check_equal<CycloScalar>(a, b)
                                         : check_equal<ApproxScalar>(a, b, opt.tol);
  json rep{{"result", r.equal ? "Equal" : "NotEqual"}, {"mode", opt.mode}};
  if (!r.equal) {
    if (r.shape_mismatch) rep["reason"] = "shape mismatch";
    if (r.witness)
      rep["witness"] = {{"row", r.witness->row},
                        {"col", r.witness->col},
                        {"lhs", r.witness->lhs},
                        {"rhs", r.witness->rhs}};
  }
  emit(rep);
  std::cerr << (r.equal ? "Equal" : "NotEqual") << "\n";
  return r.equal ? 0 : 1;
}

int cmd_translate(const std::string& to, const std::string& path) {
  Diagram d = load_diagram(path);
  Diagram out;
  if (to == "zx") {
    if (d.calculus != Calculus::ZW) throw InputError("translate --to zx expects a zw diagram");
    out = zw_to_zx(d);
  } else if (to == "zw") {
    if (d.calculus != Calculus::ZX) throw InputError("translate --to zw expects a zx diagram");
    try {
      out = zx_to_zw(d);
    } catch (const NotRepresentable& e) {
      throw InputError(std::string("diagram is outside the translatable fragment: ") + e.what());
    }
  } else {
    throw InputError("--to must be 'zx' or 'zw'");
  }
  emit(diagram_to_json(out));
  return 0;
}

int cmd_verify_axioms(const std::string& ruleset, const Options& opt) {
  RuleSet rs;
  try {
    rs = make_ruleset(ruleset);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  SoundnessConfig cfg;
  cfg.seed = opt.seed;
  cfg.tol = opt.tol;
  cfg.boundary_cap = 2 * opt.max_arity;
  json rules = json::array();
  bool all = true;
  for (auto& r : rs.rules) {
    SoundnessReport rep = verify_rule_soundness(r, cfg);
    all = all && rep.sound();
    rules.push_back(soundness_report_to_json(rep));
    std::cerr << "rule " << r.name << ": " << (rep.sound() ? "sound" : "UNSOUND") << " ("
              << rep.checked << " instances)\n";
  }
  emit(json{{"ruleset", ruleset}, {"sound", all}, {"rules", std::move(rules)}});
  std::cerr << (all ? "all rules sound" : "ruleset contains unsound rules") << "\n";
  return all ? 0 : 1;
}

int cmd_synth(const std::string& path) {
  Matrix<CycloScalar> M;
  try {
    M = exact_matrix_from_json(load_json(path));
  } catch (const JsonFormatError& e) {
    throw InputError(path + ": " + e.what());
  }
  Diagram d;
  try {
    d = synthesize(M);
  } catch (const NotRepresentable& e) {
    throw InputError(std::string("matrix is not synthesizable: ") + e.what());
  }
  emit(diagram_to_json(d));
  std::cerr << "synthesized " << d.nodes.size() << " nodes\n";
  return 0;
}

int cmd_simplify(const std::string& ruleset, const std::string& path, int budget) {
  RuleSet rs;
  try {
    rs = make_ruleset(ruleset);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  Diagram d = load_diagram(path);
  SimplifyResult r = simplify(d, rs, budget);
  emit(json{{"diagram", diagram_to_json(r.diagram)},
            {"steps", r.steps},
            {"derivation", derivation_to_json(r.derivation)}});
  std::cerr << "simplify: " << d.nodes.size() << " -> " << r.diagram.nodes.size()
            << " nodes in " << r.steps << " steps\n";
  return 0;
}

int cmd_replay(const std::string& path) {
  Derivation d;
  try {
    d = derivation_from_json(load_json(path));
  } catch (const JsonFormatError& e) {
    throw InputError(path + ": " + e.what());
  }
  RuleSet rs;
  try {
    rs = make_ruleset(d.ruleset);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  ReplayReport rep = replay_derivation(d, rs);
  json out{{"result", rep.ok ? "Valid" : "InvalidStep"}};
  if (!rep.ok) {
    out["step"] = rep.failed_step;
    out["reason"] = rep.reason;
  }
  emit(out);
  std::cerr << (rep.ok ? "Valid" : "Invalid: " + rep.reason) << "\n";
  return rep.ok ? 0 : 1;
}

int cmd_circuit(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open file: " + path);
  Diagram d;
  try {
    d = circuit_to_diagram(parse_circuit(is));
  } catch (const CircuitParseError& e) {
    throw InputError(path + ": " + e.what());
  }
  emit(diagram_to_json(d));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rewriting toolkit for ZX(+triangle) and ZW string diagrams"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--mode", opt.mode, "arithmetic mode")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", opt.tol, "float comparison tolerance");
  app.add_option("--seed", opt.seed, "seed for randomized sweeps");
  app.add_option("--max-arity", opt.max_arity, "boundary legs per side in soundness sweeps");

  std::string path, path2, to, ruleset = "dzx";
  int budget = 64;

  auto* eval = app.add_subcommand("eval", "interpret a diagram as a matrix");
  eval->add_option("diagram", path)->required();
  auto* equal = app.add_subcommand("equal", "compare two diagrams semantically");
  equal->add_option("d1", path)->required();
  equal->add_option("d2", path2)->required();
  auto* translate = app.add_subcommand("translate", "translate between the calculi");
  translate->add_option("--to", to, "target calculus")->required()
      ->check(CLI::IsMember({"zx", "zw"}));
  translate->add_option("diagram", path)->required();
  auto* verify = app.add_subcommand("verify-axioms", "soundness-sweep a ruleset");
  verify->add_option("--ruleset", ruleset)->required();
  auto* synth = app.add_subcommand("synth", "synthesize a diagram from an exact matrix");
  synth->add_option("matrix", path)->required();
  auto* simp = app.add_subcommand("simplify", "greedy node-count reduction");
  simp->add_option("--ruleset", ruleset)->required();
  simp->add_option("--budget", budget, "maximum rewrite steps");
  simp->add_option("diagram", path)->required();
  auto* replay = app.add_subcommand("replay", "replay a derivation file");
  replay->add_option("derivation", path)->required();
  auto* circuit = app.add_subcommand("circuit", "import a gate-list circuit as a diagram");
  circuit->add_option("circuit", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) return cmd_eval(path, opt);
    if (*equal) return cmd_equal(path, path2, opt);
    if (*translate) return cmd_translate(to, path);
    if (*verify) return cmd_verify_axioms(ruleset, opt);
    if (*synth) return cmd_synth(path);
    if (*simp) return cmd_simplify(ruleset, path, budget);
    if (*replay) return cmd_replay(path);
    if (*circuit) return cmd_circuit(path);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const DimensionOverflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
