#pragma once
// JSON serialization for diagrams, angles, matrices and derivations.
//
// Diagram files: {"calculus":"zx"|"zw",
//                 "nodes":[{"id":i,"kind":"ZSpider","angle":{...},"arity":[n,m]}],
//                 "wires":[[portref,portref],...],
//                 "inputs":[0,..,n-1],"outputs":[0,..,m-1]}
// portref: {"node":id,"port":p} or {"boundary":"in"|"out","slot":s}
// angle:   {"pi":[num,den]} | {"float":x}
//        | {"linear":{"coeffs":{"a":1,...},"const":[num,den]}}
// matrix:  {"rows":R,"cols":C,"mode":"exact"|"float","entries":[[..],..]} with
//          exact entries {"coeffs":[a,b,c,d],"sqrt2_exp":k}, float [re,im].

#include <json.hpp>

#include "rewrite.hpp"

namespace dzx {

using json = nlohmann::ordered_json;

struct JsonFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- kinds -----------------------------------------------------------------

inline std::string kind_name(Kind k) {
  switch (k) {
    case Kind::ZSpider: return "ZSpider";
    case Kind::XSpider: return "XSpider";
    case Kind::Hadamard: return "Hadamard";
    case Kind::Triangle: return "Triangle";
    case Kind::WhiteDot1: return "ZWhite11";
    case Kind::WhiteDot2: return "ZWhite21";
    case Kind::BlackDot1: return "WBlack11";
    case Kind::BlackDot2: return "WBlack12";
    case Kind::Cross: return "ZWCross";
    case Kind::Star: return "Sqrt2Star";
  }
  throw JsonFormatError("unknown node kind");
}

inline Kind kind_from_name(const std::string& s) {
  static const std::map<std::string, Kind> tbl = {
      {"ZSpider", Kind::ZSpider},   {"XSpider", Kind::XSpider},
      {"Hadamard", Kind::Hadamard}, {"Triangle", Kind::Triangle},
      {"ZWhite11", Kind::WhiteDot1},{"ZWhite21", Kind::WhiteDot2},
      {"WBlack11", Kind::BlackDot1},{"WBlack12", Kind::BlackDot2},
      {"ZWCross", Kind::Cross},     {"Sqrt2Star", Kind::Star}};
  auto it = tbl.find(s);
  if (it == tbl.end()) throw JsonFormatError("unknown node kind '" + s + "'");
  return it->second;
}

// ---- angles ----------------------------------------------------------------

inline json angle_to_json(const Angle& a) {
  if (a.is_exact()) return json{{"pi", {a.exact.num, a.exact.den}}};
  if (a.is_linear()) {
    json coeffs = json::object();
    for (auto& [v, c] : a.coeffs) coeffs[v] = c;
    return json{{"linear", {{"coeffs", coeffs}, {"const", {a.exact.num, a.exact.den}}}}};
  }
  return json{{"float", a.radians()}};
}

inline Angle angle_from_json(const json& j) {
  if (!j.is_object()) throw JsonFormatError("angle must be an object");
  if (j.contains("pi")) {
    auto& p = j.at("pi");
    if (!p.is_array() || p.size() != 2) throw JsonFormatError("angle.pi must be [num,den]");
    return Angle::pi_frac(p[0].get<long long>(), p[1].get<long long>());
  }
  if (j.contains("float")) return Angle::from_float(j.at("float").get<double>());
  if (j.contains("linear")) {
    auto& l = j.at("linear");
    Angle a = Angle::zero();
    bool first = true;
    for (auto& [v, c] : l.at("coeffs").items()) {
      Angle term = Angle::var(v, c.get<long long>());
      a = first ? term : a + term;
      first = false;
    }
    if (l.contains("const")) {
      auto& p = l.at("const");
      a = a + Angle::pi_frac(p[0].get<long long>(), p[1].get<long long>());
    }
    if (!a.is_linear()) throw JsonFormatError("angle.linear must name a variable");
    return a;
  }
  throw JsonFormatError("angle must contain 'pi', 'float' or 'linear'");
}

// ---- diagrams --------------------------------------------------------------

inline json portref_to_json(const PortRef& p) {
  if (p.node == PortRef::In) return json{{"boundary", "in"}, {"slot", p.port}};
  if (p.node == PortRef::Out) return json{{"boundary", "out"}, {"slot", p.port}};
  return json{{"node", p.node}, {"port", p.port}};
}

inline PortRef portref_from_json(const json& j) {
  if (!j.is_object()) throw JsonFormatError("port reference must be an object");
  if (j.contains("boundary")) {
    std::string b = j.at("boundary").get<std::string>();
    int slot = j.at("slot").get<int>();
    if (b == "in") return Diagram::in(slot);
    if (b == "out") return Diagram::out(slot);
    throw JsonFormatError("boundary must be 'in' or 'out'");
  }
  return Diagram::at(j.at("node").get<int>(), j.at("port").get<int>());
}

inline json diagram_to_json(const Diagram& d) {
  json nodes = json::array();
  for (size_t i = 0; i < d.nodes.size(); ++i) {
    const Node& n = d.nodes[i];
    json jn{{"id", int(i)}, {"kind", kind_name(n.kind)}};
    if (kind_is_spider(n.kind)) {
      jn["angle"] = angle_to_json(n.angle);
      jn["arity"] = {0, n.ports};  // legs are not intrinsically directed
    }
    nodes.push_back(std::move(jn));
  }
  json wires = json::array();
  for (auto& w : d.wires) wires.push_back({portref_to_json(w.a), portref_to_json(w.b)});
  json ins = json::array(), outs = json::array();
  for (int i = 0; i < d.n_in; ++i) ins.push_back(i);
  for (int i = 0; i < d.n_out; ++i) outs.push_back(i);
  return json{{"calculus", d.calculus == Calculus::ZX ? "zx" : "zw"},
              {"nodes", std::move(nodes)},
              {"wires", std::move(wires)},
              {"inputs", std::move(ins)},
              {"outputs", std::move(outs)}};
}

inline Diagram diagram_from_json(const json& j) {
  if (!j.is_object()) throw JsonFormatError("diagram must be an object");
  Diagram d;
  std::string cal = j.value("calculus", "zx");
  if (cal == "zx") d.calculus = Calculus::ZX;
  else if (cal == "zw") d.calculus = Calculus::ZW;
  else throw JsonFormatError("calculus must be 'zx' or 'zw'");
  if (!j.contains("nodes") || !j.at("nodes").is_array())
    throw JsonFormatError("diagram.nodes must be an array");
  int next_id = 0;
  for (auto& jn : j.at("nodes")) {
    int id = jn.value("id", next_id);
    if (id != next_id)
      throw JsonFormatError("node ids must be dense and ascending (expected " +
                            std::to_string(next_id) + ", got " + std::to_string(id) + ")");
    ++next_id;
    Kind k = kind_from_name(jn.at("kind").get<std::string>());
    Angle a;
    int ports = kind_fixed_ports(k);
    if (kind_is_spider(k)) {
      if (jn.contains("angle")) a = angle_from_json(jn.at("angle"));
      if (!jn.contains("arity")) throw JsonFormatError("spider node needs 'arity'");
      auto& ar = jn.at("arity");
      if (!ar.is_array() || ar.size() != 2) throw JsonFormatError("arity must be [n,m]");
      ports = ar[0].get<int>() + ar[1].get<int>();
      if (ports < 0) throw JsonFormatError("arity entries must be non-negative");
    }
    d.add_node(k, a, ports);
  }
  for (auto& jw : j.value("wires", json::array())) {
    if (!jw.is_array() || jw.size() != 2)
      throw JsonFormatError("each wire must be a pair of port references");
    d.add_wire(portref_from_json(jw[0]), portref_from_json(jw[1]));
  }
  auto slots = [](const json& arr, const char* what) {
    int n = 0;
    for (auto& s : arr) {
      if (!s.is_number_integer() || s.get<int>() != n)
        throw JsonFormatError(std::string(what) + " must list slots 0..n-1 in order");
      ++n;
    }
    return n;
  };
  d.n_in = slots(j.value("inputs", json::array()), "inputs");
  d.n_out = slots(j.value("outputs", json::array()), "outputs");
  auto bad = d.validate();
  if (!bad.empty()) throw JsonFormatError("invalid diagram: " + bad.front());
  return d;
}

// ---- scalars and matrices --------------------------------------------------

inline json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max())
    return json(int64_t(v));
  return json(v.str());
}

inline BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw JsonFormatError("integer coefficient must be a number or decimal string");
}

inline json scalar_to_json(const CycloScalar& s) {
  return json{{"coeffs", {bigint_to_json(s.a), bigint_to_json(s.b), bigint_to_json(s.c),
                          bigint_to_json(s.d)}},
              {"sqrt2_exp", s.k}};
}

inline CycloScalar scalar_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs")) throw JsonFormatError("exact scalar needs 'coeffs'");
  auto& c = j.at("coeffs");
  if (!c.is_array() || c.size() != 4) throw JsonFormatError("coeffs must be [a,b,c,d]");
  long long k = j.value("sqrt2_exp", 0);
  if (k < 0) throw JsonFormatError("sqrt2_exp must be non-negative");
  return CycloScalar(bigint_from_json(c[0]), bigint_from_json(c[1]), bigint_from_json(c[2]),
                     bigint_from_json(c[3]), unsigned(k));
}

inline json matrix_to_json(const Matrix<CycloScalar>& M) {
  json rows = json::array();
  for (int r = 0; r < M.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < M.cols; ++c) row.push_back(scalar_to_json(M.at(r, c)));
    rows.push_back(std::move(row));
  }
  return json{{"rows", M.rows}, {"cols", M.cols}, {"mode", "exact"}, {"entries", std::move(rows)}};
}

inline json matrix_to_json(const Matrix<ApproxScalar>& M) {
  json rows = json::array();
  for (int r = 0; r < M.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < M.cols; ++c) row.push_back({M.at(r, c).real(), M.at(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return json{{"rows", M.rows}, {"cols", M.cols}, {"mode", "float"}, {"entries", std::move(rows)}};
}

inline Matrix<CycloScalar> exact_matrix_from_json(const json& j) {
  if (!j.is_object()) throw JsonFormatError("matrix must be an object");
  int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
  if (rows <= 0 || cols <= 0) throw JsonFormatError("matrix dimensions must be positive");
  if (j.value("mode", "exact") != "exact")
    throw JsonFormatError("this operation needs an exact-mode matrix");
  auto& e = j.at("entries");
  if (!e.is_array() || int(e.size()) != rows)
    throw JsonFormatError("entries must have 'rows' rows");
  Matrix<CycloScalar> M(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!e[r].is_array() || int(e[r].size()) != cols)
      throw JsonFormatError("entries row " + std::to_string(r) + " must have 'cols' entries");
    for (int c = 0; c < cols; ++c) M.at(r, c) = scalar_from_json(e[r][c]);
  }
  return M;
}

// ---- binds and derivations -------------------------------------------------

inline json bind_to_json(const Bind& b) {
  json angles = json::object(), legs = json::object();
  for (auto& [k, v] : b.angles) angles[k] = angle_to_json(v);
  for (auto& [k, v] : b.legs) legs[k] = v;
  return json{{"angles", std::move(angles)}, {"legs", std::move(legs)}};
}

inline Bind bind_from_json(const json& j) {
  Bind b;
  if (j.is_null()) return b;
  json angles = j.value("angles", json::object());
  json legs = j.value("legs", json::object());
  for (auto& [k, v] : angles.items()) b.angles[k] = angle_from_json(v);
  for (auto& [k, v] : legs.items()) b.legs[k] = v.get<int>();
  return b;
}

inline json derivation_to_json(const Derivation& d) {
  json steps = json::array();
  for (auto& s : d.steps)
    steps.push_back({{"rule", s.rule},
                     {"dir", dir_name(s.dir)},
                     {"embedding", {{"match_index", s.match_index}}},
                     {"bind", bind_to_json(s.bind)}});
  return json{{"ruleset", d.ruleset},
              {"start", diagram_to_json(d.start)},
              {"steps", std::move(steps)},
              {"end", diagram_to_json(d.end)}};
}

inline Derivation derivation_from_json(const json& j) {
  Derivation d;
  d.ruleset = j.value("ruleset", "dzx");
  d.start = diagram_from_json(j.at("start"));
  d.end = diagram_from_json(j.at("end"));
  for (auto& js : j.value("steps", json::array())) {
    DerivationStep s;
    s.rule = js.at("rule").get<std::string>();
    std::string dir = js.value("dir", "LR");
    if (dir == "LR") s.dir = Dir::LR;
    else if (dir == "RL") s.dir = Dir::RL;
    else throw JsonFormatError("step dir must be 'LR' or 'RL'");
    s.match_index = js.value("embedding", json::object()).value("match_index", 0);
    if (js.contains("bind")) s.bind = bind_from_json(js.at("bind"));
    d.steps.push_back(std::move(s));
  }
  return d;
}

// ---- soundness reports -----------------------------------------------------

inline json soundness_report_to_json(const SoundnessReport& r) {
  json fails = json::array();
  for (auto& f : r.failures)
    fails.push_back({{"bind", bind_to_json(f.bind)}, {"detail", f.detail}});
  return json{{"rule", r.rule},
              {"checked", r.checked},
              {"skipped", r.skipped},
              {"sound", r.sound()},
              {"failures", std::move(fails)}};
}

}  // namespace dzx
