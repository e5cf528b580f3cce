#pragma once
// Translations between the two calculi, matrix-to-diagram synthesis, the
// sorter-based projector family, and circuit ingestion.

#include <fstream>
#include <functional>
#include <sstream>

#include "gadgets.hpp"
#include "tensor.hpp"

namespace dzx {

struct TranslationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotRepresentable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- node substitution ---------------------------------------------------
// Replace every node by a gadget diagram with 0 inputs and node.ports outputs
// (output k = the node's port k); the original wiring is re-applied on top.
inline Diagram substitute_nodes(const Diagram& d, Calculus target,
                                const std::function<Diagram(const Node&)>& gadget_for) {
  Diagram G = make_empty(target);
  std::vector<int> offset(d.nodes.size(), 0);
  int total = 0;
  for (size_t i = 0; i < d.nodes.size(); ++i) {
    Diagram g = gadget_for(d.nodes[i]);
    if (g.n_in != 0 || g.n_out != d.nodes[i].ports)
      throw TranslationError("substitute_nodes: gadget boundary mismatch");
    offset[i] = total;
    total += d.nodes[i].ports;
    G = parallel_compose(G, g);
  }
  Diagram R;
  R.calculus = target;
  R.n_in = total + d.n_in;
  R.n_out = d.n_out;
  auto lift = [&](const PortRef& p) -> PortRef {
    if (p.node == PortRef::In) return Diagram::in(total + p.port);
    if (p.node == PortRef::Out) return Diagram::out(p.port);
    return Diagram::in(offset[p.node] + p.port);
  };
  for (auto& w : d.wires) R.add_wire(lift(w.a), lift(w.b));
  Diagram body = sequential_compose(R, parallel_compose(G, make_identity(d.n_in, target)));
  return body;
}

// ---- ZW -> ZX ------------------------------------------------------------
inline Diagram zw_to_zx(const Diagram& d) {
  if (d.calculus != Calculus::ZW) throw TranslationError("zw_to_zx expects a zw diagram");
  return substitute_nodes(d, Calculus::ZX, [](const Node& n) -> Diagram {
    switch (n.kind) {
      case Kind::WhiteDot1: return Zs(0, 2, Angle::pi());
      case Kind::WhiteDot2: return Zs(0, 3, Angle::pi());
      case Kind::BlackDot1: return Xs(0, 2, Angle::pi());
      case Kind::BlackDot2: return bend_inputs(w12_gadget());
      case Kind::Cross: return bend_inputs(seq(make_swap(), cz_gadget()));
      case Kind::Star: return inv_sqrt2_gadget();
      default: throw TranslationError("zw_to_zx: unexpected node kind");
    }
  });
}

// ---- ZW synthesis of an integer matrix ------------------------------------
namespace detail {

// incremental builder over open wire stubs
struct ZwBuild {
  Diagram d;
  ZwBuild() { d.calculus = Calculus::ZW; }
  PortRef node1(Kind k, PortRef in) {  // 2-port node applied to a stub
    int n = d.add_node(k);
    d.add_wire(in, Diagram::at(n, 0));
    return Diagram::at(n, 1);
  }
  PortRef w11(PortRef in) { return node1(Kind::WhiteDot1, in); }
  PortRef b11(PortRef in) { return node1(Kind::BlackDot1, in); }
  PortRef bst() {  // |1>
    int b = d.add_node(Kind::BlackDot2);
    d.add_wire(Diagram::at(b, 1), Diagram::at(b, 2));
    return Diagram::at(b, 0);
  }
  PortRef b0() { return b11(bst()); }  // |0>
  void weff11(PortRef in) {  // effect (1,1)
    int w = d.add_node(Kind::WhiteDot2);
    d.add_wire(Diagram::at(w, 0), Diagram::at(w, 1));
    d.add_wire(Diagram::at(w, 2), w11(in));
  }
  std::pair<PortRef, PortRef> c_split(PortRef in) {  // |1> -> |01>+|10>
    PortRef t = b11(in);
    int b = d.add_node(Kind::BlackDot2);
    d.add_wire(t, Diagram::at(b, 0));
    return {Diagram::at(b, 1), Diagram::at(b, 2)};
  }
  std::pair<PortRef, PortRef> w_split(PortRef in) {  // |e> -> (-1)^e |ee>
    int w = d.add_node(Kind::WhiteDot2);
    d.add_wire(in, Diagram::at(w, 0));
    return {Diagram::at(w, 1), Diagram::at(w, 2)};
  }
  PortRef bmul(PortRef x, PortRef y) {  // W merge: 00->0, 01/10->1
    int b = d.add_node(Kind::BlackDot2);
    d.add_wire(x, Diagram::at(b, 1));
    d.add_wire(y, Diagram::at(b, 2));
    return b11(Diagram::at(b, 0));
  }
  PortRef diag1k(PortRef in, long long k) {  // diag(1, k), k >= 1
    if (k == 1) return in;
    std::vector<PortRef> branches;
    PortRef cur = in;
    for (long long i = 0; i + 1 < k; ++i) {
      auto [a, rest] = c_split(cur);
      branches.push_back(a);
      cur = rest;
    }
    branches.push_back(cur);
    PortRef acc = branches[0];
    for (size_t i = 1; i < branches.size(); ++i) acc = bmul(acc, branches[i]);
    return acc;
  }
};

}  // namespace detail

// Build a ZW diagram n -> m whose interpretation is the integer matrix M
// (2^m rows x 2^n cols).  Entrywise normal form: one enable branch per nonzero
// entry, fanned from a single |1> by W splits, merged per qubit by W merges.
inline Diagram zw_synthesize_int(const std::vector<std::vector<long long>>& M, int m, int n) {
  int L = m + n;
  struct Term { int i, j; long long c; };
  std::vector<Term> terms;
  for (int i = 0; i < (1 << m); ++i)
    for (int j = 0; j < (1 << n); ++j)
      if (M[i][j] != 0) terms.push_back({i, j, M[i][j]});

  detail::ZwBuild B;
  B.d.n_in = n;
  B.d.n_out = m;
  auto out_ref = [&](int q) { return q < m ? Diagram::out(q) : Diagram::in(q - m); };

  if (terms.empty()) {
    // zero scalar gadget (<1| NOT |1>) tensored with constant legs
    PortRef z = B.b11(B.bst());
    int b = B.d.add_node(Kind::BlackDot2);  // effect <1|
    B.d.add_wire(Diagram::at(b, 1), Diagram::at(b, 2));
    B.d.add_wire(z, Diagram::at(b, 0));
    for (int q = 0; q < m; ++q) B.d.add_wire(B.b0(), out_ref(q));
    for (int q = m; q < L; ++q) B.weff11(out_ref(q));
    return B.d;
  }

  int N = int(terms.size());
  // enable fan
  std::vector<PortRef> branch(N);
  PortRef e = B.bst();
  for (int t = 0; t + 1 < N; ++t) {
    auto [a, rest] = B.c_split(e);
    branch[t] = a;
    e = rest;
  }
  branch[N - 1] = e;

  // per-term enabled states
  std::vector<std::vector<PortRef>> qubit_stubs(L);
  for (int t = 0; t < N; ++t) {
    const Term& tm = terms[t];
    std::vector<int> bits(L);
    for (int q = 0; q < m; ++q) bits[q] = (tm.i >> (m - 1 - q)) & 1;
    for (int q = 0; q < n; ++q) bits[m + q] = (tm.j >> (n - 1 - q)) & 1;
    int k1 = 0;
    for (int b : bits) k1 += b;
    long long c = tm.c;
    PortRef stub = branch[t];
    if (std::llabs(c) > 1) stub = B.diag1k(stub, std::llabs(c));
    int flips = (c < 0 ? 1 : 0) + (k1 >= 1 ? (k1 - 1) % 2 : 0);
    if (flips % 2) stub = B.w11(stub);
    if (k1 == 0) {
      B.weff11(stub);  // terminate the enable wire with the (1,1) effect
      continue;
    }
    // copy the enable bit to the k1 one-bits
    std::vector<PortRef> legs;
    PortRef cur = stub;
    for (int s = 0; s + 1 < k1; ++s) {
      auto [a, rest] = B.w_split(cur);
      legs.push_back(a);
      cur = rest;
    }
    legs.push_back(cur);
    int li = 0;
    for (int q = 0; q < L; ++q)
      if (bits[q]) qubit_stubs[q].push_back(legs[li++]);
  }

  // merge layer
  for (int q = 0; q < L; ++q) {
    PortRef val;
    if (qubit_stubs[q].empty()) val = B.b0();
    else {
      val = qubit_stubs[q][0];
      for (size_t i = 1; i < qubit_stubs[q].size(); ++i) val = B.bmul(val, qubit_stubs[q][i]);
    }
    B.d.add_wire(val, out_ref(q));
  }
  return B.d;
}

// ---- ZX -> ZW (pi fragment) ----------------------------------------------

// replace X spiders by H-dressed Z spiders (semantics preserving, any angles)
inline Diagram expand_x_spiders(const Diagram& d) {
  return substitute_nodes(d, Calculus::ZX, [](const Node& n) -> Diagram {
    if (n.kind != Kind::XSpider) {
      if (kind_is_spider(n.kind)) return make_spider(n.kind, 0, n.ports, n.angle);
      return bend_inputs(make_generator(n.kind));
    }
    if (n.ports == 0) return make_spider(Kind::ZSpider, 0, 0, n.angle);
    Diagram g;
    g.n_out = n.ports;
    int z = g.add_node(Kind::ZSpider, n.angle, n.ports);
    for (int p = 0; p < n.ports; ++p) {
      int h = g.add_node(Kind::Hadamard);
      g.add_wire(Diagram::at(z, p), Diagram::at(h, 0));
      g.add_wire(Diagram::at(h, 1), Diagram::out(p));
    }
    return g;
  });
}

namespace detail {
// white-dot tree state on p >= 1 legs: all-zeros -> 1, all-ones -> e^{ia}
inline Diagram white_tree_state(int p, bool pi_phase) {
  Diagram g;
  g.calculus = Calculus::ZW;
  g.n_out = p;
  int sign_parity;  // (-1)^parity on the all-ones entry before dressing
  std::vector<PortRef> legs;
  if (p == 1) {
    int w = g.add_node(Kind::WhiteDot2);
    g.add_wire(Diagram::at(w, 0), Diagram::at(w, 1));
    legs.push_back(Diagram::at(w, 2));  // (1,-1)
    sign_parity = 1;
  } else if (p == 2) {
    // plain wire: delta
    if (!pi_phase) {
      g.add_wire(Diagram::out(0), Diagram::out(1));
      return g;
    }
    int w = g.add_node(Kind::WhiteDot1);
    g.add_wire(Diagram::at(w, 0), Diagram::out(0));
    g.add_wire(Diagram::at(w, 1), Diagram::out(1));
    return g;
  } else {
    // chain of p-2 three-valent white dots
    int prev = -1;
    for (int i = 0; i < p - 2; ++i) {
      int w = g.add_node(Kind::WhiteDot2);
      if (i == 0) {
        legs.push_back(Diagram::at(w, 0));
        legs.push_back(Diagram::at(w, 1));
      } else {
        g.add_wire(Diagram::at(prev, 2), Diagram::at(w, 0));
        legs.push_back(Diagram::at(w, 1));
      }
      prev = w;
    }
    legs.push_back(Diagram::at(prev, 2));
    sign_parity = (p - 2) % 2;
  }
  bool want_minus = pi_phase;
  if ((sign_parity % 2 == 1) != want_minus) {
    // dress one leg with a white 1-1 dot to flip the all-ones sign
    int w = g.add_node(Kind::WhiteDot1);
    g.add_wire(legs[0], Diagram::at(w, 0));
    legs[0] = Diagram::at(w, 1);
  }
  for (int k = 0; k < p; ++k) g.add_wire(legs[k], Diagram::out(k));
  return g;
}
}  // namespace detail

inline Diagram zx_to_zw(const Diagram& d) {
  if (d.calculus != Calculus::ZX) throw TranslationError("zx_to_zw expects a zx diagram");
  Diagram zd = expand_x_spiders(d);
  return substitute_nodes(zd, Calculus::ZW, [](const Node& n) -> Diagram {
    switch (n.kind) {
      case Kind::ZSpider: {
        Angle a = n.angle;
        bool pi_phase;
        if (a.is_exact() && a.exact.num == 0) pi_phase = false;
        else if (a.is_exact() && a.exact.num == 1 && a.exact.den == 1) pi_phase = true;
        else throw TranslationError("OutOfFragment: zx_to_zw requires angles in {0, pi}");
        if (n.ports == 0) return pi_phase ? zw_zero() : zw_circle();
        return detail::white_tree_state(n.ports, pi_phase);
      }
      case Kind::Hadamard:
        return bend_inputs(par(zw_gen(Kind::Star), zw_synthesize_int({{1, 1}, {1, -1}}, 1, 1)));
      case Kind::Triangle:
        return bend_inputs(zw_synthesize_int({{1, 1}, {0, 1}}, 1, 1));
      default:
        throw TranslationError("zx_to_zw: unexpected node kind");
    }
  });
}

inline EqualityResult round_trip_check(const Diagram& d) {
  return check_equal<CycloScalar>(zw_to_zx(zx_to_zw(d)), d);
}

// ---- exact-matrix synthesis (ZX, pi fragment) ------------------------------
inline Diagram synthesize(const Matrix<CycloScalar>& M) {
  int m = 0, n = 0;
  while ((1 << m) < M.rows) ++m;
  while ((1 << n) < M.cols) ++n;
  if ((1 << m) != M.rows || (1 << n) != M.cols)
    throw NotRepresentable("matrix dimensions must be powers of two");
  // find K with M * sqrt2^K a pure-integer matrix
  auto integral = [&](unsigned K, std::vector<std::vector<long long>>& out) {
    out.assign(M.rows, std::vector<long long>(M.cols, 0));
    CycloScalar s2k = CycloScalar::one();
    for (unsigned i = 0; i < K; ++i) s2k = s2k * CycloScalar::sqrt2();
    for (int r = 0; r < M.rows; ++r)
      for (int c = 0; c < M.cols; ++c) {
        CycloScalar v = M.at(r, c) * s2k;
        if (v.k != 0 || v.b != 0 || v.c != 0 || v.d != 0) return false;
        if (v.a > 1000000 || v.a < -1000000) throw NotRepresentable("entry too large");
        out[r][c] = v.a.convert_to<long long>();
      }
    return true;
  };
  unsigned K = 0;
  for (int r = 0; r < M.rows; ++r)
    for (int c = 0; c < M.cols; ++c) K = std::max(K, M.at(r, c).k);
  std::vector<std::vector<long long>> Mi;
  if (!integral(K, Mi)) {
    if (!integral(K + 1, Mi))
      throw NotRepresentable("matrix is not integer over a power of sqrt2");
    ++K;
  }
  Diagram zw = zw_synthesize_int(Mi, m, n);
  for (unsigned i = 0; i < K; ++i) zw = parallel_compose(zw, zw_gen(Kind::Star));
  return zw_to_zx(zw);
}

// ---- projector family -----------------------------------------------------
inline const Diagram& sorter_block() {
  static Diagram M2 = [] {
    Matrix<CycloScalar> P2(4, 4);
    P2.at(0, 0) = CycloScalar::one();
    P2.at(1, 2) = CycloScalar::one();
    P2.at(2, 2) = CycloScalar::one();
    P2.at(3, 3) = CycloScalar::one();
    return synthesize(P2);
  }();
  return M2;
}

inline Diagram build_Pr(int r) {
  if (r < 1 || r > 5) throw DiagramError("build_Pr: r must be in 1..5");
  if (r == 1) return make_identity(1);
  Diagram P = make_identity(r);
  for (int span = r - 1; span >= 1; --span)
    for (int i = 0; i < span; ++i)
      P = sequential_compose(par(make_identity(i), sorter_block(), make_identity(r - i - 2)), P);
  return P;
}

// ---- Toffoli / circuits ---------------------------------------------------
inline Diagram and_gadget() {  // 2 -> 1, |xy> -> |x AND y>
  return seq(par(Zs(1, 0), make_identity(1)), transpose(sorter_block()));
}
inline Diagram ccz_gadget() {
  Diagram e2 = par(sqrt2_gadget(), seq(make_cup(), par(Hd(), make_identity(1))));
  return seq(par(make_identity(3), e2),
             par(make_identity(3), and_gadget(), make_identity(1)),
             make_perm({0, 2, 4, 1, 3, 5}),
             par(Zs(1, 2), Zs(1, 2), Zs(1, 2)));
}
inline Diagram toffoli_gadget() {
  Diagram iih = par(make_identity(2), Hd());
  return seq(iih, ccz_gadget(), iih);
}

struct Gate {
  std::string name;
  std::vector<int> qubits;
  long long rz_num = 0;  // rz angle = rz_num * pi/4
};
struct Circuit {
  int qubits = 0;
  std::vector<Gate> gates;
};

struct CircuitParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Circuit parse_circuit(std::istream& is) {
  Circuit c;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    auto where = [&] { return " at line " + std::to_string(lineno); };
    auto qubit = [&]() {
      int q;
      if (!(ls >> q) || q < 0 || q >= c.qubits)
        throw CircuitParseError("bad qubit index" + where());
      return q;
    };
    if (tok == "qubits") {
      if (!(ls >> c.qubits) || c.qubits <= 0)
        throw CircuitParseError("bad qubit count" + where());
      header = true;
      continue;
    }
    if (!header) throw CircuitParseError("missing 'qubits N' header" + where());
    Gate g;
    g.name = tok;
    if (tok == "h" || tok == "x" || tok == "z" || tok == "s" || tok == "t" || tok == "tdg") {
      g.qubits = {qubit()};
    } else if (tok == "rz") {
      std::string frac;
      if (!(ls >> frac)) throw CircuitParseError("rz needs k/4 angle" + where());
      auto slash = frac.find('/');
      if (slash == std::string::npos || frac.substr(slash + 1) != "4")
        throw CircuitParseError("rz angle must be k/4" + where());
      g.rz_num = std::stoll(frac.substr(0, slash));
      g.qubits = {qubit()};
    } else if (tok == "cx" || tok == "cz") {
      int a = qubit(), b = qubit();
      if (a == b) throw CircuitParseError("gate qubits must be distinct" + where());
      g.qubits = {a, b};
    } else if (tok == "ccx") {
      int a = qubit(), b = qubit(), t = qubit();
      if (a == b || a == t || b == t)
        throw CircuitParseError("gate qubits must be distinct" + where());
      g.qubits = {a, b, t};
    } else {
      throw CircuitParseError("unknown gate '" + tok + "'" + where());
    }
    std::string extra;
    if (ls >> extra) throw CircuitParseError("trailing tokens" + where());
    c.gates.push_back(g);
  }
  if (!header) throw CircuitParseError("missing 'qubits N' header");
  return c;
}

inline Diagram circuit_to_diagram(const Circuit& c) {
  int n = c.qubits;
  Diagram D = make_identity(n);
  auto embed = [&](const Diagram& g, const std::vector<int>& qs) {
    // route the listed qubits to the top, apply, route back
    std::vector<int> src;
    std::vector<bool> used(n, false);
    for (int q : qs) { src.push_back(q); used[q] = true; }
    for (int q = 0; q < n; ++q)
      if (!used[q]) src.push_back(q);
    Diagram P = make_perm(src);
    Diagram Pi = make_perm(invert_perm(src));
    return seq(Pi, par(g, make_identity(n - int(qs.size()))), P);
  };
  for (auto& g : c.gates) {
    Diagram layer;
    if (g.name == "h") layer = embed(Hd(), g.qubits);
    else if (g.name == "x") layer = embed(Xs(1, 1, Angle::pi()), g.qubits);
    else if (g.name == "z") layer = embed(Zs(1, 1, Angle::pi()), g.qubits);
    else if (g.name == "s") layer = embed(Zs(1, 1, Angle::pi_frac(1, 2)), g.qubits);
    else if (g.name == "t") layer = embed(Zs(1, 1, Angle::pi_frac(1, 4)), g.qubits);
    else if (g.name == "tdg") layer = embed(Zs(1, 1, Angle::pi_frac(7, 4)), g.qubits);
    else if (g.name == "rz") layer = embed(Zs(1, 1, Angle::pi_frac(g.rz_num, 4)), g.qubits);
    else if (g.name == "cx") layer = embed(cnot_gadget(), g.qubits);
    else if (g.name == "cz") layer = embed(cz_gadget(), g.qubits);
    else if (g.name == "ccx") layer = embed(toffoli_gadget(), g.qubits);
    else throw CircuitParseError("unknown gate '" + g.name + "'");
    D = sequential_compose(layer, D);
  }
  return D;
}

}  // namespace dzx
