#pragma once
// Reusable diagram gadgets: scalar gadgets, controlled gates, the W-node
// emulation inside ZX, and small ZW states/effects.  All constructions are
// pinned by exact-evaluation tests.

#include "diagram.hpp"

namespace dzx {

// ---- basic ZX pieces -----------------------------------------------------
inline Diagram Zs(int n, int m, Angle a = {}) { return make_spider(Kind::ZSpider, n, m, a); }
inline Diagram Xs(int n, int m, Angle a = {}) { return make_spider(Kind::XSpider, n, m, a); }
inline Diagram Hd() { return make_generator(Kind::Hadamard); }
inline Diagram Tri() { return make_generator(Kind::Triangle); }

// structural transpose: swap the roles of input and output slots (index kept);
// with the delta-wire semantics this is exactly the matrix transpose
inline Diagram transpose(const Diagram& d) {
  Diagram r = d;
  std::swap(r.n_in, r.n_out);
  for (auto& w : r.wires) {
    for (PortRef* p : {&w.a, &w.b})
      if (p->node == PortRef::In) p->node = PortRef::Out;
      else if (p->node == PortRef::Out) p->node = PortRef::In;
  }
  return r;
}

// turn every input into an extra leading output: 0 -> (n+m), former inputs first
inline Diagram bend_inputs(const Diagram& d) {
  Diagram r = d;
  r.n_in = 0;
  r.n_out = d.n_in + d.n_out;
  for (auto& w : r.wires) {
    for (PortRef* p : {&w.a, &w.b}) {
      if (p->node == PortRef::In) p->node = PortRef::Out;
      else if (p->node == PortRef::Out) p->port += d.n_in;
    }
  }
  return r;
}

inline Diagram TriT() { return transpose(Tri()); }
inline Diagram NOTg() { return Xs(1, 1, Angle::pi()); }

// permutation wiring: output slot j is connected to input slot src[j]
inline Diagram make_perm(const std::vector<int>& src, Calculus cal = Calculus::ZX) {
  Diagram d;
  d.calculus = cal;
  d.n_in = d.n_out = int(src.size());
  for (int j = 0; j < int(src.size()); ++j) d.add_wire(Diagram::in(src[j]), Diagram::out(j));
  return d;
}
inline std::vector<int> invert_perm(const std::vector<int>& src) {
  std::vector<int> inv(src.size());
  for (int j = 0; j < int(src.size()); ++j) inv[src[j]] = j;
  return inv;
}

// ---- scalar gadgets (0 -> 0) --------------------------------------------
inline Diagram sqrt2_gadget() { return seq(Zs(1, 0), Hd(), Zs(0, 1)); }
inline Diagram inv_sqrt2_gadget() {
  return seq(Zs(1, 0, Angle::pi()), Tri(), Hd(), TriT(), Zs(0, 1, Angle::pi()));
}
inline Diagram minus_one_gadget() { return seq(Zs(1, 0), Tri(), Zs(0, 1, Angle::pi())); }
// value 2 e^{i a}
inline Diagram phase_gadget(Angle a) {
  return seq(Xs(1, 0, Angle::pi()), Zs(1, 1, a), Xs(0, 1, Angle::pi()));
}
inline Diagram z_dot(Angle a) { return make_spider(Kind::ZSpider, 0, 0, a); }

// ---- two-qubit gates -----------------------------------------------------
// CNOT up to a 1/sqrt2 factor: control = qubit 0
inline Diagram cnot_core() {
  return seq(par(make_identity(), Xs(2, 1)), par(Zs(1, 2), make_identity()));
}
inline Diagram cnot_gadget() { return par(sqrt2_gadget(), cnot_core()); }

inline Diagram cz_gadget() {
  Diagram d;
  d.n_in = d.n_out = 2;
  int za = d.add_node(Kind::ZSpider, {}, 3);
  int zb = d.add_node(Kind::ZSpider, {}, 3);
  int h = d.add_node(Kind::Hadamard);
  d.add_wire(Diagram::in(0), Diagram::at(za, 0));
  d.add_wire(Diagram::at(za, 1), Diagram::out(0));
  d.add_wire(Diagram::at(za, 2), Diagram::at(h, 0));
  d.add_wire(Diagram::at(h, 1), Diagram::at(zb, 2));
  d.add_wire(Diagram::in(1), Diagram::at(zb, 0));
  d.add_wire(Diagram::at(zb, 1), Diagram::out(1));
  return par(sqrt2_gadget(), d);
}

// ---- W-node emulation in ZX ---------------------------------------------
// effect (1,1,1,0) on two wires
inline Diagram w_effect_1110() {
  return seq(make_cup(), par(seq(NOTg(), TriT()), make_identity()));
}
// diagonal diag(1,1,1,0) on two wires: copy both qubits and feed the copies
// into the (1,1,1,0) effect
inline Diagram diag_1110() {
  return seq(par(make_identity(2), w_effect_1110()),
             make_perm({0, 2, 1, 3}),
             par(Zs(1, 2), Zs(1, 2)));
}
// the ZW 1->2 black (W) node as a ZX gadget
inline Diagram w12_gadget() {
  return par(sqrt2_gadget(), seq(diag_1110(), Xs(1, 2), NOTg()));
}
inline Diagram w21_gadget() { return transpose(w12_gadget()); }
// amplitude-merge (2 -> 1) and amplitude-split (1 -> 2)
inline Diagram bmul_zx() { return seq(NOTg(), w21_gadget()); }
inline Diagram csplit_zx() { return seq(w12_gadget(), NOTg()); }
// k -> 1 merge chain
inline Diagram wmerge_zx(int k) {
  Diagram d = make_identity(1);
  for (int i = 0; i + 1 < k; ++i) d = sequential_compose(d, par(bmul_zx(), make_identity(i)));
  return d;
}

// ---- ZW states / effects -------------------------------------------------
inline Diagram zw_id(int n = 1) { return make_identity(n, Calculus::ZW); }
inline Diagram zw_gen(Kind k) { return make_generator(k); }

// |1> : black 1->2 node with its two branch legs joined
inline Diagram bst_state() {
  Diagram d;
  d.calculus = Calculus::ZW;
  d.n_out = 1;
  int b = d.add_node(Kind::BlackDot2);
  d.add_wire(Diagram::at(b, 1), Diagram::at(b, 2));
  d.add_wire(Diagram::at(b, 0), Diagram::out(0));
  return d;
}
inline Diagram beff_effect() { return transpose(bst_state()); }
inline Diagram b0_state() { return seq(zw_gen(Kind::BlackDot1), bst_state()); }

// (1,-1) : white 2->1 node with its pair legs joined
inline Diagram wst_state() {
  Diagram d;
  d.calculus = Calculus::ZW;
  d.n_out = 1;
  int w = d.add_node(Kind::WhiteDot2);
  d.add_wire(Diagram::at(w, 0), Diagram::at(w, 1));
  d.add_wire(Diagram::at(w, 2), Diagram::out(0));
  return d;
}
inline Diagram weff_effect() { return transpose(wst_state()); }           // (1,-1)
inline Diagram weff11_effect() { return seq(weff_effect(), zw_gen(Kind::WhiteDot1)); }  // (1,1)

inline Diagram zw_minus_one() { return seq(weff_effect(), bst_state()); }
inline Diagram zw_zero() { return seq(beff_effect(), zw_gen(Kind::BlackDot1), bst_state()); }
inline Diagram zw_circle() {
  Diagram d = make_empty(Calculus::ZW);
  append_circle(d);
  return d;
}

}  // namespace dzx
