#pragma once
// Open-graph diagrams for the ZX (with triangle) and ZW alphabets.
// Wires form a perfect matching on node ports and boundary slots; identity,
// swap, cup and cap are pure wiring, so wire homeomorphism holds by
// construction.  Node tensors are port-symmetric except for the triangle
// (port 0 = base, port 1 = apex) and the cross (fixed cyclic port order),
// so bent generators are just generators wired differently.

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace dzx {

enum class Calculus { ZX, ZW };

enum class Kind {
  ZSpider,   // any arity, Angle
  XSpider,   // any arity, Angle
  Hadamard,  // 2 ports
  Triangle,  // 2 ports: 0 = base (input side in the standard drawing), 1 = apex
  WhiteDot1, // zw white 1-1, diag(1,-1)
  WhiteDot2, // zw white 2-1 (3 ports, fully symmetric tensor)
  BlackDot1, // zw black 1-1 (NOT)
  BlackDot2, // zw black 1-2 (3 ports, fully symmetric tensor)
  Cross,     // zw fermionic crossing, ports (in0, in1, out0, out1)
  Star,      // zw 1/sqrt2 scalar, 0 ports
};

inline bool kind_is_zx(Kind k) {
  return k == Kind::ZSpider || k == Kind::XSpider || k == Kind::Hadamard || k == Kind::Triangle;
}
inline bool kind_is_spider(Kind k) { return k == Kind::ZSpider || k == Kind::XSpider; }
inline int kind_fixed_ports(Kind k) {
  switch (k) {
    case Kind::Hadamard: case Kind::Triangle: case Kind::WhiteDot1: case Kind::BlackDot1: return 2;
    case Kind::WhiteDot2: case Kind::BlackDot2: return 3;
    case Kind::Cross: return 4;
    case Kind::Star: return 0;
    default: return -1;  // spiders: variable
  }
}

struct Node {
  Kind kind;
  Angle angle{};   // spiders only
  int ports = 0;   // total leg count
};

struct PortRef {
  // node >= 0: internal node port.  node == -1: input boundary slot.
  // node == -2: output boundary slot.  port = port index or slot index.
  int node = 0;
  int port = 0;
  static constexpr int In = -1;
  static constexpr int Out = -2;
  bool is_boundary() const { return node < 0; }
  bool operator==(const PortRef& o) const { return node == o.node && port == o.port; }
  bool operator<(const PortRef& o) const { return node != o.node ? node < o.node : port < o.port; }
};

struct Wire {
  PortRef a, b;
};

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Diagram {
  Calculus calculus = Calculus::ZX;
  std::vector<Node> nodes;   // dense ids 0..n-1
  std::vector<Wire> wires;
  int n_in = 0, n_out = 0;

  int add_node(Kind k, Angle a = {}, int ports = -1) {
    Node n{k, a, ports >= 0 ? ports : kind_fixed_ports(k)};
    if (n.ports < 0) throw DiagramError("spider requires explicit port count");
    nodes.push_back(n);
    return int(nodes.size()) - 1;
  }
  void add_wire(PortRef a, PortRef b) { wires.push_back({a, b}); }
  static PortRef in(int slot) { return {PortRef::In, slot}; }
  static PortRef out(int slot) { return {PortRef::Out, slot}; }
  static PortRef at(int node, int port) { return {node, port}; }

  // ---- validation --------------------------------------------------------
  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    std::map<std::pair<int, int>, int> uses;
    auto touch = [&](const PortRef& p) { ++uses[{p.node, p.port}]; };
    for (auto& w : wires) { touch(w.a); touch(w.b); }
    for (size_t i = 0; i < nodes.size(); ++i) {
      const Node& n = nodes[i];
      bool ok = calculus == Calculus::ZX ? kind_is_zx(n.kind) : !kind_is_zx(n.kind);
      if (!ok) bad.push_back("WrongCalculus(node " + std::to_string(i) + ")");
      int fixed = kind_fixed_ports(n.kind);
      if (fixed >= 0 && n.ports != fixed)
        bad.push_back("ArityMismatch(node " + std::to_string(i) + ")");
      for (int p = 0; p < n.ports; ++p)
        if (uses[{int(i), p}] != 1)
          bad.push_back("UnmatchedPort(node " + std::to_string(i) + " port " + std::to_string(p) + ")");
    }
    for (int s = 0; s < n_in; ++s)
      if (uses[{PortRef::In, s}] != 1) bad.push_back("UnmatchedSlot(in " + std::to_string(s) + ")");
    for (int s = 0; s < n_out; ++s)
      if (uses[{PortRef::Out, s}] != 1) bad.push_back("UnmatchedSlot(out " + std::to_string(s) + ")");
    for (auto& [key, cnt] : uses) {
      auto [nid, port] = key;
      if (nid >= 0 && (nid >= int(nodes.size()) || port >= nodes[nid].ports))
        bad.push_back("DanglingWire(node " + std::to_string(nid) + " port " + std::to_string(port) + ")");
      if (nid == PortRef::In && port >= n_in) bad.push_back("DanglingWire(in slot)");
      if (nid == PortRef::Out && port >= n_out) bad.push_back("DanglingWire(out slot)");
    }
    return bad;
  }
};

// ---- generators ----------------------------------------------------------

inline Diagram make_spider(Kind k, int n, int m, Angle a = {}) {
  if (!kind_is_spider(k)) throw DiagramError("make_spider: not a spider kind");
  Diagram d;
  d.n_in = n; d.n_out = m;
  int id = d.add_node(k, a, n + m);
  for (int i = 0; i < n; ++i) d.add_wire(Diagram::in(i), Diagram::at(id, i));
  for (int j = 0; j < m; ++j) d.add_wire(Diagram::at(id, n + j), Diagram::out(j));
  return d;
}

inline Diagram make_generator(Kind k, Angle a = {}) {
  Diagram d;
  d.calculus = kind_is_zx(k) ? Calculus::ZX : Calculus::ZW;
  switch (k) {
    case Kind::Hadamard: case Kind::WhiteDot1: case Kind::BlackDot1: {
      d.n_in = d.n_out = 1;
      int id = d.add_node(k);
      d.add_wire(Diagram::in(0), Diagram::at(id, 0));
      d.add_wire(Diagram::at(id, 1), Diagram::out(0));
      break;
    }
    case Kind::Triangle: {
      d.n_in = d.n_out = 1;
      int id = d.add_node(k);
      d.add_wire(Diagram::in(0), Diagram::at(id, 0));   // base
      d.add_wire(Diagram::at(id, 1), Diagram::out(0));  // apex
      break;
    }
    case Kind::WhiteDot2: case Kind::BlackDot2: {
      // WhiteDot2 as 2->1, BlackDot2 as 1->2 (their named arities); other
      // orientations are obtained by wiring.
      int id;
      if (k == Kind::WhiteDot2) {
        d.n_in = 2; d.n_out = 1;
        id = d.add_node(k);
        d.add_wire(Diagram::in(0), Diagram::at(id, 0));
        d.add_wire(Diagram::in(1), Diagram::at(id, 1));
        d.add_wire(Diagram::at(id, 2), Diagram::out(0));
      } else {
        d.n_in = 1; d.n_out = 2;
        id = d.add_node(k);
        d.add_wire(Diagram::in(0), Diagram::at(id, 0));
        d.add_wire(Diagram::at(id, 1), Diagram::out(0));
        d.add_wire(Diagram::at(id, 2), Diagram::out(1));
      }
      break;
    }
    case Kind::Cross: {
      d.n_in = 2; d.n_out = 2;
      int id = d.add_node(k);
      d.add_wire(Diagram::in(0), Diagram::at(id, 0));
      d.add_wire(Diagram::in(1), Diagram::at(id, 1));
      d.add_wire(Diagram::at(id, 2), Diagram::out(0));
      d.add_wire(Diagram::at(id, 3), Diagram::out(1));
      break;
    }
    case Kind::Star: {
      d.add_node(k);
      break;
    }
    default: throw DiagramError("make_generator: use make_spider for spiders");
  }
  return d;
}

inline Diagram make_identity(int n = 1, Calculus cal = Calculus::ZX) {
  Diagram d; d.calculus = cal; d.n_in = d.n_out = n;
  for (int i = 0; i < n; ++i) d.add_wire(Diagram::in(i), Diagram::out(i));
  return d;
}
inline Diagram make_swap(Calculus cal = Calculus::ZX) {
  Diagram d; d.calculus = cal; d.n_in = d.n_out = 2;
  d.add_wire(Diagram::in(0), Diagram::out(1));
  d.add_wire(Diagram::in(1), Diagram::out(0));
  return d;
}
inline Diagram make_cup(Calculus cal = Calculus::ZX) {  // 2 -> 0
  Diagram d; d.calculus = cal; d.n_in = 2; d.n_out = 0;
  d.add_wire(Diagram::in(0), Diagram::in(1));
  return d;
}
inline Diagram make_cap(Calculus cal = Calculus::ZX) {  // 0 -> 2
  Diagram d; d.calculus = cal; d.n_in = 0; d.n_out = 2;
  d.add_wire(Diagram::out(0), Diagram::out(1));
  return d;
}
inline Diagram make_empty(Calculus cal = Calculus::ZX) {
  Diagram d; d.calculus = cal;
  return d;
}

// ---- compositions --------------------------------------------------------

namespace detail {
// terminal = concrete endpoint in the fused diagram, or a connector joining
// d1 outputs to d2 inputs during sequential composition.
struct Terminal {
  bool connector = false;
  PortRef ref{};  // valid when !connector
  int cid = 0;    // valid when connector
};
}  // namespace detail

// circle produced by composition -> materialize as a value-2 gadget
inline void append_circle(Diagram& d) {
  if (d.calculus == Calculus::ZX) {
    int id = d.add_node(Kind::ZSpider, Angle::zero(), 2);
    d.add_wire(Diagram::at(id, 0), Diagram::at(id, 1));
  } else {
    // two white 2-1 dots, each with its pair legs joined, stems wired:
    // <w| |w> with |w> = (1,-1), value 2
    int u = d.add_node(Kind::WhiteDot2);
    int v = d.add_node(Kind::WhiteDot2);
    d.add_wire(Diagram::at(u, 0), Diagram::at(u, 1));
    d.add_wire(Diagram::at(v, 0), Diagram::at(v, 1));
    d.add_wire(Diagram::at(u, 2), Diagram::at(v, 2));
  }
}

// d2 after d1 (apply d1 first): inputs = d1 inputs, outputs = d2 outputs
inline Diagram sequential_compose(const Diagram& d2, const Diagram& d1) {
  if (d1.calculus != d2.calculus) throw DiagramError("TypeMismatch: calculus");
  if (d1.n_out != d2.n_in) throw DiagramError("TypeMismatch: arity");
  Diagram r;
  r.calculus = d1.calculus;
  r.n_in = d1.n_in;
  r.n_out = d2.n_out;
  r.nodes = d1.nodes;
  int off = int(d1.nodes.size());
  for (auto& n : d2.nodes) r.nodes.push_back(n);

  using detail::Terminal;
  auto lift1 = [&](const PortRef& p) -> Terminal {
    if (p.node == PortRef::Out) return {true, {}, p.port};  // connector k
    return {false, p, 0};
  };
  auto lift2 = [&](const PortRef& p) -> Terminal {
    if (p.node == PortRef::In) return {true, {}, p.port};  // connector k
    if (p.node == PortRef::Out) return {false, p, 0};
    return {false, {p.node + off, p.port}, 0};
  };
  // splice wires through connectors: each connector has exactly two incident
  // wire-ends (one from d1, one from d2)
  struct Edge { Terminal x, y; bool alive = true; };
  std::vector<Edge> edges;
  for (auto& w : d1.wires) edges.push_back({lift1(w.a), lift1(w.b)});
  for (auto& w : d2.wires) edges.push_back({lift2(w.a), lift2(w.b)});
  int C = d1.n_out;
  // incidence: connector -> list of (edge, side)
  std::vector<std::vector<std::pair<int, int>>> inc(C);
  for (int e = 0; e < int(edges.size()); ++e) {
    if (edges[e].x.connector) inc[edges[e].x.cid].push_back({e, 0});
    if (edges[e].y.connector) inc[edges[e].y.cid].push_back({e, 1});
  }
  for (int cval = 0; cval < C; ++cval) {
    auto& lst = inc[cval];
    if (lst.size() != 2) throw DiagramError("internal: connector incidence != 2");
    auto [e1, s1] = lst[0];
    auto [e2, s2] = lst[1];
    if (e1 == e2) {
      // a single wire with both ends on this connector: closed circle
      edges[e1].alive = false;
      append_circle(r);
      continue;
    }
    // splice: other end of e1 joins other end of e2; e2 dies
    Terminal o1 = s1 == 0 ? edges[e1].y : edges[e1].x;
    Terminal o2 = s2 == 0 ? edges[e2].y : edges[e2].x;
    edges[e1].x = o1;
    edges[e1].y = o2;
    edges[e2].alive = false;
    // fix incidence for the surviving edge's new ends
    auto retarget = [&](const Terminal& t, int side) {
      if (!t.connector) return;
      for (auto& pr : inc[t.cid])
        if (pr.first == e2) { pr.first = e1; pr.second = side; }
        else if (pr.first == e1) { pr.second = side; }
    };
    retarget(o1, 0);
    retarget(o2, 1);
    // pure-connector circle: edge now loops back onto an already-spliced pair
    if (o1.connector && o2.connector && o1.cid == o2.cid && o1.cid > cval) {
      // will be handled when we reach that connector (its two ends are the
      // two sides of the same edge)
    }
  }
  for (auto& e : edges) {
    if (!e.alive) continue;
    if (e.x.connector || e.y.connector) throw DiagramError("internal: unspliced connector");
    r.add_wire(e.x.ref, e.y.ref);
  }
  return r;
}

inline Diagram parallel_compose(const Diagram& d1, const Diagram& d2) {
  if (d1.calculus != d2.calculus) throw DiagramError("TypeMismatch: calculus");
  Diagram r = d1;
  int off = int(d1.nodes.size());
  for (auto& n : d2.nodes) r.nodes.push_back(n);
  auto lift = [&](const PortRef& p) -> PortRef {
    if (p.node == PortRef::In) return Diagram::in(p.port + d1.n_in);
    if (p.node == PortRef::Out) return Diagram::out(p.port + d1.n_out);
    return Diagram::at(p.node + off, p.port);
  };
  for (auto& w : d2.wires) r.add_wire(lift(w.a), lift(w.b));
  r.n_in += d2.n_in;
  r.n_out += d2.n_out;
  return r;
}

template <class... Ds>
Diagram seq(const Diagram& last, const Ds&... rest) {
  if constexpr (sizeof...(rest) == 0) return last;
  else return sequential_compose(last, seq(rest...));
}
template <class... Ds>
Diagram par(const Diagram& first, const Ds&... rest) {
  if constexpr (sizeof...(rest) == 0) return first;
  else return parallel_compose(first, par(rest...));
}

// ---- color swap ----------------------------------------------------------

inline Diagram color_swap(const Diagram& d) {
  if (d.calculus != Calculus::ZX) throw DiagramError("color_swap: ZX only");
  Diagram r;
  r.calculus = Calculus::ZX;
  r.n_in = d.n_in;
  r.n_out = d.n_out;
  // triangle -> H . triangle . H gadget; everything else kind-swapped in place
  std::vector<int> remap(d.nodes.size());
  for (size_t i = 0; i < d.nodes.size(); ++i) {
    Node n = d.nodes[i];
    if (n.kind == Kind::ZSpider) n.kind = Kind::XSpider;
    else if (n.kind == Kind::XSpider) n.kind = Kind::ZSpider;
    remap[i] = r.add_node(n.kind, n.angle, n.ports);
  }
  // triangles additionally get an H on each port
  std::map<std::pair<int, int>, PortRef> redirect;
  for (size_t i = 0; i < d.nodes.size(); ++i) {
    if (d.nodes[i].kind != Kind::Triangle) continue;
    for (int p = 0; p < 2; ++p) {
      int h = r.add_node(Kind::Hadamard);
      r.add_wire(Diagram::at(remap[i], p), Diagram::at(h, 0));
      redirect[{int(i), p}] = Diagram::at(h, 1);
    }
  }
  auto lift = [&](const PortRef& p) -> PortRef {
    if (p.is_boundary()) return p;
    auto it = redirect.find({p.node, p.port});
    if (it != redirect.end()) return it->second;
    return Diagram::at(remap[p.node], p.port);
  };
  for (auto& w : d.wires) r.add_wire(lift(w.a), lift(w.b));
  return r;
}

// ---- boundary-respecting graph isomorphism -------------------------------

inline bool angles_equal(const Angle& x, const Angle& y, double tol = 1e-12) {
  if (x.tag != y.tag) {
    // Exact vs Float: compare values
    if (!x.is_linear() && !y.is_linear())
      return std::abs(std::remainder(x.radians() - y.radians(), 2 * M_PI)) <= tol;
    return false;
  }
  if (x.tag == Angle::Tag::Float)
    return std::abs(std::remainder(x.radians_ - y.radians_, 2 * M_PI)) <= tol;
  return x == y;
}

inline bool isomorphic(const Diagram& a, const Diagram& b) {
  if (a.calculus != b.calculus || a.n_in != b.n_in || a.n_out != b.n_out) return false;
  if (a.nodes.size() != b.nodes.size() || a.wires.size() != b.wires.size()) return false;

  // adjacency as multiset of (endpoint, endpoint) with boundary pinned
  auto adj = [](const Diagram& d) {
    std::map<std::pair<int, int>, std::vector<PortRef>> m;  // (node,port) -> peers
    for (auto& w : d.wires) {
      m[{w.a.node, w.a.port}].push_back(w.b);
      m[{w.b.node, w.b.port}].push_back(w.a);
    }
    return m;
  };
  auto A = adj(a), B = adj(b);

  std::vector<int> map_ab(a.nodes.size(), -1), map_ba(b.nodes.size(), -1);

  // spiders have interchangeable ports; fixed-port kinds do not (but ports of
  // WhiteDot2/BlackDot2 are symmetric too, and H's two ports are symmetric;
  // the cross has symmetric pairs (0,1)+(2,3) swapped together, triangle none).
  std::function<bool(size_t)> go = [&](size_t i) -> bool {
    if (i == a.nodes.size()) {
      // verify all wires match under mapping with port-symmetry classes
      auto norm = [&](const Diagram& d, const PortRef& p, bool useMap) -> std::tuple<int, int> {
        if (p.is_boundary()) return {p.node, p.port};
        int nid = useMap ? map_ab[p.node] : p.node;
        Kind k = d.nodes[p.node].kind;
        int port = p.port;
        if (kind_is_spider(k) || k == Kind::Hadamard || k == Kind::WhiteDot2 ||
            k == Kind::BlackDot2 || k == Kind::WhiteDot1 || k == Kind::BlackDot1)
          port = 0;  // symmetric tensor: port identity irrelevant
        return {nid, port};
      };
      std::multiset<std::pair<std::tuple<int, int>, std::tuple<int, int>>> wa, wb;
      for (auto& w : a.wires) {
        auto x = norm(a, w.a, true), y = norm(a, w.b, true);
        if (y < x) std::swap(x, y);
        wa.insert({x, y});
      }
      for (auto& w : b.wires) {
        auto x = norm(b, w.a, false), y = norm(b, w.b, false);
        if (y < x) std::swap(x, y);
        wb.insert({x, y});
      }
      return wa == wb;
    }
    for (size_t j = 0; j < b.nodes.size(); ++j) {
      if (map_ba[j] >= 0) continue;
      const Node& x = a.nodes[i];
      const Node& y = b.nodes[j];
      if (x.kind != y.kind || x.ports != y.ports) continue;
      if (kind_is_spider(x.kind) && !angles_equal(x.angle, y.angle)) continue;
      map_ab[i] = int(j);
      map_ba[j] = int(i);
      if (go(i + 1)) return true;
      map_ab[i] = -1;
      map_ba[j] = -1;
    }
    return false;
  };
  return go(0);
}

}  // namespace dzx
