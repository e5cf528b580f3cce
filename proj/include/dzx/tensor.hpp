#pragma once
// Tensor-network interpretation of diagrams: exact (cyclotomic) or floating
// point.  A diagram with n inputs and m outputs denotes a 2^m x 2^n matrix;
// slot 0 is the most significant bit on both sides.

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "diagram.hpp"

namespace dzx {

inline constexpr int kMaxRank = 24;

struct DimensionOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class S>
struct Matrix {
  int rows = 1, cols = 1;
  std::vector<S> data;  // row-major

  Matrix() : data(1, ScalarOps<S>::one()) {}
  Matrix(int r, int c) : rows(r), cols(c), data(size_t(r) * c, ScalarOps<S>::zero()) {}
  S& at(int r, int c) { return data[size_t(r) * cols + c]; }
  const S& at(int r, int c) const { return data[size_t(r) * cols + c]; }

  Matrix<std::complex<double>> to_complex() const {
    Matrix<std::complex<double>> m(rows, cols);
    for (size_t i = 0; i < data.size(); ++i) m.data[i] = ScalarOps<S>::to_complex(data[i]);
    return m;
  }
};

namespace detail {

// Dense tensor over a list of wire ids; ids[0] is the most significant bit.
template <class S>
struct WireTensor {
  std::vector<int> ids;
  std::vector<S> data;
  int rank() const { return int(ids.size()); }
};

// per-kind entry at a port-bit assignment (bits[p] for port p)
template <class S>
S node_entry(const Node& n, const std::vector<int>& bits) {
  using Ops = ScalarOps<S>;
  int p = int(bits.size());
  int ones = 0;
  for (int b : bits) ones += b;
  switch (n.kind) {
    case Kind::ZSpider: {
      if (p == 0) return Ops::one() + Ops::phase(n.angle);
      if (ones == 0) return Ops::one();
      if (ones == p) return Ops::phase(n.angle);
      return Ops::zero();
    }
    case Kind::XSpider: {
      // H-conjugate of the Z spider: (1 + e^{ia} (-1)^{|b|}) / sqrt2^p
      S v = Ops::one();
      S ph = Ops::phase(n.angle);
      if (ones % 2) v = v - ph; else v = v + ph;
      for (int i = 0; i < p; ++i) v = v * Ops::inv_sqrt2();
      return v;
    }
    case Kind::Hadamard:
      return (bits[0] && bits[1]) ? S(-(Ops::inv_sqrt2())) : Ops::inv_sqrt2();
    case Kind::Triangle:
      // [[1,1],[0,1]] from base (port 0) to apex (port 1)
      return (bits[0] == 0 && bits[1] == 1) ? Ops::zero() : Ops::one();
    case Kind::WhiteDot1:
      if (bits[0] != bits[1]) return Ops::zero();
      return bits[0] ? -Ops::one() : Ops::one();
    case Kind::WhiteDot2:
      if (ones == 0) return Ops::one();
      if (ones == 3) return -Ops::one();
      return Ops::zero();
    case Kind::BlackDot1:
      return bits[0] != bits[1] ? Ops::one() : Ops::zero();
    case Kind::BlackDot2:
      return ones == 1 ? Ops::one() : Ops::zero();
    case Kind::Cross: {
      // ports (i0, i1, o0, o1): swap with a -1 on |11>
      if (bits[2] != bits[1] || bits[3] != bits[0]) return Ops::zero();
      return (bits[0] && bits[1]) ? -Ops::one() : Ops::one();
    }
    case Kind::Star:
      return Ops::inv_sqrt2();
  }
  return Ops::zero();
}

template <class S>
WireTensor<S> build_node_tensor(const Node& n, const std::vector<int>& port_wire) {
  using Ops = ScalarOps<S>;
  int p = n.ports;
  if (p > kMaxRank) throw DimensionOverflow("node arity exceeds tensor rank limit");
  // raw tensor over ports
  std::vector<S> raw(size_t(1) << p, Ops::zero());
  std::vector<int> bits(p);
  for (size_t idx = 0; idx < raw.size(); ++idx) {
    for (int i = 0; i < p; ++i) bits[i] = int((idx >> (p - 1 - i)) & 1);
    raw[idx] = node_entry<S>(n, bits);
  }
  // self-loops (a wire id on two ports of this node) are traced out: sum over
  // assignments where both ports agree, and drop the leg
  std::map<int, int> count;
  for (int w : port_wire) ++count[w];
  std::vector<int> distinct, uniq;  // all ids / ids kept as legs
  for (int w : port_wire)
    if (std::find(distinct.begin(), distinct.end(), w) == distinct.end()) {
      distinct.push_back(w);
      if (count[w] == 1) uniq.push_back(w);
    }
  WireTensor<S> t;
  t.ids = uniq;
  int u = int(uniq.size());
  t.data.assign(size_t(1) << u, Ops::zero());
  std::map<int, int> dpos, upos;
  for (size_t i = 0; i < distinct.size(); ++i) dpos[distinct[i]] = int(i);
  for (int i = 0; i < u; ++i) upos[uniq[i]] = i;
  for (size_t idx = 0; idx < raw.size(); ++idx) {
    bool consistent = true;
    std::vector<int> val(distinct.size(), -1);
    for (int i = 0; i < p && consistent; ++i) {
      int b = int((idx >> (p - 1 - i)) & 1);
      int& v = val[dpos[port_wire[i]]];
      if (v == -1) v = b;
      else if (v != b) consistent = false;
    }
    if (!consistent) continue;
    size_t out = 0;
    for (int i = 0; i < u; ++i) out |= size_t(val[dpos[uniq[i]]]) << (u - 1 - i);
    t.data[out] = t.data[out] + raw[idx];
  }
  return t;
}

template <class S>
WireTensor<S> contract_pair(const WireTensor<S>& A, const WireTensor<S>& B,
                            const std::set<int>& shared) {
  using Ops = ScalarOps<S>;
  WireTensor<S> R;
  std::vector<int> sh(shared.begin(), shared.end());
  for (int w : A.ids) if (!shared.count(w)) R.ids.push_back(w);
  for (int w : B.ids) if (!shared.count(w)) R.ids.push_back(w);
  int ur = int(R.ids.size()), us = int(sh.size());
  if (ur > kMaxRank) throw DimensionOverflow("contraction exceeds tensor rank limit");
  // bit positions: for each of A's / B's indices, which (result|shared) bit feeds it
  auto plan = [&](const WireTensor<S>& T) {
    std::vector<std::pair<bool, int>> pl;  // (from_shared, position)
    for (int w : T.ids) {
      auto it = std::find(sh.begin(), sh.end(), w);
      if (it != sh.end()) pl.push_back({true, int(it - sh.begin())});
      else {
        auto jt = std::find(R.ids.begin(), R.ids.end(), w);
        pl.push_back({false, int(jt - R.ids.begin())});
      }
    }
    return pl;
  };
  auto pa = plan(A), pb = plan(B);
  auto index_of = [](const std::vector<std::pair<bool, int>>& pl, size_t r, size_t s,
                     int ur_, int us_) {
    size_t idx = 0;
    int n = int(pl.size());
    for (int i = 0; i < n; ++i) {
      size_t bit = pl[i].first ? (s >> (us_ - 1 - pl[i].second)) & 1
                               : (r >> (ur_ - 1 - pl[i].second)) & 1;
      idx |= bit << (n - 1 - i);
    }
    return idx;
  };
  R.data.assign(size_t(1) << ur, Ops::zero());
  for (size_t r = 0; r < R.data.size(); ++r) {
    S acc = Ops::zero();
    for (size_t s = 0; s < (size_t(1) << us); ++s) {
      acc = acc + A.data[index_of(pa, r, s, ur, us)] * B.data[index_of(pb, r, s, ur, us)];
    }
    R.data[r] = acc;
  }
  return R;
}

}  // namespace detail

template <class S>
Matrix<S> interpret(const Diagram& d) {
  using Ops = ScalarOps<S>;
  using detail::WireTensor;
  {
    auto bad = d.validate();
    if (!bad.empty()) throw DiagramError("interpret: invalid diagram: " + bad.front());
  }
  if (d.n_in + d.n_out > kMaxRank)
    throw DimensionOverflow("boundary exceeds tensor rank limit");

  // wire ids = index into d.wires; boundary slot -> wire id
  std::map<std::pair<int, int>, int> end_wire;  // (node, port) or boundary -> wire
  for (int w = 0; w < int(d.wires.size()); ++w) {
    end_wire[{d.wires[w].a.node, d.wires[w].a.port}] = w;
    end_wire[{d.wires[w].b.node, d.wires[w].b.port}] = w;
  }
  // wires with at least one boundary end stay free
  std::vector<bool> is_free(d.wires.size(), false);
  for (int w = 0; w < int(d.wires.size()); ++w)
    if (d.wires[w].a.is_boundary() || d.wires[w].b.is_boundary()) is_free[w] = true;

  std::vector<WireTensor<S>> ts;
  for (size_t i = 0; i < d.nodes.size(); ++i) {
    std::vector<int> pw(d.nodes[i].ports);
    for (int p = 0; p < d.nodes[i].ports; ++p) pw[p] = end_wire.at({int(i), p});
    ts.push_back(detail::build_node_tensor<S>(d.nodes[i], pw));
  }

  std::vector<bool> alive(ts.size(), true);
  // wire -> owning alive tensors (internal wires only)
  std::vector<std::vector<int>> owners(d.wires.size());
  for (size_t t = 0; t < ts.size(); ++t)
    for (int w : ts[t].ids)
      if (!is_free[w]) owners[w].push_back(int(t));
  std::vector<int> pending;  // internal wires not yet contracted
  for (int w = 0; w < int(d.wires.size()); ++w)
    if (!is_free[w] && owners[w].size() == 2) pending.push_back(w);
  // greedy: repeatedly contract the internal wire whose merge gives the
  // smallest resulting rank
  while (!pending.empty()) {
    int best_i = -1, best_rank = std::numeric_limits<int>::max();
    for (size_t i = 0; i < pending.size(); ++i) {
      int w = pending[i];
      int a = owners[w][0], b = owners[w][1];
      if (a == b) continue;  // became a self-pair after earlier merges
      int shared = 0;
      const auto& small = ts[a].rank() <= ts[b].rank() ? ts[a] : ts[b];
      const auto& big = ts[a].rank() <= ts[b].rank() ? ts[b] : ts[a];
      for (int x : small.ids)
        if (!is_free[x] && std::find(big.ids.begin(), big.ids.end(), x) != big.ids.end()) ++shared;
      int rank = ts[a].rank() + ts[b].rank() - 2 * shared;
      if (rank < best_rank) { best_rank = rank; best_i = int(i); }
    }
    if (best_i < 0) break;
    int w0 = pending[best_i];
    int ba = owners[w0][0], bb = owners[w0][1];
    std::set<int> sa(ts[ba].ids.begin(), ts[ba].ids.end());
    std::set<int> shared;
    for (int x : ts[bb].ids) if (sa.count(x) && !is_free[x]) shared.insert(x);
    WireTensor<S> merged = detail::contract_pair(ts[ba], ts[bb], shared);
    alive[ba] = alive[bb] = false;
    int nid = int(ts.size());
    ts.push_back(std::move(merged));
    alive.push_back(true);
    for (int x : ts[nid].ids) {
      if (is_free[x]) continue;
      for (int& o : owners[x])
        if (o == ba || o == bb) o = nid;
    }
    // drop contracted and self-pair wires from pending
    std::vector<int> np;
    np.reserve(pending.size());
    for (int w : pending)
      if (!shared.count(w) && owners[w][0] != owners[w][1]) np.push_back(w);
    pending.swap(np);
  }

  // assemble final matrix from the surviving tensors (all ids are boundary
  // wires now) and from boundary-boundary wires
  int m = d.n_out, n = d.n_in;
  Matrix<S> M(1 << m, 1 << n);
  std::vector<int> live;
  for (size_t t = 0; t < ts.size(); ++t) if (alive[t]) live.push_back(int(t));

  for (int row = 0; row < (1 << m); ++row) {
    for (int col = 0; col < (1 << n); ++col) {
      // bit value of each boundary slot
      auto slot_bit = [&](const PortRef& p) -> int {
        if (p.node == PortRef::In) return (col >> (n - 1 - p.port)) & 1;
        return (row >> (m - 1 - p.port)) & 1;
      };
      // derive each free wire's bit; boundary-boundary wires give delta
      std::vector<int> wire_bit(d.wires.size(), -1);
      bool zero = false;
      for (int w = 0; w < int(d.wires.size()) && !zero; ++w) {
        if (!is_free[w]) continue;
        const Wire& wr = d.wires[w];
        bool ab = wr.a.is_boundary(), bb_ = wr.b.is_boundary();
        if (ab && bb_) {
          if (slot_bit(wr.a) != slot_bit(wr.b)) zero = true;
          continue;  // pure wire, no tensor involved
        }
        wire_bit[w] = slot_bit(ab ? wr.a : wr.b);
      }
      if (zero) continue;
      S acc = Ops::one();
      for (int t : live) {
        size_t idx = 0;
        int r = ts[t].rank();
        for (int i = 0; i < r; ++i)
          idx |= size_t(wire_bit[ts[t].ids[i]]) << (r - 1 - i);
        acc = acc * ts[t].data[idx];
      }
      M.at(row, col) = acc;
    }
  }
  return M;
}

inline Matrix<CycloScalar> interpret_exact(const Diagram& d) { return interpret<CycloScalar>(d); }
inline Matrix<ApproxScalar> interpret_float(const Diagram& d) { return interpret<ApproxScalar>(d); }

// ---- equality -------------------------------------------------------------

struct EqualityWitness {
  int row = -1, col = -1;
  std::string lhs, rhs;  // printed entries
};

struct EqualityResult {
  bool equal = false;
  bool shape_mismatch = false;
  std::optional<EqualityWitness> witness;
};

inline std::string print_complex(const std::complex<double>& z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

inline std::string print_scalar(const CycloScalar& s) {
  std::ostringstream os;
  os << "(" << s.a << "," << s.b << "," << s.c << "," << s.d << ")/sqrt2^" << s.k;
  return os.str();
}
inline std::string print_scalar(const ApproxScalar& s) { return print_complex(s); }

template <class S>
EqualityResult matrices_equal(const Matrix<S>& A, const Matrix<S>& B, double tol = 1e-9,
                              bool up_to_global = false) {
  EqualityResult res;
  if (A.rows != B.rows || A.cols != B.cols) {
    res.shape_mismatch = true;
    return res;
  }
  if (up_to_global) {
    // cross-multiplied comparison: A[x] B[i0] == B[x] A[i0] for the first
    // index i0 where either side is nonzero (works in a ring, no division)
    size_t i0 = A.data.size();
    for (size_t i = 0; i < A.data.size(); ++i) {
      bool az = ScalarOps<S>::eq(A.data[i], ScalarOps<S>::zero(), tol);
      bool bz = ScalarOps<S>::eq(B.data[i], ScalarOps<S>::zero(), tol);
      if (!az || !bz) { i0 = i; break; }
    }
    if (i0 == A.data.size()) { res.equal = true; return res; }  // both zero
    for (size_t i = 0; i < A.data.size(); ++i) {
      S l = A.data[i] * B.data[i0];
      S r = B.data[i] * A.data[i0];
      if (!ScalarOps<S>::eq(l, r, tol)) {
        res.witness = EqualityWitness{int(i / A.cols), int(i % A.cols),
                                      print_scalar(A.data[i]), print_scalar(B.data[i])};
        return res;
      }
    }
    res.equal = true;
    return res;
  }
  for (size_t i = 0; i < A.data.size(); ++i) {
    if (!ScalarOps<S>::eq(A.data[i], B.data[i], tol)) {
      res.witness = EqualityWitness{int(i / A.cols), int(i % A.cols),
                                    print_scalar(A.data[i]), print_scalar(B.data[i])};
      return res;
    }
  }
  res.equal = true;
  return res;
}

template <class S>
EqualityResult check_equal(const Diagram& a, const Diagram& b, double tol = 1e-9,
                           bool up_to_global = false) {
  if (a.n_in != b.n_in || a.n_out != b.n_out) {
    EqualityResult r;
    r.shape_mismatch = true;
    return r;
  }
  return matrices_equal(interpret<S>(a), interpret<S>(b), tol, up_to_global);
}

}  // namespace dzx
