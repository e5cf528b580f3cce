#pragma once
// Pattern matching, rule application, derivation replay, soundness sweeps
// and a greedy simplifier on top of the rule catalog.

#include <algorithm>
#include <set>

#include "rules.hpp"
#include "tensor.hpp"

namespace dzx {

struct RewriteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Dir { LR, RL };
inline const char* dir_name(Dir d) { return d == Dir::LR ? "LR" : "RL"; }

struct Embedding {
  Bind bind;                 // legs + solved angle values
  std::vector<int> node_map; // pattern node -> host node
  std::vector<int> wire_map; // pattern wire -> host wire
  // host endpoints matched to (wires[w].a, wires[w].b) of the pattern
  std::vector<std::pair<PortRef, PortRef>> wire_ends;
};

namespace rewrite_detail {

// Nodes whose tensor is *not* invariant under leg permutation must match
// their ports positionally; all other kinds have fully symmetric tensors.
inline bool ports_are_rigid(Kind k) { return k == Kind::Triangle || k == Kind::Cross; }

// Try to unify a pattern angle against a concrete host angle, extending the
// binding.  Pattern angles are either constants or of the form +/-v + c.
inline bool solve_angle(const Angle& pat, const Angle& host,
                        std::map<std::string, Angle>& bind) {
  if (!pat.is_linear()) return angles_equal(pat, host);
  if (host.is_linear()) return false;
  if (pat.coeffs.size() != 1) return false;
  auto [var, coeff] = *pat.coeffs.begin();
  if (coeff != 1 && coeff != -1) return false;
  Angle cst = Angle::pi_frac(pat.exact.num, pat.exact.den);
  Angle val = (host + (-cst)) * coeff;
  auto it = bind.find(var);
  if (it != bind.end()) return angles_equal(it->second, val);
  bind.emplace(var, val);
  return true;
}

struct MatchState {
  const Diagram* pat;
  const Diagram* host;
  std::vector<int> node_map;
  std::vector<char> host_node_used;
  std::vector<char> host_node_image;  // same content as used; kept for clarity
  std::vector<int> wire_map;
  std::vector<char> host_wire_used;
  std::vector<std::vector<char>> port_used;  // [host node][port]
  std::vector<std::pair<PortRef, PortRef>> wire_ends;
  Bind bind;
  std::vector<Embedding>* out;
  size_t limit;
};

inline bool end_compatible(MatchState& st, const PortRef& pe, const PortRef& he) {
  if (!pe.is_boundary()) {
    int hu = st.node_map[pe.node];
    if (he.is_boundary() || he.node != hu) return false;
    if (st.port_used[hu][he.port]) return false;
    if (ports_are_rigid(st.pat->nodes[pe.node].kind) && he.port != pe.port) return false;
    return true;
  }
  // boundary pattern ends must land outside the matched image
  if (!he.is_boundary() && st.host_node_image[he.node]) return false;
  return true;
}

inline void match_wires(MatchState& st, int w) {
  if (st.out->size() >= st.limit) return;
  if (w == int(st.pat->wires.size())) {
    Embedding e;
    e.bind = st.bind;
    e.node_map = st.node_map;
    e.wire_map = st.wire_map;
    e.wire_ends = st.wire_ends;
    st.out->push_back(std::move(e));
    return;
  }
  const Wire& pw = st.pat->wires[w];
  for (int hw = 0; hw < int(st.host->wires.size()); ++hw) {
    if (st.host_wire_used[hw]) continue;
    const Wire& hwire = st.host->wires[hw];
    for (int o = 0; o < 2; ++o) {
      PortRef ha = o == 0 ? hwire.a : hwire.b;
      PortRef hb = o == 0 ? hwire.b : hwire.a;
      if (o == 1 && hwire.a == hwire.b) continue;  // symmetric; one orientation
      if (!end_compatible(st, pw.a, ha)) continue;
      // tentatively claim pw.a's port so a self-loop pattern wire checks
      // pw.b against the updated usage
      bool claimed_a = !pw.a.is_boundary();
      if (claimed_a) st.port_used[ha.node][ha.port] = 1;
      bool ok_b = end_compatible(st, pw.b, hb);
      if (ok_b) {
        bool claimed_b = !pw.b.is_boundary();
        if (claimed_b) st.port_used[hb.node][hb.port] = 1;
        st.host_wire_used[hw] = 1;
        st.wire_map[w] = hw;
        st.wire_ends[w] = {ha, hb};
        match_wires(st, w + 1);
        st.host_wire_used[hw] = 0;
        if (claimed_b) st.port_used[hb.node][hb.port] = 0;
      }
      if (claimed_a) st.port_used[ha.node][ha.port] = 0;
    }
  }
}

inline void match_nodes(MatchState& st, int pn) {
  if (st.out->size() >= st.limit) return;
  if (pn == int(st.pat->nodes.size())) {
    match_wires(st, 0);
    return;
  }
  const Node& p = st.pat->nodes[pn];
  for (int hn = 0; hn < int(st.host->nodes.size()); ++hn) {
    if (st.host_node_used[hn]) continue;
    const Node& h = st.host->nodes[hn];
    if (h.kind != p.kind || h.ports != p.ports) continue;
    std::map<std::string, Angle> saved = st.bind.angles;
    bool angle_ok = !kind_is_spider(p.kind) || solve_angle(p.angle, h.angle, st.bind.angles);
    if (angle_ok) {
      st.host_node_used[hn] = 1;
      st.host_node_image[hn] = 1;
      st.node_map[pn] = hn;
      match_nodes(st, pn + 1);
      st.host_node_used[hn] = 0;
      st.host_node_image[hn] = 0;
    }
    st.bind.angles = std::move(saved);
  }
}

}  // namespace rewrite_detail

// All embeddings of `pattern` into `host`, deterministically ordered.
inline std::vector<Embedding> match_diagram(const Diagram& pattern, const Diagram& host,
                                            const Bind& seed = {},
                                            size_t limit = size_t(-1)) {
  if (pattern.calculus != host.calculus)
    throw RewriteError("pattern and host use different calculi");
  std::vector<Embedding> out;
  rewrite_detail::MatchState st;
  st.pat = &pattern;
  st.host = &host;
  st.node_map.assign(pattern.nodes.size(), -1);
  st.host_node_used.assign(host.nodes.size(), 0);
  st.host_node_image.assign(host.nodes.size(), 0);
  st.wire_map.assign(pattern.wires.size(), -1);
  st.host_wire_used.assign(host.wires.size(), 0);
  st.port_used.resize(host.nodes.size());
  for (size_t i = 0; i < host.nodes.size(); ++i)
    st.port_used[i].assign(host.nodes[i].ports, 0);
  st.wire_ends.assign(pattern.wires.size(), {});
  st.bind = seed;
  st.out = &out;
  st.limit = limit;
  rewrite_detail::match_nodes(st, 0);
  return out;
}

// Embeddings of one side of `rule` in `host`, enumerating all leg bindings
// not pinned by `seed` (declared parameter order, ascending values).
inline std::vector<Embedding> find_matches(const RewriteRule& rule, Dir dir,
                                           const Diagram& host, const Bind& seed = {},
                                           size_t limit = size_t(-1)) {
  if (rule.verify_only) return {};
  std::vector<Embedding> out;
  std::vector<int> vals(rule.leg_params.size());
  std::function<void(size_t)> go = [&](size_t i) {
    if (out.size() >= limit) return;
    if (i == rule.leg_params.size()) {
      Bind b = seed;
      for (size_t t = 0; t < vals.size(); ++t) b.legs[rule.leg_params[t].name] = vals[t];
      auto sides = rule.build(b);
      const Diagram& pat = dir == Dir::LR ? sides.first : sides.second;
      for (auto& e : match_diagram(pat, host, b, limit - out.size()))
        out.push_back(std::move(e));
      return;
    }
    const LegParam& lp = rule.leg_params[i];
    auto pin = seed.legs.find(lp.name);
    int lo = pin != seed.legs.end() ? pin->second : lp.min;
    int hi = pin != seed.legs.end() ? pin->second : lp.max;
    for (int v = lo; v <= hi; ++v) {
      vals[i] = v;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

// Replace the matched occurrence of one side of `rule` by the other side.
inline Diagram apply(const RewriteRule& rule, Dir dir, const Diagram& host,
                     const Embedding& emb) {
  if (rule.verify_only) throw RewriteError("rule '" + rule.name + "' is verify-only");
  auto sides = rule.build(emb.bind);
  const Diagram& pat = dir == Dir::LR ? sides.first : sides.second;
  const Diagram& rep = dir == Dir::LR ? sides.second : sides.first;

  // staleness guard: the embedding must still describe `host`
  if (emb.node_map.size() != pat.nodes.size() || emb.wire_map.size() != pat.wires.size())
    throw RewriteError("embedding does not fit rule '" + rule.name + "'");
  std::vector<char> in_image(host.nodes.size(), 0);
  for (size_t i = 0; i < pat.nodes.size(); ++i) {
    int hn = emb.node_map[i];
    if (hn < 0 || hn >= int(host.nodes.size()) || host.nodes[hn].kind != pat.nodes[i].kind ||
        host.nodes[hn].ports != pat.nodes[i].ports)
      throw RewriteError("stale embedding for rule '" + rule.name + "'");
    in_image[hn] = 1;
  }
  std::vector<char> wire_gone(host.wires.size(), 0);
  for (size_t w = 0; w < pat.wires.size(); ++w) {
    int hw = emb.wire_map[w];
    if (hw < 0 || hw >= int(host.wires.size())) throw RewriteError("stale embedding (wire)");
    auto [ha, hb] = emb.wire_ends[w];
    const Wire& hwire = host.wires[hw];
    bool same = (hwire.a == ha && hwire.b == hb) || (hwire.a == hb && hwire.b == ha);
    if (!same) throw RewriteError("stale embedding (wire endpoints)");
    wire_gone[hw] = 1;
  }

  // attachment points: host endpoint for each boundary slot of the pattern
  std::vector<PortRef> attach_in(pat.n_in), attach_out(pat.n_out);
  for (size_t w = 0; w < pat.wires.size(); ++w) {
    auto note = [&](const PortRef& pe, const PortRef& he) {
      if (pe.node == PortRef::In) attach_in[pe.port] = he;
      else if (pe.node == PortRef::Out) attach_out[pe.port] = he;
    };
    note(pat.wires[w].a, emb.wire_ends[w].first);
    note(pat.wires[w].b, emb.wire_ends[w].second);
  }

  Diagram res;
  res.calculus = host.calculus;
  res.n_in = host.n_in;
  res.n_out = host.n_out;
  std::vector<int> keep_id(host.nodes.size(), -1);
  for (size_t i = 0; i < host.nodes.size(); ++i)
    if (!in_image[i]) {
      keep_id[i] = int(res.nodes.size());
      res.nodes.push_back(host.nodes[i]);
    }
  std::vector<int> rep_id(rep.nodes.size());
  for (size_t i = 0; i < rep.nodes.size(); ++i) {
    Node n = rep.nodes[i];
    n.angle = n.angle.instantiate(emb.bind.angles);
    rep_id[i] = int(res.nodes.size());
    res.nodes.push_back(n);
  }
  auto remap_host = [&](const PortRef& p) {
    if (p.is_boundary()) return p;
    if (keep_id[p.node] < 0)
      throw RewriteError("replacement attaches to a deleted node");
    return Diagram::at(keep_id[p.node], p.port);
  };
  for (size_t w = 0; w < host.wires.size(); ++w)
    if (!wire_gone[w])
      res.add_wire(remap_host(host.wires[w].a), remap_host(host.wires[w].b));
  auto map_rep = [&](const PortRef& p) {
    if (p.node == PortRef::In) return remap_host(attach_in[p.port]);
    if (p.node == PortRef::Out) return remap_host(attach_out[p.port]);
    return Diagram::at(rep_id[p.node], p.port);
  };
  for (auto& w : rep.wires) res.add_wire(map_rep(w.a), map_rep(w.b));

  auto bad = res.validate();
  if (!bad.empty()) throw RewriteError("apply produced invalid diagram: " + bad.front());
  return res;
}

// ---- soundness sweep -------------------------------------------------------

struct SoundnessConfig {
  int boundary_cap = 6;   // skip instantiations with more open legs
  int real_samples = 25;  // random draws per rule for real-valued parameters
  uint32_t seed = 0x5eed;
  double tol = 1e-9;
};

struct SoundnessFailure {
  Bind bind;
  std::string detail;
};

struct SoundnessReport {
  std::string rule;
  long checked = 0, skipped = 0;
  std::vector<SoundnessFailure> failures;
  bool sound() const { return failures.empty(); }
};

namespace rewrite_detail {

inline std::string bind_summary(const Bind& b) {
  std::ostringstream os;
  for (auto& [k, v] : b.legs) os << k << "=" << v << " ";
  for (auto& [k, v] : b.angles) {
    os << k << "=";
    try {
      os << v.radians();
    } catch (...) {
      os << "?";
    }
    os << " ";
  }
  return os.str();
}

inline void check_instance(const RewriteRule& rule, const Bind& b, bool exact,
                           const SoundnessConfig& cfg, SoundnessReport& rep) {
  auto sides = rule.build(b);
  int boundary = sides.first.n_in + sides.first.n_out;
  if (boundary > cfg.boundary_cap) {
    ++rep.skipped;
    return;
  }
  EqualityResult r = exact ? check_equal<CycloScalar>(sides.first, sides.second)
                           : check_equal<ApproxScalar>(sides.first, sides.second, cfg.tol);
  ++rep.checked;
  if (!r.equal && rep.failures.size() < 20) {
    std::string why = r.shape_mismatch ? "shape mismatch" : "entry mismatch";
    if (r.witness)
      why += " at (" + std::to_string(r.witness->row) + "," + std::to_string(r.witness->col) +
             "): " + r.witness->lhs + " vs " + r.witness->rhs;
    rep.failures.push_back({b, why});
  } else if (!r.equal) {
    rep.failures.push_back({b, "entry mismatch"});
  }
}

}  // namespace rewrite_detail

inline SoundnessReport verify_rule_soundness(const RewriteRule& rule,
                                             const SoundnessConfig& cfg = {}) {
  using rewrite_detail::check_instance;
  SoundnessReport rep;
  rep.rule = rule.name;
  std::seed_seq sq{cfg.seed, uint32_t(std::hash<std::string>{}(rule.name))};
  std::mt19937 rng(sq);

  std::vector<Bind> leg_binds;
  {
    std::vector<int> vals(rule.leg_params.size());
    std::function<void(size_t)> go = [&](size_t i) {
      if (i == rule.leg_params.size()) {
        Bind b;
        for (size_t t = 0; t < vals.size(); ++t) b.legs[rule.leg_params[t].name] = vals[t];
        leg_binds.push_back(b);
        return;
      }
      for (int v = rule.leg_params[i].min; v <= rule.leg_params[i].max; ++v) {
        vals[i] = v;
        go(i + 1);
      }
    };
    go(0);
  }

  if (rule.sample) {
    for (auto& lb : leg_binds)
      for (int s = 0; s < cfg.real_samples; ++s) {
        Bind b = rule.sample(rng);
        b.legs = lb.legs;
        check_instance(rule, b, /*exact=*/false, cfg, rep);
      }
    return rep;
  }

  bool has_real = false;
  for (auto& ap : rule.angle_params)
    if (ap.domain != AngleParam::Domain::ZeroPi) has_real = true;

  // exact grid: {0,pi} or the eight pi/4 multiples per parameter
  {
    std::vector<int> steps(rule.angle_params.size());
    std::function<void(size_t, const Bind&)> go = [&](size_t i, const Bind& lb) {
      if (i == rule.angle_params.size()) {
        check_instance(rule, lb, /*exact=*/true, cfg, rep);
        return;
      }
      bool zp = rule.angle_params[i].domain == AngleParam::Domain::ZeroPi;
      int n = zp ? 2 : 8;
      for (int s = 0; s < n; ++s) {
        Bind b = lb;
        b.angles[rule.angle_params[i].name] = zp ? Angle::pi_frac(s, 1) : Angle::pi_frac(s, 4);
        go(i + 1, b);
      }
    };
    for (auto& lb : leg_binds) go(0, lb);
  }

  // float spot checks for real-valued parameters
  if (has_real) {
    std::uniform_real_distribution<double> U(-M_PI, M_PI);
    for (auto& lb : leg_binds)
      for (int s = 0; s < cfg.real_samples; ++s) {
        Bind b = lb;
        for (auto& ap : rule.angle_params) {
          if (ap.domain == AngleParam::Domain::ZeroPi)
            b.angles[ap.name] = Angle::pi_frac(rng() & 1, 1);
          else if (ap.domain == AngleParam::Domain::Pi4)
            b.angles[ap.name] = Angle::pi_frac(long(rng() % 8), 4);
          else
            b.angles[ap.name] = Angle::from_float(U(rng));
        }
        check_instance(rule, b, /*exact=*/false, cfg, rep);
      }
  }
  return rep;
}

// ---- derivations -----------------------------------------------------------

struct DerivationStep {
  std::string rule;
  Dir dir = Dir::LR;
  int match_index = 0;  // index into find_matches(rule, dir, current, bind)
  Bind bind;            // pinned legs/angles used when enumerating matches
};

struct Derivation {
  std::string ruleset;
  Diagram start, end;
  std::vector<DerivationStep> steps;
};

struct ReplayReport {
  bool ok = false;
  int failed_step = -1;  // 0-based; -1 when the endpoint check failed instead
  std::string reason;
  Diagram final_diagram;
};

inline ReplayReport replay_derivation(const Derivation& d, const RuleSet& rs) {
  ReplayReport rep;
  Diagram cur = d.start;
  for (size_t i = 0; i < d.steps.size(); ++i) {
    const DerivationStep& st = d.steps[i];
    const RewriteRule* rule = rs.find(st.rule);
    if (!rule) {
      rep.failed_step = int(i);
      rep.reason = "unknown rule '" + st.rule + "' in ruleset '" + rs.name + "'";
      rep.final_diagram = cur;
      return rep;
    }
    auto ms = find_matches(*rule, st.dir, cur, st.bind, size_t(st.match_index) + 1);
    if (st.match_index < 0 || size_t(st.match_index) >= ms.size()) {
      rep.failed_step = int(i);
      rep.reason = "match index " + std::to_string(st.match_index) + " out of range (" +
                   std::to_string(ms.size()) + " matches)";
      rep.final_diagram = cur;
      return rep;
    }
    try {
      cur = apply(*rule, st.dir, cur, ms[st.match_index]);
    } catch (const std::exception& e) {
      rep.failed_step = int(i);
      rep.reason = e.what();
      rep.final_diagram = cur;
      return rep;
    }
  }
  rep.final_diagram = cur;
  if (!isomorphic(cur, d.end)) {
    rep.reason = "final diagram is not isomorphic to the declared endpoint";
    return rep;
  }
  // cross-check: endpoints agree semantically whenever exactly interpretable
  try {
    auto eq = check_equal<CycloScalar>(d.start, d.end);
    if (!eq.equal) {
      rep.reason = "start and end of the derivation differ semantically";
      return rep;
    }
  } catch (const std::exception&) {
    // non-exact angles or oversized tensors: structural check stands alone
  }
  rep.ok = true;
  return rep;
}

// ---- greedy simplifier -----------------------------------------------------

struct SimplifyResult {
  Diagram diagram;
  Derivation derivation;
  int steps = 0;
};

inline SimplifyResult simplify(const Diagram& d, const RuleSet& rs, int max_steps = 64) {
  SimplifyResult res;
  res.derivation.ruleset = rs.name;
  res.derivation.start = d;
  Diagram cur = d;
  for (int step = 0; step < max_steps; ++step) {
    bool advanced = false;
    for (auto& rule : rs.rules) {
      if (rule.verify_only) continue;
      for (Dir dir : {Dir::LR, Dir::RL}) {
        auto ms = find_matches(rule, dir, cur);
        for (size_t k = 0; k < ms.size(); ++k) {
          auto sides = rule.build(ms[k].bind);
          const Diagram& pat = dir == Dir::LR ? sides.first : sides.second;
          const Diagram& rep = dir == Dir::LR ? sides.second : sides.first;
          if (int(rep.nodes.size()) >= int(pat.nodes.size())) continue;
          Diagram next;
          try {
            next = apply(rule, dir, cur, ms[k]);
          } catch (const RewriteError&) {
            continue;
          }
          DerivationStep ds;
          ds.rule = rule.name;
          ds.dir = dir;
          ds.match_index = int(k);
          res.derivation.steps.push_back(ds);
          cur = std::move(next);
          ++res.steps;
          advanced = true;
          break;
        }
        if (advanced) break;
      }
      if (advanced) break;
    }
    if (!advanced) break;
  }
  res.diagram = cur;
  res.derivation.end = cur;
  return res;
}

}  // namespace dzx
