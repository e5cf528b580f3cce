#pragma once
// Named rewrite-rule catalog for both calculi.  Each rule is a parametric
// builder producing (lhs, rhs) for a given binding of angle and leg
// parameters; every shipped rule is gated by the soundness sweep.

#include <functional>
#include <random>

#include "functors.hpp"

namespace dzx {

struct Bind {
  std::map<std::string, Angle> angles;
  std::map<std::string, int> legs;
  Angle angle(const std::string& n) const {
    auto it = angles.find(n);
    if (it == angles.end()) return Angle::var(n);  // unbound -> pattern variable
    return it->second;
  }
  int leg(const std::string& n) const {
    auto it = legs.find(n);
    if (it == legs.end()) throw std::runtime_error("unbound leg parameter: " + n);
    return it->second;
  }
};

struct AngleParam {
  std::string name;
  enum class Domain { ZeroPi, Pi4, Real } domain = Domain::Real;
};

struct LegParam {
  std::string name;
  int min = 0, max = 3;
};

struct RewriteRule {
  std::string name;
  Calculus calculus = Calculus::ZX;
  std::vector<AngleParam> angle_params;
  std::vector<LegParam> leg_params;
  std::function<std::pair<Diagram, Diagram>(const Bind&)> build;
  bool verify_only = false;  // no matching/application, soundness check only
  // for rules whose parameters obey a side condition: draws a consistent bind
  std::function<Bind(std::mt19937&)> sample;
};

struct RuleSet {
  std::string name;
  std::vector<RewriteRule> rules;
  const RewriteRule* find(const std::string& rule_name) const {
    for (auto& r : rules)
      if (r.name == rule_name) return &r;
    return nullptr;
  }
};

namespace rules_detail {

using BuildFn = std::function<std::pair<Diagram, Diagram>(const Bind&)>;

inline RewriteRule zx_rule(std::string name, std::vector<AngleParam> as,
                           std::vector<LegParam> ls, BuildFn f) {
  RewriteRule r;
  r.name = std::move(name);
  r.calculus = Calculus::ZX;
  r.angle_params = std::move(as);
  r.leg_params = std::move(ls);
  r.build = std::move(f);
  return r;
}
inline RewriteRule zw_rule(std::string name, BuildFn f) {
  RewriteRule r;
  r.name = std::move(name);
  r.calculus = Calculus::ZW;
  r.build = std::move(f);
  return r;
}

// spider fusion sides for either color
inline std::pair<Diagram, Diagram> fusion_sides(Kind spider, const Bind& b) {
  int n1 = b.leg("n1"), m1 = b.leg("m1"), n2 = b.leg("n2"), m2 = b.leg("m2"), j = b.leg("j");
  Angle al = b.angle("alpha"), be = b.angle("beta");
  Diagram lhs;
  lhs.n_in = n1 + n2;
  lhs.n_out = m1 + m2;
  int s1 = lhs.add_node(spider, al, n1 + m1 + j);
  int s2 = lhs.add_node(spider, be, n2 + m2 + j);
  for (int i = 0; i < n1; ++i) lhs.add_wire(Diagram::in(i), Diagram::at(s1, i));
  for (int k = 0; k < m1; ++k) lhs.add_wire(Diagram::at(s1, n1 + k), Diagram::out(k));
  for (int i = 0; i < n2; ++i) lhs.add_wire(Diagram::in(n1 + i), Diagram::at(s2, i));
  for (int k = 0; k < m2; ++k) lhs.add_wire(Diagram::at(s2, n2 + k), Diagram::out(m1 + k));
  for (int t = 0; t < j; ++t)
    lhs.add_wire(Diagram::at(s1, n1 + m1 + t), Diagram::at(s2, n2 + m2 + t));
  Diagram rhs;
  rhs.n_in = n1 + n2;
  rhs.n_out = m1 + m2;
  int s = rhs.add_node(spider, al + be, n1 + n2 + m1 + m2);
  for (int i = 0; i < n1 + n2; ++i) rhs.add_wire(Diagram::in(i), Diagram::at(s, i));
  for (int k = 0; k < m1 + m2; ++k)
    rhs.add_wire(Diagram::at(s, n1 + n2 + k), Diagram::out(k));
  return {lhs, rhs};
}

inline std::pair<Diagram, Diagram> identity_sides(Kind spider) {
  Diagram lhs = make_spider(spider, 1, 1, Angle::zero());
  Diagram rhs = make_identity(1);
  return {lhs, rhs};
}

// spider with an H on every leg vs the other-color spider
inline std::pair<Diagram, Diagram> color_sides(Kind dressed, Kind bare, const Bind& b) {
  int n = b.leg("n"), m = b.leg("m");
  Angle al = b.angle("alpha");
  Diagram lhs;
  lhs.n_in = n;
  lhs.n_out = m;
  int s = lhs.add_node(dressed, al, n + m);
  for (int i = 0; i < n; ++i) {
    int h = lhs.add_node(Kind::Hadamard);
    lhs.add_wire(Diagram::in(i), Diagram::at(h, 0));
    lhs.add_wire(Diagram::at(h, 1), Diagram::at(s, i));
  }
  for (int k = 0; k < m; ++k) {
    int h = lhs.add_node(Kind::Hadamard);
    lhs.add_wire(Diagram::at(s, n + k), Diagram::at(h, 0));
    lhs.add_wire(Diagram::at(h, 1), Diagram::out(k));
  }
  Diagram rhs = make_spider(bare, n, m, al);
  return {lhs, rhs};
}

}  // namespace rules_detail

// ---- the ZX family --------------------------------------------------------
inline std::vector<RewriteRule> zx_base_rules(bool pi_restricted) {
  using namespace rules_detail;
  using D = AngleParam::Domain;
  D free_dom = pi_restricted ? D::ZeroPi : D::Real;
  std::vector<RewriteRule> rs;

  rs.push_back(zx_rule("S1", {{"alpha", free_dom}, {"beta", free_dom}},
                       {{"n1", 0, 3}, {"m1", 0, 3}, {"n2", 0, 3}, {"m2", 0, 3}, {"j", 1, 3}},
                       [](const Bind& b) { return fusion_sides(Kind::ZSpider, b); }));
  rs.push_back(zx_rule("S1'", {{"alpha", free_dom}, {"beta", free_dom}},
                       {{"n1", 0, 3}, {"m1", 0, 3}, {"n2", 0, 3}, {"m2", 0, 3}, {"j", 1, 3}},
                       [](const Bind& b) { return fusion_sides(Kind::XSpider, b); }));
  rs.push_back(zx_rule("S2", {}, {}, [](const Bind&) { return identity_sides(Kind::ZSpider); }));
  rs.push_back(zx_rule("S2'", {}, {}, [](const Bind&) { return identity_sides(Kind::XSpider); }));
  rs.push_back(zx_rule("H", {{"alpha", free_dom}}, {{"n", 0, 3}, {"m", 0, 3}},
                       [](const Bind& b) { return color_sides(Kind::ZSpider, Kind::XSpider, b); }));
  rs.push_back(zx_rule("H'", {{"alpha", free_dom}}, {{"n", 0, 3}, {"m", 0, 3}},
                       [](const Bind& b) { return color_sides(Kind::XSpider, Kind::ZSpider, b); }));
  rs.push_back(zx_rule("IV", {}, {}, [](const Bind&) {
    return std::pair(z_dot(Angle::zero()), par(sqrt2_gadget(), sqrt2_gadget()));
  }));
  rs.push_back(zx_rule("Z", {}, {}, [](const Bind&) {
    return std::pair(par(z_dot(Angle::pi()), z_dot(Angle::zero())), z_dot(Angle::pi()));
  }));
  rs.push_back(zx_rule("B1", {{"alpha", D::ZeroPi}}, {}, [](const Bind& b) {
    Angle a = b.angle("alpha");
    return std::pair(seq(Zs(1, 2), Xs(0, 1, a)),
                     par(Xs(0, 1, a), Xs(0, 1, a), inv_sqrt2_gadget()));
  }));
  rs.push_back(zx_rule("B2", {}, {}, [](const Bind&) {
    Diagram rhs = par(sqrt2_gadget(),
                      seq(par(Xs(2, 1), Xs(2, 1)), make_perm({0, 2, 1, 3}),
                          par(Zs(1, 2), Zs(1, 2))));
    return std::pair(seq(Zs(1, 2), Xs(2, 1)), rhs);
  }));
  rs.push_back(zx_rule("T0", {}, {}, [](const Bind&) {
    return std::pair(seq(Tri(), Xs(0, 1)), Xs(0, 1));
  }));
  rs.push_back(zx_rule("HT", {}, {}, [](const Bind&) {
    return std::pair(seq(Hd(), Tri(), Hd(), Zs(0, 1)), Zs(0, 1));
  }));
  rs.push_back(zx_rule("TCX", {}, {}, [](const Bind&) {
    Diagram fork = seq(par(Tri(), Tri()), Zs(1, 2));
    return std::pair(seq(cnot_gadget(), fork), fork);
  }));
  rs.push_back(zx_rule("TW", {}, {}, [](const Bind&) {
    return std::pair(seq(par(Tri(), make_identity(1)), w12_gadget()),
                     seq(par(make_identity(1), Tri()), w12_gadget()));
  }));
  rs.push_back(zx_rule("BW", {}, {}, [](const Bind&) {
    return std::pair(seq(NOTg(), Tri()), seq(TriT(), NOTg()));
  }));
  return rs;
}

inline RewriteRule rule_K() {
  using namespace rules_detail;
  return zx_rule("K", {{"alpha", AngleParam::Domain::Real}}, {}, [](const Bind& b) {
    Angle a = b.angle("alpha");
    return std::pair(seq(NOTg(), Zs(1, 1, a)),
                     par(seq(Zs(1, 1, -a), NOTg()), phase_gadget(a),
                         inv_sqrt2_gadget(), inv_sqrt2_gadget()));
  });
}
inline RewriteRule rule_P() {
  using namespace rules_detail;
  return zx_rule("P", {{"alpha", AngleParam::Domain::Real}}, {}, [](const Bind& b) {
    Angle a = b.angle("alpha");
    Diagram pair_st = par(Zs(0, 1, a), Zs(0, 1, a));
    return std::pair(seq(sorter_block(), pair_st), pair_st);
  });
}
inline RewriteRule rule_E() {
  using namespace rules_detail;
  return zx_rule("E", {}, {}, [](const Bind&) {
    Diagram lhs = par(z_dot(Angle::pi_frac(1, 4)), z_dot(Angle::pi_frac(3, 4)),
                      z_dot(Angle::pi_frac(5, 4)), z_dot(Angle::pi_frac(7, 4)),
                      inv_sqrt2_gadget(), inv_sqrt2_gadget());
    return std::pair(lhs, make_empty());
  });
}
inline RewriteRule rule_A() {
  using namespace rules_detail;
  using D = AngleParam::Domain;
  RewriteRule r = zx_rule(
      "A",
      {{"t1", D::Real}, {"t2", D::Real}, {"t3", D::Real},
       {"alpha", D::Real}, {"beta", D::Real}, {"gamma", D::Real}},
      {},
      [](const Bind& b) {
        Angle t1 = b.angle("t1"), t2 = b.angle("t2"), t3 = b.angle("t3");
        Angle al = b.angle("alpha"), be = b.angle("beta"), ga = b.angle("gamma");
        Diagram lhs = seq(Xs(1, 0, Angle::pi()), wmerge_zx(4),
                          par(Zs(0, 1, t1 + al), Zs(0, 1, -al + t1),
                              Zs(0, 1, t2 + be), Zs(0, 1, -be + t2)));
        Diagram rhs = par(seq(Xs(1, 0, Angle::pi()), wmerge_zx(2),
                              par(Zs(0, 1, t3 + ga), Zs(0, 1, -ga + t3))),
                          z_dot(Angle::zero()));
        return std::pair(lhs, rhs);
      });
  r.verify_only = true;
  // parameters are constrained: 2 e^{i t3} cos(gamma) = e^{i t1} cos(alpha)
  //                                                   + e^{i t2} cos(beta)
  r.sample = [](std::mt19937& rng) {
    std::uniform_real_distribution<double> U(-M_PI, M_PI);
    double t1 = U(rng), t2 = U(rng), al = U(rng), be = U(rng);
    std::complex<double> S =
        std::polar(1.0, t1) * std::cos(al) + std::polar(1.0, t2) * std::cos(be);
    double t3 = std::abs(S) > 1e-12 ? std::arg(S) : 0.0;
    double ga = std::acos(std::min(std::abs(S) / 2.0, 1.0));
    Bind b;
    b.angles["t1"] = Angle::from_float(t1);
    b.angles["t2"] = Angle::from_float(t2);
    b.angles["t3"] = Angle::from_float(t3);
    b.angles["alpha"] = Angle::from_float(al);
    b.angles["beta"] = Angle::from_float(be);
    b.angles["gamma"] = Angle::from_float(ga);
    return b;
  };
  return r;
}

// ---- the ZW family --------------------------------------------------------
inline std::vector<RewriteRule> zw_base_rules() {
  using namespace rules_detail;
  std::vector<RewriteRule> rs;
  auto cross = [] { return zw_gen(Kind::Cross); };
  auto w11 = [] { return zw_gen(Kind::WhiteDot1); };
  auto b11 = [] { return zw_gen(Kind::BlackDot1); };
  auto w21 = [] { return zw_gen(Kind::WhiteDot2); };
  auto w12 = [] { return transpose(zw_gen(Kind::WhiteDot2)); };
  auto b12 = [] { return zw_gen(Kind::BlackDot2); };
  auto id1 = [] { return zw_id(1); };
  auto csplit = [&] { return seq(b12(), b11()); };
  auto sw = [] { return make_swap(Calculus::ZW); };

  rs.push_back(zw_rule("X", [=](const Bind&) {
    return std::pair(seq(cross(), cross()), zw_id(2));
  }));
  rs.push_back(zw_rule("0a", [=](const Bind&) {
    return std::pair(seq(sw(), sw()), zw_id(2));
  }));
  rs.push_back(zw_rule("0b", [=](const Bind&) {
    return std::pair(seq(par(w11(), id1()), cross()), seq(cross(), par(id1(), w11())));
  }));
  rs.push_back(zw_rule("0b'", [=](const Bind&) {
    return std::pair(seq(par(id1(), w11()), cross()), seq(cross(), par(w11(), id1())));
  }));
  rs.push_back(zw_rule("0c", [=](const Bind&) {
    return std::pair(seq(make_cup(Calculus::ZW), sw()), make_cup(Calculus::ZW));
  }));
  rs.push_back(zw_rule("0d", [=](const Bind&) {
    return std::pair(seq(make_cup(Calculus::ZW), cross()),
                     seq(make_cup(Calculus::ZW), par(w11(), id1())));
  }));
  rs.push_back(zw_rule("0d'", [=](const Bind&) {
    return std::pair(seq(make_cup(Calculus::ZW), cross()),
                     seq(make_cup(Calculus::ZW), par(id1(), w11())));
  }));
  rs.push_back(zw_rule("1a", [=](const Bind&) {
    return std::pair(seq(w21(), par(w11(), id1())), seq(w21(), par(id1(), w11())));
  }));
  rs.push_back(zw_rule("1b", [=](const Bind&) {
    return std::pair(seq(w21(), par(wst_state(), id1())), zw_id(1));
  }));
  rs.push_back(zw_rule("1c", [=](const Bind&) {
    return std::pair(seq(w21(), par(w21(), id1())), seq(w21(), par(id1(), w21())));
  }));
  rs.push_back(zw_rule("1d", [=](const Bind&) {
    return std::pair(seq(par(w12(), id1()), w12()), seq(par(id1(), w12()), w12()));
  }));
  rs.push_back(zw_rule("2a", [=](const Bind&) {
    return std::pair(seq(par(csplit(), id1()), csplit()), seq(par(id1(), csplit()), csplit()));
  }));
  rs.push_back(zw_rule("2b", [=](const Bind&) {
    return std::pair(seq(sw(), b12()), b12());
  }));
  rs.push_back(zw_rule("3a", [=](const Bind&) {
    return std::pair(par(zw_minus_one(), seq(w11(), b11())), seq(b11(), w11()));
  }));
  rs.push_back(zw_rule("3b", [=](const Bind&) {
    return std::pair(seq(w21(), par(b11(), b11())), par(zw_minus_one(), seq(b11(), w21())));
  }));
  rs.push_back(zw_rule("4", [=](const Bind&) {
    Diagram lhs = seq(par(w21(), w21()), make_perm({0, 2, 1, 3}, Calculus::ZW),
                      par(csplit(), csplit()));
    return std::pair(lhs, seq(csplit(), w21()));
  }));
  rs.push_back(zw_rule("5a", [=](const Bind&) {
    return std::pair(seq(cross(), par(id1(), b11()), cross()), par(b11(), w11()));
  }));
  rs.push_back(zw_rule("5b", [=](const Bind&) {
    return std::pair(seq(par(seq(beff_effect(), b11()), id1()), csplit()), zw_id(1));
  }));
  rs.push_back(zw_rule("5c", [=](const Bind&) {
    return std::pair(seq(make_cup(Calculus::ZW), make_cap(Calculus::ZW)),
                     seq(weff_effect(), wst_state()));
  }));
  rs.push_back(zw_rule("5d", [=](const Bind&) {
    return std::pair(seq(make_cup(Calculus::ZW), par(b11(), id1()), make_cap(Calculus::ZW)),
                     zw_zero());
  }));
  rs.push_back(zw_rule("6a", [=](const Bind&) {
    // |x> -> (w11 x id)(|x> x |1>)
    Diagram rhs = seq(par(w11(), id1()), par(id1(), bst_state()));
    return std::pair(seq(cross(), par(bst_state(), id1())), rhs);
  }));
  rs.push_back(zw_rule("6b", [=](const Bind&) {
    return std::pair(seq(w12(), bst_state()),
                     par(zw_minus_one(), bst_state(), bst_state()));
  }));
  rs.push_back(zw_rule("6c", [=](const Bind&) {
    return std::pair(seq(w21(), par(bst_state(), id1())),
                     par(zw_minus_one(), seq(bst_state(), beff_effect())));
  }));
  rs.push_back(zw_rule("7a", [=](const Bind&) {
    return std::pair(seq(par(w11(), w11()), cross()), seq(cross(), par(w11(), w11())));
  }));
  rs.push_back(zw_rule("7b", [=](const Bind&) {
    return std::pair(seq(sw(), cross()), seq(cross(), sw()));
  }));
  rs.push_back(zw_rule("R2", [=](const Bind&) {
    Diagram lhs = seq(par(sw(), id1()), par(id1(), cross()), par(cross(), id1()));
    Diagram rhs = seq(par(id1(), cross()), par(cross(), id1()), par(id1(), sw()));
    return std::pair(lhs, rhs);
  }));
  rs.push_back(zw_rule("R3", [=](const Bind&) {
    Diagram lhs = seq(par(cross(), id1()), par(id1(), cross()), par(cross(), id1()));
    Diagram rhs = seq(par(id1(), cross()), par(cross(), id1()), par(id1(), cross()));
    return std::pair(lhs, rhs);
  }));
  return rs;
}

inline RewriteRule rule_iv() {
  using namespace rules_detail;
  return zw_rule("iv", [](const Bind&) {
    return std::pair(par(zw_gen(Kind::Star), zw_gen(Kind::Star), zw_circle()),
                     make_empty(Calculus::ZW));
  });
}
inline RewriteRule rule_z() {
  using namespace rules_detail;
  return zw_rule("z", [](const Bind&) {
    return std::pair(par(zw_zero(), zw_gen(Kind::Star)), zw_zero());
  });
}

// ---- shipped rule sets ----------------------------------------------------
inline std::vector<std::string> ruleset_names() {
  return {"dzx_pi", "dzx", "dzx_kp", "dzx_kpe", "dzx_akpe", "zw", "zw_half"};
}

inline RuleSet make_ruleset(const std::string& name) {
  RuleSet rs;
  rs.name = name;
  if (name == "dzx_pi") {
    rs.rules = zx_base_rules(true);
  } else if (name == "dzx") {
    rs.rules = zx_base_rules(false);
  } else if (name == "dzx_kp") {
    rs.rules = zx_base_rules(false);
    rs.rules.push_back(rule_K());
    rs.rules.push_back(rule_P());
  } else if (name == "dzx_kpe" || name == "dzx_akpe") {
    for (auto& r : zx_base_rules(false))
      if (r.name != "IV" && r.name != "Z") rs.rules.push_back(r);
    rs.rules.push_back(rule_K());
    rs.rules.push_back(rule_P());
    rs.rules.push_back(rule_E());
    if (name == "dzx_akpe") rs.rules.push_back(rule_A());
  } else if (name == "zw") {
    rs.rules = zw_base_rules();
  } else if (name == "zw_half") {
    rs.rules = zw_base_rules();
    rs.rules.push_back(rule_iv());
    rs.rules.push_back(rule_z());
  } else {
    throw std::runtime_error("unknown ruleset: " + name);
  }
  return rs;
}

// ---- mutation helpers (for self-test of the soundness gate) ----------------
inline RewriteRule corrupt_rule_angle(const RewriteRule& base, bool on_rhs, int node_index,
                                      Angle delta) {
  RewriteRule r = base;
  r.name = base.name + "~angle";
  auto inner = base.build;
  r.build = [=](const Bind& b) {
    auto sides = inner(b);
    Diagram& d = on_rhs ? sides.second : sides.first;
    if (node_index < int(d.nodes.size()))
      d.nodes[node_index].angle = d.nodes[node_index].angle + delta;
    return sides;
  };
  return r;
}
inline RewriteRule corrupt_rule_kind(const RewriteRule& base, bool on_rhs, int node_index,
                                     Kind new_kind) {
  RewriteRule r = base;
  r.name = base.name + "~kind";
  auto inner = base.build;
  r.build = [=](const Bind& b) {
    auto sides = inner(b);
    Diagram& d = on_rhs ? sides.second : sides.first;
    if (node_index < int(d.nodes.size()) &&
        (kind_fixed_ports(new_kind) == d.nodes[node_index].ports ||
         kind_fixed_ports(new_kind) < 0 /* spiders absorb any arity */))
      d.nodes[node_index].kind = new_kind;
    return sides;
  };
  return r;
}

}  // namespace dzx
