#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace dzx;
using namespace dzx::testutil;

namespace {
Diagram Id1() { return make_identity(1); }
Diagram anti_cnot() {
  return seq(par(NOTg(), Id1()), cnot_gadget(), par(NOTg(), Id1()));
}
bool exact_eq(const Diagram& a, const Diagram& b) { return check_equal<CycloScalar>(a, b).equal; }
bool float_eq(const Diagram& a, const Diagram& b) {
  return check_equal<ApproxScalar>(a, b, 1e-9).equal;
}
}  // namespace

TEST_CASE("derived equation corpus holds exactly") {
  // two dot = sqrt2 squared
  CHECK(exact_eq(z_dot(Angle::zero()), par(sqrt2_gadget(), sqrt2_gadget())));
  // hopf law with scalar correction
  CHECK(exact_eq(seq(Xs(2, 1), Zs(1, 2)),
                 par(seq(Xs(0, 1), Zs(1, 0)), inv_sqrt2_gadget(), inv_sqrt2_gadget())));
  // hadamard involution
  CHECK(exact_eq(seq(Hd(), Hd()), Id1()));
  // NOT fixes the zero-phase z state
  CHECK(exact_eq(seq(NOTg(), Zs(0, 1)), Zs(0, 1)));
  // transposed triangle on the x state
  CHECK(exact_eq(seq(TriT(), Xs(0, 1)), par(sqrt2_gadget(), Zs(0, 1))));
  // parallel triangles fuse through spiders
  CHECK(exact_eq(seq(Zs(2, 1), par(Tri(), Tri()), Zs(1, 2)), Tri()));
  // NOT conjugation transposes the triangle
  CHECK(exact_eq(seq(NOTg(), Tri(), NOTg()), TriT()));
  // triangle absorbs the pi x state into a z state
  CHECK(exact_eq(seq(Tri(), Xs(0, 1, Angle::pi())), par(sqrt2_gadget(), Zs(0, 1))));
  // hadamard self-loop on a spider leaves a pi phase and 1/sqrt2
  {
    Diagram d;
    int z = d.add_node(Kind::ZSpider, Angle::zero(), 4);
    int h = d.add_node(Kind::Hadamard);
    d.n_in = d.n_out = 1;
    d.add_wire(Diagram::in(0), Diagram::at(z, 0));
    d.add_wire(Diagram::at(z, 1), Diagram::out(0));
    d.add_wire(Diagram::at(z, 2), Diagram::at(h, 0));
    d.add_wire(Diagram::at(h, 1), Diagram::at(z, 3));
    CHECK(exact_eq(d, par(Zs(1, 1, Angle::pi()), inv_sqrt2_gadget())));
  }
  // transposed triangle fixes the pi x state
  CHECK(exact_eq(seq(TriT(), Xs(0, 1, Angle::pi())), Xs(0, 1, Angle::pi())));
  // transposed triangle sends the minus state to a scaled plus state
  CHECK(exact_eq(seq(TriT(), Zs(0, 1, Angle::pi())), par(inv_sqrt2_gadget(), Xs(0, 1))));
  // looped triangle has trace two
  {
    Diagram loop;
    int t = loop.add_node(Kind::Triangle);
    loop.add_wire(Diagram::at(t, 0), Diagram::at(t, 1));
    CHECK(exact_eq(loop, z_dot(Angle::zero())));
  }
  // the W branch gadget has symmetric outputs
  CHECK(exact_eq(seq(make_swap(), w12_gadget()), w12_gadget()));
  // triangle-after-NOT loop traces to one
  {
    Diagram loop;
    int t = loop.add_node(Kind::Triangle);
    int x = loop.add_node(Kind::XSpider, Angle::pi(), 2);
    loop.add_wire(Diagram::at(x, 1), Diagram::at(t, 0));
    loop.add_wire(Diagram::at(t, 1), Diagram::at(x, 0));
    CHECK(exact_eq(loop, make_empty()));
  }
  // pi-conjugated triangle inverts the triangle
  CHECK(exact_eq(seq(Zs(1, 1, Angle::pi()), Tri(), Zs(1, 1, Angle::pi()), Tri()), Id1()));
  // hadamard-conjugated triangle on the minus state
  CHECK(exact_eq(seq(Hd(), Tri(), Hd(), Zs(0, 1, Angle::pi())),
                 par(sqrt2_gadget(), Xs(0, 1))));
  // doubling map and its NOT conjugate compose to twice the identity
  {
    Diagram ctrl2 = seq(bmul_zx(), csplit_zx());
    CHECK(exact_eq(seq(ctrl2, NOTg(), ctrl2, NOTg()), par(Id1(), z_dot(Angle::zero()))));
  }
  // parallel hadamard-dressed triangles fuse through spiders
  {
    Diagram g3 = seq(Hd(), Tri(), Hd());
    CHECK(exact_eq(seq(Xs(2, 1), par(g3, g3), Xs(1, 2)), g3));
  }
  // transposed triangle slides across the W merge
  CHECK(exact_eq(seq(w21_gadget(), par(TriT(), Id1())),
                 seq(w21_gadget(), par(Id1(), TriT()))));
  // controlled-NOT fixes the transposed-triangle fork
  {
    Diagram forkT = seq(Zs(2, 1), par(TriT(), TriT()));
    CHECK(exact_eq(seq(forkT, cnot_gadget()), forkT));
  }
  // W merge with a pi x state on one arm
  CHECK(exact_eq(seq(w21_gadget(), par(Xs(0, 1, Angle::pi()), Id1())),
                 par(inv_sqrt2_gadget(), seq(Xs(0, 1), Xs(1, 0)))));
  // CZ commutes with the anti-controlled NOT
  CHECK(exact_eq(seq(cz_gadget(), anti_cnot()), seq(anti_cnot(), cz_gadget())));
}

TEST_CASE("phase-carrying equations hold at random float angles") {
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> U(-M_PI, M_PI);
  for (int i = 0; i < 25; ++i) {
    double al = U(rng), be = U(rng);
    Angle a = Angle::from_float(al), b = Angle::from_float(be);
    // phase on a pi x state extracts as a global phase
    CHECK(float_eq(seq(Zs(1, 1, a), Xs(0, 1, Angle::pi())),
                   par(Xs(0, 1, Angle::pi()), phase_gadget(a), inv_sqrt2_gadget(),
                       inv_sqrt2_gadget())));
    // global phase gadgets multiply
    CHECK(float_eq(par(phase_gadget(a), phase_gadget(b)),
                   par(phase_gadget(Angle::from_float(al + be)), z_dot(Angle::zero()))));
  }
}

TEST_CASE("supplementarity at 25 random float angles") {
  std::mt19937 rng(62);
  std::uniform_real_distribution<double> U(-M_PI, M_PI);
  for (int i = 0; i < 25; ++i) {
    double al = U(rng);
    Diagram lhs = seq(Xs(2, 1), par(Zs(1, 1, Angle::from_float(al)),
                                    Zs(1, 1, Angle::from_float(al) + Angle::pi())),
                      Xs(1, 2));
    Diagram rhs = par(seq(Xs(0, 1), Xs(1, 0)), z_dot(Angle::from_float(2 * al + M_PI)),
                      inv_sqrt2_gadget(), inv_sqrt2_gadget(), inv_sqrt2_gadget(),
                      inv_sqrt2_gadget());
    CHECK(float_eq(lhs, rhs));
  }
}

TEST_CASE("phases on the anti-control commute with the anti-controlled NOT") {
  std::mt19937 rng(63);
  std::uniform_real_distribution<double> U(-M_PI, M_PI);
  for (int i = 0; i < 25; ++i) {
    Angle a = Angle::from_float(U(rng));
    Diagram phase_first = seq(par(Zs(1, 1, a), Id1()), anti_cnot());
    Diagram phase_last = seq(anti_cnot(), par(Zs(1, 1, a), Id1()));
    CHECK(float_eq(phase_first, phase_last));
  }
}

namespace {
template <class Pred>
int pick_match(const RewriteRule& r, Dir dir, const Diagram& cur, Pred pred) {
  auto ms = find_matches(r, dir, cur);
  for (size_t k = 0; k < ms.size(); ++k) {
    try {
      if (pred(apply(r, dir, cur, ms[k]))) return int(k);
    } catch (const RewriteError&) {
    }
  }
  return -1;
}
}  // namespace

TEST_CASE("proof scripts replay: dot splitting, involution, triangle transpose") {
  auto rs = make_ruleset("dzx");

  // script 1: the 2-valued dot splits into two sqrt2 gadgets in one step
  {
    Derivation d;
    d.ruleset = "dzx";
    d.start = z_dot(Angle::zero());
    d.end = par(sqrt2_gadget(), sqrt2_gadget());
    d.steps.push_back({"IV", Dir::LR, 0, {}});
    auto rep = replay_derivation(d, rs);
    INFO(rep.reason);
    CHECK(rep.ok);
  }

  // script 2: H.H rewrites to the bare wire
  {
    Diagram start = seq(Hd(), Hd());
    Derivation d;
    d.ruleset = "dzx";
    d.start = start;
    d.end = Id1();
    Diagram cur = start;
    int k1 = pick_match(*rs.find("S2'"), Dir::RL, cur, [&](const Diagram& n) {
      return n.nodes.size() == 3 &&
             find_matches(*rs.find("H'"), Dir::LR, n, {}, 1).size() == 1;
    });
    REQUIRE(k1 >= 0);
    d.steps.push_back({"S2'", Dir::RL, k1, {}});
    cur = apply(*rs.find("S2'"), Dir::RL, cur, find_matches(*rs.find("S2'"), Dir::RL, cur)[k1]);
    int k2 = pick_match(*rs.find("H'"), Dir::LR, cur,
                        [&](const Diagram& n) { return n.nodes.size() == 1; });
    REQUIRE(k2 >= 0);
    d.steps.push_back({"H'", Dir::LR, k2, {}});
    cur = apply(*rs.find("H'"), Dir::LR, cur, find_matches(*rs.find("H'"), Dir::LR, cur)[k2]);
    int k3 = pick_match(*rs.find("S2"), Dir::LR, cur,
                        [&](const Diagram& n) { return n.nodes.empty(); });
    REQUIRE(k3 >= 0);
    d.steps.push_back({"S2", Dir::LR, k3, {}});
    auto rep = replay_derivation(d, rs);
    INFO(rep.reason);
    CHECK(rep.ok);
  }

  // script 3: NOT.triangle.NOT rewrites to the transposed triangle
  {
    Diagram start = seq(NOTg(), Tri(), NOTg());
    Diagram goal = TriT();
    Derivation d;
    d.ruleset = "dzx";
    d.start = start;
    d.end = goal;
    Diagram cur = start;
    int k1 = pick_match(*rs.find("BW"), Dir::LR, cur,
                        [&](const Diagram& n) { return check_equal<CycloScalar>(n, cur).equal; });
    REQUIRE(k1 >= 0);
    d.steps.push_back({"BW", Dir::LR, k1, {}});
    cur = apply(*rs.find("BW"), Dir::LR, cur, find_matches(*rs.find("BW"), Dir::LR, cur)[k1]);
    int k2 = pick_match(*rs.find("S1'"), Dir::LR, cur, [&](const Diagram& n) {
      return n.nodes.size() + 1 == cur.nodes.size() && check_equal<CycloScalar>(n, cur).equal;
    });
    REQUIRE(k2 >= 0);
    d.steps.push_back({"S1'", Dir::LR, k2, {}});
    cur = apply(*rs.find("S1'"), Dir::LR, cur, find_matches(*rs.find("S1'"), Dir::LR, cur)[k2]);
    int k3 = pick_match(*rs.find("S2'"), Dir::LR, cur,
                        [&](const Diagram& n) { return isomorphic(n, goal); });
    REQUIRE(k3 >= 0);
    d.steps.push_back({"S2'", Dir::LR, k3, {}});
    auto rep = replay_derivation(d, rs);
    INFO(rep.reason);
    CHECK(rep.ok);
  }
}
