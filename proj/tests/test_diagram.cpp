#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace dzx;
using namespace dzx::testutil;

TEST_CASE("validation catches malformed diagrams") {
  Diagram d = make_identity(1);
  CHECK(d.validate().empty());
  d.n_in = 2;  // input slot 1 now dangles
  CHECK(!d.validate().empty());

  Diagram e;
  e.add_node(Kind::Hadamard);
  CHECK(!e.validate().empty());  // unwired ports
  e.add_wire(Diagram::at(0, 0), Diagram::at(0, 1));
  CHECK(e.validate().empty());  // self-loop is fine

  Diagram f;
  f.calculus = Calculus::ZX;
  CHECK_THROWS_AS(f.add_node(Kind::ZSpider, Angle::zero(), -1), DiagramError);
}

TEST_CASE("composition arity checks") {
  CHECK_THROWS_AS(sequential_compose(Hd(), Zs(1, 2)), DiagramError);  // 2 outs into 1 in
  Diagram zw = make_identity(1, Calculus::ZW);
  CHECK_THROWS_AS(sequential_compose(zw, Hd()), DiagramError);  // calculus mismatch
}

TEST_CASE("sequential composition matches matrix product on random diagrams") {
  std::mt19937 rng(21);
  int done = 0;
  while (done < 50) {
    Diagram d1 = random_diagram(rng, Calculus::ZX, 5, 3);
    Diagram d2 = random_diagram(rng, Calculus::ZX, 5, 3);
    if (d2.n_in != d1.n_out) continue;
    ++done;
    auto lhs = interpret_float(seq(d2, d1));
    auto rhs = matmul(interpret_float(d2), interpret_float(d1));
    CHECK(close(lhs, rhs));
  }
}

TEST_CASE("parallel composition matches Kronecker product, slot 0 leftmost") {
  std::mt19937 rng(22);
  for (int i = 0; i < 50; ++i) {
    Diagram d1 = random_diagram(rng, Calculus::ZX, 4, 2);
    Diagram d2 = random_diagram(rng, Calculus::ZX, 4, 2);
    auto lhs = interpret_float(par(d1, d2));
    auto rhs = kron(interpret_float(d1), interpret_float(d2));
    CHECK(close(lhs, rhs));
  }
}

TEST_CASE("structural generators are node-free") {
  for (Calculus cal : {Calculus::ZX, Calculus::ZW}) {
    CHECK(make_identity(2, cal).nodes.empty());
    CHECK(make_swap(cal).nodes.empty());
    CHECK(make_cup(cal).nodes.empty());
    CHECK(make_cap(cal).nodes.empty());
    CHECK(make_empty(cal).nodes.empty());
  }
}

TEST_CASE("isomorphism: relabeled copies are isomorphic, distinct diagrams are not") {
  std::mt19937 rng(23);
  for (int i = 0; i < 50; ++i) {
    Diagram d = random_diagram(rng, Calculus::ZX, 6, 3);
    // rebuild with node order reversed
    Diagram r;
    r.calculus = d.calculus;
    r.n_in = d.n_in;
    r.n_out = d.n_out;
    int n = int(d.nodes.size());
    for (int j = n - 1; j >= 0; --j) r.nodes.push_back(d.nodes[j]);
    auto remap = [&](PortRef p) {
      if (!p.is_boundary()) p.node = n - 1 - p.node;
      return p;
    };
    for (auto w : d.wires) r.add_wire(remap(w.a), remap(w.b));
    CHECK(isomorphic(d, r));
  }
  CHECK(!isomorphic(Zs(1, 1), Xs(1, 1)));
  CHECK(!isomorphic(Zs(1, 1), Zs(1, 1, Angle::pi())));
  CHECK(!isomorphic(Tri(), TriT()));  // triangle orientation matters
  CHECK(isomorphic(Hd(), transpose(Hd())));
}

TEST_CASE("snake composition yanks to the identity wire") {
  Diagram snake = seq(par(make_cup(), make_identity(1)), par(make_identity(1), make_cap()));
  CHECK(snake.nodes.empty());
  CHECK(snake.n_in == 1);
  CHECK(snake.n_out == 1);
  auto M = interpret_exact(snake);
  CHECK(matrices_equal(M, interpret_exact(make_identity(1))).equal);
}

TEST_CASE("color swap exchanges spider colors and preserves boundary") {
  Diagram d = seq(par(Tri(), Hd()), cnot_gadget(), par(Xs(1, 1, Angle::pi()), make_identity(1)));
  Diagram s = color_swap(d);
  CHECK(s.n_in == d.n_in);
  CHECK(s.n_out == d.n_out);
  int z_before = 0, x_after = 0;
  for (auto& n : d.nodes) z_before += n.kind == Kind::ZSpider;
  for (auto& n : s.nodes) x_after += n.kind == Kind::XSpider;
  CHECK(x_after >= z_before);  // every Z became an X (triangles add H dressing)
}
