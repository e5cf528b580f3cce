#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace dzx;
using namespace dzx::testutil;

namespace {
Matrix<CycloScalar> exact2x2(std::initializer_list<CycloScalar> v) {
  Matrix<CycloScalar> M(2, 2);
  auto it = v.begin();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) M.at(r, c) = *it++;
  return M;
}
}  // namespace

TEST_CASE("generator matrices are exact") {
  const CycloScalar o = CycloScalar::one(), z = CycloScalar::zero();
  CHECK(matrices_equal(interpret_exact(Tri()), exact2x2({o, o, z, o})).equal);
  CHECK(matrices_equal(interpret_exact(TriT()), exact2x2({o, z, o, o})).equal);
  const CycloScalar h = CycloScalar::inv_sqrt2();
  CHECK(matrices_equal(interpret_exact(Hd()), exact2x2({h, h, h, -h})).equal);

  auto C = interpret_exact(zw_gen(Kind::Cross));
  Matrix<CycloScalar> want(4, 4);
  want.at(0, 0) = o;
  want.at(1, 2) = o;
  want.at(2, 1) = o;
  want.at(3, 3) = -o;  // fermionic sign on |11>
  CHECK(matrices_equal(C, want).equal);

  auto S = interpret_exact(zw_gen(Kind::Star));
  CHECK(S.rows == 1);
  CHECK(S.cols == 1);
  CHECK(S.at(0, 0) == CycloScalar::inv_sqrt2());

  auto W2 = interpret_exact(zw_gen(Kind::WhiteDot2));
  CHECK(W2.at(0, 0) == o);
  CHECK(W2.at(1, 3) == -o);
  auto B2 = interpret_exact(zw_gen(Kind::BlackDot2));
  CHECK(B2.at(1, 0) == o);
  CHECK(B2.at(2, 0) == o);
  CHECK(B2.at(0, 1) == o);
  CHECK(B2.at(3, 1) == z);
}

TEST_CASE("0-legged spider evaluates to 1 + e^{i alpha}") {
  for (int s = 0; s < 8; ++s) {
    Angle a = Angle::pi_frac(s, 4);
    auto M = interpret_exact(z_dot(a));
    CHECK(M.at(0, 0) == CycloScalar::one() + CycloScalar::from_phase(a));
    auto X = interpret_exact(make_spider(Kind::XSpider, 0, 0, a));
    CHECK(X.at(0, 0) == CycloScalar::one() + CycloScalar::from_phase(a));
  }
}

TEST_CASE("functoriality holds on 500 random composition pairs") {
  std::mt19937 rng(31);
  int done = 0;
  while (done < 500) {
    Calculus cal = (rng() & 1) ? Calculus::ZX : Calculus::ZW;
    Diagram d1 = random_diagram(rng, cal, 4, 3);
    Diagram d2 = random_diagram(rng, cal, 4, 3);
    if (d2.n_in == d1.n_out) {
      CHECK(close(interpret_float(seq(d2, d1)),
                  matmul(interpret_float(d2), interpret_float(d1))));
      ++done;
    } else {
      CHECK(close(interpret_float(par(d1, d2)),
                  kron(interpret_float(d1), interpret_float(d2))));
      ++done;
    }
  }
}

TEST_CASE("topology invariance: yanking via snake composition, 500 cases") {
  std::mt19937 rng(32);
  for (int i = 0; i < 500; ++i) {
    Calculus cal = (rng() & 1) ? Calculus::ZX : Calculus::ZW;
    // the snake itself yanks straight: (cup x id) . (id x cap) = id
    Diagram snake =
        seq(par(make_cup(cal), make_identity(1, cal)), par(make_identity(1, cal), make_cap(cal)));
    CHECK(close(interpret_float(snake), interpret_float(make_identity(1, cal))));
    // bending all inputs through cups vectorizes the matrix: the bent wire
    // carries a plain delta, i.e. it can be pulled straight
    Diagram d = random_diagram(rng, cal, 5, 2);
    auto M = interpret_float(d);
    auto V = interpret_float(bend_inputs(d));
    REQUIRE(V.rows == M.rows * M.cols);
    for (int x = 0; x < M.cols; ++x)
      for (int y = 0; y < M.rows; ++y)
        CHECK(std::abs(V.at(x * M.rows + y, 0) - M.at(y, x)) <= 1e-9);
    // and wrapping a 1->1 diagram in snakes is the identity transformation
    if (d.n_in == 1 && d.n_out == 1)
      CHECK(close(interpret_float(seq(snake, d, snake)), M));
  }
}

TEST_CASE("color-swap covariance: swap(D) = H^m . D . H^n, 500 cases") {
  std::mt19937 rng(33);
  for (int i = 0; i < 500; ++i) {
    Diagram d = random_diagram(rng, Calculus::ZX, 5, 3);
    Diagram hs_in = make_identity(d.n_in);
    for (int j = 0; j < d.n_in; ++j)
      hs_in = seq(par(make_identity(j), Hd(), make_identity(d.n_in - j - 1)), hs_in);
    Diagram hs_out = make_identity(d.n_out);
    for (int j = 0; j < d.n_out; ++j)
      hs_out = seq(par(make_identity(j), Hd(), make_identity(d.n_out - j - 1)), hs_out);
    CHECK(close(interpret_float(color_swap(d)), interpret_float(seq(hs_out, d, hs_in))));
  }
}

TEST_CASE("exact and float interpretation agree to 1e-10, 500 cases") {
  std::mt19937 rng(34);
  for (int i = 0; i < 500; ++i) {
    Calculus cal = (rng() & 1) ? Calculus::ZX : Calculus::ZW;
    Diagram d = random_diagram(rng, cal, 6, 3);
    auto E = interpret_exact(d);
    auto F = interpret_float(d);
    REQUIRE(E.rows == F.rows);
    REQUIRE(E.cols == F.cols);
    double scale = 0;
    for (auto& v : F.data) scale = std::max(scale, std::abs(v));
    for (size_t t = 0; t < F.data.size(); ++t)
      CHECK(std::abs(E.data[t].to_complex() - F.data[t]) <= 1e-10 * std::max(1.0, scale));
  }
}

TEST_CASE("self-loops trace out correctly") {
  // spider leg connected to itself: Z(1,1,a) with a self-loop still acts as Z(1,1,a)*2^0
  Diagram d;
  int s = d.add_node(Kind::ZSpider, Angle::pi_frac(1, 4), 4);
  d.n_in = d.n_out = 1;
  d.add_wire(Diagram::in(0), Diagram::at(s, 0));
  d.add_wire(Diagram::at(s, 1), Diagram::out(0));
  d.add_wire(Diagram::at(s, 2), Diagram::at(s, 3));
  auto M = interpret_exact(d);
  CHECK(M.at(0, 0) == CycloScalar::one());
  CHECK(M.at(1, 1) == CycloScalar::from_phase(Angle::pi_frac(1, 4)));
  CHECK(M.at(0, 1) == CycloScalar::zero());

  // closed triangle loop has trace 2
  Diagram loop;
  int t = loop.add_node(Kind::Triangle);
  loop.add_wire(Diagram::at(t, 0), Diagram::at(t, 1));
  CHECK(interpret_exact(loop).at(0, 0) == CycloScalar::from_int(2));
}

TEST_CASE("dimension overflow raises instead of overflowing") {
  Diagram wide = make_identity(13);  // 13+13 boundary legs > rank cap
  CHECK_THROWS_AS(interpret_exact(wide), DimensionOverflow);
}
