#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dzx/diagram.hpp"  // angles_equal lives with the diagram layer

using namespace dzx;

namespace {
CycloScalar rand_scalar(std::mt19937& rng) {
  auto r = [&] { return long(rng() % 21) - 10; };
  return CycloScalar(r(), r(), r(), r(), unsigned(rng() % 5));
}
bool approx(std::complex<double> a, std::complex<double> b, double tol = 1e-9) {
  return std::abs(a - b) <= tol;
}
}  // namespace

TEST_CASE("ring axioms on random elements") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    CycloScalar x = rand_scalar(rng), y = rand_scalar(rng), z = rand_scalar(rng);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x + CycloScalar::zero() == x);
    CHECK(x * CycloScalar::one() == x);
    CHECK(x + (-x) == CycloScalar::zero());
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937 rng(12);
  for (int i = 0; i < 200; ++i) {
    CycloScalar x = rand_scalar(rng), y = rand_scalar(rng);
    CHECK(approx((x + y).to_complex(), x.to_complex() + y.to_complex()));
    CHECK(approx((x * y).to_complex(), x.to_complex() * y.to_complex()));
    CHECK(approx(x.conj().to_complex(), std::conj(x.to_complex())));
  }
}

TEST_CASE("normalization is canonical and idempotent") {
  // equal values must have equal representations after construction
  CHECK(CycloScalar(2, 0, 0, 0, 2) == CycloScalar::one());
  CHECK(CycloScalar(0, 1, 0, -1, 1) == CycloScalar::one());  // (w - w^3)/sqrt2 = 1
  CHECK(CycloScalar(0, 1, 0, -1, 0) == CycloScalar::sqrt2());
  CHECK(CycloScalar(0, 2, 0, -2, 1) == CycloScalar(2, 0, 0, 0, 0));  // sqrt2*sqrt2 = 2
  CHECK(CycloScalar::zero().k == 0u);
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    CycloScalar x = rand_scalar(rng);
    CycloScalar y = x;
    y.normalize();
    CHECK(x == y);
    if (!x.is_zero() && x.k > 0) CHECK(!x.numerator_divisible_by_sqrt2());
  }
}

TEST_CASE("eighth-root phases multiply exhaustively") {
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      CycloScalar wi = CycloScalar::from_phase(Angle::pi_frac(i, 4));
      CycloScalar wj = CycloScalar::from_phase(Angle::pi_frac(j, 4));
      CycloScalar wij = CycloScalar::from_phase(Angle::pi_frac((i + j) % 8, 4));
      CHECK(wi * wj == wij);
      CHECK(approx(wi.to_complex(), std::polar(1.0, i * M_PI / 4)));
    }
}

TEST_CASE("named constants") {
  CHECK(approx(CycloScalar::sqrt2().to_complex(), std::sqrt(2.0)));
  CHECK(approx(CycloScalar::inv_sqrt2().to_complex(), 1.0 / std::sqrt(2.0)));
  CHECK(CycloScalar::sqrt2() * CycloScalar::inv_sqrt2() == CycloScalar::one());
  // (1+w)/sqrt2 has squared modulus (2+sqrt2)/2
  CycloScalar s(1, 1, 0, 0, 1);
  CHECK(approx((s * s.conj()).to_complex(), (2.0 + std::sqrt(2.0)) / 2.0));
}

TEST_CASE("angles: arithmetic, reduction, instantiation") {
  CHECK(Angle::pi_frac(9, 4) == Angle::pi_frac(1, 4));       // reduced mod 2pi
  CHECK(Angle::pi_frac(-1, 4) == Angle::pi_frac(7, 4));
  CHECK(Angle::pi() + Angle::pi() == Angle::zero());
  CHECK(-Angle::pi_frac(1, 2) == Angle::pi_frac(3, 2));
  CHECK(Angle::pi_frac(1, 3) * 3 == Angle::pi());
  CHECK(angles_equal(Angle::from_float(M_PI / 4), Angle::pi_frac(1, 4), 1e-9));

  Angle lin = Angle::var("a") + Angle::pi_frac(1, 2);
  CHECK(lin.is_linear());
  std::map<std::string, Angle> bind{{"a", Angle::pi_frac(1, 2)}};
  CHECK(lin.instantiate(bind) == Angle::pi());
  CHECK_THROWS_AS((Angle::var("b").instantiate(bind)), NotExactAngle);
  Angle cancelled = Angle::var("a") + Angle::var("a", -1);
  CHECK(!cancelled.is_linear());  // coefficients cancel to a constant
}
