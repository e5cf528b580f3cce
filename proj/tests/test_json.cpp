#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dzx/json_io.hpp>

#include "test_util.hpp"

using namespace dzx;
using namespace dzx::testutil;

TEST_CASE("diagram json round trip preserves structure, 100 random diagrams") {
  std::mt19937 rng(71);
  for (int i = 0; i < 100; ++i) {
    Calculus cal = (rng() & 1) ? Calculus::ZX : Calculus::ZW;
    Diagram d = random_diagram(rng, cal, 8, 3);
    Diagram back = diagram_from_json(diagram_to_json(d));
    CHECK(back.validate().empty());
    CHECK(isomorphic(d, back));
    CHECK(check_equal<CycloScalar>(d, back).equal);
    // text round trip too
    Diagram back2 = diagram_from_json(json::parse(diagram_to_json(d).dump()));
    CHECK(isomorphic(d, back2));
  }
}

TEST_CASE("angle json forms round trip") {
  for (const Angle& a :
       {Angle::zero(), Angle::pi(), Angle::pi_frac(3, 4), Angle::pi_frac(-1, 4),
        Angle::from_float(1.2345), Angle::var("alpha"),
        Angle::var("beta", -1, ExactPi(1, 2))}) {
    Angle b = angle_from_json(angle_to_json(a));
    CHECK(a.tag == b.tag);
    if (a.tag != Angle::Tag::Linear) CHECK(angles_equal(a, b));
  }
  CHECK_THROWS_AS(angle_from_json(json{{"pi", {1}}}), JsonFormatError);
  CHECK_THROWS_AS(angle_from_json(json("oops")), JsonFormatError);
}

TEST_CASE("scalar json handles coefficients beyond 64 bits") {
  BigInt huge("123456789012345678901234567890");
  CHECK(bigint_to_json(huge).is_string());
  CHECK(bigint_to_json(BigInt(-7)).is_number_integer());
  CHECK(bigint_from_json(bigint_to_json(huge)) == huge);
  CycloScalar big(huge, BigInt(-7), BigInt(0), BigInt(1), 9);
  CHECK(scalar_from_json(scalar_to_json(big)) == big);
  CHECK_THROWS_AS(scalar_from_json(json{{"coeffs", {1, 2, 3}}}), JsonFormatError);
  CHECK_THROWS_AS(scalar_from_json(json{{"coeffs", {1, 2, 3, 4}}, {"sqrt2_exp", -1}}),
                  JsonFormatError);
}

TEST_CASE("matrix json round trips exactly") {
  std::mt19937 rng(72);
  Diagram d = random_diagram(rng, Calculus::ZX, 6, 3);
  auto M = interpret_exact(d);
  auto back = exact_matrix_from_json(matrix_to_json(M));
  CHECK(matrices_equal(M, back).equal);
  // float-mode matrices are rejected where exact entries are required
  auto F = matrix_to_json(interpret_float(d));
  CHECK(F["mode"] == "float");
  CHECK_THROWS_AS(exact_matrix_from_json(F), JsonFormatError);
}

TEST_CASE("derivation json round trips and replays") {
  Derivation d;
  d.ruleset = "dzx";
  d.start = z_dot(Angle::zero());
  d.end = par(sqrt2_gadget(), sqrt2_gadget());
  d.steps.push_back({"IV", Dir::LR, 0, {}});
  Derivation back = derivation_from_json(derivation_to_json(d));
  CHECK(back.ruleset == "dzx");
  CHECK(back.steps.size() == 1);
  CHECK(back.steps[0].rule == "IV");
  CHECK(replay_derivation(back, make_ruleset("dzx")).ok);
}

TEST_CASE("bind json round trips angles and legs") {
  Bind b;
  b.angles["alpha"] = Angle::pi_frac(1, 4);
  b.angles["t"] = Angle::from_float(0.25);
  b.legs["n1"] = 2;
  Bind back = bind_from_json(bind_to_json(b));
  CHECK(back.legs.at("n1") == 2);
  CHECK(angles_equal(back.angles.at("alpha"), Angle::pi_frac(1, 4)));
  CHECK(angles_equal(back.angles.at("t"), Angle::from_float(0.25)));
}

TEST_CASE("malformed diagram json is rejected with a clear error") {
  json good = diagram_to_json(seq(Hd(), Tri()));
  auto expect_throw = [&](auto mutate) {
    json j = good;
    mutate(j);
    CHECK_THROWS_AS(diagram_from_json(j), JsonFormatError);
  };
  expect_throw([](json& j) { j["nodes"][0]["kind"] = "Frobnicator"; });
  expect_throw([](json& j) { j["nodes"][1]["id"] = 5; });          // ids not dense
  expect_throw([](json& j) { j["calculus"] = "qw"; });
  expect_throw([](json& j) { j["inputs"] = json::array({1}); });   // slots out of order
  expect_throw([](json& j) {                                       // dangling reference
    for (auto& w : j["wires"])
      for (auto& end : w)
        if (end.contains("node")) end["node"] = 9;
  });
  expect_throw([](json& j) { j.erase("nodes"); });
  // zw kinds are invalid inside a zx diagram
  expect_throw([](json& j) { j["nodes"][0]["kind"] = "ZWCross"; });
}
