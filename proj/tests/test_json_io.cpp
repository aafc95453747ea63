#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "subcut/fans.hpp"
#include "subcut/json_io.hpp"

using namespace subcut;

namespace {

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = "subcut_test_" + name + ".json";
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(rational_to_json(Rational(3)) == json(3));
  CHECK(rational_to_json(Rational(-1, 2)) == json("-1/2"));
  CHECK(rational_from_json(json("4/6")) == Rational(2, 3));
  CHECK(rational_from_json(json(-7)) == -7);
  CHECK_THROWS_AS(rational_from_json(json(1.5)), InputError);
  CHECK_THROWS_AS(rational_from_json(json("x")), InputError);
  CHECK(cost_from_json(json("inf")).is_infinite());
  CHECK(cost_to_json(ExtendedCost::infinity()) == json("inf"));
}

TEST_CASE("polynomial round trip") {
  PseudoBooleanFunction p(3);
  p.add_term(var_set({1, 3}), Rational(-5, 2));
  p.add_term(0, 4);
  const json j = polynomial_to_json(p);
  CHECK(j["arity"] == 3);
  CHECK(polynomial_from_json(j) == p);
  CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"arity":2,"terms":[{"vars":[3],"coef":1}]})")), InputError);
  CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"terms":[]})")), InputError);
}

TEST_CASE("table round trip") {
  const CostTable t(2, {0, ExtendedCost::infinity(), Rational(1, 3), -2});
  CHECK(table_from_json(table_to_json(t)) == t);
  CHECK_THROWS_AS(table_from_json(json::parse(R"({"arity":2,"values":[1,2,3]})")), InputError);
}

TEST_CASE("gadget round trip") {
  const Gadget g = fan_gadget(FanSpec{FanOrientation::upper, 3, {var_set({1, 2}), var_set({2, 3})}});
  const Gadget back = gadget_from_json(gadget_to_json(g));
  CHECK(back.quadratic == g.quadratic);
  CHECK(back.hidden == g.hidden);
  CHECK(back.kappa == g.kappa);
}

TEST_CASE("instance round trip") {
  VcspInstance inst;
  inst.domains = {2, 3};
  inst.constraints.push_back({{2, 1}, {0, 1, 2, 3, ExtendedCost::infinity(), 5}});
  inst.constraints.push_back({{}, {Rational(7, 2)}});
  const VcspInstance back = instance_from_json(instance_to_json(inst));
  CHECK(back.domains == inst.domains);
  REQUIRE(back.constraints.size() == 2);
  CHECK(back.constraints[0].scope == inst.constraints[0].scope);
  CHECK(back.constraints[0].values == inst.constraints[0].values);
  CHECK(back.constraints[1].values == inst.constraints[1].values);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"variables":[{"domain":2}],"constraints":[{"scope":[2],"table":{"arity":1,"values":[0,1]}}]})")),
                  InputError);
}

TEST_CASE("energy documents") {
  const Energy e = energy_from_json(json::parse(
      R"({"constant": "1/2", "unary": [{"var": 1, "costs": [0, 3, 1]}], "pairwise": [{"vars": [1, 2], "costs": [0, 1, 1, 0, 2, 2]}]})"));
  CHECK(e.domains == std::vector<int>{3, 2});
  const VcspInstance inst = energy_to_instance(e);
  CHECK(instance_cost(inst, std::vector<int>{2, 1}) == ExtendedCost(Rational(1, 2) + 1 + 2));
}

TEST_CASE("document loading") {
  const auto poly_path = temp_file("poly", R"({"arity":2,"terms":[{"vars":[1,2],"coef":-1}]})");
  CHECK(std::holds_alternative<PseudoBooleanFunction>(load_document(poly_path)));
  const auto table_path = temp_file("table", R"({"arity":1,"values":[0,"inf"]})");
  CHECK(std::holds_alternative<CostTable>(load_document(table_path)));
  const auto energy_path = temp_file("energy", R"({"unary":[{"var":1,"costs":[1,2]}]})");
  CHECK(std::holds_alternative<VcspInstance>(load_document(energy_path)));
  const auto bad_path = temp_file("bad", "{not json");
  CHECK_THROWS_AS(load_document(bad_path), InputError);
  const auto other_path = temp_file("other", R"({"hello": 1})");
  CHECK_THROWS_AS(load_document(other_path), InputError);
  CHECK_THROWS_AS(load_document("does/not/exist.json"), InputError);
  for (const auto& p : {poly_path, table_path, energy_path, bad_path, other_path}) std::remove(p.c_str());
}
