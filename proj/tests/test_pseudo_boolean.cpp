#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subcut/expressibility.hpp"
#include "subcut/pseudo_boolean.hpp"

using namespace subcut;

namespace {

PseudoBooleanFunction poly(int n, std::initializer_list<std::pair<std::initializer_list<int>, Rational>> terms) {
  PseudoBooleanFunction p(n);
  for (const auto& [vars, c] : terms) p.add_term(var_set(vars), c);
  return p;
}

PseudoBooleanFunction example_fan_poly() {
  return poly(4, {{{1, 2, 3, 4}, 2}, {{1, 2, 3}, -1}, {{1, 2, 4}, -1}, {{1, 3, 4}, -1}, {{2, 3, 4}, -1}});
}

CostTable table(int n, std::vector<int> v) {
  std::vector<ExtendedCost> values(v.begin(), v.end());
  return CostTable(n, values);
}

}  // namespace

TEST_CASE("index order puts variable 1 first") {
  const Assignment x{1, 0, 0};
  CHECK(index_of(x) == 4);
  CHECK(assignment_of(6, 3) == Assignment{1, 1, 0});
  CHECK(ones_of_index(4, 3) == var_set({1}));
  CHECK(index_of_ones(var_set({3}), 3) == 1);
  CHECK(members(var_set({4, 1})) == std::vector<int>{1, 4});
  CHECK(full_set(3) == var_set({1, 2, 3}));
}

TEST_CASE("cost tables check their size") {
  CHECK_THROWS_AS(CostTable(2, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS(CostTable(17, std::vector<ExtendedCost>(1, 0)));
  const CostTable t = table(2, {0, 1, 2, 3});
  const Assignment x{1, 0};
  CHECK(t.at(x) == ExtendedCost(2));
}

TEST_CASE("evaluate") {
  const Assignment ones{1, 1, 1, 1};
  CHECK(evaluate(poly(2, {{{1, 2}, -1}}), Assignment{1, 1}) == -1);
  CHECK(evaluate(example_fan_poly(), ones) == -2);
  CHECK(zeta(example_fan_poly()) == fan_table(FanSpec{FanOrientation::upper, 4, {var_set({1, 2, 3}), var_set({1, 2, 4}), var_set({1, 3, 4}), var_set({2, 3, 4})}}));
  CHECK(evaluate(PseudoBooleanFunction(3), Assignment{1, 0, 1}) == 0);
}

TEST_CASE("zeta examples") {
  CHECK(zeta(poly(2, {{{1, 2}, 1}})) == table(2, {0, 0, 0, 1}));
  CHECK(zeta(PseudoBooleanFunction::constant(1, 5)) == table(1, {5, 5}));
}

TEST_CASE("moebius of theta_(1,1,0,0) matches inclusion-exclusion") {
  const CostTable th = theta({1, 1, 0, 0});
  const PseudoBooleanFunction p = moebius(th);
  const auto oracle_a = oracle::moebius_coefficients(th);
  for (VarSet s = 0; s < 16; ++s) CHECK(p.coefficient(s) == oracle_a[s]);
  // frozen from the oracle
  CHECK(p.coefficient(0) == -1);
  for (int i = 1; i <= 4; ++i) CHECK(p.coefficient(var_set({i})) == 1);
  CHECK(p.coefficient(var_set({1, 2})) == 0);
  CHECK(p.coefficient(var_set({3, 4})) == -1);
  CHECK(p.coefficient(var_set({1, 3})) == -1);
  CHECK(p.coefficient(var_set({1, 3, 4})) == 1);
  CHECK(p.coefficient(var_set({2, 3, 4})) == 1);
  CHECK(p.coefficient(var_set({1, 2, 3})) == 0);
  CHECK(p.coefficient(var_set({1, 2, 4})) == 0);
  CHECK(p.coefficient(var_set({1, 2, 3, 4})) == -1);
  CHECK(zeta(p) == th);
}

TEST_CASE("moebius and zeta are inverse on random tables") {
  std::mt19937_64 rng(11);
  for (int n = 0; n <= 7; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<ExtendedCost> values;
      for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) values.push_back(oracle::random_rational(rng, -9, 9, 4));
      const CostTable t(n, values);
      const auto p = moebius(t);
      CHECK(zeta(p) == t);
      const auto a = oracle::moebius_coefficients(t);
      for (VarSet s = 0; s < (VarSet{1} << n); ++s) CHECK(p.coefficient(s) == a[s]);
      for (VarSet s = 0; s < (VarSet{1} << n); ++s) CHECK(evaluate_ones(p, s) == oracle::eval(p, s));
    }
  }
  CHECK(moebius(CostTable::constant(3, 7)) == PseudoBooleanFunction::constant(3, 7));
  CHECK_THROWS(moebius(CostTable(1, {0, ExtendedCost::infinity()})));
}

TEST_CASE("second derivatives") {
  CHECK(second_derivative(poly(2, {{{1, 2}, -1}}), 1, 2, Assignment{}) == -1);
  const auto cube = poly(3, {{{1, 2, 3}, 1}});
  CHECK(second_derivative(cube, 1, 2, Assignment{0}) == 0);
  CHECK(second_derivative(cube, 1, 2, Assignment{1}) == 1);
  // four evaluations of the theta polynomial at x1 = x2 = 1
  const auto p = moebius(theta({1, 1, 0, 0}));
  const Rational direct = evaluate(p, Assignment{1, 1, 1, 1}) - evaluate(p, Assignment{1, 1, 1, 0}) -
                          evaluate(p, Assignment{1, 1, 0, 1}) + evaluate(p, Assignment{1, 1, 0, 0});
  CHECK(second_derivative(p, 3, 4, Assignment{1, 1}) == direct);
  CHECK(direct == 0);
}

TEST_CASE("submodularity of polynomials and tables") {
  CHECK(is_submodular(poly(2, {{{1, 2}, -1}})));
  CHECK_FALSE(is_submodular(poly(2, {{{1, 2}, 1}})));
  for (const auto& t : balanced_tuples()) {
    CHECK(is_submodular(moebius(theta(t))));
    CHECK(is_submodular(theta(t)));
  }
  const auto w = find_submodularity_violation(poly(3, {{{1, 2, 3}, 1}}));
  REQUIRE(w.has_value());
  CHECK(w->value > 0);
  CHECK(second_derivative(poly(3, {{{1, 2, 3}, 1}}), w->i, w->j, Assignment{1}) == w->value);
}

TEST_CASE("table and polynomial submodularity agree with the lattice definition") {
  std::mt19937_64 rng(5);
  int agree_true = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 2 + rep % 4;
    std::vector<ExtendedCost> values;
    std::uniform_int_distribution<int> v(-3, 3);
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) values.push_back(v(rng));
    CostTable t(n, values);
    if (rep % 2) t = oracle::random_submodular_table(n, rng);
    const bool expected = oracle::submodular_by_lattice(t);
    CHECK(is_submodular(t) == expected);
    CHECK(is_submodular(moebius(t)) == expected);
    agree_true += expected;
  }
  CHECK(agree_true >= 150);
}

TEST_CASE("dual") {
  CHECK(dual(poly(1, {{{1}, 1}})) == poly(1, {{{}, 1}, {{1}, -1}}));
  CHECK(dual(poly(2, {{{1, 2}, -1}})) == poly(2, {{{}, -1}, {{1}, 1}, {{2}, 1}, {{1, 2}, -1}}));
  CHECK(dual(PseudoBooleanFunction::constant(2, 3)) == PseudoBooleanFunction::constant(2, 3));
  const CostTable t = table(2, {1, 2, 3, 4});
  CHECK(dual(t) == table(2, {4, 3, 2, 1}));
  CHECK(dual(dual(example_fan_poly())) == example_fan_poly());
}

TEST_CASE("combine") {
  const std::vector<WeightedFunction> cancel{{1, poly(1, {{{1}, 1}})}, {1, poly(1, {{{1}, -1}})}};
  CHECK(combine(cancel).is_zero());
  const std::vector<WeightedFunction> half{{Rational(1, 2), poly(3, {{{1, 2, 3}, -2}})}};
  CHECK(combine(half) == poly(3, {{{1, 2, 3}, -1}}));
  const std::vector<WeightedFunction> negative{{-1, poly(1, {{{1}, 1}})}};
  CHECK_THROWS(combine(negative));
}

TEST_CASE("min_brute_force") {
  const auto m = min_brute_force(zeta(poly(2, {{{1}, 1}, {{2}, 1}, {{1, 2}, -2}})));
  CHECK(m.value == ExtendedCost(0));
  CHECK(m.argmin == Assignment{0, 0});
  const auto mt = min_brute_force(theta({1, 1, 0, 0}));
  CHECK(mt.value == ExtendedCost(-1));
  CHECK(mt.argmin == Assignment{0, 0, 0, 0});
  CHECK_THROWS(min_brute_force(CostTable(1, {ExtendedCost::infinity(), ExtendedCost::infinity()})));
}

TEST_CASE("project") {
  // 2y(2 - x1 - x2 - x3) with y as variable 4
  const auto p = poly(4, {{{4}, 4}, {{1, 4}, -2}, {{2, 4}, -2}, {{3, 4}, -2}});
  const std::vector<int> y{4};
  CHECK(project(p, y) == zeta(poly(3, {{{1, 2, 3}, -2}})));
  // -y + y((1-x1) + (1-x2)) = y - y x1 - y x2, y as variable 3
  const auto q = poly(3, {{{3}, 1}, {{1, 3}, -1}, {{2, 3}, -1}});
  const std::vector<int> y3{3};
  CHECK(project(q, y3) == zeta(poly(2, {{{1, 2}, -1}})));
  CHECK(project(example_fan_poly(), std::vector<int>{}) == zeta(example_fan_poly()));

  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 40; ++rep) {
    const auto r = oracle::random_quadratic_submodular(7, rng, 0.6);
    const std::vector<int> hidden = rep % 2 ? std::vector<int>{2, 5, 7} : std::vector<int>{1, 6};
    CHECK(project(r, hidden) == oracle::project(r, hidden));
  }
}

TEST_CASE("remap and padding") {
  const auto p = poly(2, {{{1, 2}, -1}, {{1}, 3}});
  const std::vector<int> m{3, 1};
  CHECK(remap(p, 3, m) == poly(3, {{{1, 3}, -1}, {{3}, 3}}));
  CHECK(p.padded(4).arity() == 4);
  CHECK(zeta(p.padded(3))[1] == zeta(p)[0]);
}
