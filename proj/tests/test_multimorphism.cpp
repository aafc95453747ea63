#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subcut/errors.hpp"
#include "subcut/expressibility.hpp"
#include "subcut/multimorphism.hpp"

using namespace subcut;

TEST_CASE("f_sep is conservative and does not increase Hamming distance") {
  const TupleOperation op = f_sep();
  CHECK(op.k() == 5);
  CHECK(op.outputs().size() == 32);
  CHECK(is_conservative(op));
  CHECK(is_hamming_nonincreasing(op));
  CHECK(is_conservative(min_max()));
  CHECK(is_hamming_nonincreasing(min_max()));
}

TEST_CASE("a corrupted f_sep entry is caught") {
  // flip one output bit; conservativity must break
  for (std::uint32_t in = 0; in < 32; ++in) {
    auto outputs = f_sep().outputs();
    outputs[in] ^= 1U;
    CHECK_FALSE(is_conservative(TupleOperation(5, outputs)));
  }
}

TEST_CASE("hamming distance") {
  const Assignment u{1, 0, 1}, v{0, 0, 1};
  CHECK(hamming(u, v) == 1);
  const Assignment w{1};
  CHECK_THROWS(hamming(u, w));
}

TEST_CASE("five-row witness columns") {
  const std::vector<Assignment> in{{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const std::vector<Assignment> out{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}, {1, 0, 1, 1}, {0, 1, 1, 1}};
  CHECK(apply_coordinatewise(f_sep(), in) == out);
  const CostTable th = theta({1, 1, 0, 0});
  ExtendedCost before = 0, after = 0;
  for (const auto& x : in) before += th.at(x);
  for (const auto& x : out) after += th.at(x);
  CHECK(before == ExtendedCost(0));
  CHECK(after == ExtendedCost(1));
}

TEST_CASE("multimorphism search agrees with full enumeration") {
  std::mt19937_64 rng(3);
  // min/max over random small tables, both submodular and not
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 1 + rep % 3;
    std::vector<ExtendedCost> v;
    std::uniform_int_distribution<int> d(-3, 3);
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) v.push_back(d(rng));
    const CostTable t(n, v);
    CHECK(is_multimorphism(min_max(), t) == oracle::is_multimorphism(min_max().outputs(), 2, t));
    CHECK(is_multimorphism(min_max(), t) == oracle::submodular_by_lattice(t));
  }
  // f_sep on arity-3 tables and a few arity-4 ones
  for (int rep = 0; rep < 12; ++rep) {
    const CostTable t = oracle::random_submodular_table(3, rng);
    CHECK(is_multimorphism(f_sep(), t) == oracle::is_multimorphism(f_sep().outputs(), 5, t));
  }
  const CostTable th = theta({0, 1, 0, 1});
  CHECK_FALSE(is_multimorphism(f_sep(), th));
  CHECK_FALSE(oracle::is_multimorphism(f_sep().outputs(), 5, th));
  const CostTable ok = oracle::random_submodular_table(4, rng);
  CHECK(is_multimorphism(f_sep(), ok) == oracle::is_multimorphism(f_sep().outputs(), 5, ok));
}

TEST_CASE("witness sums are real") {
  const auto w = find_multimorphism_violation(f_sep(), theta({1, 1, 0, 0}));
  REQUIRE(w.has_value());
  CHECK(apply_coordinatewise(f_sep(), w->inputs) == w->outputs);
  ExtendedCost before = 0, after = 0;
  const CostTable th = theta({1, 1, 0, 0});
  for (const auto& x : w->inputs) before += th.at(x);
  for (const auto& x : w->outputs) after += th.at(x);
  CHECK(before == w->input_sum);
  CHECK(after == w->output_sum);
  CHECK(after > before);
}

TEST_CASE("infinite costs") {
  const ExtendedCost inf = ExtendedCost::infinity();
  // forbids (0,1) only: a lattice, so min/max preserves it
  CHECK(is_multimorphism(min_max(), CostTable(2, {0, inf, 0, 0})));
  // forbids (0,0) and (1,1): not closed under min/max
  CHECK_FALSE(is_multimorphism(min_max(), CostTable(2, {inf, 0, 0, inf})));
  CHECK_THROWS_AS(find_multimorphism_violation(f_sep(), CostTable::constant(5, 0)), SizeLimitError);
}

TEST_CASE("inequality generation at small arity") {
  // arity 1 under min/max gives nothing: every column is sorted already or swapped
  CHECK(generate_inequalities(min_max(), 1).empty());
  // arity 2 under min/max: only the submodularity inequality and its multiples
  const auto two = generate_inequalities(min_max(), 2);
  const auto reduced = remove_pairwise_sums(two);
  REQUIRE(reduced.size() == 1);
  CHECK(reduced[0].coefficients == std::vector<int>{-1, 1, 1, -1});
}

TEST_CASE("the arity-4 inequality counts") {
  const auto all = generate_inequalities(f_sep(), 4);
  CHECK(all.size() == 4635);
  const auto reduced = remove_pairwise_sums(all);
  CHECK(reduced.size() == 30);
  CHECK(remove_pairwise_sums(all, SummandPolicy::distinct).size() == 54);
  const auto classes = classify_inequalities(reduced);
  CHECK(classes.submodularity.size() == 24);
  CHECK(classes.sep.size() == 6);
  CHECK(classes.other.empty());
  // every generated inequality holds for the tables that f_sep preserves
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 5; ++rep) {
    const CostTable t = oracle::random_submodular_table(4, rng);
    if (!check_sep(moebius(t)).satisfied) continue;
    for (const auto& ineq : all) {
      Rational s = 0;
      for (std::size_t x = 0; x < 16; ++x) s += ineq.coefficients[x] * t[x].value();
      CHECK(s >= 0);
    }
  }
}

TEST_CASE("sep vectors match the coefficient form") {
  const auto sep = sep_inequalities();
  REQUIRE(sep.size() == 6);
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<ExtendedCost> v;
    for (int i = 0; i < 16; ++i) v.push_back(oracle::random_rational(rng, -5, 5, 3));
    const CostTable t(4, v);
    const auto a = oracle::moebius_coefficients(t);
    const auto report = check_sep(moebius(t));
    // each vector evaluates to minus one of the six Sep sums
    std::vector<Rational> from_vectors, from_coeffs;
    for (const auto& ineq : sep) {
      Rational s = 0;
      for (std::size_t x = 0; x < 16; ++x) s += ineq.coefficients[x] * t[x].value();
      from_vectors.push_back(-s);
    }
    const int pairs[6][4] = {{1, 2, 3, 4}, {1, 3, 2, 4}, {1, 4, 2, 3}, {2, 3, 1, 4}, {2, 4, 1, 3}, {3, 4, 1, 2}};
    for (const auto& q : pairs) {
      auto bit = [](std::initializer_list<int> s) {
        std::size_t b = 0;
        for (int v : s) b |= std::size_t{1} << (v - 1);
        return b;
      };
      from_coeffs.push_back(a[bit({q[0], q[1]})] + a[bit({q[2], q[3]})] + a[bit({q[0], q[1], q[2]})] +
                            a[bit({q[0], q[1], q[3]})]);
    }
    std::sort(from_vectors.begin(), from_vectors.end());
    std::sort(from_coeffs.begin(), from_coeffs.end());
    CHECK(from_vectors == from_coeffs);
    std::size_t positive = 0;
    for (const auto& s : from_coeffs) positive += s > 0;
    CHECK(report.violations.size() == positive);
  }
}
