#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "subcut/rational.hpp"

namespace subcut {

/// Set of variables as a bitmask: bit (i-1) stands for variable i.
using VarSet = std::uint64_t;

/// Boolean assignment, one 0/1 entry per variable, variable 1 first.
using Assignment = std::vector<std::uint8_t>;

inline constexpr int kMaxTableArity = 16;
inline constexpr int kMaxPolynomialArity = 64;

VarSet var_set(std::initializer_list<int> vars);
VarSet full_set(int arity);
std::vector<int> members(VarSet set);
int cardinality(VarSet set);

// Table indices put variable 1 in the most significant bit, so the natural
// index order is the lexicographic order of assignments.
std::size_t index_of(std::span<const std::uint8_t> x);
Assignment assignment_of(std::size_t index, int arity);
VarSet ones_of_index(std::size_t index, int arity);
std::size_t index_of_ones(VarSet ones, int arity);

/// Dense table of 2^n extended costs.
class CostTable {
 public:
  CostTable() = default;
  CostTable(int arity, std::vector<ExtendedCost> values);

  static CostTable constant(int arity, const ExtendedCost& value);

  int arity() const { return arity_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<ExtendedCost>& values() const& { return values_; }
  std::vector<ExtendedCost> values() && { return std::move(values_); }
  const ExtendedCost& operator[](std::size_t index) const { return values_[index]; }
  const ExtendedCost& at(std::span<const std::uint8_t> x) const;

  bool is_finite() const;

  friend bool operator==(const CostTable&, const CostTable&) = default;

 private:
  int arity_ = 0;
  std::vector<ExtendedCost> values_{ExtendedCost(0)};
};

/// Multilinear polynomial with exact rational coefficients. Zero
/// coefficients are never stored; the empty set holds the constant term.
class PseudoBooleanFunction {
 public:
  explicit PseudoBooleanFunction(int arity = 0);
  PseudoBooleanFunction(int arity, const std::map<VarSet, Rational>& terms);

  static PseudoBooleanFunction constant(int arity, const Rational& c);
  static PseudoBooleanFunction monomial(int arity, VarSet vars, const Rational& coef);

  int arity() const { return arity_; }
  const std::map<VarSet, Rational>& terms() const { return terms_; }
  Rational coefficient(VarSet vars) const;
  int degree() const;
  bool is_zero() const { return terms_.empty(); }

  /// Adds coef to the coefficient of vars, pruning a resulting zero.
  void add_term(VarSet vars, const Rational& coef);

  PseudoBooleanFunction& operator+=(const PseudoBooleanFunction& other);
  PseudoBooleanFunction& operator*=(const Rational& factor);

  /// Same function viewed with extra dummy variables appended.
  PseudoBooleanFunction padded(int new_arity) const;

  friend bool operator==(const PseudoBooleanFunction&, const PseudoBooleanFunction&) = default;

 private:
  int arity_;
  std::map<VarSet, Rational> terms_;
};

PseudoBooleanFunction operator+(PseudoBooleanFunction lhs, const PseudoBooleanFunction& rhs);
PseudoBooleanFunction operator*(const Rational& factor, PseudoBooleanFunction p);

Rational evaluate(const PseudoBooleanFunction& p, std::span<const std::uint8_t> x);
/// Evaluation at the assignment whose 1-variables are `ones`.
Rational evaluate_ones(const PseudoBooleanFunction& p, VarSet ones);

CostTable zeta(const PseudoBooleanFunction& p);
PseudoBooleanFunction moebius(const CostTable& t);

/// p(1,1,x) - p(1,0,x) - p(0,1,x) + p(0,0,x) for variables i and j (1-based);
/// `context` lists the remaining variables in increasing index order.
Rational second_derivative(const PseudoBooleanFunction& p, int i, int j,
                           std::span<const std::uint8_t> context);

/// A positive second derivative: the pair and the full assignment of the
/// other variables (entries at i and j are 0).
struct DerivativeWitness {
  int i = 0;
  int j = 0;
  Assignment context;
  Rational value;
};

std::optional<DerivativeWitness> find_submodularity_violation(const PseudoBooleanFunction& p);
bool is_submodular(const PseudoBooleanFunction& p);
bool is_submodular(const CostTable& t);

/// Substitutes 1 - x for every variable.
PseudoBooleanFunction dual(const PseudoBooleanFunction& p);
/// t'(x) = t(1 - x).
CostTable dual(const CostTable& t);

struct WeightedFunction {
  Rational weight;
  PseudoBooleanFunction function;
};

/// Nonnegative combination; lower arities are padded to the largest one.
PseudoBooleanFunction combine(std::span<const WeightedFunction> items);

struct Minimum {
  ExtendedCost value;
  Assignment argmin;
};

/// Exact minimum with the lexicographically smallest minimizer.
Minimum min_brute_force(const CostTable& t);

/// Minimizes out the `hidden` variables (1-based). The result ranges over
/// the remaining variables in increasing index order.
CostTable project(const PseudoBooleanFunction& p, std::span<const int> hidden);

/// Renames variable i to var_map[i-1] in a function of arity new_arity.
/// Variables mapped to the same target multiply (x*x = x).
PseudoBooleanFunction remap(const PseudoBooleanFunction& p, int new_arity, std::span<const int> var_map);

}  // namespace subcut
