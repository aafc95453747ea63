#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "subcut/pseudo_boolean.hpp"

namespace subcut {

// Values are listed in mixed radix over the scope's domains, first scope
// variable most significant. Scope indices are 1-based.
struct Constraint {
  std::vector<int> scope;
  std::vector<ExtendedCost> values;
};

struct VcspInstance {
  std::vector<int> domains;
  std::vector<Constraint> constraints;

  int variable_count() const { return static_cast<int>(domains.size()); }
  bool is_boolean() const;
  /// Throws std::invalid_argument naming the first malformed constraint.
  void validate() const;
};

/// Boolean table of a constraint whose scope is all Boolean.
CostTable boolean_table(const Constraint& c);

ExtendedCost instance_cost(const VcspInstance& inst, std::span<const int> s);

enum class SolveMethod { cut, brute_force };
std::string to_string(SolveMethod m);

// Hidden variables of one compiled constraint, numbered after the instance
// variables.
struct HiddenBlock {
  std::size_t constraint = 0;
  int first = 0;
  int count = 0;
};

struct SolveReport {
  ExtendedCost optimum;
  std::vector<int> assignment;
  int hidden_vars_used = 0;
  SolveMethod method = SolveMethod::cut;
  bool fell_back = false;
  std::vector<HiddenBlock> provenance;
};

/// Compiles every constraint into quadratic submodular pieces and solves one
/// min-cut. Arity <= 2 constraints may contain infinite costs; arity 3..4
/// constraints must be finite and go through express_by_binary.
SolveReport solve_via_cuts(const VcspInstance& inst);

inline constexpr std::size_t kMaxBruteForcePoints = std::size_t{1} << 20;

/// Exhaustive search; the lexicographically smallest optimal assignment.
SolveReport brute_force_solve(const VcspInstance& inst);

/// solve_via_cuts, or brute force when a constraint is not expressible and
/// the fallback is allowed.
SolveReport solve(const VcspInstance& inst, bool brute_force_fallback);

inline constexpr int kMaxEncodedDomain = 4;

// A variable of domain d becomes d-1 bits holding en(i) = 0^{d-i-1} 1^i.
struct BooleanEncoding {
  VcspInstance boolean;
  std::vector<int> domains;
  std::vector<int> first_bit;  ///< 1-based index of each variable's first bit

  std::vector<int> encode(std::span<const int> values) const;
  /// Number of ones in each block.
  std::vector<int> decode(std::span<const int> bits) const;
};

/// Chain encoding of an instance with finite constraints of arity <= 2 that
/// are submodular on the ordered domains. Costs are split by thresholds
/// [x >= i], and infinite chain relations keep bits on codewords.
BooleanEncoding boolean_encode(const VcspInstance& inst);

struct EnergyTerm {
  std::vector<int> vars;
  std::vector<ExtendedCost> costs;
};

// E = constant + sum of terms over given domains.
struct Energy {
  Rational constant;
  std::vector<int> domains;
  std::vector<EnergyTerm> terms;
};

VcspInstance energy_to_instance(const Energy& e);

}  // namespace subcut
