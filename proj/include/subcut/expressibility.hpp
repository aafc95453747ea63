#pragma once

#include <array>
#include <utility>
#include <vector>

#include "subcut/fans.hpp"
#include "subcut/pseudo_boolean.hpp"

namespace subcut {

/// Arity-4 function: -1 at (0,0,0,0) and (1,1,1,1), +1 at `balanced`, 0
/// elsewhere. `balanced` must contain exactly two ones.
CostTable theta(const std::array<std::uint8_t, 4>& balanced);
/// The six balanced tuples in lexicographic order.
std::vector<std::array<std::uint8_t, 4>> balanced_tuples();

struct SepViolation {
  std::pair<int, int> ij;
  std::pair<int, int> kl;
  Rational sum;  ///< a_ij + a_kl + a_ijk + a_ijl, positive
};

struct SepReport {
  bool satisfied = true;
  std::vector<SepViolation> violations;
};

/// Checks a_ij + a_kl + a_ijk + a_ijl <= 0 for the six ordered splits of
/// {1,2,3,4} into two pairs. Lower arities are padded with dummies.
SepReport check_sep(const PseudoBooleanFunction& p);

struct FanPart {
  FanSpec fan;
  Rational weight;
};

/// sum weight * fan_table + kappa.
struct FanDecomposition {
  std::vector<FanPart> parts;
  Rational kappa;
};

CostTable reconstruct(const FanDecomposition& d, int arity);

/// Exact decomposition of a finite table of arity <= 4 into a nonnegative
/// combination of fans of the same arity plus a constant. A table that is a
/// scaled single fan is returned as that fan; otherwise the exact LP with
/// minimum total weight is solved. Throws InfeasibleError outside the cone.
FanDecomposition decompose_into_fans(const CostTable& t);

/// Quadratic submodular gadget for a finite table of arity <= 4. Throws
/// NotSubmodularError, or NotExpressibleError when Sep fails.
Gadget express_by_binary(const CostTable& t);

/// decompose_into_fans for a submodular polynomial of arity 3.
FanDecomposition cubic_decomposition(const PseudoBooleanFunction& p);

}  // namespace subcut
