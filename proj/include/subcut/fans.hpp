#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "subcut/pseudo_boolean.hpp"

namespace subcut {

enum class FanOrientation { upper, lower };

/// An upper or lower fan over variables {1..arity}. For an upper fan the
/// members are pairwise incomparable and every pair has the same union;
/// for a lower fan, the same intersection.
struct FanSpec {
  FanOrientation orientation = FanOrientation::upper;
  int arity = 0;
  std::vector<VarSet> family;

  friend bool operator==(const FanSpec&, const FanSpec&) = default;
};

/// Union of the family (upper) or intersection (lower); the empty family
/// gives the bottom resp. top element.
VarSet fan_apex(const FanSpec& spec);

bool validate_fan(const FanSpec& spec);
/// Human-readable reason a fan is invalid, empty when it is valid.
std::string explain_invalid_fan(const FanSpec& spec);

CostTable fan_table(const FanSpec& spec);

/// (r-2) prod_{union} x - sum_j prod_{I_j} x for upper fans; lower fans
/// are the dual of their mirror.
PseudoBooleanFunction fan_polynomial(const FanSpec& spec);

/// Opposite orientation with complemented members: the dual cost function.
FanSpec mirror(const FanSpec& spec);

/// Elements of the union grouped by the set of members containing them.
/// The reduced family keeps one representative (the smallest index) per
/// class. Requires an upper fan with at least two members.
struct MergedFan {
  FanSpec reduced;
  std::vector<VarSet> classes;  ///< ordered by representative
};
MergedFan merge_equivalence_classes(const FanSpec& spec);

/// A quadratic submodular function over visible variables 1..n followed by
/// hidden ones, such that minimizing out `hidden` and adding `kappa`
/// reproduces a target table.
struct Gadget {
  PseudoBooleanFunction quadratic;
  std::vector<int> hidden;
  Rational kappa;

  int visible_arity() const { return quadratic.arity() - static_cast<int>(hidden.size()); }
};

/// project(quadratic, hidden) + kappa.
CostTable expressed_table(const Gadget& g);
/// Degree <= 2, submodular, and expresses `target` exactly.
bool verify_gadget(const Gadget& g, const CostTable& target);

/// Dualizes visible and hidden variables alike.
Gadget dual(const Gadget& g);

/// Accumulates weighted gadgets over a common set of visible variables,
/// giving each piece its own block of hidden variables.
class GadgetBuilder {
 public:
  explicit GadgetBuilder(int visible_arity);

  void add(const Gadget& g, const Rational& weight);
  void add_constant(const Rational& c) { kappa_ += c; }
  Gadget build() const;

 private:
  int visible_arity_;
  int hidden_count_ = 0;
  std::vector<std::pair<Gadget, Rational>> parts_;
  Rational kappa_ = 0;
};

/// -w * prod_{i in vars} x_i == min_y w*y*(|vars| - 1 - sum x_i); one hidden
/// variable, appended as n + 1.
Gadget negative_monomial_gadget(int arity, VarSet vars, const Rational& weight);

/// Quadratic gadget for any valid fan with at most 1 + floor(m/2) hidden
/// variables, m the size of the union of the (upper) family.
Gadget fan_gadget(const FanSpec& spec);

/// Gadget for the 2-monotone function that is 0 when A is contained in x or
/// x is contained in B, and 1 otherwise.
Gadget two_monotone_gadget(VarSet a, VarSet b, int arity);

/// All distinct fan cost functions of arity at most n (n <= 4), padded to
/// arity n, in a fixed order: the constant first, then upper fans, then
/// lower fans not already listed.
std::vector<FanSpec> enumerate_fans(int arity);

/// "1,2;1,3" family syntax; an empty string is the empty family.
std::vector<VarSet> parse_family(std::string_view text);
std::string format_family(const std::vector<VarSet>& family);
std::string to_string(FanOrientation o);

}  // namespace subcut
