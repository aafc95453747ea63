#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "subcut/pseudo_boolean.hpp"

namespace subcut {

/// A map D^k -> D^k on Boolean k-tuples, stored as a full table. Tuples are
/// packed with position 1 as the most significant bit.
class TupleOperation {
 public:
  TupleOperation(int k, std::vector<std::uint32_t> outputs);

  int k() const { return k_; }
  std::uint32_t operator()(std::uint32_t input) const { return outputs_[input]; }
  const std::vector<std::uint32_t>& outputs() const { return outputs_; }

  friend bool operator==(const TupleOperation&, const TupleOperation&) = default;

 private:
  int k_;
  std::vector<std::uint32_t> outputs_;
};

/// The 5-ary separating operation.
TupleOperation f_sep();
/// <min, max> on pairs.
TupleOperation min_max();

bool is_conservative(const TupleOperation& op);

int hamming(std::span<const std::uint8_t> u, std::span<const std::uint8_t> v);
bool is_hamming_nonincreasing(const TupleOperation& op);

/// Argument tuples t_1..t_k (each of the table's arity) and their images
/// under the coordinatewise operation, with the two cost sums.
struct MultimorphismWitness {
  std::vector<Assignment> inputs;
  std::vector<Assignment> outputs;
  ExtendedCost input_sum;
  ExtendedCost output_sum;
};

/// Applies op to each coordinate of the k argument tuples.
std::vector<Assignment> apply_coordinatewise(const TupleOperation& op, std::span<const Assignment> tuples);

inline constexpr int kMaxMultimorphismBits = 24;

/// Exhaustive search for argument tuples violating
/// sum phi(t_i) >= sum phi(op_i(t)). Infinite input sums always satisfy it.
/// Requires arity * k <= 24.
std::optional<MultimorphismWitness> find_multimorphism_violation(const TupleOperation& op, const CostTable& t);
bool is_multimorphism(const TupleOperation& op, const CostTable& t);

/// sum_t coefficients[t] * f(t) >= 0 over tables of the given arity.
struct LinearInequality {
  int arity = 0;
  std::vector<int> coefficients;

  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
  friend auto operator<=>(const LinearInequality&, const LinearInequality&) = default;
};

/// One inequality per argument choice (input counts minus output counts),
/// zero vectors dropped, deduplicated and sorted.
std::vector<LinearInequality> generate_inequalities(const TupleOperation& op, int arity);

enum class SummandPolicy {
  allow_equal,  ///< v = a + a counts as a sum of two others
  distinct,     ///< the two summands must differ from each other
};

/// Drops, in one pass against the full input, every inequality equal to the
/// sum of two other members.
std::vector<LinearInequality> remove_pairwise_sums(std::span<const LinearInequality> ineqs,
                                                   SummandPolicy policy = SummandPolicy::allow_equal);

/// The 24 arity-4 inequalities f(1,0,c) + f(0,1,c) - f(1,1,c) - f(0,0,c) >= 0.
std::vector<LinearInequality> submodularity_inequalities();
/// The 6 Sep conditions rewritten over table values.
std::vector<LinearInequality> sep_inequalities();

struct InequalityClasses {
  std::vector<LinearInequality> submodularity;
  std::vector<LinearInequality> sep;
  std::vector<LinearInequality> other;
};

/// Requires arity 4.
InequalityClasses classify_inequalities(std::span<const LinearInequality> ineqs);

}  // namespace subcut
