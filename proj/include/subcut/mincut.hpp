#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subcut/pseudo_boolean.hpp"

namespace subcut {

// mu_c^d(x): cost c when x = d.
struct UnaryAtom {
  int var = 0;
  int d = 0;
  Rational c;
};

// lambda_c(x, y): cost c exactly when x = 0 and y = 1.
struct PairAtom {
  int x = 0;
  int y = 0;
  Rational c;
};

struct BinaryAtomDecomposition {
  Rational kappa;
  std::vector<UnaryAtom> unaries;
  std::vector<PairAtom> pairs;
};

/// Atoms for a finite submodular binary table over variables (1, 2):
/// t = A + (C-A)[x=1] + (D-C)[y=1] + (B+C-A-D)[x=0, y=1], negative unaries
/// flipped through mu_c^d = mu_{-c}^{1-d} + c.
BinaryAtomDecomposition decompose_binary(const CostTable& t);
CostTable atoms_table(const BinaryAtomDecomposition& d);

struct Arc {
  int from = 0;
  int to = 0;
  ExtendedCost capacity;
};

// Node 0 is the source, node 1 the sink, variable i (1-based) is node i + 1.
// A node on the source side of a cut means value 1.
struct FlowNetwork {
  int node_count = 2;
  std::vector<Arc> arcs;

  static constexpr int source = 0;
  static constexpr int sink = 1;
  static int node_of(int var) { return var + 1; }
  int variable_count() const { return node_count - 2; }
};

class NetworkBuilder {
 public:
  explicit NetworkBuilder(int variables);

  void add_arc(int from, int to, const ExtendedCost& capacity);
  void add_constant(const Rational& c) { offset_ += c; }
  /// mu_c^d on variable var; c may be negative or infinite.
  void add_unary(int var, int d, const ExtendedCost& c);
  /// lambda_c(x, y) with c >= 0 or infinite.
  void add_lambda(int x, int y, const ExtendedCost& c);
  /// Adds a quadratic submodular polynomial whose variable i is var_map[i-1].
  void add_quadratic(const PseudoBooleanFunction& p, std::span<const int> var_map);
  void add_quadratic(const PseudoBooleanFunction& p);

  int variables() const { return variables_; }
  FlowNetwork network() const;
  const Rational& offset() const { return offset_; }

 private:
  int variables_;
  std::map<std::pair<int, int>, ExtendedCost> arcs_;
  Rational offset_ = 0;
};

/// Network and constant offset such that cut capacity + offset = p(x) for
/// the cut whose source side is {s} and the variables set to 1.
std::pair<FlowNetwork, Rational> build_network(const PseudoBooleanFunction& p);

struct FlowResult {
  ExtendedCost flow;              ///< infinite when every cut is infinite
  std::vector<bool> source_side;  ///< indexed by node
};

/// Dinic's algorithm in exact arithmetic. The source side is the set of
/// nodes reachable from s in the final residual graph.
FlowResult max_flow(const FlowNetwork& net);

ExtendedCost cut_capacity(const FlowNetwork& net, const std::vector<bool>& source_side);

struct QuadraticMinimum {
  Rational value;
  Assignment argmin;
};

QuadraticMinimum minimize_quadratic(const PseudoBooleanFunction& p);

std::string to_edge_list(const FlowNetwork& net);

}  // namespace subcut
