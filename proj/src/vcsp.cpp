#include "subcut/vcsp.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "subcut/errors.hpp"
#include "subcut/expressibility.hpp"
#include "subcut/fans.hpp"
#include "subcut/mincut.hpp"

namespace subcut {

namespace {

std::string constraint_label(std::size_t k) { return "constraint " + std::to_string(k + 1); }

// Binary Boolean table, infinite entries allowed. Forbidden points must be
// cut out by unary and lambda_inf atoms; the finite part is completed to a
// submodular table and split into atoms.
void add_binary(NetworkBuilder& builder, const CostTable& t, int x, int y) {
  bool feasible[4];
  bool x_can[2] = {false, false}, y_can[2] = {false, false};
  for (std::size_t idx = 0; idx < 4; ++idx) {
    feasible[idx] = t[idx].is_finite();
    if (feasible[idx]) {
      x_can[idx >> 1] = true;
      y_can[idx & 1] = true;
    }
  }
  if (!x_can[0] && !x_can[1]) {
    builder.add_arc(FlowNetwork::source, FlowNetwork::sink, ExtendedCost::infinity());
    return;
  }
  const ExtendedCost inf = ExtendedCost::infinity();
  if (!x_can[0]) builder.add_unary(x, 0, inf);
  if (!x_can[1]) builder.add_unary(x, 1, inf);
  if (!y_can[0]) builder.add_unary(y, 0, inf);
  if (!y_can[1]) builder.add_unary(y, 1, inf);
  if (!feasible[1] && x_can[0] && y_can[1]) builder.add_lambda(x, y, inf);
  if (!feasible[2] && x_can[1] && y_can[0]) builder.add_lambda(y, x, inf);
  if ((!feasible[0] && x_can[0] && y_can[0]) || (!feasible[3] && x_can[1] && y_can[1]))
    throw NotSubmodularError("binary table forbids a point that no cut can forbid");

  std::vector<Rational> g(4, 0);
  for (std::size_t idx = 0; idx < 4; ++idx)
    if (feasible[idx]) g[idx] = t[idx].value();
  const Rational excess = g[0] + g[3] - g[1] - g[2];
  if (sgn(excess) > 0) {
    if (!feasible[0])
      g[0] -= excess;
    else if (!feasible[3])
      g[3] -= excess;
    else if (!feasible[1])
      g[1] += excess;
    else if (!feasible[2])
      g[2] += excess;
    else
      throw NotSubmodularError("binary table violates A + D <= B + C");
  }
  const BinaryAtomDecomposition atoms = decompose_binary(CostTable(2, {g[0], g[1], g[2], g[3]}));
  const int vars[2] = {x, y};
  builder.add_constant(atoms.kappa);
  for (const auto& u : atoms.unaries) builder.add_unary(vars[u.var - 1], u.d, u.c);
  for (const auto& p : atoms.pairs) builder.add_lambda(vars[p.x - 1], vars[p.y - 1], p.c);
}

}  // namespace

bool VcspInstance::is_boolean() const {
  for (int d : domains)
    if (d != 2) return false;
  return true;
}

void VcspInstance::validate() const {
  for (std::size_t v = 0; v < domains.size(); ++v)
    if (domains[v] < 1) throw std::invalid_argument("variable " + std::to_string(v + 1) + " has an empty domain");
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& c = constraints[k];
    std::set<int> seen;
    std::size_t size = 1;
    for (int v : c.scope) {
      if (v < 1 || v > variable_count())
        throw std::invalid_argument(constraint_label(k) + ": scope index " + std::to_string(v) + " out of range");
      if (!seen.insert(v).second)
        throw std::invalid_argument(constraint_label(k) + ": variable " + std::to_string(v) + " repeated in scope");
      size *= static_cast<std::size_t>(domains[static_cast<std::size_t>(v - 1)]);
      if (size > (std::size_t{1} << 24)) throw SizeLimitError(constraint_label(k) + ": table too large");
    }
    if (c.values.size() != size)
      throw std::invalid_argument(constraint_label(k) + ": expected " + std::to_string(size) + " table entries, got " +
                                  std::to_string(c.values.size()));
  }
}

CostTable boolean_table(const Constraint& c) { return CostTable(static_cast<int>(c.scope.size()), c.values); }

ExtendedCost instance_cost(const VcspInstance& inst, std::span<const int> s) {
  if (static_cast<int>(s.size()) != inst.variable_count())
    throw std::invalid_argument("assignment length differs from the variable count");
  for (std::size_t v = 0; v < s.size(); ++v)
    if (s[v] < 0 || s[v] >= inst.domains[v])
      throw std::invalid_argument("value of variable " + std::to_string(v + 1) + " outside its domain");
  ExtendedCost total = 0;
  for (const auto& c : inst.constraints) {
    std::size_t idx = 0;
    for (int v : c.scope)
      idx = idx * static_cast<std::size_t>(inst.domains[static_cast<std::size_t>(v - 1)]) +
            static_cast<std::size_t>(s[static_cast<std::size_t>(v - 1)]);
    total += c.values.at(idx);
  }
  return total;
}

std::string to_string(SolveMethod m) { return m == SolveMethod::cut ? "cut" : "brute_force"; }

SolveReport solve_via_cuts(const VcspInstance& inst) {
  inst.validate();
  if (!inst.is_boolean()) throw std::invalid_argument("the cut pipeline needs Boolean domains");
  const int n = inst.variable_count();

  std::vector<Gadget> gadgets(inst.constraints.size());
  SolveReport report;
  int hidden = 0;
  for (std::size_t k = 0; k < inst.constraints.size(); ++k) {
    const auto& c = inst.constraints[k];
    const int arity = static_cast<int>(c.scope.size());
    if (arity <= 2) continue;
    if (arity > 4) throw NotExpressibleError(constraint_label(k) + ": arity above 4 has no cut reduction here");
    const CostTable t = boolean_table(c);
    if (!t.is_finite()) throw NotExpressibleError(constraint_label(k) + ": infinite costs in a higher-order constraint");
    try {
      gadgets[k] = express_by_binary(t);
    } catch (const NotExpressibleError& e) {
      throw NotExpressibleError(constraint_label(k) + ": " + e.what());
    } catch (const NotSubmodularError& e) {
      throw NotSubmodularError(constraint_label(k) + ": " + e.what());
    }
    const int count = static_cast<int>(gadgets[k].hidden.size());
    if (count > 0) report.provenance.push_back({k, n + hidden + 1, count});
    hidden += count;
  }

  NetworkBuilder builder(n + hidden);
  auto block = report.provenance.begin();
  for (std::size_t k = 0; k < inst.constraints.size(); ++k) {
    const auto& c = inst.constraints[k];
    try {
      switch (c.scope.size()) {
        case 0:
          if (c.values[0].is_infinite())
            builder.add_arc(FlowNetwork::source, FlowNetwork::sink, ExtendedCost::infinity());
          else
            builder.add_constant(c.values[0].value());
          break;
        case 1:
          builder.add_unary(c.scope[0], 0, c.values[0]);
          builder.add_unary(c.scope[0], 1, c.values[1]);
          break;
        case 2:
          add_binary(builder, boolean_table(c), c.scope[0], c.scope[1]);
          break;
        default: {
          const Gadget& g = gadgets[k];
          std::vector<int> var_map(c.scope);
          const int count = static_cast<int>(g.hidden.size());
          if (count > 0) {
            for (int h = 0; h < count; ++h) var_map.push_back(block->first + h);
            ++block;
          }
          builder.add_quadratic(g.quadratic, var_map);
          builder.add_constant(g.kappa);
        }
      }
    } catch (const NotSubmodularError& e) {
      throw NotSubmodularError(constraint_label(k) + ": " + e.what());
    }
  }

  const FlowNetwork net = builder.network();
  const FlowResult flow = max_flow(net);
  report.method = SolveMethod::cut;
  report.hidden_vars_used = hidden;
  report.assignment.resize(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v)
    report.assignment[static_cast<std::size_t>(v - 1)] =
        flow.source_side[static_cast<std::size_t>(FlowNetwork::node_of(v))] ? 1 : 0;
  report.optimum = flow.flow.is_infinite() ? ExtendedCost::infinity() : ExtendedCost(Rational(flow.flow.value() + builder.offset()));

  if (instance_cost(inst, report.assignment) != report.optimum)
    throw std::logic_error("cut solution cost disagrees with the cut value");
  return report;
}

SolveReport brute_force_solve(const VcspInstance& inst) {
  inst.validate();
  std::size_t points = 1;
  for (int d : inst.domains) {
    points *= static_cast<std::size_t>(d);
    if (points > kMaxBruteForcePoints) throw SizeLimitError("search space exceeds 2^20 assignments");
  }
  SolveReport report;
  report.method = SolveMethod::brute_force;
  std::vector<int> s(inst.domains.size(), 0);
  report.assignment = s;
  report.optimum = instance_cost(inst, s);
  for (std::size_t step = 1; step < points; ++step) {
    for (std::size_t v = s.size(); v-- > 0;) {
      if (++s[v] < inst.domains[v]) break;
      s[v] = 0;
    }
    const ExtendedCost cost = instance_cost(inst, s);
    if (cost < report.optimum) {
      report.optimum = cost;
      report.assignment = s;
    }
  }
  return report;
}

SolveReport solve(const VcspInstance& inst, bool brute_force_fallback) {
  try {
    return solve_via_cuts(inst);
  } catch (const NotExpressibleError&) {
    if (!brute_force_fallback) throw;
  } catch (const NotSubmodularError&) {
    if (!brute_force_fallback) throw;
  }
  SolveReport report = brute_force_solve(inst);
  report.fell_back = true;
  return report;
}

std::vector<int> BooleanEncoding::encode(std::span<const int> values) const {
  if (values.size() != domains.size()) throw std::invalid_argument("value count differs from the variable count");
  std::vector<int> bits(static_cast<std::size_t>(boolean.variable_count()), 0);
  for (std::size_t v = 0; v < domains.size(); ++v) {
    const int d = domains[v];
    if (values[v] < 0 || values[v] >= d) throw std::invalid_argument("value outside its domain");
    for (int j = 1; j < d; ++j)
      bits[static_cast<std::size_t>(first_bit[v] + j - 2)] = j >= d - values[v] ? 1 : 0;
  }
  return bits;
}

std::vector<int> BooleanEncoding::decode(std::span<const int> bits) const {
  if (static_cast<int>(bits.size()) != boolean.variable_count())
    throw std::invalid_argument("bit count differs from the encoded variable count");
  std::vector<int> values(domains.size(), 0);
  for (std::size_t v = 0; v < domains.size(); ++v)
    for (int j = 1; j < domains[v]; ++j) values[v] += bits[static_cast<std::size_t>(first_bit[v] + j - 2)];
  return values;
}

BooleanEncoding boolean_encode(const VcspInstance& inst) {
  inst.validate();
  BooleanEncoding enc;
  enc.domains = inst.domains;
  int bits = 0;
  for (std::size_t v = 0; v < inst.domains.size(); ++v) {
    if (inst.domains[v] > kMaxEncodedDomain)
      throw SizeLimitError("variable " + std::to_string(v + 1) + " has a domain larger than " +
                           std::to_string(kMaxEncodedDomain));
    enc.first_bit.push_back(bits + 1);
    bits += inst.domains[v] - 1;
  }
  // Bit for [x_v >= i]: en(i) has its ones at the end of the block.
  auto bit = [&](int v, int i) { return enc.first_bit[static_cast<std::size_t>(v - 1)] + inst.domains[static_cast<std::size_t>(v - 1)] - i - 1; };
  auto finite = [](const ExtendedCost& c, std::size_t k) {
    if (c.is_infinite()) throw std::invalid_argument(constraint_label(k) + ": encoding needs finite costs");
    return c.value();
  };

  Rational constant = 0;
  std::map<int, Rational> unary;
  std::map<std::pair<int, int>, Rational> pair;
  for (std::size_t k = 0; k < inst.constraints.size(); ++k) {
    const auto& c = inst.constraints[k];
    if (c.scope.empty()) {
      constant += finite(c.values[0], k);
    } else if (c.scope.size() == 1) {
      const int v = c.scope[0];
      constant += finite(c.values[0], k);
      for (int i = 1; i < inst.domains[static_cast<std::size_t>(v - 1)]; ++i)
        unary[bit(v, i)] += finite(c.values[static_cast<std::size_t>(i)], k) - finite(c.values[static_cast<std::size_t>(i - 1)], k);
    } else if (c.scope.size() == 2) {
      const int u = c.scope[0], w = c.scope[1];
      const int du = inst.domains[static_cast<std::size_t>(u - 1)];
      const int dw = inst.domains[static_cast<std::size_t>(w - 1)];
      auto at = [&](int i, int j) { return finite(c.values[static_cast<std::size_t>(i * dw + j)], k); };
      constant += at(0, 0);
      for (int i = 1; i < du; ++i) unary[bit(u, i)] += at(i, 0) - at(i - 1, 0);
      for (int j = 1; j < dw; ++j) unary[bit(w, j)] += at(0, j) - at(0, j - 1);
      for (int i = 1; i < du; ++i) {
        for (int j = 1; j < dw; ++j) {
          const Rational delta = at(i, j) - at(i - 1, j) - at(i, j - 1) + at(i - 1, j - 1);
          if (sgn(delta) > 0)
            throw NotSubmodularError(constraint_label(k) + ": not submodular on the ordered domains at (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
          if (sgn(delta) < 0) pair[{bit(u, i), bit(w, j)}] += delta;
        }
      }
    } else {
      throw std::invalid_argument(constraint_label(k) + ": encoding supports arity <= 2");
    }
  }

  VcspInstance& out = enc.boolean;
  out.domains.assign(static_cast<std::size_t>(bits), 2);
  if (sgn(constant) != 0) out.constraints.push_back({{}, {constant}});
  for (const auto& [b, c] : unary)
    if (sgn(c) != 0) out.constraints.push_back({{b}, {0, c}});
  for (const auto& [bp, c] : pair) out.constraints.push_back({{bp.first, bp.second}, {0, 0, 0, c}});
  const ExtendedCost inf = ExtendedCost::infinity();
  for (std::size_t v = 0; v < inst.domains.size(); ++v)
    for (int j = 1; j + 1 < inst.domains[v]; ++j) {
      const int bj = enc.first_bit[v] + j - 1;
      out.constraints.push_back({{bj, bj + 1}, {0, 0, inf, 0}});
    }
  return enc;
}

VcspInstance energy_to_instance(const Energy& e) {
  VcspInstance inst;
  inst.domains = e.domains;
  if (sgn(e.constant) != 0) inst.constraints.push_back({{}, {e.constant}});
  for (const auto& term : e.terms) inst.constraints.push_back({term.vars, term.costs});
  inst.validate();
  return inst;
}

}  // namespace subcut
