#include "subcut/expressibility.hpp"

#include <bit>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "subcut/errors.hpp"
#include "subcut/exact_lp.hpp"

namespace subcut {

namespace {

struct FanBasis {
  std::vector<FanSpec> fans;
  std::vector<std::vector<Rational>> tables;
};

// Non-constant fans of each arity; the constant one is absorbed by kappa.
const FanBasis& fan_basis(int arity) {
  static std::array<FanBasis, 5> cache;
  static std::array<std::once_flag, 5> once;
  std::call_once(once[static_cast<std::size_t>(arity)], [arity] {
    FanBasis& basis = cache[static_cast<std::size_t>(arity)];
    for (auto& f : enumerate_fans(arity)) {
      const CostTable t = fan_table(f);
      std::vector<Rational> values;
      for (const auto& v : t.values()) values.push_back(v.value());
      bool constant = true;
      for (const auto& v : values) constant = constant && v == values.front();
      if (constant) continue;
      basis.fans.push_back(std::move(f));
      basis.tables.push_back(std::move(values));
    }
  });
  return cache[static_cast<std::size_t>(arity)];
}

std::vector<Rational> finite_values(const CostTable& t) {
  std::vector<Rational> values;
  for (const auto& v : t.values()) {
    if (v.is_infinite()) throw std::invalid_argument("expected a finite-valued table");
    values.push_back(v.value());
  }
  return values;
}

std::string describe(const DerivativeWitness& w) {
  std::ostringstream os;
  os << "second derivative d_{" << w.i << "," << w.j << "} = " << to_string(w.value) << " > 0 at context (";
  for (std::size_t v = 0; v < w.context.size(); ++v) {
    if (static_cast<int>(v) + 1 == w.i || static_cast<int>(v) + 1 == w.j) continue;
    os << "x" << v + 1 << "=" << int(w.context[v]) << (v + 1 < w.context.size() ? " " : "");
  }
  os << ")";
  return os.str();
}

}  // namespace

CostTable theta(const std::array<std::uint8_t, 4>& balanced) {
  int ones = 0;
  for (auto b : balanced) {
    if (b > 1) throw std::invalid_argument("theta index tuple must be Boolean");
    ones += b;
  }
  if (ones != 2) throw std::invalid_argument("theta needs a tuple with exactly two ones");
  std::vector<ExtendedCost> values(16, 0);
  values[0] = -1;
  values[15] = -1;
  values[index_of(balanced)] = 1;
  return CostTable(4, std::move(values));
}

std::vector<std::array<std::uint8_t, 4>> balanced_tuples() {
  std::vector<std::array<std::uint8_t, 4>> out;
  for (std::size_t idx = 0; idx < 16; ++idx) {
    if (std::popcount(idx) != 2) continue;
    const auto a = assignment_of(idx, 4);
    out.push_back({a[0], a[1], a[2], a[3]});
  }
  return out;
}

SepReport check_sep(const PseudoBooleanFunction& p) {
  if (p.arity() > 4) throw std::invalid_argument("condition Sep is defined for arity 4");
  const PseudoBooleanFunction q = p.padded(4);
  SepReport report;
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      int k = 0, l = 0;
      for (int v = 1; v <= 4; ++v) {
        if (v == i || v == j) continue;
        (k == 0 ? k : l) = v;
      }
      Rational sum = q.coefficient(var_set({i, j})) + q.coefficient(var_set({k, l})) +
                     q.coefficient(var_set({i, j, k})) + q.coefficient(var_set({i, j, l}));
      if (sgn(sum) > 0) report.violations.push_back({{i, j}, {k, l}, sum});
    }
  }
  report.satisfied = report.violations.empty();
  return report;
}

CostTable reconstruct(const FanDecomposition& d, int arity) {
  std::vector<ExtendedCost> values(std::size_t{1} << arity, ExtendedCost(d.kappa));
  for (const auto& part : d.parts) {
    const CostTable ft = fan_table(part.fan);
    if (ft.arity() != arity) throw std::invalid_argument("fan arity differs from the requested arity");
    for (std::size_t idx = 0; idx < values.size(); ++idx) values[idx] += part.weight * ft[idx];
  }
  return CostTable(arity, std::move(values));
}

FanDecomposition decompose_into_fans(const CostTable& t) {
  const int n = t.arity();
  if (n > 4) throw std::invalid_argument("fan decomposition supports arity <= 4");
  const auto target = finite_values(t);
  const FanBasis& basis = fan_basis(n);
  const std::size_t rows = target.size() - 1;

  std::vector<Rational> rhs(rows);
  bool constant = true;
  for (std::size_t x = 1; x < target.size(); ++x) {
    rhs[x - 1] = target[x] - target[0];
    constant = constant && sgn(rhs[x - 1]) == 0;
  }
  if (constant) return FanDecomposition{{}, target[0]};

  auto finish = [&](std::vector<FanPart> parts) {
    FanDecomposition d{std::move(parts), target[0]};
    Rational at_zero = 0;
    for (const auto& part : d.parts) at_zero += part.weight * fan_table(part.fan)[0].value();
    d.kappa = target[0] - at_zero;
    if (reconstruct(d, n) != t) throw std::logic_error("fan decomposition failed to reconstruct its target");
    return d;
  };

  // A single scaled fan.
  for (std::size_t f = 0; f < basis.fans.size(); ++f) {
    const auto& ft = basis.tables[f];
    std::optional<Rational> scale;
    bool ok = true;
    for (std::size_t x = 1; x < target.size() && ok; ++x) {
      const Rational d = ft[x] - ft[0];
      if (sgn(d) == 0) {
        ok = sgn(rhs[x - 1]) == 0;
      } else if (!scale) {
        scale = rhs[x - 1] / d;
        ok = sgn(*scale) > 0;
      } else {
        ok = rhs[x - 1] == *scale * d;
      }
    }
    if (ok && scale) return finish({FanPart{basis.fans[f], *scale}});
  }

  // sum_f w_f (phi_f(x) - phi_f(0)) = t(x) - t(0), w >= 0, min sum w
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(basis.fans.size()));
  for (std::size_t x = 1; x < target.size(); ++x)
    for (std::size_t f = 0; f < basis.fans.size(); ++f) a[x - 1][f] = basis.tables[f][x] - basis.tables[f][0];
  const std::vector<Rational> cost(basis.fans.size(), 1);
  const auto solution = minimize_nonnegative(a, rhs, cost);
  if (!solution) throw InfeasibleError("table is not in the cone of fans plus a constant");

  std::vector<FanPart> parts;
  for (std::size_t f = 0; f < solution->size(); ++f)
    if (sgn((*solution)[f]) > 0) parts.push_back(FanPart{basis.fans[f], (*solution)[f]});
  return finish(std::move(parts));
}

Gadget express_by_binary(const CostTable& t) {
  const int n = t.arity();
  if (n > 4) throw std::invalid_argument("expressibility is decided for arity <= 4");
  if (!t.is_finite()) throw std::invalid_argument("expressibility needs a finite-valued table");
  const PseudoBooleanFunction p = moebius(t);
  if (auto w = find_submodularity_violation(p)) throw NotSubmodularError("not submodular: " + describe(*w));
  if (p.degree() <= 2) return Gadget{p, {}, 0};

  const SepReport sep = check_sep(p);
  if (!sep.satisfied) {
    const auto& v = sep.violations.front();
    std::ostringstream os;
    os << "NotExpressible: Sep violated for {" << v.ij.first << "," << v.ij.second << "},{" << v.kl.first << ","
       << v.kl.second << "} with sum " << to_string(v.sum);
    throw NotExpressibleError(os.str());
  }

  FanDecomposition decomposition;
  try {
    decomposition = decompose_into_fans(t);
  } catch (const InfeasibleError& e) {
    throw NotExpressibleError(std::string("NotExpressible: ") + e.what());
  }

  GadgetBuilder builder(n);
  for (const auto& part : decomposition.parts) {
    const PseudoBooleanFunction fp = fan_polynomial(part.fan);
    if (fp.degree() <= 2)
      builder.add(Gadget{fp, {}, 0}, part.weight);
    else
      builder.add(fan_gadget(part.fan), part.weight);
  }
  builder.add_constant(decomposition.kappa);
  Gadget g = builder.build();
  if (!verify_gadget(g, t)) throw std::logic_error("compiled gadget does not express its target");
  return g;
}

FanDecomposition cubic_decomposition(const PseudoBooleanFunction& p) {
  if (p.arity() != 3) throw std::invalid_argument("cubic decomposition expects arity 3");
  if (auto w = find_submodularity_violation(p)) throw NotSubmodularError("not submodular: " + describe(*w));
  return decompose_into_fans(zeta(p));
}

}  // namespace subcut
