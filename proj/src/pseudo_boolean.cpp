#include "subcut/pseudo_boolean.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "subcut/errors.hpp"

namespace subcut {

namespace {

void check_table_arity(int arity) {
  if (arity < 0 || arity > kMaxTableArity)
    throw SizeLimitError("table arity " + std::to_string(arity) + " outside [0, " +
                         std::to_string(kMaxTableArity) + "]");
}

void check_polynomial_arity(int arity) {
  if (arity < 0 || arity > kMaxPolynomialArity)
    throw std::invalid_argument("polynomial arity " + std::to_string(arity) + " outside [0, " +
                                std::to_string(kMaxPolynomialArity) + "]");
}

constexpr int kMaxExhaustiveBits = 24;

// Subset-sum transform over table indices; inverse when sign is -1.
void subset_transform(std::vector<Rational>& a, int arity, int sign) {
  const std::size_t size = a.size();
  for (int b = 0; b < arity; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t idx = 0; idx < size; ++idx) {
      if (idx & bit) {
        if (sign > 0)
          a[idx] += a[idx ^ bit];
        else
          a[idx] -= a[idx ^ bit];
      }
    }
  }
}

}  // namespace

VarSet var_set(std::initializer_list<int> vars) {
  VarSet s = 0;
  for (int v : vars) {
    if (v < 1 || v > kMaxPolynomialArity) throw std::invalid_argument("variable index out of range");
    s |= VarSet{1} << (v - 1);
  }
  return s;
}

VarSet full_set(int arity) {
  return arity >= 64 ? ~VarSet{0} : (VarSet{1} << arity) - 1;
}

std::vector<int> members(VarSet set) {
  std::vector<int> out;
  while (set) {
    int b = std::countr_zero(set);
    out.push_back(b + 1);
    set &= set - 1;
  }
  return out;
}

int cardinality(VarSet set) { return std::popcount(set); }

std::size_t index_of(std::span<const std::uint8_t> x) {
  std::size_t idx = 0;
  for (auto v : x) idx = (idx << 1) | (v ? 1u : 0u);
  return idx;
}

Assignment assignment_of(std::size_t index, int arity) {
  Assignment x(static_cast<std::size_t>(arity));
  for (int i = 0; i < arity; ++i) x[static_cast<std::size_t>(i)] = (index >> (arity - 1 - i)) & 1u;
  return x;
}

VarSet ones_of_index(std::size_t index, int arity) {
  VarSet s = 0;
  for (int i = 0; i < arity; ++i)
    if ((index >> (arity - 1 - i)) & 1u) s |= VarSet{1} << i;
  return s;
}

std::size_t index_of_ones(VarSet ones, int arity) {
  std::size_t idx = 0;
  for (int i = 0; i < arity; ++i)
    if ((ones >> i) & 1u) idx |= std::size_t{1} << (arity - 1 - i);
  return idx;
}

// ---------------------------------------------------------------------------

CostTable::CostTable(int arity, std::vector<ExtendedCost> values) : arity_(arity), values_(std::move(values)) {
  check_table_arity(arity);
  if (values_.size() != (std::size_t{1} << arity))
    throw std::invalid_argument("cost table of arity " + std::to_string(arity) + " needs " +
                                std::to_string(std::size_t{1} << arity) + " values, got " +
                                std::to_string(values_.size()));
}

CostTable CostTable::constant(int arity, const ExtendedCost& value) {
  check_table_arity(arity);
  return CostTable(arity, std::vector<ExtendedCost>(std::size_t{1} << arity, value));
}

const ExtendedCost& CostTable::at(std::span<const std::uint8_t> x) const {
  if (static_cast<int>(x.size()) != arity_) throw std::invalid_argument("assignment length differs from table arity");
  return values_[index_of(x)];
}

bool CostTable::is_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](const ExtendedCost& c) { return c.is_finite(); });
}

// ---------------------------------------------------------------------------

PseudoBooleanFunction::PseudoBooleanFunction(int arity) : arity_(arity) { check_polynomial_arity(arity); }

PseudoBooleanFunction::PseudoBooleanFunction(int arity, const std::map<VarSet, Rational>& terms)
    : PseudoBooleanFunction(arity) {
  for (const auto& [vars, coef] : terms) add_term(vars, coef);
}

PseudoBooleanFunction PseudoBooleanFunction::constant(int arity, const Rational& c) {
  PseudoBooleanFunction p(arity);
  p.add_term(0, c);
  return p;
}

PseudoBooleanFunction PseudoBooleanFunction::monomial(int arity, VarSet vars, const Rational& coef) {
  PseudoBooleanFunction p(arity);
  p.add_term(vars, coef);
  return p;
}

Rational PseudoBooleanFunction::coefficient(VarSet vars) const {
  auto it = terms_.find(vars);
  return it == terms_.end() ? Rational(0) : it->second;
}

int PseudoBooleanFunction::degree() const {
  int d = 0;
  for (const auto& [vars, coef] : terms_) d = std::max(d, cardinality(vars));
  return d;
}

void PseudoBooleanFunction::add_term(VarSet vars, const Rational& coef) {
  if ((vars & ~full_set(arity_)) != 0)
    throw std::invalid_argument("term uses a variable beyond arity " + std::to_string(arity_));
  if (sgn(coef) == 0) return;
  auto [it, inserted] = terms_.try_emplace(vars, coef);
  if (!inserted) {
    it->second += coef;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

PseudoBooleanFunction& PseudoBooleanFunction::operator+=(const PseudoBooleanFunction& other) {
  if (other.arity_ > arity_) arity_ = other.arity_;
  for (const auto& [vars, coef] : other.terms_) add_term(vars, coef);
  return *this;
}

PseudoBooleanFunction& PseudoBooleanFunction::operator*=(const Rational& factor) {
  if (sgn(factor) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [vars, coef] : terms_) coef *= factor;
  return *this;
}

PseudoBooleanFunction PseudoBooleanFunction::padded(int new_arity) const {
  if (new_arity < arity_) throw std::invalid_argument("cannot pad to a smaller arity");
  PseudoBooleanFunction p(new_arity);
  p.terms_ = terms_;
  return p;
}

PseudoBooleanFunction operator+(PseudoBooleanFunction lhs, const PseudoBooleanFunction& rhs) {
  lhs += rhs;
  return lhs;
}

PseudoBooleanFunction operator*(const Rational& factor, PseudoBooleanFunction p) {
  p *= factor;
  return p;
}

// ---------------------------------------------------------------------------

Rational evaluate(const PseudoBooleanFunction& p, std::span<const std::uint8_t> x) {
  if (static_cast<int>(x.size()) != p.arity())
    throw std::invalid_argument("assignment length " + std::to_string(x.size()) + " differs from arity " +
                                std::to_string(p.arity()));
  VarSet ones = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) ones |= VarSet{1} << i;
  return evaluate_ones(p, ones);
}

Rational evaluate_ones(const PseudoBooleanFunction& p, VarSet ones) {
  Rational sum = 0;
  for (const auto& [vars, coef] : p.terms())
    if ((vars & ~ones) == 0) sum += coef;
  return sum;
}

CostTable zeta(const PseudoBooleanFunction& p) {
  const int n = p.arity();
  check_table_arity(n);
  std::vector<Rational> a(std::size_t{1} << n);
  for (const auto& [vars, coef] : p.terms()) a[index_of_ones(vars, n)] = coef;
  subset_transform(a, n, +1);
  return CostTable(n, std::vector<ExtendedCost>(a.begin(), a.end()));
}

PseudoBooleanFunction moebius(const CostTable& t) {
  const int n = t.arity();
  std::vector<Rational> a;
  a.reserve(t.size());
  for (const auto& v : t.values()) {
    if (v.is_infinite()) throw std::domain_error("moebius transform of a table with infinite entries");
    a.push_back(v.value());
  }
  subset_transform(a, n, -1);
  PseudoBooleanFunction p(n);
  for (std::size_t idx = 0; idx < a.size(); ++idx) p.add_term(ones_of_index(idx, n), a[idx]);
  return p;
}

Rational second_derivative(const PseudoBooleanFunction& p, int i, int j, std::span<const std::uint8_t> context) {
  const int n = p.arity();
  if (i < 1 || i > n || j < 1 || j > n) throw std::invalid_argument("derivative index out of range");
  if (i == j) throw std::invalid_argument("second derivative needs two distinct indices");
  if (static_cast<int>(context.size()) != n - 2) throw std::invalid_argument("context must cover the other n-2 variables");
  VarSet base = 0;
  std::size_t c = 0;
  for (int v = 1; v <= n; ++v) {
    if (v == i || v == j) continue;
    if (context[c++]) base |= VarSet{1} << (v - 1);
  }
  const VarSet bi = VarSet{1} << (i - 1), bj = VarSet{1} << (j - 1);
  return evaluate_ones(p, base | bi | bj) - evaluate_ones(p, base | bi) - evaluate_ones(p, base | bj) +
         evaluate_ones(p, base);
}

std::optional<DerivativeWitness> find_submodularity_violation(const PseudoBooleanFunction& p) {
  const int n = p.arity();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const VarSet pair = (VarSet{1} << (i - 1)) | (VarSet{1} << (j - 1));
      // The derivative is the polynomial sum_{I >= {i,j}} a_I prod_{I \ {i,j}} x.
      std::vector<std::pair<VarSet, Rational>> rest;
      VarSet support = 0;
      for (const auto& [vars, coef] : p.terms()) {
        if ((vars & pair) == pair) {
          rest.emplace_back(vars & ~pair, coef);
          support |= vars & ~pair;
        }
      }
      if (rest.empty()) continue;
      const auto support_vars = members(support);
      if (support_vars.size() > static_cast<std::size_t>(kMaxExhaustiveBits))
        throw SizeLimitError("second derivative depends on too many variables");
      const std::size_t count = std::size_t{1} << support_vars.size();
      for (std::size_t mask = 0; mask < count; ++mask) {
        VarSet ones = 0;
        for (std::size_t b = 0; b < support_vars.size(); ++b)
          if ((mask >> b) & 1u) ones |= VarSet{1} << (support_vars[b] - 1);
        Rational value = 0;
        for (const auto& [vars, coef] : rest)
          if ((vars & ~ones) == 0) value += coef;
        if (sgn(value) > 0) {
          DerivativeWitness w{i, j, Assignment(static_cast<std::size_t>(n), 0), value};
          for (int v : members(ones)) w.context[static_cast<std::size_t>(v - 1)] = 1;
          return w;
        }
      }
    }
  }
  return std::nullopt;
}

bool is_submodular(const PseudoBooleanFunction& p) { return !find_submodularity_violation(p).has_value(); }

bool is_submodular(const CostTable& t) {
  const int n = t.arity();
  const std::size_t size = t.size();
  for (int bi = 0; bi < n; ++bi) {
    for (int bj = bi + 1; bj < n; ++bj) {
      const std::size_t mi = std::size_t{1} << bi, mj = std::size_t{1} << bj;
      for (std::size_t idx = 0; idx < size; ++idx) {
        if (idx & (mi | mj)) continue;
        // min/max pair: (idx|mi, idx|mj) vs (idx, idx|mi|mj)
        ExtendedCost lhs = t[idx] + t[idx | mi | mj];
        ExtendedCost rhs = t[idx | mi] + t[idx | mj];
        if (rhs.is_infinite()) continue;
        if (lhs > rhs) return false;
      }
    }
  }
  return true;
}

PseudoBooleanFunction dual(const PseudoBooleanFunction& p) {
  PseudoBooleanFunction out(p.arity());
  for (const auto& [vars, coef] : p.terms()) {
    if (cardinality(vars) > kMaxExhaustiveBits) throw SizeLimitError("term degree too large to dualize");
    // prod_{i in I} (1 - x_i) = sum_{T subset I} (-1)^|T| prod_T x
    for (VarSet sub = vars;; sub = (sub - 1) & vars) {
      out.add_term(sub, cardinality(sub) % 2 ? Rational(-coef) : coef);
      if (sub == 0) break;
    }
  }
  return out;
}

CostTable dual(const CostTable& t) {
  const std::size_t mask = t.size() - 1;
  std::vector<ExtendedCost> values(t.size());
  for (std::size_t idx = 0; idx < t.size(); ++idx) values[idx] = t[mask ^ idx];
  return CostTable(t.arity(), std::move(values));
}

PseudoBooleanFunction combine(std::span<const WeightedFunction> items) {
  int arity = 0;
  for (const auto& item : items) {
    if (sgn(item.weight) < 0) throw std::invalid_argument("negative weight in a cone combination");
    arity = std::max(arity, item.function.arity());
  }
  PseudoBooleanFunction out(arity);
  for (const auto& item : items) {
    for (const auto& [vars, coef] : item.function.terms()) out.add_term(vars, Rational(item.weight * coef));
  }
  return out;
}

Minimum min_brute_force(const CostTable& t) {
  std::optional<std::size_t> best;
  for (std::size_t idx = 0; idx < t.size(); ++idx) {
    if (t[idx].is_infinite()) continue;
    if (!best || t[idx] < t[*best]) best = idx;
  }
  if (!best) throw std::domain_error("every entry of the table is infinite");
  return {t[*best], assignment_of(*best, t.arity())};
}

CostTable project(const PseudoBooleanFunction& p, std::span<const int> hidden) {
  const int total = p.arity();
  VarSet hidden_set = 0;
  for (int h : hidden) {
    if (h < 1 || h > total) throw std::invalid_argument("hidden index out of range");
    const VarSet bit = VarSet{1} << (h - 1);
    if (hidden_set & bit) throw std::invalid_argument("hidden indices overlap");
    hidden_set |= bit;
  }
  const int n = total - static_cast<int>(hidden.size());
  check_table_arity(n);
  std::vector<int> visible;
  for (int v = 1; v <= total; ++v)
    if (!((hidden_set >> (v - 1)) & 1u)) visible.push_back(v);

  // Hidden variables linked by a shared term are minimized jointly; the
  // remaining groups are independent once the visible part is fixed.
  std::vector<int> parent(static_cast<std::size_t>(total + 1));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::vector<std::pair<VarSet, Rational>> visible_terms;
  for (const auto& [vars, coef] : p.terms()) {
    const auto hv = members(vars & hidden_set);
    for (std::size_t k = 1; k < hv.size(); ++k) parent[find(hv[k])] = find(hv[0]);
    if (hv.empty()) visible_terms.emplace_back(vars, coef);
  }
  struct Group {
    std::vector<int> vars;
    std::vector<std::pair<VarSet, Rational>> terms;
  };
  std::map<int, Group> groups;
  for (const auto& [vars, coef] : p.terms()) {
    const VarSet hv = vars & hidden_set;
    if (hv) groups[find(members(hv).front())].terms.emplace_back(vars, coef);
  }
  for (int h : hidden) {
    auto it = groups.find(find(h));
    if (it != groups.end()) it->second.vars.push_back(h);
  }
  for (auto& [root, g] : groups) {
    if (g.vars.size() > static_cast<std::size_t>(kMaxExhaustiveBits))
      throw SizeLimitError("too many interacting hidden variables to project");
  }

  std::vector<ExtendedCost> values(std::size_t{1} << n);
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    VarSet ones = 0;
    for (int r = 0; r < n; ++r)
      if ((idx >> (n - 1 - r)) & 1u) ones |= VarSet{1} << (visible[static_cast<std::size_t>(r)] - 1);
    Rational value = 0;
    for (const auto& [vars, coef] : visible_terms)
      if ((vars & ~ones) == 0) value += coef;
    for (const auto& [root, g] : groups) {
      std::optional<Rational> best;
      const std::size_t count = std::size_t{1} << g.vars.size();
      for (std::size_t mask = 0; mask < count; ++mask) {
        VarSet all = ones;
        for (std::size_t b = 0; b < g.vars.size(); ++b)
          if ((mask >> b) & 1u) all |= VarSet{1} << (g.vars[b] - 1);
        Rational s = 0;
        for (const auto& [vars, coef] : g.terms)
          if ((vars & ~all) == 0) s += coef;
        if (!best || s < *best) best = s;
      }
      value += *best;
    }
    values[idx] = value;
  }
  return CostTable(n, std::move(values));
}

PseudoBooleanFunction remap(const PseudoBooleanFunction& p, int new_arity, std::span<const int> var_map) {
  if (static_cast<int>(var_map.size()) != p.arity()) throw std::invalid_argument("variable map size differs from arity");
  PseudoBooleanFunction out(new_arity);
  for (const auto& [vars, coef] : p.terms()) {
    VarSet mapped = 0;
    for (int v : members(vars)) {
      const int target = var_map[static_cast<std::size_t>(v - 1)];
      if (target < 1 || target > new_arity) throw std::invalid_argument("variable map target out of range");
      mapped |= VarSet{1} << (target - 1);
    }
    out.add_term(mapped, coef);
  }
  return out;
}

}  // namespace subcut
