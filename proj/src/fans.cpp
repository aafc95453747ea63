#include "subcut/fans.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace subcut {

namespace {

bool subset_of(VarSet a, VarSet b) { return (a & ~b) == 0; }

void require_valid(const FanSpec& spec) {
  auto why = explain_invalid_fan(spec);
  if (!why.empty()) throw std::invalid_argument("invalid fan: " + why);
}

// Upper fans with at least two members and union `apex`, appended in
// increasing lexicographic order of member lists.
void extend_families(VarSet apex, const std::vector<VarSet>& candidates, std::size_t start,
                     std::vector<VarSet>& current, std::vector<std::vector<VarSet>>& out) {
  for (std::size_t c = start; c < candidates.size(); ++c) {
    const VarSet a = candidates[c];
    bool ok = true;
    for (VarSet b : current) {
      if (subset_of(a, b) || subset_of(b, a) || (a | b) != apex) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    current.push_back(a);
    if (current.size() >= 2) out.push_back(current);
    extend_families(apex, candidates, c + 1, current, out);
    current.pop_back();
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

VarSet fan_apex(const FanSpec& spec) {
  if (spec.orientation == FanOrientation::upper) {
    VarSet u = 0;
    for (VarSet a : spec.family) u |= a;
    return u;
  }
  VarSet m = full_set(spec.arity);
  for (VarSet a : spec.family) m &= a;
  return m;
}

std::string explain_invalid_fan(const FanSpec& spec) {
  if (spec.arity < 0 || spec.arity > kMaxTableArity) return "arity out of range";
  const VarSet all = full_set(spec.arity);
  for (VarSet a : spec.family)
    if (!subset_of(a, all)) return "member uses a variable beyond arity " + std::to_string(spec.arity);
  const VarSet apex = fan_apex(spec);
  const bool upper = spec.orientation == FanOrientation::upper;
  for (std::size_t i = 0; i < spec.family.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.family.size(); ++j) {
      const VarSet a = spec.family[i], b = spec.family[j];
      const std::string pair = "{" + format_family({a}) + "} and {" + format_family({b}) + "}";
      if (a == b) return "duplicate member " + pair;
      if (subset_of(a, b) || subset_of(b, a)) return "members " + pair + " are comparable";
      if (upper && (a | b) != apex) return "union of " + pair + " differs from the union of the family";
      if (!upper && (a & b) != apex) return "intersection of " + pair + " differs from the intersection of the family";
    }
  }
  return {};
}

bool validate_fan(const FanSpec& spec) { return explain_invalid_fan(spec).empty(); }

CostTable fan_table(const FanSpec& spec) {
  require_valid(spec);
  const VarSet apex = fan_apex(spec);
  const bool upper = spec.orientation == FanOrientation::upper;
  std::vector<ExtendedCost> values(std::size_t{1} << spec.arity);
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const VarSet x = ones_of_index(idx, spec.arity);
    if (upper ? subset_of(apex, x) : subset_of(x, apex)) {
      values[idx] = -2;
      continue;
    }
    const bool touches = std::any_of(spec.family.begin(), spec.family.end(),
                                     [&](VarSet a) { return upper ? subset_of(a, x) : subset_of(x, a); });
    values[idx] = touches ? -1 : 0;
  }
  return CostTable(spec.arity, std::move(values));
}

FanSpec mirror(const FanSpec& spec) {
  FanSpec m{spec.orientation == FanOrientation::upper ? FanOrientation::lower : FanOrientation::upper, spec.arity, {}};
  const VarSet all = full_set(spec.arity);
  for (VarSet a : spec.family) m.family.push_back(all & ~a);
  return m;
}

PseudoBooleanFunction fan_polynomial(const FanSpec& spec) {
  require_valid(spec);
  if (spec.orientation == FanOrientation::lower) return dual(fan_polynomial(mirror(spec)));
  PseudoBooleanFunction p(spec.arity);
  const auto r = static_cast<long>(spec.family.size());
  p.add_term(fan_apex(spec), Rational(r - 2));
  for (VarSet a : spec.family) p.add_term(a, Rational(-1));
  return p;
}

MergedFan merge_equivalence_classes(const FanSpec& spec) {
  require_valid(spec);
  if (spec.orientation != FanOrientation::upper) throw std::invalid_argument("class merging applies to upper fans");
  if (spec.family.size() < 2) throw std::invalid_argument("class merging needs at least two members");

  // signature of an element: which members contain it
  std::map<std::uint64_t, VarSet> by_signature;
  for (int e : members(fan_apex(spec))) {
    std::uint64_t sig = 0;
    for (std::size_t j = 0; j < spec.family.size(); ++j)
      if ((spec.family[j] >> (e - 1)) & 1u) sig |= std::uint64_t{1} << j;
    by_signature[sig] |= VarSet{1} << (e - 1);
  }
  MergedFan out;
  for (const auto& [sig, cls] : by_signature) out.classes.push_back(cls);
  std::sort(out.classes.begin(), out.classes.end(),
            [](VarSet a, VarSet b) { return members(a).front() < members(b).front(); });

  out.reduced = FanSpec{FanOrientation::upper, spec.arity, {}};
  for (VarSet a : spec.family) {
    VarSet reps = 0;
    for (VarSet cls : out.classes)
      if (subset_of(cls, a)) reps |= VarSet{1} << (members(cls).front() - 1);
    out.reduced.family.push_back(reps);
  }
  return out;
}

// ---------------------------------------------------------------------------

CostTable expressed_table(const Gadget& g) {
  const CostTable projected = project(g.quadratic, g.hidden);
  std::vector<ExtendedCost> values;
  values.reserve(projected.size());
  for (const auto& v : projected.values()) values.push_back(v + ExtendedCost(g.kappa));
  return CostTable(projected.arity(), std::move(values));
}

bool verify_gadget(const Gadget& g, const CostTable& target) {
  if (g.quadratic.degree() > 2 || !is_submodular(g.quadratic)) return false;
  if (g.visible_arity() != target.arity()) return false;
  return expressed_table(g) == target;
}

Gadget dual(const Gadget& g) { return Gadget{dual(g.quadratic), g.hidden, g.kappa}; }

GadgetBuilder::GadgetBuilder(int visible_arity) : visible_arity_(visible_arity) {}

void GadgetBuilder::add(const Gadget& g, const Rational& weight) {
  if (sgn(weight) < 0) throw std::invalid_argument("negative gadget weight");
  if (g.visible_arity() != visible_arity_) throw std::invalid_argument("gadget visible arity mismatch");
  if (sgn(weight) == 0) return;
  hidden_count_ += static_cast<int>(g.hidden.size());
  parts_.emplace_back(g, weight);
}

Gadget GadgetBuilder::build() const {
  const int total = visible_arity_ + hidden_count_;
  Gadget out{PseudoBooleanFunction(total), {}, kappa_};
  for (int h = visible_arity_ + 1; h <= total; ++h) out.hidden.push_back(h);

  int next_hidden = visible_arity_ + 1;
  for (const auto& [g, weight] : parts_) {
    std::vector<int> var_map(static_cast<std::size_t>(g.quadratic.arity()), 0);
    std::vector<bool> is_hidden(var_map.size(), false);
    for (int h : g.hidden) is_hidden[static_cast<std::size_t>(h - 1)] = true;
    int next_visible = 1;
    for (std::size_t v = 0; v < var_map.size(); ++v)
      if (!is_hidden[v]) var_map[v] = next_visible++;
    for (int h : g.hidden) var_map[static_cast<std::size_t>(h - 1)] = next_hidden++;
    out.quadratic += weight * remap(g.quadratic, total, var_map);
    out.kappa += weight * g.kappa;
  }
  return out;
}

Gadget negative_monomial_gadget(int arity, VarSet vars, const Rational& weight) {
  if (sgn(weight) <= 0) throw std::invalid_argument("negative monomial gadget needs a positive weight");
  if (vars == 0) throw std::invalid_argument("negative monomial gadget needs a nonempty variable set");
  if (!subset_of(vars, full_set(arity))) throw std::invalid_argument("monomial variable beyond arity");
  const int y = arity + 1;
  const VarSet ybit = VarSet{1} << (y - 1);
  Gadget g{PseudoBooleanFunction(arity + 1), {y}, 0};
  g.quadratic.add_term(ybit, weight * (cardinality(vars) - 1));
  for (int v : members(vars)) g.quadratic.add_term(ybit | (VarSet{1} << (v - 1)), Rational(-weight));
  return g;
}

Gadget fan_gadget(const FanSpec& spec) {
  require_valid(spec);
  if (spec.orientation == FanOrientation::lower) return dual(fan_gadget(mirror(spec)));

  const int n = spec.arity;
  if (spec.family.empty() || (spec.family.size() == 1 && spec.family.front() == 0))
    return Gadget{PseudoBooleanFunction(n), {}, Rational(-2)};
  if (spec.family.size() == 1) return negative_monomial_gadget(n, spec.family.front(), Rational(2));

  const MergedFan merged = merge_equivalence_classes(spec);
  const int m_reduced = static_cast<int>(merged.classes.size());
  VarSet common = full_set(n);
  for (VarSet a : merged.reduced.family) common &= a;

  int big_classes = 0;
  for (VarSet cls : merged.classes)
    if (cardinality(cls) >= 2) ++big_classes;

  const int total = n + 1 + big_classes;
  const int y = n + 1;
  const VarSet ybit = VarSet{1} << (y - 1);
  Gadget g{PseudoBooleanFunction(total), {}, 0};
  for (int h = y; h <= total; ++h) g.hidden.push_back(h);

  // y * (2(m'-1) - |L| - sum_L z - 2 sum_K z), z = product over the class
  int l_size = 0;
  for (VarSet cls : merged.classes) {
    const VarSet rep = VarSet{1} << (members(cls).front() - 1);
    if (!(common & rep)) ++l_size;
  }
  g.quadratic.add_term(ybit, Rational(2 * (m_reduced - 1) - l_size));

  int next_hidden = y + 1;
  for (VarSet cls : merged.classes) {
    const VarSet rep = VarSet{1} << (members(cls).front() - 1);
    const Rational c = (common & rep) ? 2 : 1;
    if (cardinality(cls) == 1) {
      g.quadratic.add_term(ybit | cls, Rational(-c));
      continue;
    }
    // -c * y * prod(cls) through its own hidden variable w
    const VarSet wbit = VarSet{1} << (next_hidden++ - 1);
    const VarSet scope = ybit | cls;
    g.quadratic.add_term(wbit, c * (cardinality(scope) - 1));
    for (int v : members(scope)) g.quadratic.add_term(wbit | (VarSet{1} << (v - 1)), Rational(-c));
  }
  return g;
}

Gadget two_monotone_gadget(VarSet a, VarSet b, int arity) {
  if (!subset_of(a, full_set(arity)) || !subset_of(b, full_set(arity)))
    throw std::invalid_argument("2-monotone sets exceed the arity");
  const int n = arity;
  const VarSet ybit = VarSet{1} << n;
  // y * (1 + F/2) + (1 - y) * (1 + G/2) with F = {A}, G = {B}; over (x, y)
  // the two products are the upper fan {A + y} and the lower fan {B}.
  const FanSpec upper{FanOrientation::upper, n + 1, {a | ybit}};
  const FanSpec lower{FanOrientation::lower, n + 1, {b}};
  GadgetBuilder builder(n + 1);
  builder.add(fan_gadget(upper), Rational(1, 2));
  builder.add(fan_gadget(lower), Rational(1, 2));
  builder.add_constant(1);
  Gadget inner = builder.build();

  Gadget g{std::move(inner.quadratic), {n + 1}, inner.kappa};
  for (int h : inner.hidden) g.hidden.push_back(h);
  return g;
}

std::vector<FanSpec> enumerate_fans(int arity) {
  if (arity < 0 || arity > 4) throw std::invalid_argument("fan enumeration supports arity 0..4");
  std::vector<FanSpec> uppers;
  const VarSet all = full_set(arity);
  for (VarSet apex = 0; apex <= all; ++apex) {
    uppers.push_back(FanSpec{FanOrientation::upper, arity, {apex}});
    std::vector<VarSet> candidates;
    for (VarSet s = 0; s < apex; ++s)
      if (subset_of(s, apex) && s != apex) candidates.push_back(s);
    std::vector<std::vector<VarSet>> families;
    std::vector<VarSet> current;
    extend_families(apex, candidates, 0, current, families);
    for (auto& f : families) uppers.push_back(FanSpec{FanOrientation::upper, arity, std::move(f)});
  }

  std::vector<FanSpec> ordered;
  ordered.push_back(FanSpec{FanOrientation::upper, arity, {}});
  ordered.insert(ordered.end(), uppers.begin(), uppers.end());
  for (const auto& f : uppers) ordered.push_back(mirror(f));

  std::vector<FanSpec> out;
  std::set<std::vector<ExtendedCost>> seen;
  for (auto& f : ordered) {
    if (seen.insert(fan_table(f).values()).second) out.push_back(std::move(f));
  }
  return out;
}

std::vector<VarSet> parse_family(std::string_view text) {
  std::vector<VarSet> family;
  if (trim(text).empty()) return family;
  std::size_t pos = 0;
  while (true) {
    const auto semi = text.find(';', pos);
    std::string member = trim(text.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos));
    if (member.size() >= 2 && member.front() == '{' && member.back() == '}') member = trim(member.substr(1, member.size() - 2));
    VarSet s = 0;
    if (!member.empty() && member != "-") {
      std::stringstream ss(member);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        std::size_t used = 0;
        int v = 0;
        try {
          v = std::stoi(item, &used);
        } catch (const std::exception&) {
          throw std::invalid_argument("malformed family member '" + member + "'");
        }
        if (used != item.size() || v < 1 || v > kMaxPolynomialArity)
          throw std::invalid_argument("malformed family member '" + member + "'");
        s |= VarSet{1} << (v - 1);
      }
    }
    family.push_back(s);
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return family;
}

std::string format_family(const std::vector<VarSet>& family) {
  std::string out;
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (j) out += ';';
    const auto vs = members(family[j]);
    if (vs.empty()) out += "{}";
    for (std::size_t k = 0; k < vs.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(vs[k]);
    }
  }
  return out;
}

std::string to_string(FanOrientation o) { return o == FanOrientation::upper ? "upper" : "lower"; }

}  // namespace subcut
