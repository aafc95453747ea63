// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. All randomness is seeded.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "subcut/errors.hpp"
#include "subcut/expressibility.hpp"
#include "subcut/fans.hpp"
#include "subcut/mincut.hpp"
#include "subcut/multimorphism.hpp"
#include "subcut/vcsp.hpp"

using namespace subcut;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

CostTable offset_table(const CostTable& t, const Rational& shift) {
  std::vector<ExtendedCost> v;
  for (const auto& x : t.values()) v.push_back(Rational(x.value() - shift));
  return CostTable(t.arity(), v);
}

// 1
void fsep_validity(Outcome& out) {
  const TupleOperation op = f_sep();
  out.require(op.outputs().size() == 32, "32 inputs");
  out.require(is_conservative(op), "conservative");
  out.require(is_hamming_nonincreasing(op), "Hamming non-increasing over all pairs");
  out.detail << "conservative and Hamming non-increasing";
}

// 2
void inequality_counts(Outcome& out) {
  const auto all = generate_inequalities(f_sep(), 4);
  const auto reduced = remove_pairwise_sums(all);
  const auto classes = classify_inequalities(reduced);
  out.require(all.size() == 4635, "4635 distinct");
  out.require(reduced.size() == 30, "30 irredundant");
  out.require(classes.submodularity.size() == 24, "24 submodularity");
  out.require(classes.sep.size() == 6, "6 Sep");
  out.require(classes.other.empty(), "0 other");
  out.detail << "distinct=" << all.size() << " irredundant=" << reduced.size()
             << " submodularity=" << classes.submodularity.size() << " sep=" << classes.sep.size()
             << " other=" << classes.other.size();
}

// 3
void five_row_witness(Outcome& out) {
  const std::vector<Assignment> in{{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const std::vector<Assignment> expected{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}, {1, 0, 1, 1}, {0, 1, 1, 1}};
  const auto got = apply_coordinatewise(f_sep(), in);
  out.require(got == expected, "columnwise images");
  const CostTable th = theta({1, 1, 0, 0});
  ExtendedCost before = 0, after = 0;
  for (const auto& x : in) before += th.at(x);
  for (const auto& x : got) after += th.at(x);
  out.require(before == ExtendedCost(0) && after == ExtendedCost(1), "theta sums 0 -> 1");
  out.require(!is_multimorphism(f_sep(), th), "f_sep not a multimorphism of theta");
  out.detail << "theta_(1,1,0,0) sum before " << to_string(before) << ", after " << to_string(after);
}

// 4
void binary_multimorphisms(Outcome& out) {
  const std::vector<CostTable> atoms{CostTable(2, {0, 1, 1, 0}), CostTable(2, {0, 1, 0, 0}), CostTable(1, {1, 0}),
                                     CostTable(1, {0, 1})};
  std::mt19937_64 rng(404);
  std::vector<CostTable> random;
  for (int i = 0; i < 100; ++i) random.push_back(oracle::random_submodular_table(2, rng, -9, 9));

  std::set<std::uint32_t> structural, of_atoms, of_all;
  for (std::uint32_t code = 0; code < 256; ++code) {
    std::vector<std::uint32_t> outputs(4);
    for (std::uint32_t in = 0; in < 4; ++in) outputs[in] = (code >> (2 * in)) & 3U;
    const TupleOperation op(2, outputs);
    if (is_conservative(op) && is_hamming_nonincreasing(op)) structural.insert(code);
    bool atoms_ok = true;
    for (const auto& t : atoms) atoms_ok = atoms_ok && is_multimorphism(op, t);
    if (!atoms_ok) continue;
    of_atoms.insert(code);
    bool all_ok = true;
    for (const auto& t : random) all_ok = all_ok && is_multimorphism(op, t);
    if (all_ok) of_all.insert(code);
  }
  out.require(structural == of_atoms, "structural = Mul(atoms)");
  out.require(structural == of_all, "structural = Mul(atoms and random tables)");
  out.require(!structural.empty(), "nonempty");
  out.detail << structural.size() << " of 256 operations in each set";
}

// 5
void fan_gadgets(Outcome& out) {
  const auto fans = enumerate_fans(4);
  int max_hidden = 0;
  for (const auto& f : fans) {
    const Gadget g = fan_gadget(f);
    const FanSpec up = f.orientation == FanOrientation::upper ? f : mirror(f);
    const int m = cardinality(fan_apex(up));
    const int h = static_cast<int>(g.hidden.size());
    max_hidden = std::max(max_hidden, h);
    out.require(g.quadratic.degree() <= 2 && is_submodular(g.quadratic), "quadratic submodular gadget");
    out.require(oracle::project(g.quadratic, g.hidden) == offset_table(fan_table(f), g.kappa),
                "projection of " + to_string(f.orientation) + " " + format_family(f.family));
    out.require(h <= 1 + m / 2 && h <= 3, "hidden bound");
  }
  out.detail << fans.size() << " fans, at most " << max_hidden << " hidden variables";
}

// 6
void three_way_agreement(Outcome& out) {
  std::vector<std::pair<std::string, CostTable>> cases;
  for (const auto& t : balanced_tuples()) cases.push_back({"theta", theta(t)});
  for (int n = 0; n <= 4; ++n)
    for (const auto& f : enumerate_fans(n)) cases.push_back({"fan", fan_table(f.orientation == FanOrientation::upper ? f : f)});
  std::mt19937_64 rng(6006);
  for (int i = 0; i < 1000; ++i) cases.push_back({"random", oracle::random_submodular_table(4, rng)});
  // nonnegative fan mixtures plus a multiple of some theta, to exercise
  // the inexpressible side beyond the six theta tables
  const auto fans4 = enumerate_fans(4);
  std::uniform_int_distribution<std::size_t> pick(0, fans4.size() - 1);
  std::uniform_int_distribution<int> weight(0, 4);
  for (int i = 0; i < 200; ++i) {
    std::vector<ExtendedCost> v(16, 0);
    for (int k = 0; k < 3; ++k) {
      const CostTable f = fan_table(fans4[pick(rng)]);
      const Rational w = weight(rng);
      for (std::size_t x = 0; x < 16; ++x) v[x] += w * f[x];
    }
    const CostTable th = theta(balanced_tuples()[static_cast<std::size_t>(i % 6)]);
    const Rational w = weight(rng);
    for (std::size_t x = 0; x < 16; ++x) v[x] += w * th[x];
    cases.push_back({"mixture", CostTable(4, v)});
  }

  int agree = 0, expressible = 0, gadgets = 0;
  for (const auto& [kind, raw] : cases) {
    const CostTable t = raw.arity() == 4 ? raw : zeta(moebius(raw).padded(4));
    if (!is_submodular(t)) {
      out.require(false, kind + " table not submodular");
      continue;
    }
    const bool sep = check_sep(moebius(t)).satisfied;
    const bool mm = is_multimorphism(f_sep(), t);
    bool lp = true;
    try {
      const auto d = decompose_into_fans(t);
      out.require(reconstruct(d, 4) == t, "exact reconstruction");
      for (const auto& part : d.parts) out.require(part.weight > 0, "positive weights");
    } catch (const InfeasibleError&) {
      lp = false;
    }
    const bool same = sep == mm && mm == lp;
    out.require(same, kind + " disagreement");
    agree += same;
    if (kind == "theta") out.require(!sep && !mm && !lp, "theta must fail all three");
    if (sep && lp) {
      ++expressible;
      const Gadget g = express_by_binary(t);
      const bool ok = verify_gadget(g, t) && oracle::project(g.quadratic, g.hidden) == offset_table(t, g.kappa);
      out.require(ok, kind + " gadget verification");
      gadgets += ok;
    }
  }
  out.detail << agree << "/" << cases.size() << " agree, " << expressible << " expressible with " << gadgets
             << " verified gadgets, " << cases.size() - static_cast<std::size_t>(expressible) << " inexpressible";
}

// 7
void mincut_correctness(Outcome& out) {
  std::mt19937_64 rng(7007);
  int matched = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + i % 14;
    const auto p = oracle::random_quadratic_submodular(n, rng, 0.4);
    const auto m = minimize_quadratic(p);
    const auto b = min_brute_force(zeta(p));
    const bool ok = m.value == b.value.value() && evaluate(p, m.argmin) == m.value;
    out.require(ok, "instance " + std::to_string(i));
    matched += ok;
  }
  out.detail << matched << "/500 exact matches";
}

Constraint random_fan_constraint(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> arity_pick(3, 4);
  const int arity = arity_pick(rng);
  const auto fans = enumerate_fans(arity);
  std::vector<FanSpec> nonconstant;
  for (const auto& f : fans)
    if (fan_table(f) != CostTable::constant(arity, fan_table(f)[0])) nonconstant.push_back(f);
  std::uniform_int_distribution<std::size_t> pick(0, nonconstant.size() - 1);
  const CostTable t = fan_table(nonconstant[pick(rng)]);
  const Rational w = oracle::random_rational(rng, 1, 5, 2);
  std::vector<int> vars(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) vars[static_cast<std::size_t>(v)] = v + 1;
  std::shuffle(vars.begin(), vars.end(), rng);
  Constraint c;
  c.scope.assign(vars.begin(), vars.begin() + arity);
  for (const auto& x : t.values()) c.values.push_back(w * x);
  return c;
}

// 8
void vcsp_end_to_end(Outcome& out) {
  std::mt19937_64 rng(8008);
  int matched = 0, max_hidden_per = 0, higher = 0;
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<int> nd(4, 12), bd(0, 10), fd(1, 6);
    const int n = nd(rng);
    VcspInstance inst;
    inst.domains.assign(static_cast<std::size_t>(n), 2);
    const int fans = fd(rng);
    for (int k = 0; k < fans; ++k) inst.constraints.push_back(random_fan_constraint(n, rng));
    higher += fans;
    const int binaries = bd(rng);
    std::uniform_int_distribution<int> var(1, n);
    for (int k = 0; k < binaries; ++k) {
      int a = var(rng), b = var(rng);
      while (b == a) b = var(rng);
      inst.constraints.push_back({{a, b}, oracle::random_submodular_table(2, rng, -6, 6).values()});
    }
    std::shuffle(inst.constraints.begin(), inst.constraints.end(), rng);
    const SolveReport cut = solve_via_cuts(inst);
    const SolveReport brute = brute_force_solve(inst);
    const bool ok = cut.optimum == brute.optimum && instance_cost(inst, cut.assignment) == cut.optimum;
    out.require(ok, "instance " + std::to_string(i));
    for (const auto& block : cut.provenance) {
      max_hidden_per = std::max(max_hidden_per, block.count);
      out.require(block.count <= 3, "at most 3 hidden per fan constraint");
    }
    out.require(cut.hidden_vars_used <= 3 * fans, "linear hidden budget");
    matched += ok;
  }
  out.detail << matched << "/100 optima match, " << higher << " fan constraints, at most " << max_hidden_per
             << " hidden per constraint";
}

// Monge table on d x d: unary parts plus nonpositive cross differences.
std::vector<ExtendedCost> random_monge(int du, int dv, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(-5, 5), delta(-4, 0);
  std::vector<int> a(static_cast<std::size_t>(du)), b(static_cast<std::size_t>(dv));
  for (auto& x : a) x = u(rng);
  for (auto& x : b) x = u(rng);
  std::vector<std::vector<int>> d(static_cast<std::size_t>(du), std::vector<int>(static_cast<std::size_t>(dv), 0));
  for (int i = 1; i < du; ++i)
    for (int j = 1; j < dv; ++j) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = delta(rng);
  std::vector<ExtendedCost> values;
  for (int i = 0; i < du; ++i)
    for (int j = 0; j < dv; ++j) {
      int c = a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(j)];
      for (int p = 1; p <= i; ++p)
        for (int q = 1; q <= j; ++q) c += d[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
      values.push_back(c);
    }
  return values;
}

// 9
void encoding(Outcome& out) {
  std::mt19937_64 rng(9009);
  int matched = 0;
  for (int i = 0; i < 50; ++i) {
    std::uniform_int_distribution<int> nd(2, 6), cd(1, 8), ud(-5, 5);
    const int n = nd(rng);
    VcspInstance inst;
    inst.domains.assign(static_cast<std::size_t>(n), 3);
    std::uniform_int_distribution<int> var(1, n);
    for (int v = 1; v <= n; ++v)
      if (i % 2 == 0) inst.constraints.push_back({{v}, {ud(rng), ud(rng), ud(rng)}});
    const int binaries = cd(rng);
    for (int k = 0; k < binaries; ++k) {
      int a = var(rng), b = var(rng);
      while (b == a) b = var(rng);
      inst.constraints.push_back({{a, b}, random_monge(3, 3, rng)});
    }
    const BooleanEncoding enc = boolean_encode(inst);
    const SolveReport boolean = solve_via_cuts(enc.boolean);
    const std::vector<int> decoded = enc.decode(boolean.assignment);
    const SolveReport brute = brute_force_solve(inst);
    const bool codeword = enc.encode(decoded) == boolean.assignment;
    const bool ok = codeword && boolean.optimum == brute.optimum && instance_cost(inst, decoded) == brute.optimum;
    out.require(codeword, "chain relations respected at the optimum");
    out.require(ok, "instance " + std::to_string(i));
    matched += ok;
  }
  out.detail << matched << "/50 decoded optima match";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "f_sep validity", 1, fsep_validity},
      {2, "inequality counts", 300, inequality_counts},
      {3, "five-row witness for theta_(1,1,0,0)", 1, five_row_witness},
      {4, "binary multimorphisms, k=2", 10, binary_multimorphisms},
      {5, "fan gadgets, arity 4", 60, fan_gadgets},
      {6, "Sep / f_sep / fan LP agreement", 600, three_way_agreement},
      {7, "min-cut vs brute force", 120, mincut_correctness},
      {8, "VCSP end to end", 300, vcsp_end_to_end},
      {9, "chain encoding, d=3", 60, encoding},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(secs < c.limit_seconds, "runtime limit");
    std::cout << (out.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << secs << " s, limit "
              << c.limit_seconds << " s): " << out.detail.str() << std::endl;
    failures += !out.pass;
  }
  return failures == 0 ? 0 : 1;
}
