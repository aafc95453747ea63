#include "subcut/multimorphism.hpp"

#include <algorithm>
#include <limits>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "subcut/errors.hpp"

namespace subcut {

namespace {

// Output rows of the separating operation; column c is the image of the
// 5-tuple whose bits, row 1 first, spell c in binary.
constexpr std::array<const char*, 5> kSepRows = {
    "00000000000000000001000100010001",
    "00000000000001010000000000000111",
    "00000011000100110000011111111111",
    "00010101111111111111111111111111",
    "01111111011111110111111101111111",
};

void check_size(int arity, int k) {
  if (arity < 0 || k < 1 || arity * k > kMaxMultimorphismBits)
    throw SizeLimitError("exhaustive multimorphism check needs arity * k <= " +
                         std::to_string(kMaxMultimorphismBits));
}

// Calls visit(inputs, outputs) for every choice of k argument tuples, where
// inputs[i] and outputs[i] are table indices of t_i and op_i(t).
template <typename Visit>
bool for_each_argument_choice(const TupleOperation& op, int arity, Visit&& visit) {
  const int k = op.k();
  const std::uint32_t columns = std::uint32_t{1} << k;
  std::vector<std::array<std::uint32_t, kMaxMultimorphismBits>> in(static_cast<std::size_t>(arity) + 1);
  std::vector<std::array<std::uint32_t, kMaxMultimorphismBits>> out(static_cast<std::size_t>(arity) + 1);
  in[0].fill(0);
  out[0].fill(0);

  // Depth-first over the columns of the k x arity argument matrix.
  auto recurse = [&](auto&& self, int j) -> bool {
    if (j == arity) return visit(in[static_cast<std::size_t>(j)], out[static_cast<std::size_t>(j)]);
    const auto& pin = in[static_cast<std::size_t>(j)];
    const auto& pout = out[static_cast<std::size_t>(j)];
    auto& nin = in[static_cast<std::size_t>(j) + 1];
    auto& nout = out[static_cast<std::size_t>(j) + 1];
    const int shift = arity - 1 - j;
    for (std::uint32_t c = 0; c < columns; ++c) {
      const std::uint32_t oc = op(c);
      for (int i = 0; i < k; ++i) {
        nin[static_cast<std::size_t>(i)] = pin[static_cast<std::size_t>(i)] | (((c >> (k - 1 - i)) & 1u) << shift);
        nout[static_cast<std::size_t>(i)] = pout[static_cast<std::size_t>(i)] | (((oc >> (k - 1 - i)) & 1u) << shift);
      }
      if (!self(self, j + 1)) return false;
    }
    return true;
  };
  return recurse(recurse, 0);
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1000)) * 1099511628211ull;
    return h;
  }
};

LinearInequality from_sets(int arity, const std::vector<std::pair<VarSet, int>>& coefficient_terms) {
  // sum_X w_X a_X >= 0 rewritten over table values via the Moebius formula
  LinearInequality ineq{arity, std::vector<int>(std::size_t{1} << arity, 0)};
  for (const auto& [x, w] : coefficient_terms) {
    for (VarSet t = x;; t = (t - 1) & x) {
      const int sign = cardinality(x & ~t) % 2 ? -1 : 1;
      ineq.coefficients[index_of_ones(t, arity)] += w * sign;
      if (t == 0) break;
    }
  }
  return ineq;
}

}  // namespace

TupleOperation::TupleOperation(int k, std::vector<std::uint32_t> outputs) : k_(k), outputs_(std::move(outputs)) {
  if (k < 1 || k > kMaxMultimorphismBits) throw std::invalid_argument("tuple operation arity out of range");
  if (outputs_.size() != (std::size_t{1} << k)) throw std::invalid_argument("tuple operation table must be total");
  for (auto o : outputs_)
    if (o >= (std::uint32_t{1} << k)) throw std::invalid_argument("tuple operation output out of range");
}

TupleOperation f_sep() {
  std::vector<std::uint32_t> outputs(32, 0);
  for (std::uint32_t c = 0; c < 32; ++c) {
    for (std::size_t r = 0; r < kSepRows.size(); ++r) outputs[c] = (outputs[c] << 1) | (kSepRows[r][c] == '1' ? 1u : 0u);
  }
  return TupleOperation(5, std::move(outputs));
}

TupleOperation min_max() {
  // (a, b) -> (min, max); packed as a*2 + b
  return TupleOperation(2, {0b00, 0b01, 0b01, 0b11});
}

bool is_conservative(const TupleOperation& op) {
  for (std::uint32_t c = 0; c < op.outputs().size(); ++c)
    if (std::popcount(c) != std::popcount(op(c))) return false;
  return true;
}

int hamming(std::span<const std::uint8_t> u, std::span<const std::uint8_t> v) {
  if (u.size() != v.size()) throw std::invalid_argument("hamming distance of tuples with different lengths");
  int d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += (u[i] != v[i]) ? 1 : 0;
  return d;
}

bool is_hamming_nonincreasing(const TupleOperation& op) {
  const auto size = static_cast<std::uint32_t>(op.outputs().size());
  for (std::uint32_t u = 0; u < size; ++u)
    for (std::uint32_t v = u + 1; v < size; ++v)
      if (std::popcount(op(u) ^ op(v)) > std::popcount(u ^ v)) return false;
  return true;
}

std::vector<Assignment> apply_coordinatewise(const TupleOperation& op, std::span<const Assignment> tuples) {
  const int k = op.k();
  if (static_cast<int>(tuples.size()) != k) throw std::invalid_argument("need exactly k argument tuples");
  const std::size_t n = tuples.front().size();
  std::vector<Assignment> out(static_cast<std::size_t>(k), Assignment(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    std::uint32_t c = 0;
    for (const auto& t : tuples) {
      if (t.size() != n) throw std::invalid_argument("argument tuples differ in length");
      c = (c << 1) | (t[j] ? 1u : 0u);
    }
    const std::uint32_t oc = op(c);
    for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)][j] = (oc >> (k - 1 - i)) & 1u;
  }
  return out;
}

std::optional<MultimorphismWitness> find_multimorphism_violation(const TupleOperation& op, const CostTable& t) {
  const int n = t.arity();
  const int k = op.k();
  check_size(n, k);

  // Integer fast path: scale finite entries by the common denominator.
  mpz_class denominator = 1;
  for (const auto& v : t.values())
    if (v.is_finite()) mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(), v.value().get_den_mpz_t());
  const std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> scaled(t.size());
  bool fits = true;
  const mpz_class limit = mpz_class(1) << 40;
  for (std::size_t idx = 0; idx < t.size() && fits; ++idx) {
    if (t[idx].is_infinite()) {
      scaled[idx] = kInf;
      continue;
    }
    mpz_class num = t[idx].value().get_num() * (denominator / t[idx].value().get_den());
    if (abs(num) >= limit) fits = false;
    else scaled[idx] = num.get_si();
  }

  std::optional<MultimorphismWitness> witness;
  auto record = [&](const auto& in, const auto& out) {
    MultimorphismWitness w;
    for (int i = 0; i < k; ++i) {
      w.inputs.push_back(assignment_of(in[static_cast<std::size_t>(i)], n));
      w.outputs.push_back(assignment_of(out[static_cast<std::size_t>(i)], n));
      w.input_sum += t[in[static_cast<std::size_t>(i)]];
      w.output_sum += t[out[static_cast<std::size_t>(i)]];
    }
    witness = std::move(w);
  };

  if (fits) {
    for_each_argument_choice(op, n, [&](const auto& in, const auto& out) {
      std::int64_t lhs = 0, rhs = 0;
      bool rhs_inf = false;
      for (int i = 0; i < k; ++i) {
        const auto a = scaled[in[static_cast<std::size_t>(i)]];
        if (a == kInf) return true;
        lhs += a;
        const auto b = scaled[out[static_cast<std::size_t>(i)]];
        if (b == kInf) rhs_inf = true;
        else rhs += b;
      }
      if (rhs_inf || lhs < rhs) {
        record(in, out);
        return false;
      }
      return true;
    });
  } else {
    for_each_argument_choice(op, n, [&](const auto& in, const auto& out) {
      ExtendedCost lhs = 0, rhs = 0;
      for (int i = 0; i < k; ++i) {
        lhs += t[in[static_cast<std::size_t>(i)]];
        rhs += t[out[static_cast<std::size_t>(i)]];
      }
      if (lhs.is_infinite() || lhs >= rhs) return true;
      record(in, out);
      return false;
    });
  }
  return witness;
}

bool is_multimorphism(const TupleOperation& op, const CostTable& t) {
  return !find_multimorphism_violation(op, t).has_value();
}

std::vector<LinearInequality> generate_inequalities(const TupleOperation& op, int arity) {
  check_size(arity, op.k());
  const int k = op.k();
  // Sparse (index, count) encoding as bytes for hashing.
  std::unordered_set<std::string> seen;
  std::vector<std::pair<std::uint32_t, int>> entries;
  for_each_argument_choice(op, arity, [&](const auto& in, const auto& out) {
    entries.clear();
    for (int i = 0; i < k; ++i) {
      entries.emplace_back(in[static_cast<std::size_t>(i)], 1);
      entries.emplace_back(out[static_cast<std::size_t>(i)], -1);
    }
    std::sort(entries.begin(), entries.end());
    std::string key;
    std::size_t e = 0;
    while (e < entries.size()) {
      const auto idx = entries[e].first;
      int count = 0;
      for (; e < entries.size() && entries[e].first == idx; ++e) count += entries[e].second;
      if (count == 0) continue;
      key.append(reinterpret_cast<const char*>(&idx), sizeof idx);
      key.push_back(static_cast<char>(count));
    }
    if (!key.empty()) seen.insert(std::move(key));
    return true;
  });

  std::vector<LinearInequality> result;
  result.reserve(seen.size());
  constexpr std::size_t kEntry = sizeof(std::uint32_t) + 1;
  for (const auto& key : seen) {
    LinearInequality ineq{arity, std::vector<int>(std::size_t{1} << arity, 0)};
    for (std::size_t p = 0; p < key.size(); p += kEntry) {
      std::uint32_t idx = 0;
      std::copy_n(key.data() + p, sizeof idx, reinterpret_cast<char*>(&idx));
      ineq.coefficients[idx] = static_cast<signed char>(key[p + sizeof idx]);
    }
    result.push_back(std::move(ineq));
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<LinearInequality> remove_pairwise_sums(std::span<const LinearInequality> ineqs, SummandPolicy policy) {
  std::unordered_set<std::vector<int>, VectorHash> all;
  for (const auto& q : ineqs) all.insert(q.coefficients);

  std::vector<LinearInequality> kept;
  std::vector<int> rest;
  for (const auto& v : ineqs) {
    bool is_sum = false;
    for (const auto& a : ineqs) {
      if (a.coefficients == v.coefficients || a.coefficients.size() != v.coefficients.size()) continue;
      rest.resize(v.coefficients.size());
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = v.coefficients[i] - a.coefficients[i];
      if (policy == SummandPolicy::distinct && rest == a.coefficients) continue;
      if (all.count(rest)) {
        is_sum = true;
        break;
      }
    }
    if (!is_sum) kept.push_back(v);
  }
  return kept;
}

std::vector<LinearInequality> submodularity_inequalities() {
  constexpr int n = 4;
  std::vector<LinearInequality> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const VarSet bi = VarSet{1} << (i - 1), bj = VarSet{1} << (j - 1);
      const VarSet others = full_set(n) & ~(bi | bj);
      for (VarSet c = 0;; c = (c - others) & others) {
        LinearInequality q{n, std::vector<int>(16, 0)};
        q.coefficients[index_of_ones(c | bi, n)] += 1;
        q.coefficients[index_of_ones(c | bj, n)] += 1;
        q.coefficients[index_of_ones(c | bi | bj, n)] -= 1;
        q.coefficients[index_of_ones(c, n)] -= 1;
        out.push_back(std::move(q));
        if (c == others) break;
      }
    }
  }
  return out;
}

std::vector<LinearInequality> sep_inequalities() {
  constexpr int n = 4;
  std::vector<LinearInequality> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const VarSet ij = var_set({i, j});
      const auto kl = members(full_set(n) & ~ij);
      const VarSet k = VarSet{1} << (kl[0] - 1), l = VarSet{1} << (kl[1] - 1);
      // -(a_ij + a_kl + a_ijk + a_ijl) >= 0
      out.push_back(from_sets(n, {{ij, -1}, {k | l, -1}, {ij | k, -1}, {ij | l, -1}}));
    }
  }
  return out;
}

InequalityClasses classify_inequalities(std::span<const LinearInequality> ineqs) {
  const auto sub = submodularity_inequalities();
  const auto sep = sep_inequalities();
  InequalityClasses out;
  for (const auto& q : ineqs) {
    if (q.arity != 4) throw std::invalid_argument("inequality classification is defined for arity 4");
    if (std::find(sub.begin(), sub.end(), q) != sub.end())
      out.submodularity.push_back(q);
    else if (std::find(sep.begin(), sep.end(), q) != sep.end())
      out.sep.push_back(q);
    else
      out.other.push_back(q);
  }
  return out;
}

}  // namespace subcut
