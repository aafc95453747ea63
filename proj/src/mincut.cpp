#include "subcut/mincut.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

#include "subcut/errors.hpp"

namespace subcut {

BinaryAtomDecomposition decompose_binary(const CostTable& t) {
  if (t.arity() != 2) throw std::invalid_argument("decompose_binary expects a binary table");
  if (!t.is_finite()) throw std::invalid_argument("decompose_binary expects a finite table");
  const Rational& a = t[0].value();
  const Rational& b = t[1].value();
  const Rational& c = t[2].value();
  const Rational& d = t[3].value();
  const Rational lambda = b + c - a - d;
  if (sgn(lambda) < 0) throw NotSubmodularError("binary table violates A + D <= B + C");

  BinaryAtomDecomposition out;
  out.kappa = a;
  auto unary = [&](int var, const Rational& w) {
    if (sgn(w) > 0) {
      out.unaries.push_back({var, 1, w});
    } else if (sgn(w) < 0) {
      out.unaries.push_back({var, 0, Rational(-w)});
      out.kappa += w;
    }
  };
  unary(1, Rational(c - a));
  unary(2, Rational(d - c));
  if (sgn(lambda) > 0) out.pairs.push_back({1, 2, lambda});
  return out;
}

CostTable atoms_table(const BinaryAtomDecomposition& d) {
  std::vector<ExtendedCost> values(4, ExtendedCost(d.kappa));
  for (std::size_t idx = 0; idx < 4; ++idx) {
    const Assignment x = assignment_of(idx, 2);
    Rational v = d.kappa;
    for (const auto& u : d.unaries)
      if (x.at(static_cast<std::size_t>(u.var - 1)) == u.d) v += u.c;
    for (const auto& p : d.pairs)
      if (x.at(static_cast<std::size_t>(p.x - 1)) == 0 && x.at(static_cast<std::size_t>(p.y - 1)) == 1) v += p.c;
    values[idx] = v;
  }
  return CostTable(2, std::move(values));
}

NetworkBuilder::NetworkBuilder(int variables) : variables_(variables) {
  if (variables < 0) throw std::invalid_argument("negative variable count");
}

void NetworkBuilder::add_arc(int from, int to, const ExtendedCost& capacity) {
  if (from == to) return;
  if (capacity < ExtendedCost(0)) throw std::invalid_argument("negative arc capacity");
  if (capacity == ExtendedCost(0)) return;
  const int limit = variables_ + 2;
  if (from < 0 || to < 0 || from >= limit || to >= limit) throw std::out_of_range("arc endpoint out of range");
  auto [it, inserted] = arcs_.try_emplace({from, to}, capacity);
  if (!inserted) it->second += capacity;
}

void NetworkBuilder::add_unary(int var, int d, const ExtendedCost& c) {
  if (var < 1 || var > variables_) throw std::out_of_range("unary atom variable out of range");
  if (d != 0 && d != 1) throw std::invalid_argument("unary atom value must be 0 or 1");
  if (c.is_finite() && sgn(c.value()) < 0) {
    add_constant(c.value());
    add_unary(var, 1 - d, Rational(-c.value()));
    return;
  }
  // x = 1 is the source side: cost at 1 is paid by cutting x -> t.
  if (d == 1)
    add_arc(FlowNetwork::node_of(var), FlowNetwork::sink, c);
  else
    add_arc(FlowNetwork::source, FlowNetwork::node_of(var), c);
}

void NetworkBuilder::add_lambda(int x, int y, const ExtendedCost& c) {
  if (x < 1 || x > variables_ || y < 1 || y > variables_) throw std::out_of_range("pair atom variable out of range");
  add_arc(FlowNetwork::node_of(y), FlowNetwork::node_of(x), c);
}

void NetworkBuilder::add_quadratic(const PseudoBooleanFunction& p, std::span<const int> var_map) {
  if (static_cast<int>(var_map.size()) < p.arity()) throw std::invalid_argument("variable map shorter than arity");
  if (p.degree() > 2) throw std::invalid_argument("min-cut construction needs degree <= 2");
  std::vector<Rational> linear(var_map.size(), 0);
  for (const auto& [vars, coef] : p.terms()) {
    const auto m = members(vars);
    if (m.empty()) {
      add_constant(coef);
    } else if (m.size() == 1) {
      linear[static_cast<std::size_t>(m[0] - 1)] += coef;
    } else {
      if (sgn(coef) > 0)
        throw NotSubmodularError("positive coefficient on x" + std::to_string(m[0]) + "x" + std::to_string(m[1]));
      // -c x_i x_j = lambda_c(x_i, x_j) - c x_j
      const Rational c = -coef;
      add_lambda(var_map[static_cast<std::size_t>(m[0] - 1)], var_map[static_cast<std::size_t>(m[1] - 1)], c);
      linear[static_cast<std::size_t>(m[1] - 1)] -= c;
    }
  }
  for (std::size_t i = 0; i < linear.size(); ++i)
    if (sgn(linear[i]) != 0) add_unary(var_map[i], 1, linear[i]);
}

void NetworkBuilder::add_quadratic(const PseudoBooleanFunction& p) {
  std::vector<int> identity(static_cast<std::size_t>(p.arity()));
  for (int i = 0; i < p.arity(); ++i) identity[static_cast<std::size_t>(i)] = i + 1;
  add_quadratic(p, identity);
}

FlowNetwork NetworkBuilder::network() const {
  FlowNetwork net;
  net.node_count = variables_ + 2;
  for (const auto& [ends, cap] : arcs_) net.arcs.push_back({ends.first, ends.second, cap});
  return net;
}

std::pair<FlowNetwork, Rational> build_network(const PseudoBooleanFunction& p) {
  NetworkBuilder builder(p.arity());
  builder.add_quadratic(p);
  return {builder.network(), builder.offset()};
}

namespace {

class Dinic {
 public:
  explicit Dinic(int n) : graph_(static_cast<std::size_t>(n)), level_(graph_.size()), next_(graph_.size()) {}

  void add_edge(int u, int v, const Rational& cap) {
    graph_[static_cast<std::size_t>(u)].push_back({v, graph_[static_cast<std::size_t>(v)].size(), cap});
    graph_[static_cast<std::size_t>(v)].push_back({u, graph_[static_cast<std::size_t>(u)].size() - 1, 0});
  }

  Rational run(int s, int t) {
    Rational total = 0;
    while (bfs(s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (true) {
        Rational pushed = augment(s, t, Rational(-1));
        if (sgn(pushed) == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  std::vector<bool> reachable(int s) const {
    std::vector<bool> seen(graph_.size(), false);
    std::deque<int> queue{s};
    seen[static_cast<std::size_t>(s)] = true;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const auto& e : graph_[static_cast<std::size_t>(u)]) {
        if (sgn(e.cap) > 0 && !seen[static_cast<std::size_t>(e.to)]) {
          seen[static_cast<std::size_t>(e.to)] = true;
          queue.push_back(e.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    int to;
    std::size_t rev;
    Rational cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> queue{s};
    level_[static_cast<std::size_t>(s)] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const auto& e : graph_[static_cast<std::size_t>(u)]) {
        if (sgn(e.cap) > 0 && level_[static_cast<std::size_t>(e.to)] < 0) {
          level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(u)] + 1;
          queue.push_back(e.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  // limit < 0 means unbounded.
  Rational augment(int u, int t, const Rational& limit) {
    if (u == t) return limit;
    auto& edges = graph_[static_cast<std::size_t>(u)];
    for (std::size_t& i = next_[static_cast<std::size_t>(u)]; i < edges.size(); ++i) {
      Edge& e = edges[i];
      if (sgn(e.cap) <= 0 || level_[static_cast<std::size_t>(e.to)] != level_[static_cast<std::size_t>(u)] + 1)
        continue;
      const Rational room = (sgn(limit) < 0 || e.cap < limit) ? e.cap : limit;
      Rational got = augment(e.to, t, room);
      if (sgn(got) > 0) {
        e.cap -= got;
        graph_[static_cast<std::size_t>(e.to)][e.rev].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<Edge>> graph_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net) {
  // Infinite arcs get a capacity above every finite cut.
  Rational big = 1;
  for (const auto& a : net.arcs)
    if (a.capacity.is_finite()) big += a.capacity.value();

  Dinic dinic(net.node_count);
  for (const auto& a : net.arcs) {
    if (a.capacity < ExtendedCost(0)) throw std::invalid_argument("negative arc capacity");
    dinic.add_edge(a.from, a.to, a.capacity.is_finite() ? a.capacity.value() : big);
  }
  const Rational value = dinic.run(FlowNetwork::source, FlowNetwork::sink);
  FlowResult result;
  result.source_side = dinic.reachable(FlowNetwork::source);
  result.flow = value >= big ? ExtendedCost::infinity() : ExtendedCost(value);
  return result;
}

ExtendedCost cut_capacity(const FlowNetwork& net, const std::vector<bool>& source_side) {
  ExtendedCost total = 0;
  for (const auto& a : net.arcs)
    if (source_side.at(static_cast<std::size_t>(a.from)) && !source_side.at(static_cast<std::size_t>(a.to)))
      total += a.capacity;
  return total;
}

QuadraticMinimum minimize_quadratic(const PseudoBooleanFunction& p) {
  const auto [net, offset] = build_network(p);
  const FlowResult r = max_flow(net);
  QuadraticMinimum out;
  out.value = r.flow.value() + offset;
  out.argmin.resize(static_cast<std::size_t>(p.arity()));
  for (int v = 1; v <= p.arity(); ++v)
    out.argmin[static_cast<std::size_t>(v - 1)] = r.source_side[static_cast<std::size_t>(FlowNetwork::node_of(v))] ? 1 : 0;
  return out;
}

std::string to_edge_list(const FlowNetwork& net) {
  auto name = [](int node) {
    if (node == FlowNetwork::source) return std::string("s");
    if (node == FlowNetwork::sink) return std::string("t");
    return std::to_string(node - 1);
  };
  std::ostringstream os;
  for (const auto& a : net.arcs) os << name(a.from) << ' ' << name(a.to) << ' ' << to_string(a.capacity) << '\n';
  return os.str();
}

}  // namespace subcut
