#include "subcut/json_io.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <map>

namespace subcut {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InputError(std::string(what) + " entries must be integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<ExtendedCost> cost_list(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<ExtendedCost> out;
  for (const auto& v : j) out.push_back(cost_from_json(v));
  return out;
}

}  // namespace

json rational_to_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return to_string(r);
}

Rational rational_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("expected an integer or a \"p/q\" string, got " + j.dump());
}

json cost_to_json(const ExtendedCost& c) { return c.is_infinite() ? json("inf") : rational_to_json(c.value()); }

ExtendedCost cost_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtendedCost::infinity();
  return rational_from_json(j);
}

json polynomial_to_json(const PseudoBooleanFunction& p) {
  json terms = json::array();
  for (const auto& [vars, coef] : p.terms()) terms.push_back({{"vars", members(vars)}, {"coef", rational_to_json(coef)}});
  return {{"arity", p.arity()}, {"terms", terms}};
}

PseudoBooleanFunction polynomial_from_json(const json& j) {
  const int arity = int_field(j, "arity");
  if (arity < 0 || arity > kMaxPolynomialArity) throw InputError("polynomial arity out of range");
  PseudoBooleanFunction p(arity);
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw InputError("\"terms\" must be an array");
  for (const auto& t : terms) {
    VarSet set = 0;
    for (int v : int_list(field(t, "vars"), "\"vars\"")) {
      if (v < 1 || v > arity) throw InputError("term variable " + std::to_string(v) + " out of range");
      set |= VarSet{1} << (v - 1);
    }
    p.add_term(set, rational_from_json(field(t, "coef")));
  }
  return p;
}

json table_to_json(const CostTable& t) {
  json values = json::array();
  for (const auto& v : t.values()) values.push_back(cost_to_json(v));
  return {{"arity", t.arity()}, {"values", values}};
}

CostTable table_from_json(const json& j) {
  const int arity = int_field(j, "arity");
  if (arity < 0 || arity > kMaxTableArity) throw InputError("table arity out of range");
  auto values = cost_list(field(j, "values"), "\"values\"");
  if (values.size() != (std::size_t{1} << arity))
    throw InputError("table of arity " + std::to_string(arity) + " needs " + std::to_string(1 << arity) + " values");
  return CostTable(arity, std::move(values));
}

json gadget_to_json(const Gadget& g) {
  json out = polynomial_to_json(g.quadratic);
  out["hidden"] = g.hidden;
  out["kappa"] = rational_to_json(g.kappa);
  return out;
}

Gadget gadget_from_json(const json& j) {
  Gadget g;
  g.quadratic = polynomial_from_json(j);
  g.hidden = int_list(field(j, "hidden"), "\"hidden\"");
  for (int h : g.hidden)
    if (h < 1 || h > g.quadratic.arity()) throw InputError("hidden index out of range");
  g.kappa = rational_from_json(field(j, "kappa"));
  return g;
}

json instance_to_json(const VcspInstance& inst) {
  json vars = json::array();
  for (int d : inst.domains) vars.push_back({{"domain", d}});
  json cons = json::array();
  for (const auto& c : inst.constraints) {
    json values = json::array();
    for (const auto& v : c.values) values.push_back(cost_to_json(v));
    cons.push_back({{"scope", c.scope}, {"table", {{"arity", c.scope.size()}, {"values", values}}}});
  }
  return {{"variables", vars}, {"constraints", cons}};
}

VcspInstance instance_from_json(const json& j) {
  VcspInstance inst;
  const json& vars = field(j, "variables");
  if (!vars.is_array()) throw InputError("\"variables\" must be an array");
  for (const auto& v : vars) inst.domains.push_back(int_field(v, "domain"));
  const json& cons = field(j, "constraints");
  if (!cons.is_array()) throw InputError("\"constraints\" must be an array");
  for (const auto& c : cons) {
    Constraint con;
    con.scope = int_list(field(c, "scope"), "\"scope\"");
    const json& table = field(c, "table");
    con.values = cost_list(table.is_array() ? table : field(table, "values"), "\"values\"");
    if (table.is_object() && table.contains("arity") && int_field(table, "arity") != static_cast<int>(con.scope.size()))
      throw InputError("table arity differs from scope length");
    inst.constraints.push_back(std::move(con));
  }
  try {
    inst.validate();
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  return inst;
}

Energy energy_from_json(const json& j) {
  if (!j.is_object()) throw InputError("energy document must be an object");
  Energy e;
  e.constant = j.contains("constant") ? rational_from_json(j.at("constant")) : Rational(0);
  std::map<int, int> inferred;
  int max_var = 0;
  auto read_terms = [&](const char* name, bool unary) {
    if (!j.contains(name)) return;
    const json& list = j.at(name);
    if (!list.is_array()) throw InputError(std::string("\"") + name + "\" must be an array");
    for (const auto& t : list) {
      EnergyTerm term;
      term.vars = unary ? std::vector<int>{int_field(t, "var")} : int_list(field(t, "vars"), "\"vars\"");
      term.costs = cost_list(field(t, "costs"), "\"costs\"");
      for (int v : term.vars) {
        if (v < 1) throw InputError("energy variable index must be positive");
        max_var = std::max(max_var, v);
      }
      if (unary) inferred[term.vars[0]] = static_cast<int>(term.costs.size());
      e.terms.push_back(std::move(term));
    }
  };
  read_terms("unary", true);
  read_terms("pairwise", false);
  read_terms("higher", false);

  if (j.contains("domains")) {
    e.domains = int_list(j.at("domains"), "\"domains\"");
    if (static_cast<int>(e.domains.size()) < max_var) throw InputError("\"domains\" shorter than the variables used");
  } else {
    e.domains.assign(static_cast<std::size_t>(max_var), 2);
    for (const auto& [v, d] : inferred) e.domains[static_cast<std::size_t>(v - 1)] = d;
  }
  return e;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Document load_document(const std::string& path) {
  const json j = read_json_file(path);
  try {
    if (!j.is_object()) throw InputError("top-level JSON value must be an object");
    if (j.contains("variables") && j.contains("constraints")) return instance_from_json(j);
    if (j.contains("values")) return table_from_json(j);
    if (j.contains("terms")) return polynomial_from_json(j);
    if (j.contains("unary") || j.contains("pairwise") || j.contains("higher") || j.contains("constant"))
      return energy_to_instance(energy_from_json(j));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
  throw InputError(path + ": not a polynomial, table, instance or energy document");
}

}  // namespace subcut
