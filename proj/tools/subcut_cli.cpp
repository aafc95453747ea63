// Command-line front end. Exit codes: 0 holds / success, 1 property fails or
// infeasible, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "subcut/errors.hpp"
#include "subcut/expressibility.hpp"
#include "subcut/fans.hpp"
#include "subcut/json_io.hpp"
#include "subcut/mincut.hpp"
#include "subcut/multimorphism.hpp"
#include "subcut/pseudo_boolean.hpp"
#include "subcut/vcsp.hpp"

using namespace subcut;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;

std::string set_text(VarSet s) {
  std::string out = "{";
  bool first = true;
  for (int v : members(s)) {
    out += (first ? "" : ",") + std::to_string(v);
    first = false;
  }
  return out + "}";
}

template <class T>
std::string tuple_text(const std::vector<T>& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + std::to_string(int(x[i]));
  return out + ")";
}

// Tables are taken as they are; polynomials are tabulated.
CostTable load_table(const std::string& path) {
  const Document doc = load_document(path);
  if (const auto* t = std::get_if<CostTable>(&doc)) return *t;
  if (const auto* p = std::get_if<PseudoBooleanFunction>(&doc)) {
    if (p->arity() > kMaxTableArity) throw InputError(path + ": polynomial arity above 16 cannot be tabulated");
    return zeta(*p);
  }
  throw InputError(path + ": expected a table or polynomial");
}

void write_json(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << j.dump(2) << '\n';
}

FanSpec fan_from_flags(const std::string& family, const std::string& orientation, int arity) {
  FanSpec spec;
  try {
    spec.family = parse_family(family);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (orientation == "upper")
    spec.orientation = FanOrientation::upper;
  else if (orientation == "lower")
    spec.orientation = FanOrientation::lower;
  else
    throw InputError("orientation must be upper or lower");
  int top = 0;
  for (VarSet s : spec.family)
    for (int v : members(s)) top = std::max(top, v);
  spec.arity = arity > 0 ? arity : top;
  if (top > spec.arity) throw InputError("family mentions a variable above the arity");
  return spec;
}

TupleOperation op_by_name(const std::string& name) {
  if (name == "fsep") return f_sep();
  if (name == "minmax") return min_max();
  throw InputError("unknown operation '" + name + "' (expected fsep or minmax)");
}

int cmd_check_submodular(const std::string& path) {
  const Document doc = load_document(path);
  std::optional<DerivativeWitness> w;
  if (const auto* p = std::get_if<PseudoBooleanFunction>(&doc)) {
    w = find_submodularity_violation(*p);
  } else if (const auto* t = std::get_if<CostTable>(&doc)) {
    if (!t->is_finite()) {
      const bool ok = is_submodular(*t);
      std::cout << (ok ? "submodular" : "not submodular") << '\n';
      return ok ? kHolds : kFails;
    }
    w = find_submodularity_violation(moebius(*t));
  } else {
    throw InputError(path + ": expected a table or polynomial");
  }
  if (!w) {
    std::cout << "submodular\n";
    return kHolds;
  }
  std::cout << "not submodular: d_{" << w->i << "," << w->j << "} = " << to_string(w->value) << " at ";
  std::string ctx;
  for (std::size_t v = 0; v < w->context.size(); ++v) {
    if (static_cast<int>(v) + 1 == w->i || static_cast<int>(v) + 1 == w->j) continue;
    ctx += (ctx.empty() ? "" : " ") + std::string("x") + std::to_string(v + 1) + "=" + std::to_string(int(w->context[v]));
  }
  std::cout << (ctx.empty() ? "(no other variables)" : ctx) << '\n';
  return kFails;
}

int cmd_check_sep(const std::string& path) {
  const Document doc = load_document(path);
  PseudoBooleanFunction p;
  if (const auto* q = std::get_if<PseudoBooleanFunction>(&doc))
    p = *q;
  else if (const auto* t = std::get_if<CostTable>(&doc))
    p = moebius(*t);
  else
    throw InputError(path + ": expected a table or polynomial");
  if (p.arity() > 4) throw InputError(path + ": Sep is defined for arity <= 4");
  const SepReport r = check_sep(p);
  if (r.satisfied) {
    std::cout << "Sep holds\n";
    return kHolds;
  }
  for (const auto& v : r.violations)
    std::cout << "Sep violated: pairs (" << v.ij.first << "," << v.ij.second << "),(" << v.kl.first << ","
              << v.kl.second << ") sum " << to_string(v.sum) << '\n';
  return kFails;
}

int cmd_check_fan(const std::string& family, const std::string& orientation, int arity) {
  const FanSpec spec = fan_from_flags(family, orientation, arity);
  const std::string why = explain_invalid_fan(spec);
  if (!why.empty()) {
    std::cout << "not a fan: " << why << '\n';
    return kFails;
  }
  std::cout << to_string(spec.orientation) << " fan, apex " << set_text(fan_apex(spec)) << '\n';
  return kHolds;
}

int cmd_express(const std::string& path, const std::string& out) {
  const CostTable t = load_table(path);
  if (t.arity() > 4) throw InputError(path + ": express handles arity <= 4");
  if (!t.is_finite()) throw InputError(path + ": express needs finite costs");
  const Gadget g = express_by_binary(t);
  write_json(gadget_to_json(g), out);
  std::cerr << "hidden=" << g.hidden.size() << " kappa=" << to_string(g.kappa) << '\n';
  return kHolds;
}

int cmd_decompose(const std::string& path) {
  const CostTable t = load_table(path);
  if (t.arity() > 4) throw InputError(path + ": decompose handles arity <= 4");
  if (!t.is_finite()) throw InputError(path + ": decompose needs finite costs");
  FanDecomposition d;
  try {
    d = decompose_into_fans(t);
  } catch (const InfeasibleError& e) {
    std::cout << "infeasible: " << e.what() << '\n';
    return kFails;
  }
  for (const auto& part : d.parts)
    std::cout << to_string(part.fan.orientation) << " fan " << format_family(part.fan.family) << " weight "
              << to_string(part.weight) << '\n';
  std::cout << "kappa " << to_string(d.kappa) << '\n';
  return kHolds;
}

int report_solution(const SolveReport& r) {
  std::cout << "optimum=" << to_string(r.optimum) << '\n';
  std::cout << "assignment=" << tuple_text(r.assignment) << '\n';
  std::cout << "method=" << to_string(r.method) << '\n';
  if (r.method == SolveMethod::cut) std::cout << "hidden=" << r.hidden_vars_used << '\n';
  return r.optimum.is_infinite() ? kFails : kHolds;
}

VcspInstance single_constraint(const CostTable& t) {
  VcspInstance inst;
  inst.domains.assign(static_cast<std::size_t>(t.arity()), 2);
  Constraint c;
  for (int v = 1; v <= t.arity(); ++v) c.scope.push_back(v);
  c.values = t.values();
  inst.constraints.push_back(std::move(c));
  return inst;
}

int cmd_minimize(const std::string& path, bool fallback, const std::string& network_out) {
  const Document doc = load_document(path);
  if (const auto* p = std::get_if<PseudoBooleanFunction>(&doc)) {
    if (p->degree() <= 2 && is_submodular(*p)) {
      if (!network_out.empty()) {
        std::ofstream f(network_out);
        if (!f) throw InputError("cannot write " + network_out);
        f << to_edge_list(build_network(*p).first);
      }
      const QuadraticMinimum m = minimize_quadratic(*p);
      SolveReport r;
      r.optimum = m.value;
      r.assignment.assign(m.argmin.begin(), m.argmin.end());
      return report_solution(r);
    }
    if (p->arity() > kMaxTableArity) throw InputError(path + ": polynomial arity above 16 cannot be tabulated");
    return report_solution(solve(single_constraint(zeta(*p)), fallback));
  }
  if (const auto* t = std::get_if<CostTable>(&doc)) return report_solution(solve(single_constraint(*t), fallback));
  const auto& inst = std::get<VcspInstance>(doc);
  if (!inst.is_boolean()) {
    if (!fallback) throw InputError(path + ": non-Boolean instance; use vcsp encode or --brute-force-fallback");
    SolveReport r = brute_force_solve(inst);
    r.fell_back = true;
    return report_solution(r);
  }
  return report_solution(solve(inst, fallback));
}

int cmd_mm_inequalities(int arity, const std::string& op_name, bool reduce, bool classify, bool print) {
  const TupleOperation op = op_by_name(op_name);
  if (arity < 1 || arity > 4) throw InputError("--arity must be between 1 and 4");
  const auto distinct = generate_inequalities(op, arity);
  std::cout << "distinct=" << distinct.size();
  std::vector<LinearInequality> kept = distinct;
  if (reduce || classify) {
    kept = remove_pairwise_sums(distinct);
    std::cout << " irredundant=" << kept.size();
  }
  if (classify) {
    if (arity != 4) throw InputError("--classify needs --arity 4");
    const auto classes = classify_inequalities(kept);
    std::cout << " submodularity=" << classes.submodularity.size() << " sep=" << classes.sep.size();
    if (!classes.other.empty()) std::cout << " other=" << classes.other.size();
  }
  std::cout << '\n';
  if (print)
    for (const auto& ineq : kept) std::cout << tuple_text(ineq.coefficients) << " >= 0\n";
  return kHolds;
}

int cmd_mm_verify(const std::string& path, const std::string& op_name) {
  const TupleOperation op = op_by_name(op_name);
  const CostTable t = load_table(path);
  const auto w = find_multimorphism_violation(op, t);
  if (!w) {
    std::cout << op_name << " is a multimorphism\n";
    return kHolds;
  }
  std::cout << op_name << " is not a multimorphism\n";
  for (std::size_t r = 0; r < w->inputs.size(); ++r)
    std::cout << "  " << tuple_text(w->inputs[r]) << " -> " << tuple_text(w->outputs[r]) << '\n';
  std::cout << "  sum before " << to_string(w->input_sum) << ", after " << to_string(w->output_sum) << '\n';
  return kFails;
}

int cmd_fans_enumerate(int arity, bool count_only) {
  if (arity < 0 || arity > 4) throw InputError("--arity must be between 0 and 4");
  const auto fans = enumerate_fans(arity);
  if (!count_only)
    for (const auto& f : fans) std::cout << to_string(f.orientation) << ' ' << format_family(f.family) << '\n';
  std::cout << "count=" << fans.size() << '\n';
  return kHolds;
}

int cmd_fans_gadget(const std::string& family, const std::string& orientation, int arity, const std::string& out) {
  const FanSpec spec = fan_from_flags(family, orientation, arity);
  const std::string why = explain_invalid_fan(spec);
  if (!why.empty()) {
    std::cout << "not a fan: " << why << '\n';
    return kFails;
  }
  const Gadget g = fan_gadget(spec);
  if (!verify_gadget(g, fan_table(spec))) throw std::logic_error("fan gadget failed verification");
  write_json(gadget_to_json(g), out);
  std::cerr << "hidden=" << g.hidden.size() << " kappa=" << to_string(g.kappa) << '\n';
  return kHolds;
}

int cmd_vcsp_encode(const std::string& path, const std::string& out) {
  const Document doc = load_document(path);
  const auto* inst = std::get_if<VcspInstance>(&doc);
  if (!inst) throw InputError(path + ": expected an instance");
  const BooleanEncoding enc = boolean_encode(*inst);
  write_json(instance_to_json(enc.boolean), out);
  for (std::size_t v = 0; v < enc.domains.size(); ++v)
    std::cerr << "x" << v + 1 << " -> bits " << enc.first_bit[v] << ".." << enc.first_bit[v] + enc.domains[v] - 2 << '\n';
  return kHolds;
}

int cmd_vcsp_solve(const std::string& path, bool fallback, bool encode) {
  const Document doc = load_document(path);
  const auto* inst = std::get_if<VcspInstance>(&doc);
  if (!inst) throw InputError(path + ": expected an instance");
  if (inst->is_boolean() || !encode) {
    if (!inst->is_boolean()) {
      if (!fallback) throw InputError(path + ": non-Boolean instance; pass --encode or --brute-force-fallback");
      SolveReport r = brute_force_solve(*inst);
      r.fell_back = true;
      return report_solution(r);
    }
    return report_solution(solve(*inst, fallback));
  }
  const BooleanEncoding enc = boolean_encode(*inst);
  SolveReport r = solve_via_cuts(enc.boolean);
  r.assignment = enc.decode(r.assignment);
  return report_solution(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Submodular cost functions: expressibility, multimorphisms and min-cut solving"};
  app.require_subcommand(1);
  int code = kHolds;

  auto* check = app.add_subcommand("check", "check a property of a function")->require_subcommand(1);
  std::string file;
  auto* check_sub = check->add_subcommand("submodular", "all second derivatives nonpositive");
  check_sub->add_option("file", file, "table or polynomial JSON")->required();
  check_sub->callback([&] { code = cmd_check_submodular(file); });
  auto* check_sep_cmd = check->add_subcommand("sep", "the six Sep inequalities on the coefficients");
  check_sep_cmd->add_option("file", file, "table or polynomial JSON")->required();
  check_sep_cmd->callback([&] { code = cmd_check_sep(file); });
  std::string family, orientation = "upper";
  int arity = 0;
  auto* check_fan = check->add_subcommand("fan", "validity of a fan family");
  check_fan->add_option("--family", family, "e.g. \"1,2;1,3\"")->required();
  check_fan->add_option("--orientation", orientation, "upper or lower");
  check_fan->add_option("--arity", arity, "defaults to the largest index");
  check_fan->callback([&] { code = cmd_check_fan(family, orientation, arity); });

  std::string out;
  auto* express = app.add_subcommand("express", "gadget over binary submodular functions");
  express->add_option("file", file, "table or polynomial JSON, arity <= 4")->required();
  express->add_option("--out", out, "gadget JSON path (stdout if omitted)");
  express->callback([&] { code = cmd_express(file, out); });

  auto* decompose = app.add_subcommand("decompose", "nonnegative fan decomposition plus constant");
  decompose->add_option("file", file, "table or polynomial JSON, arity <= 4")->required();
  decompose->callback([&] { code = cmd_decompose(file); });

  bool fallback = false;
  std::string network_out;
  auto* minimize = app.add_subcommand("minimize", "exact minimum via min-cut");
  minimize->add_option("file", file, "polynomial, table or instance JSON")->required();
  minimize->add_flag("--brute-force-fallback", fallback, "search exhaustively when no cut reduction exists");
  minimize->add_option("--network", network_out, "write the flow network of a quadratic input as an edge list");
  minimize->callback([&] { code = cmd_minimize(file, fallback, network_out); });

  auto* mm = app.add_subcommand("mm", "multimorphisms")->require_subcommand(1);
  std::string op_name = "fsep";
  bool reduce = false, classify = false, print = false;
  int mm_arity = 4;
  auto* ineq = mm->add_subcommand("inequalities", "linear inequalities imposed by an operation");
  ineq->add_option("--arity", mm_arity, "function arity (1..4)");
  ineq->add_option("--op", op_name, "fsep or minmax");
  ineq->add_flag("--reduce", reduce, "drop inequalities that are sums of two others");
  ineq->add_flag("--classify", classify, "split into submodularity and Sep inequalities");
  ineq->add_flag("--print", print, "list the remaining coefficient vectors");
  ineq->callback([&] { code = cmd_mm_inequalities(mm_arity, op_name, reduce, classify, print); });
  auto* verify = mm->add_subcommand("verify", "is the operation a multimorphism of a function");
  verify->add_option("--function", file, "table or polynomial JSON")->required();
  verify->add_option("--op", op_name, "fsep or minmax");
  verify->callback([&] { code = cmd_mm_verify(file, op_name); });

  auto* fans = app.add_subcommand("fans", "upper and lower fans")->require_subcommand(1);
  bool count_only = false;
  auto* enumerate = fans->add_subcommand("enumerate", "all fans of an arity, up to equal tables");
  enumerate->add_option("--arity", mm_arity, "0..4");
  enumerate->add_flag("--count", count_only, "print only the count");
  enumerate->callback([&] { code = cmd_fans_enumerate(mm_arity, count_only); });
  auto* gadget = fans->add_subcommand("gadget", "quadratic gadget of a fan");
  gadget->add_option("--family", family, "e.g. \"1,2;1,3\"")->required();
  gadget->add_option("--orientation", orientation, "upper or lower");
  gadget->add_option("--arity", arity, "defaults to the largest index");
  gadget->add_option("--out", out, "gadget JSON path (stdout if omitted)");
  gadget->callback([&] { code = cmd_fans_gadget(family, orientation, arity, out); });

  auto* vcsp = app.add_subcommand("vcsp", "valued constraint instances")->require_subcommand(1);
  bool encode = false;
  auto* vsolve = vcsp->add_subcommand("solve", "solve an instance");
  vsolve->add_option("file", file, "instance or energy JSON")->required();
  vsolve->add_flag("--brute-force-fallback", fallback, "search exhaustively when no cut reduction exists");
  vsolve->add_flag("--encode", encode, "solve non-Boolean instances through the chain encoding");
  vsolve->callback([&] { code = cmd_vcsp_solve(file, fallback, encode); });
  auto* vencode = vcsp->add_subcommand("encode", "Boolean chain encoding of a non-Boolean instance");
  vencode->add_option("file", file, "instance or energy JSON")->required();
  vencode->add_option("--out", out, "Boolean instance JSON path (stdout if omitted)");
  vencode->callback([&] { code = cmd_vcsp_encode(file, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const NotExpressibleError& e) {
    const std::string what = e.what();
    std::cout << (what.find("NotExpressible") == std::string::npos ? "NotExpressible: " : "") << what << '\n';
    return kFails;
  } catch (const NotSubmodularError& e) {
    std::cout << "NotSubmodular: " << e.what() << '\n';
    return kFails;
  } catch (const InfeasibleError& e) {
    std::cout << "infeasible: " << e.what() << '\n';
    return kFails;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return code;
}
