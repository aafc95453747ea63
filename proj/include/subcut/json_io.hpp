#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"
#include "subcut/fans.hpp"
#include "subcut/pseudo_boolean.hpp"
#include "subcut/vcsp.hpp"

namespace subcut {

using json = nlohmann::json;

/// Malformed input file or document.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Rationals go out as bare integers when integral, "p/q" strings otherwise.
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);
json cost_to_json(const ExtendedCost& c);
ExtendedCost cost_from_json(const json& j);

json polynomial_to_json(const PseudoBooleanFunction& p);
PseudoBooleanFunction polynomial_from_json(const json& j);

json table_to_json(const CostTable& t);
CostTable table_from_json(const json& j);

json gadget_to_json(const Gadget& g);
Gadget gadget_from_json(const json& j);

json instance_to_json(const VcspInstance& inst);
VcspInstance instance_from_json(const json& j);

/// Vision-style energy. Domains come from "domains" when present, otherwise
/// from unary cost lengths, otherwise 2.
Energy energy_from_json(const json& j);

using Document = std::variant<PseudoBooleanFunction, CostTable, VcspInstance>;

/// Reads a polynomial, table, instance or energy document; energies are
/// converted to instances. Throws InputError.
Document load_document(const std::string& path);
json read_json_file(const std::string& path);

}  // namespace subcut
