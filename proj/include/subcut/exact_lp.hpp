#pragma once

#include <optional>
#include <vector>

#include "subcut/rational.hpp"

namespace subcut {

/// Minimizes c.x subject to A x = b, x >= 0, in exact arithmetic with a
/// two-phase tableau simplex under Bland's rule. Returns std::nullopt when
/// the constraints are infeasible; throws std::domain_error when the
/// objective is unbounded below.
std::optional<std::vector<Rational>> minimize_nonnegative(const std::vector<std::vector<Rational>>& a,
                                                          const std::vector<Rational>& b,
                                                          const std::vector<Rational>& c);

}  // namespace subcut
