#pragma once

#include "superell/poly.hpp"

#include <optional>
#include <vector>

namespace superell {

// Sturm chain f, f', -rem(...), ... with each member scaled to a primitive
// integer polynomial by a positive factor (this keeps every sign intact).
std::vector<IntPoly> sturm_chain(const IntPoly& f);

// Number of real roots of the squarefree polynomial f in (lo, hi].
// nullopt stands for -infinity (lo) or +infinity (hi).
int sturm_count(const IntPoly& f, const std::optional<Rat>& lo, const std::optional<Rat>& hi);

inline int real_root_count(const IntPoly& f) { return sturm_count(f, std::nullopt, std::nullopt); }

}  // namespace superell
