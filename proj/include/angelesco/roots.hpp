#pragma once

#include "angelesco/precision.hpp"

#include <functional>

namespace angelesco {

// Illinois false position with a bisection fallback. Requires a sign change.
XReal find_root(const std::function<XReal(const XReal&)>& f, XReal lo, XReal hi, const XReal& tol,
                const PrecisionContext& ctx);

}  // namespace angelesco
