#pragma once

#include "angelesco/precision.hpp"

#include <functional>
#include <vector>

namespace angelesco {

struct QuadratureRule {
    std::vector<XReal> nodes;
    std::vector<XReal> weights;
};

using RealFn = std::function<XReal(const XReal&)>;

// Gauss-Legendre rule on [-1, 1], nodes ascending.
QuadratureRule gauss_legendre(int m, const PrecisionContext& ctx);

XReal integrate(const RealFn& f, const XReal& a, const XReal& b, int m, const PrecisionContext& ctx);
XReal integrate(const RealFn& f, const XReal& a, const XReal& b, const QuadratureRule& rule);

// Double-exponential rule for integrands with endpoint singularities
// (log, inverse square root). f receives the node and its distances to a and b,
// so integrands can avoid cancellation near the ends.
using EndpointFn = std::function<XReal(const XReal& x, const XReal& da, const XReal& db)>;

XReal tanh_sinh(const EndpointFn& f, const XReal& a, const XReal& b, const XReal& tol,
                const PrecisionContext& ctx, int max_level = 9);

}  // namespace angelesco
