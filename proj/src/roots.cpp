#include "angelesco/roots.hpp"

namespace angelesco {

XReal find_root(const std::function<XReal(const XReal&)>& f, XReal lo, XReal hi, const XReal& tol,
                const PrecisionContext& ctx)
{
    using boost::multiprecision::abs;
    PrecisionScope scope(ctx);
    if (hi < lo) std::swap(lo, hi);
    XReal flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0)) throw BracketError("find_root: no sign change on bracket");

    const XReal floor_width = boost::multiprecision::ldexp(abs(lo) + abs(hi) + 1, -static_cast<int>(ctx.bits()) + 4);
    int side = 0;
    XReal x = lo;
    for (int it = 0; it < 100000; ++it) {
        XReal width = hi - lo;
        if (width <= tol || width <= floor_width) break;
        // false position, bisection every fourth step or when the secant stalls
        XReal cand = (it % 4 == 3) ? (lo + hi) / 2 : (lo * fhi - hi * flo) / (fhi - flo);
        if (!(cand > lo && cand < hi)) cand = (lo + hi) / 2;
        x = cand;
        XReal fx = f(x);
        if (fx == 0 || abs(fx) < tol * tol) return x;
        if ((fx > 0) == (fhi > 0)) {
            hi = x;
            fhi = fx;
            if (side == 1) flo /= 2;
            side = 1;
        } else {
            lo = x;
            flo = fx;
            if (side == -1) fhi /= 2;
            side = -1;
        }
        if (abs(fx) < tol && width < tol) return x;
    }
    return abs(flo) < abs(fhi) ? lo : hi;
}

}  // namespace angelesco
