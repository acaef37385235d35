#include "angelesco/quadrature.hpp"

#include <cmath>

namespace angelesco {

namespace {

// P_m(x) and P_{m-1}(x) by the three-term recurrence
template <class T>
void legendre(int m, const T& x, T& pm, T& pm1)
{
    T p0 = 1, p1 = x;
    if (m == 0) {
        pm = 1;
        pm1 = 0;
        return;
    }
    for (int k = 2; k <= m; ++k) {
        T p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    pm = p1;
    pm1 = p0;
}

void check_finite(const XReal& v, const XReal& x)
{
    if (!boost::multiprecision::isfinite(v))
        throw EvaluationError("non-finite integrand value at x = " + to_string(x, 20));
}

}  // namespace

QuadratureRule gauss_legendre(int m, const PrecisionContext& ctx)
{
    if (m < 1) throw std::invalid_argument("gauss_legendre: m >= 1 required");
    PrecisionScope scope(ctx);
    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const XReal eps = boost::multiprecision::ldexp(XReal(1), -static_cast<int>(ctx.bits()) + 8);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-type initial guess, largest root first
        double xd = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        for (int it = 0; it < 100; ++it) {
            double pm, pm1;
            legendre(m, xd, pm, pm1);
            double dp = m * (xd * pm - pm1) / (xd * xd - 1);
            double dx = pm / dp;
            xd -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        XReal x = (m % 2 == 1 && i == half - 1) ? XReal(0) : XReal(xd);
        XReal pm, pm1, dp;
        for (int it = 0; it < 64; ++it) {
            legendre(m, x, pm, pm1);
            dp = m * (x * pm - pm1) / (x * x - 1);
            XReal dx = pm / dp;
            x -= dx;
            if (boost::multiprecision::abs(dx) < eps) break;
        }
        legendre(m, x, pm, pm1);
        dp = m * (x * pm - pm1) / (x * x - 1);
        XReal w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[m - 1 - i] = x;
        rule.weights[m - 1 - i] = w;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
    }
    return rule;
}

XReal integrate(const RealFn& f, const XReal& a, const XReal& b, const QuadratureRule& rule)
{
    XReal half = (b - a) / 2, mid = (a + b) / 2, s = 0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        XReal x = mid + half * rule.nodes[k];
        XReal v = f(x);
        check_finite(v, x);
        s += rule.weights[k] * v;
    }
    return s * half;
}

XReal integrate(const RealFn& f, const XReal& a, const XReal& b, int m, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    return integrate(f, a, b, gauss_legendre(m, ctx));
}

XReal tanh_sinh(const EndpointFn& f, const XReal& a, const XReal& b, const XReal& tol,
                const PrecisionContext& ctx, int max_level)
{
    using namespace boost::multiprecision;
    PrecisionScope scope(ctx);
    const XReal half = (b - a) / 2;
    const XReal halfpi = pi_x() / 2;
    const XReal tiny = ldexp(XReal(1), -static_cast<int>(ctx.bits()));
    // t range where the node still separates from the endpoints
    const double tmax = std::asinh(ctx.bits() * std::log(2.0) / M_PI) + 0.5;

    auto term = [&](const XReal& t) -> XReal {
        XReal u = halfpi * sinh(t);
        XReal e = exp(-2 * abs(u));
        // distance of the node to the nearer endpoint, relative to (b-a)
        XReal near = e / (1 + e);
        if (near < tiny) return XReal(0);
        XReal da, db;
        if (u < 0) {
            da = (b - a) * near;
            db = (b - a) - da;
        } else {
            db = (b - a) * near;
            da = (b - a) - db;
        }
        XReal x = u < 0 ? a + da : b - db;
        XReal ch = cosh(u);
        XReal w = halfpi * cosh(t) / (ch * ch);
        XReal v = f(x, da, db);
        check_finite(v, x);
        return w * v;
    };

    XReal h = 1;
    XReal sum = term(XReal(0));
    for (int k = 1; k * 1.0 <= tmax; ++k) sum += term(XReal(k)) + term(XReal(-k));
    XReal est = sum * h * half;
    for (int level = 1; level <= max_level; ++level) {
        h /= 2;
        XReal add = 0;
        for (XReal t = h; t <= tmax; t += 2 * h) add += term(t) + term(-t);
        sum += add;
        XReal next = sum * h * half;
        XReal diff = abs(next - est);
        est = next;
        XReal mag = abs(est);
        if (mag < 1) mag = 1;
        if (level >= 3 && diff <= tol * mag) break;
    }
    return est;
}

}  // namespace angelesco
