#include "angelesco/curve.hpp"
#include "angelesco/linalg.hpp"
#include "angelesco/poly.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>

namespace angelesco {

using boost::multiprecision::abs;
using boost::multiprecision::sqrt;

std::string regime_name(Regime r)
{
    switch (r) {
    case Regime::PushedLeft: return "PushedLeft";
    case Regime::Middle: return "Middle";
    case Regime::PushedRight: return "PushedRight";
    }
    return "?";
}

XReal ChiMap::R(const XReal& x) const { return x + A1 / (x - B1) + A2 / (x - B2); }

XComplex ChiMap::R(const XComplex& x) const
{
    return x + XComplex(A1) / (x - XComplex(B1)) + XComplex(A2) / (x - XComplex(B2));
}

XReal ChiMap::dR(const XReal& x) const
{
    XReal u = x - B1, v = x - B2;
    return 1 - A1 / (u * u) - A2 / (v * v);
}

XReal ChiMap::d2R(const XReal& x) const
{
    XReal u = x - B1, v = x - B2;
    return 2 * A1 / (u * u * u) + 2 * A2 / (v * v * v);
}

namespace {

// Newton on f with a bisection safeguard; f(lo), f(hi) of opposite sign.
XReal bracketed_newton(const std::function<XReal(const XReal&)>& f, const std::function<XReal(const XReal&)>& df,
                       XReal lo, XReal hi, const PrecisionContext& ctx)
{
    XReal flo = f(lo);
    if ((flo > 0) == (f(hi) > 0)) throw SolveFailure("critical point bracket without sign change");
    const XReal eps = boost::multiprecision::ldexp(XReal(1), -static_cast<int>(ctx.bits()) + 6);
    XReal x = (lo + hi) / 2;
    for (int it = 0; it < 400; ++it) {
        XReal fx = f(x);
        if (fx == 0) return x;
        if ((fx > 0) == (flo > 0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        XReal d = df(x);
        if (d != 0 && abs(fx / d) <= eps * (abs(x) + 1)) return x - fx / d;
        XReal next = d != 0 ? x - fx / d : (lo + hi) / 2;
        if (!(next > lo && next < hi)) next = (lo + hi) / 2;
        XReal step = abs(next - x);
        x = next;
        if (step <= eps * (abs(x) + 1) || hi - lo <= eps * (abs(x) + 1)) return x;
    }
    return x;
}

}  // namespace

std::array<XReal, 4> critical_points(const XReal& A1, const XReal& A2, const XReal& B1, const XReal& B2,
                                     const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    if (!(A1 > 0 && A2 > 0 && B1 < B2)) throw SolveFailure("map parameters out of range");
    ChiMap m{A1, A2, B1, B2, {}, XReal(0)};
    auto f = [&](const XReal& x) { return m.dR(x); };
    auto df = [&](const XReal& x) { return m.d2R(x); };
    const XReal L = 2 * sqrt(A1 + A2) + 1;
    std::array<XReal, 4> w;
    w[0] = bracketed_newton(f, df, B1 - L, B1 - sqrt(A1) / 2, ctx);
    w[3] = bracketed_newton(f, df, B2 + sqrt(A2) / 2, B2 + L, ctx);
    XReal r = boost::multiprecision::cbrt(A2 / A1);
    XReal wm = (B2 + B1 * r) / (1 + r);
    if (!(f(wm) > 0)) throw SolveFailure("no critical points between the poles");
    XReal lo = B1 + std::min(sqrt(A1) / 2, (wm - B1) / 2);
    while (f(lo) >= 0) lo = B1 + (lo - B1) / 2;
    XReal hi = B2 - std::min(sqrt(A2) / 2, (B2 - wm) / 2);
    while (f(hi) >= 0) hi = B2 - (B2 - hi) / 2;
    w[1] = bracketed_newton(f, df, lo, wm, ctx);
    w[2] = bracketed_newton(f, df, wm, hi, ctx);
    return w;
}

namespace {

using Vec = std::vector<XReal>;
// returns false when x is outside the admissible set
using SystemFn = std::function<bool(const Vec& x, Vec& F, XMatrix* J)>;

XReal sup(const Vec& v)
{
    XReal m = 0;
    for (const auto& a : v) m = std::max(m, abs(a));
    return m;
}

// Damped Newton. Returns true once max|F| <= tol.
bool damped_newton(const SystemFn& sys, Vec& x, const XReal& tol, const PrecisionContext& ctx, XReal& resid,
                   int max_iter = 80)
{
    const std::size_t n = x.size();
    Vec F(n);
    XMatrix J(n, n);
    if (!sys(x, F, &J)) return false;
    resid = sup(F);
    for (int it = 0; it < max_iter; ++it) {
        if (resid <= tol) break;
        Vec rhs(n);
        for (std::size_t k = 0; k < n; ++k) rhs[k] = -F[k];
        DenseSolution step;
        try {
            step = solve_dense(J, rhs, ctx);
        } catch (const SingularSystem&) {
            return false;
        }
        XReal lambda = 1;
        bool accepted = false;
        for (int k = 0; k < 30; ++k, lambda /= 2) {
            Vec trial(n), Ft(n);
            for (std::size_t q = 0; q < n; ++q) trial[q] = x[q] + lambda * step.x[q];
            if (!sys(trial, Ft, nullptr)) continue;
            XReal r = sup(Ft);
            if (r < resid || r <= tol) {
                x = trial;
                accepted = true;
                break;
            }
        }
        if (!accepted) return false;
        if (!sys(x, F, &J)) return false;
        resid = sup(F);
    }
    if (resid > tol) return false;
    // polish towards working precision while full steps still pay off
    for (int it = 0; it < 4 && resid > 0; ++it) {
        Vec rhs(n), trial(n), Ft(n);
        for (std::size_t k = 0; k < n; ++k) rhs[k] = -F[k];
        try {
            auto step = solve_dense(J, rhs, ctx);
            for (std::size_t q = 0; q < n; ++q) trial[q] = x[q] + step.x[q];
        } catch (const SingularSystem&) {
            break;
        }
        if (!sys(trial, Ft, &J)) break;
        XReal r = sup(Ft);
        if (!(r < resid)) break;
        x = trial;
        F = Ft;
        resid = r;
    }
    sys(x, F, nullptr);
    return true;
}

XReal scale_of(const std::array<XReal, 4>& e)
{
    XReal s = 1;
    for (const auto& v : e) s = std::max(s, abs(v));
    return s;
}

bool symmetric_points(const std::array<XReal, 4>& e) { return e[0] == -e[3] && e[1] == -e[2]; }

// Newton for fixed branch points, symmetric or general
bool chi_newton(const std::array<XReal, 4>& e, ChiMap& m, const XReal& tol, const PrecisionContext& ctx)
{
    const bool sym = symmetric_points(e);
    auto unpack = [&](const Vec& x) {
        return sym ? std::array<XReal, 4>{x[0], x[0], -x[1], x[1]} : std::array<XReal, 4>{x[0], x[1], x[2], x[3]};
    };
    SystemFn sys = [&](const Vec& x, Vec& F, XMatrix* J) -> bool {
        auto p = unpack(x);
        std::array<XReal, 4> w;
        try {
            w = critical_points(p[0], p[1], p[2], p[3], ctx);
        } catch (const SolveFailure&) {
            return false;
        }
        ChiMap cm{p[0], p[1], p[2], p[3], w, XReal(0)};
        const int first = sym ? 2 : 0;
        for (int j = first; j < 4; ++j) {
            int row = j - first;
            F[row] = cm.R(w[j]) - e[j];
            if (J) {
                XReal u = w[j] - p[2], v = w[j] - p[3];
                XReal dA1 = 1 / u, dA2 = 1 / v, dB1 = p[0] / (u * u), dB2 = p[1] / (v * v);
                if (sym) {
                    (*J)(row, 0) = dA1 + dA2;
                    (*J)(row, 1) = dB2 - dB1;
                } else {
                    (*J)(row, 0) = dA1;
                    (*J)(row, 1) = dA2;
                    (*J)(row, 2) = dB1;
                    (*J)(row, 3) = dB2;
                }
            }
        }
        return true;
    };
    Vec x = sym ? Vec{(m.A1 + m.A2) / 2, (m.B2 - m.B1) / 2} : Vec{m.A1, m.A2, m.B1, m.B2};
    XReal resid;
    if (!damped_newton(sys, x, tol, ctx, resid)) return false;
    auto p = unpack(x);
    auto w = critical_points(p[0], p[1], p[2], p[3], ctx);
    if (sym) w = {-w[3], -w[2], w[2], w[3]};
    m = ChiMap{p[0], p[1], p[2], p[3], w, resid};
    return true;
}

}  // namespace

ChiMap chi_solve(const std::array<XReal, 4>& e, const PrecisionContext& ctx, const ChiMap* seed)
{
    PrecisionScope scope(ctx);
    if (!(e[0] < e[1] && e[1] < e[2] && e[2] < e[3])) throw SolveFailure("branch points must be strictly ordered");
    const XReal tol = ctx.tol() * scale_of(e);

    ChiMap start;
    if (seed) {
        start = *seed;
    } else {
        XReal l1 = (e[1] - e[0]) / 4, l2 = (e[3] - e[2]) / 4;
        start = ChiMap{l1 * l1, l2 * l2, (e[0] + e[1]) / 2, (e[2] + e[3]) / 2, {}, XReal(0)};
    }
    ChiMap m = start;
    if (chi_newton(e, m, tol, ctx)) return m;

    // homotopy: slide from the branch points the seed reproduces exactly
    m = start;
    std::array<XReal, 4> e0;
    try {
        m.w = critical_points(m.A1, m.A2, m.B1, m.B2, ctx);
    } catch (const SolveFailure&) {
        throw SolveFailure("chi_solve: seed is not an admissible map");
    }
    for (int j = 0; j < 4; ++j) e0[j] = m.R(m.w[j]);
    XReal t = 0, dt = XReal(1) / 10;
    const XReal coarse = boost::multiprecision::sqrt(tol);
    while (t < 1) {
        XReal t1 = std::min(XReal(1), t + dt);
        std::array<XReal, 4> et;
        for (int j = 0; j < 4; ++j) et[j] = (1 - t1) * e0[j] + t1 * e[j];
        ChiMap trial = m;
        bool ok = (et[0] < et[1] && et[1] < et[2] && et[2] < et[3]) && chi_newton(et, trial, t1 == 1 ? tol : coarse, ctx);
        if (ok) {
            m = trial;
            t = t1;
            dt *= 2;
        } else {
            dt /= 2;
            if (dt < XReal("1e-8")) throw SolveFailure("chi_solve: continuation stalled");
        }
    }
    return m;
}

std::array<XReal, 4> limit_constants(const Geometry& g, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    XReal q = (g.beta2 - g.alpha2) / 4;
    XReal A02 = q * q, B02 = (g.alpha2 + g.beta2) / 2;
    XReal w2 = -sqrt((g.alpha1 - g.alpha2) * (g.alpha1 - g.beta2));
    XReal phi2 = (g.alpha1 - B02 + w2) / 2;
    return {XReal(0), A02, B02 + phi2, B02};
}

namespace {

XReal mass_of(const XReal& A1, const XReal& B1, const XReal& B2, const std::array<XReal, 4>& w, const XReal& ws)
{
    return -A1 * (B1 - B2) * (B1 - ws) / ((B1 - w[0]) * (B1 - w[1]) * (B1 - w[2]) * (B1 - w[3]));
}

CurveData mirror_curve(const CurveData& m, const Geometry& g)
{
    CurveData cd;
    cd.geometry = g;
    cd.c = 1 - m.c;
    cd.regime = m.regime == Regime::PushedLeft ? Regime::PushedRight
                                              : (m.regime == Regime::PushedRight ? Regime::PushedLeft : Regime::Middle);
    cd.A1 = m.A2;
    cd.A2 = m.A1;
    cd.B1 = -m.B2;
    cd.B2 = -m.B1;
    for (int j = 0; j < 4; ++j) cd.w_crit[j] = -m.w_crit[3 - j];
    cd.w_star = -m.w_star;
    cd.z_c = -m.z_c;
    cd.beta_c1 = -m.alpha_c2;
    cd.alpha_c2 = -m.beta_c1;
    cd.K = m.K;
    cd.solve_residual = m.solve_residual;
    cd.thresholds = {1 - m.thresholds.c_dstar, 1 - m.thresholds.c_star};
    cd.limit = m.limit;
    return cd;
}

CurveData limit_curve(const Geometry& g, const PrecisionContext& ctx)
{
    auto k = limit_constants(g, ctx);
    CurveData cd;
    cd.geometry = g;
    cd.c = 0;
    cd.regime = Regime::PushedLeft;
    cd.A1 = k[0];
    cd.A2 = k[1];
    cd.B1 = k[2];
    cd.B2 = k[3];
    XReal r = sqrt(cd.A2);
    cd.w_crit = {cd.B1, cd.B1, cd.B2 - r, cd.B2 + r};
    cd.w_star = cd.B1;
    cd.beta_c1 = g.alpha1;
    cd.alpha_c2 = g.alpha2;
    cd.z_c = g.alpha1;
    cd.d_c = g.alpha1;
    cd.K = 1;
    cd.solve_residual = 0;
    cd.limit = true;
    return cd;
}

}  // namespace

CurveData pushed_left_solve(const Geometry& g, const XReal& c, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    g.validate();
    const XReal tol = ctx.tol() * scale_of(g.points());
    auto lim = limit_constants(g, ctx);
    const XReal w2a = sqrt((g.alpha1 - g.alpha2) * (g.alpha1 - g.beta2));

    std::array<XReal, 4> w;
    XReal cc = c;
    SystemFn sys = [&](const Vec& x, Vec& F, XMatrix* J) -> bool {
        const XReal &A1 = x[0], &A2 = x[1], &B1 = x[2], &B2 = x[3], &beta = x[4];
        if (!(beta > g.alpha1 && beta < g.alpha2)) return false;
        try {
            w = critical_points(A1, A2, B1, B2, ctx);
        } catch (const SolveFailure&) {
            return false;
        }
        ChiMap m{A1, A2, B1, B2, w, XReal(0)};
        const std::array<XReal, 4> target{g.alpha1, beta, g.alpha2, g.beta2};
        for (int j = 0; j < 4; ++j) F[j] = m.R(w[j]) - target[j];
        // mass carried to infinity on sheet 1, zero of h pinned at w2
        XReal G = A1 * (B2 - B1) / ((B1 - w[0]) * (B1 - w[2]) * (B1 - w[3]));
        F[4] = G - cc;
        if (J) {
            for (int j = 0; j < 4; ++j) {
                XReal u = w[j] - B1, v = w[j] - B2;
                (*J)(j, 0) = 1 / u;
                (*J)(j, 1) = 1 / v;
                (*J)(j, 2) = A1 / (u * u);
                (*J)(j, 3) = A2 / (v * v);
                (*J)(j, 4) = j == 1 ? XReal(-1) : XReal(0);
            }
            // d log G / dp, with the critical points moving along
            std::array<std::array<XReal, 4>, 4> dw;
            for (int j = 0; j < 4; ++j) {
                XReal u = w[j] - B1, v = w[j] - B2, r2 = m.d2R(w[j]);
                std::array<XReal, 4> dRp{-1 / (u * u), -1 / (v * v), -2 * A1 / (u * u * u), -2 * A2 / (v * v * v)};
                for (int k = 0; k < 4; ++k) dw[j][k] = -dRp[k] / r2;
            }
            for (int k = 0; k < 4; ++k) {
                XReal d = 0;
                if (k == 0) d += 1 / A1;
                if (k == 2) d -= 1 / (B2 - B1);
                if (k == 3) d += 1 / (B2 - B1);
                for (int j : {0, 2, 3}) d -= ((k == 2 ? XReal(1) : XReal(0)) - dw[j][k]) / (B1 - w[j]);
                (*J)(4, k) = G * d;
            }
            (*J)(4, 4) = 0;
        }
        return true;
    };

    auto seed_at = [&](const XReal& cs) {
        XReal s = cs * w2a;
        return Vec{s * s, lim[1], lim[2], lim[3], g.alpha1 + 4 * s};
    };
    XReal resid;
    Vec x = seed_at(c);
    bool ok = damped_newton(sys, x, tol, ctx, resid);
    if (!ok) {
        // continuation in c from a small value where the limit seed is reliable
        XReal cur = c / 64;
        x = seed_at(cur);
        cc = cur;
        if (!damped_newton(sys, x, tol, ctx, resid)) throw SolveFailure("pushed-left solve failed at small c");
        XReal step = std::min(XReal("0.05"), (c - cur) / 4);
        while (cur < c) {
            XReal next = std::min(c, cur + step);
            Vec trial = x;
            cc = next;
            if (damped_newton(sys, trial, tol, ctx, resid)) {
                x = trial;
                cur = next;
                step = std::min(XReal("0.05"), step * 2);
            } else {
                step /= 2;
                if (step < XReal("1e-10")) throw SolveFailure("pushed-left continuation stalled");
            }
        }
        ok = true;
    }
    cc = c;
    Vec F(5);
    sys(x, F, nullptr);

    CurveData cd;
    cd.geometry = g;
    cd.c = c;
    cd.regime = Regime::PushedLeft;
    cd.A1 = x[0];
    cd.A2 = x[1];
    cd.B1 = x[2];
    cd.B2 = x[3];
    cd.beta_c1 = x[4];
    cd.alpha_c2 = g.alpha2;
    cd.w_crit = w;
    cd.w_star = w[1];
    cd.z_c = cd.beta_c1;
    cd.K = 1 - c + c * c;
    cd.solve_residual = sup(F);
    return cd;
}

CurveSolver::CurveSolver(Geometry g, const PrecisionContext& ctx) : g_(std::move(g)), ctx_(ctx)
{
    PrecisionScope scope(ctx_);
    g_.validate();
    full_ = chi_solve(g_.points(), ctx_);
    th_.c_star = mass_of(full_.A1, full_.B1, full_.B2, full_.w, full_.w[1]);
    th_.c_dstar = mass_of(full_.A1, full_.B1, full_.B2, full_.w, full_.w[2]);
    if (!(th_.c_star > 0 && th_.c_star < th_.c_dstar && th_.c_dstar < 1))
        throw SolveFailure("thresholds violate 0 < c* < c** < 1");
}

CurveData CurveSolver::at(const XReal& c) const
{
    PrecisionScope scope(ctx_);
    if (!(c >= 0 && c <= 1)) throw std::invalid_argument("curve: c must lie in [0, 1]");
    CurveData cd;
    if (c == 0) {
        cd = limit_curve(g_, ctx_);
    } else if (c == 1) {
        cd = mirror_curve(limit_curve(g_.mirrored(), ctx_), g_);
    } else if (c < th_.c_star) {
        cd = pushed_left_solve(g_, c, ctx_);
        DcOracleResult dc = dc_oracle(g_, c, ctx_);
        XReal agree = boost::multiprecision::pow(XReal(10), -static_cast<int>(ctx_.bits()) / 4);
        if (abs(dc.beta_c1 - cd.beta_c1) > agree)
            throw InternalInconsistency("discriminant and Newton endpoints disagree");
        cd.d_c = dc.d_c;
    } else if (c > th_.c_dstar) {
        cd = mirror_curve(pushed_left_solve(g_.mirrored(), 1 - c, ctx_), g_);
    } else {
        cd.geometry = g_;
        cd.c = c;
        cd.regime = Regime::Middle;
        cd.A1 = full_.A1;
        cd.A2 = full_.A2;
        cd.B1 = full_.B1;
        cd.B2 = full_.B2;
        cd.w_crit = full_.w;
        cd.beta_c1 = g_.beta1;
        cd.alpha_c2 = g_.alpha2;
        const auto& w = full_.w;
        cd.w_star = full_.B1 + c * (full_.B1 - w[0]) * (full_.B1 - w[1]) * (full_.B1 - w[2]) * (full_.B1 - w[3]) /
                                   (full_.A1 * (full_.B1 - full_.B2));
        if (c == th_.c_star) cd.w_star = w[1];
        if (c == th_.c_dstar) cd.w_star = w[2];
        cd.z_c = full_.R(cd.w_star);
        if (c == th_.c_star) cd.z_c = g_.beta1;
        if (c == th_.c_dstar) cd.z_c = g_.alpha2;
        cd.K = 1 - c + c * c;
        cd.solve_residual = full_.residual;
    }
    cd.c = c;
    cd.K = 1 - c + c * c;
    cd.thresholds = th_;
    if (!cd.limit && (cd.z_c < cd.beta_c1 || cd.z_c > cd.alpha_c2))
        throw InternalInconsistency("z_c outside the gap of its regime");
    return cd;
}

Thresholds critical_thresholds(const Geometry& g, const PrecisionContext& ctx)
{
    return CurveSolver(g, ctx).thresholds();
}

CurveData curve(const Geometry& g, const XReal& c, const PrecisionContext& ctx) { return CurveSolver(g, ctx).at(c); }

DcOracleResult dc_oracle(const Geometry& g, const XReal& c, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    g.validate();
    if (!(c > 0 && c < 1)) throw RegimeError("dc_oracle: c must lie in (0, 1)");
    const XReal K = 1 - c + c * c, s = c - c * c;
    const XReal K3 = K * K * K, s2 = s * s;
    Poly Pi = from_roots({g.alpha1, g.alpha2, g.beta2});
    Poly dPi = Pi.derivative();
    Poly G = (4 * K3) * (Pi * Pi) - s2 * (dPi * dPi * dPi);
    const XReal span = g.beta2 - g.alpha1;
    auto roots = real_roots_in(G, g.alpha1 - 10 * span, g.beta2 + 10 * span, ctx);
    const XReal lead = 4 * K3 - 27 * s2;
    const XReal sum3 = g.alpha1 + g.alpha2 + g.beta2;
    const XReal eps = boost::multiprecision::ldexp(XReal(1), -static_cast<int>(ctx.bits()) + 8);
    for (const auto& r : roots) {
        XReal z = r.x;
        if (r.multiplicity == 1) {
            Poly dG = G.derivative();
            for (int it = 0; it < 8; ++it) {
                XReal d = dG(z);
                if (d == 0) break;
                XReal step = G(z) / d;
                z -= step;
                if (abs(step) <= eps * (abs(z) + 1)) break;
            }
        }
        XReal dp = dPi(z);
        if (dp == 0) continue;
        XReal d = z - 3 * Pi(z) / dp;
        XReal beta = (12 * K3 * d - 27 * s2 * sum3) / lead - 2 * z;
        if (!(g.alpha1 < d && d < beta && beta < g.beta1)) continue;
        DcOracleResult out;
        out.d_c = d;
        out.beta_c1 = beta;
        out.z_double = z;
        XReal u = z - d;
        XReal scale = 4 * K3 * abs(u * u * u) + 27 * s2 * abs(Pi(z));
        XReal C = 4 * K3 * u * u * u - 27 * s2 * Pi(z);
        XReal dC = 12 * K3 * u * u - 27 * s2 * dp;
        out.certificate = std::max(abs(C), abs(dC)) / scale;
        return out;
    }
    throw RegimeError("dc_oracle: no admissible d_c (c is not below c*)");
}

std::string constants_json(const CurveData& cd, int digits)
{
    auto s = [&](const XReal& v) { return to_string(v, digits); };
    nlohmann::ordered_json j;
    j["c"] = s(cd.c);
    j["geometry"] = {s(cd.geometry.alpha1), s(cd.geometry.beta1), s(cd.geometry.alpha2), s(cd.geometry.beta2)};
    j["regime"] = regime_name(cd.regime);
    j["c_star"] = s(cd.thresholds.c_star);
    j["c_dstar"] = s(cd.thresholds.c_dstar);
    j["beta_c1"] = s(cd.beta_c1);
    j["alpha_c2"] = s(cd.alpha_c2);
    j["A1"] = s(cd.A1);
    j["A2"] = s(cd.A2);
    j["B1"] = s(cd.B1);
    j["B2"] = s(cd.B2);
    j["z_c"] = s(cd.z_c);
    j["residual"] = to_string(cd.solve_residual, 6);
    return j.dump(2);
}

}  // namespace angelesco
