#include "angelesco/curve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace angelesco {

namespace {

using cd_t = std::complex<double>;

struct Cubic {
    XComplex p2, p1, p0;  // monic: w^3 + p2 w^2 + p1 w + p0
};

Cubic cubic_of(const CurveData& cd, const XComplex& z)
{
    XComplex B1(cd.B1), B2(cd.B2), s(cd.B1 + cd.B2);
    Cubic q;
    q.p2 = -(s + z);
    q.p1 = XComplex(cd.B1 * cd.B2 + cd.A1 + cd.A2) + z * s;
    q.p0 = -(z * XComplex(cd.B1 * cd.B2)) - XComplex(cd.A1 * cd.B2 + cd.A2 * cd.B1);
    return q;
}

std::array<cd_t, 3> roots_double(cd_t p2, cd_t p1, cd_t p0)
{
    double r = 1 + std::max({std::abs(p2), std::abs(p1), std::abs(p0)});
    std::array<cd_t, 3> x;
    cd_t seed(0.4, 0.9);
    for (int k = 0; k < 3; ++k) x[k] = r * std::pow(seed, k + 1);
    for (int it = 0; it < 500; ++it) {
        double move = 0;
        for (int k = 0; k < 3; ++k) {
            cd_t f = ((x[k] + p2) * x[k] + p1) * x[k] + p0;
            cd_t d = 1;
            for (int j = 0; j < 3; ++j)
                if (j != k) d *= x[k] - x[j];
            if (d == cd_t(0)) d = 1e-300;
            cd_t step = f / d;
            x[k] -= step;
            move = std::max(move, std::abs(step));
        }
        if (move <= 1e-15 * r) break;
    }
    return x;
}

// stable roots of u^2 + b u + c
std::array<XComplex, 2> quadratic(const XComplex& b, const XComplex& c)
{
    XComplex disc = sqrt(b * b - XComplex(4) * c);
    if (b.re * disc.re + b.im * disc.im < 0) disc = -disc;
    XComplex q = -(b + disc) / XComplex(2);
    if (q.re == 0 && q.im == 0) return {XComplex(0), XComplex(0)};
    return {q, c / q};
}

std::array<XComplex, 3> cubic_roots(const Cubic& q, const PrecisionContext& ctx)
{
    auto d = roots_double(q.p2.to_complex(), q.p1.to_complex(), q.p0.to_complex());
    int iso = 0;
    double best = -1;
    for (int k = 0; k < 3; ++k) {
        double sep = std::min(std::abs(d[k] - d[(k + 1) % 3]), std::abs(d[k] - d[(k + 2) % 3]));
        if (sep > best) {
            best = sep;
            iso = k;
        }
    }
    XComplex r(d[iso]);
    const XReal eps = boost::multiprecision::ldexp(XReal(1), -static_cast<int>(ctx.bits()) + 4);
    for (int it = 0; it < 200; ++it) {
        XComplex f = ((r + q.p2) * r + q.p1) * r + q.p0;
        XComplex df = (XComplex(3) * r + XComplex(2) * q.p2) * r + q.p1;
        if (df.re == 0 && df.im == 0) break;
        XComplex step = f / df;
        r -= step;
        if (abs(step) <= eps * (abs(r) + 1)) break;
    }
    XComplex b1 = q.p2 + r;
    XComplex b0 = q.p1 + r * b1;
    auto pair = quadratic(b1, b0);
    return {r, pair[0], pair[1]};
}

bool inside(const XReal& x, const XReal& lo, const XReal& hi) { return x > lo && x < hi; }

// Labels for Im z > 0: sheet 0 is the root in the upper half-plane; sheets 1
// and 2 are told apart by continuation from the real axis right of beta2.
std::array<XComplex, 3> label_upper(const CurveData& cd, const XComplex& z, std::array<XComplex, 3> r)
{
    int s0 = 0;
    for (int k = 1; k < 3; ++k)
        if (r[k].im > r[s0].im) s0 = k;
    std::array<XComplex, 2> rest;
    for (int k = 0, m = 0; k < 3; ++k)
        if (k != s0) rest[m++] = r[k];

    const double span = static_cast<double>(cd.geometry.beta2 - cd.geometry.alpha1);
    const double zr = static_cast<double>(z.re), zi = static_cast<double>(z.im);
    const double anchor = std::max(zr, static_cast<double>(cd.geometry.beta2)) + span;
    const double top = std::max(zi, span);
    const double low = std::max(zi, 1e-6 * span);
    const double A1 = static_cast<double>(cd.A1), A2 = static_cast<double>(cd.A2);
    const double B1 = static_cast<double>(cd.B1), B2 = static_cast<double>(cd.B2);
    auto roots_at = [&](cd_t x) {
        return roots_double(-(B1 + B2 + x), B1 * B2 + x * (B1 + B2) + A1 + A2, -x * B1 * B2 - A1 * B2 - A2 * B1);
    };
    // anchor on the real axis: sheet 1 in (B1, w2), sheet 2 in (B2, w4), sheet 0 beyond
    auto a = roots_at(cd_t(anchor, 0));
    std::sort(a.begin(), a.end(), [](cd_t u, cd_t v) { return u.real() < v.real(); });
    cd_t t1 = a[0], t2 = a[1];

    const std::array<cd_t, 4> nodes{cd_t(anchor, 0), cd_t(anchor, top), cd_t(zr, top), cd_t(zr, low)};
    for (int leg = 0; leg < 3; ++leg) {
        cd_t from = nodes[leg], to = nodes[leg + 1];
        double len = std::abs(to - from);
        if (len == 0) continue;
        double t = 0, h = std::min(1.0, span / (8 * len));
        while (t < 1) {
            double tn = std::min(1.0, t + h);
            cd_t x = from + tn * (to - from);
            auto n = roots_at(x);
            int z0 = 0;
            for (int k = 1; k < 3; ++k)
                if (n[k].imag() > n[z0].imag()) z0 = k;
            cd_t u, v;
            for (int k = 0, m = 0; k < 3; ++k)
                if (k != z0) (m++ == 0 ? u : v) = n[k];
            double keep = std::max(std::abs(t1 - u), std::abs(t2 - v));
            double swap = std::max(std::abs(t1 - v), std::abs(t2 - u));
            double sep = std::abs(u - v);
            bool ok = x.imag() > 0 && std::min(keep, swap) < 0.25 * sep;
            if (ok) {
                if (keep <= swap) {
                    t1 = u;
                    t2 = v;
                } else {
                    t1 = v;
                    t2 = u;
                }
                t = tn;
                h = std::min(1.0, h * 2);
            } else {
                h /= 2;
                if (h * len < 1e-12 * span)
                    throw ClassificationError("sheet continuation stalled; retry with a smaller step near the cuts");
            }
        }
    }
    cd_t u = rest[0].to_complex(), v = rest[1].to_complex();
    double keep = std::abs(t1 - u) + std::abs(t2 - v);
    double swap = std::abs(t1 - v) + std::abs(t2 - u);
    if (keep <= swap) return {r[s0], rest[0], rest[1]};
    return {r[s0], rest[1], rest[0]};
}

// c in {0, 1}: one sheet is the constant pole, the other two solve a quadratic
std::array<XComplex, 3> eval_limit(const CurveData& cd, const XComplex& z, int side)
{
    const bool left = cd.A1 == 0;
    const XReal& A = left ? cd.A2 : cd.A1;
    const XReal& B = left ? cd.B2 : cd.B1;
    auto u = quadratic(XComplex(B) - z, XComplex(A));
    // outer root (|u| >= sqrt A) is sheet 0
    XComplex outer = u[0], inner = u[1];
    if (abs(u[1]) > abs(u[0])) std::swap(outer, inner);
    XReal sa = boost::multiprecision::sqrt(A);
    bool on_cut = z.im == 0 && abs(abs(outer) - sa) <= sa * XReal("1e-30") && outer.im != 0;
    if (on_cut) {
        if (side == 0) throw ClassificationError("z lies on a cut; specify side");
        if ((outer.im > 0) != (side > 0)) std::swap(outer, inner);
    }
    XComplex w0 = XComplex(B) + outer, wo = XComplex(B) + inner;
    if (left) return {w0, XComplex(cd.B1), wo};
    return {w0, wo, XComplex(cd.B2)};
}

}  // namespace

std::array<XComplex, 3> chi_eval(const CurveData& cd, const XComplex& z, const PrecisionContext& ctx, int side)
{
    PrecisionScope scope(ctx);
    if (cd.limit) return eval_limit(cd, z, side);
    if (z.im < 0) {
        auto r = chi_eval(cd, conj(z), ctx, -side);
        return {conj(r[0]), conj(r[1]), conj(r[2])};
    }
    auto r = cubic_roots(cubic_of(cd, z), ctx);
    if (z.im > 0) return label_upper(cd, z, r);

    const XReal& x = z.re;
    const bool cut1 = inside(x, cd.support_lo(1), cd.support_hi(1));
    const bool cut2 = inside(x, cd.support_lo(2), cd.support_hi(2));
    if (cut1 || cut2) {
        if (side == 0) throw ClassificationError("z lies on a cut; specify side");
        int real_k = 0;
        for (int k = 1; k < 3; ++k)
            if (abs(r[k].im) < abs(r[real_k].im)) real_k = k;
        std::array<XComplex, 2> pair;
        for (int k = 0, m = 0; k < 3; ++k)
            if (k != real_k) pair[m++] = r[k];
        XReal re = (pair[0].re + pair[1].re) / 2, im = (abs(pair[0].im) + abs(pair[1].im)) / 2;
        XComplex up(re, side > 0 ? im : XReal(-im)), down = conj(up);
        XComplex real_root(r[real_k].re);
        if (cut1) return {up, down, real_root};
        return {up, real_root, down};
    }
    std::array<XReal, 3> v{r[0].re, r[1].re, r[2].re};
    std::sort(v.begin(), v.end());
    if (x <= cd.support_lo(1)) return {XComplex(v[0]), XComplex(v[1]), XComplex(v[2])};
    if (x >= cd.support_hi(2)) return {XComplex(v[2]), XComplex(v[0]), XComplex(v[1])};
    return {XComplex(v[1]), XComplex(v[0]), XComplex(v[2])};
}

XComplex chi0(const CurveData& cd, const XComplex& z, const PrecisionContext& ctx, int side)
{
    return chi_eval(cd, z, ctx, side)[0];
}

XComplex h_of_w(const CurveData& cd, const XComplex& w)
{
    XComplex num = (w - XComplex(cd.B1)) * (w - XComplex(cd.B2));
    XComplex den(1);
    int cancel = -1;
    for (int k = 0; k < 4; ++k)
        if (cd.w_star == cd.w_crit[k]) cancel = k;
    if (cancel < 0) num *= w - XComplex(cd.w_star);
    for (int k = 0; k < 4; ++k)
        if (k != cancel) den *= w - XComplex(cd.w_crit[k]);
    return num / den;
}

XComplex h_branch(const CurveData& cd, const XComplex& z, int sheet, const PrecisionContext& ctx, int side)
{
    if (sheet < 0 || sheet > 2) throw std::invalid_argument("sheet must be 0, 1 or 2");
    PrecisionScope scope(ctx);
    if (cd.limit) {
        // the collapsed sheet carries no mass
        bool left = cd.A1 == 0;
        if ((left && sheet == 1) || (!left && sheet == 2)) return XComplex(0);
        auto w = chi_eval(cd, z, ctx, side);
        const XReal& B = left ? cd.B2 : cd.B1;
        const XReal& A = left ? cd.A2 : cd.A1;
        XReal s = boost::multiprecision::sqrt(A);
        XComplex u = w[sheet] - XComplex(B);
        return u / ((u - XComplex(s)) * (u + XComplex(s)));
    }
    auto w = chi_eval(cd, z, ctx, side);
    return h_of_w(cd, w[sheet]);
}

XComplex upsilon(const CurveData& cd, int i, const XComplex& z, int sheet, const PrecisionContext& ctx, int side)
{
    if (i != 1 && i != 2) throw std::invalid_argument("upsilon: i must be 1 or 2");
    if (sheet < 0 || sheet > 2) throw std::invalid_argument("sheet must be 0, 1 or 2");
    PrecisionScope scope(ctx);
    auto w = chi_eval(cd, z, ctx, side);
    return XComplex(cd.A(i)) / (w[sheet] - XComplex(cd.B(i)));
}

}  // namespace angelesco
