#include "angelesco/szego.hpp"
#include "angelesco/quadrature.hpp"

#include <cmath>
#include <complex>
#include <iomanip>

namespace angelesco {

using boost::multiprecision::cos;
using boost::multiprecision::sin;

namespace {

struct Cut {
    XReal lo, hi, mid, half;
};

Cut cut_of(const Geometry& g, int i)
{
    if (i != 1 && i != 2) throw std::invalid_argument("interval index must be 1 or 2");
    return {g.lo(i), g.hi(i), (g.lo(i) + g.hi(i)) / 2, (g.hi(i) - g.lo(i)) / 2};
}

bool on_cut(const Cut& c, const XComplex& z) { return z.im == 0 && z.re >= c.lo && z.re <= c.hi; }

XComplex w_of(const Cut& c, const XComplex& z, int side)
{
    if (on_cut(c, z)) {
        XReal r = boost::multiprecision::sqrt((z.re - c.lo) * (c.hi - z.re));
        return XComplex(XReal(0), side < 0 ? XReal(-r) : r);
    }
    XComplex u = z - XComplex(c.mid);
    XComplex q = XComplex(c.half) / u;
    return u * sqrt(XComplex(1) - q * q);
}

XComplex phi_of(const Cut& c, const XComplex& z, int side)
{
    return (z - XComplex(c.mid) + w_of(c, z, side)) / XComplex(2);
}

}  // namespace

XComplex w_map(const Geometry& g, int i, const XComplex& z, int side) { return w_of(cut_of(g, i), z, side); }

XComplex phi_map(const Geometry& g, int i, const XComplex& z, int side) { return phi_of(cut_of(g, i), z, side); }

SzegoEval szego_rho(const Geometry& g, int i, const XComplex& z, const WeightSpec& weight, const PrecisionContext& ctx,
                    int side, int nodes)
{
    PrecisionScope scope(ctx);
    const Cut c = cut_of(g, i);
    const bool boundary = on_cut(c, z);
    if (boundary && (side == 0 || z.re == c.lo || z.re == c.hi))
        throw DomainError("szego_rho: z on the cut needs a side flag and an interior point");
    if (nodes < 2 || nodes % 2) throw std::invalid_argument("szego_rho: node count must be even");

    const XReal pi = pi_x(), two_pi = 2 * pi;
    auto u = [&](const XReal& th) {
        XReal d = weight.density(c.mid + c.half * cos(th));
        if (!(d > 0)) throw InvalidWeight("szego_rho: weight not positive on the interval");
        return boost::multiprecision::log(two_pi * d);
    };
    auto rule = gauss_legendre(nodes, ctx);
    const XReal hp = pi / 2;
    std::vector<XReal> th(rule.nodes.size()), uv(rule.nodes.size());
    XReal mean = 0;
    for (std::size_t k = 0; k < th.size(); ++k) {
        th[k] = hp * (rule.nodes[k] + 1);
        uv[k] = u(th[k]);
        mean += rule.weights[k] * uv[k];
    }
    mean *= hp;  // \int_0^pi u

    // subtract u at the point of the cut nearest to z, which keeps the
    // integrand tame when z approaches the cut
    XReal t0 = (z.re - c.mid) / c.half;
    if (t0 > 1) t0 = 1;
    if (t0 < -1) t0 = -1;
    const XReal th0 = boost::multiprecision::acos(t0);
    const XReal u0 = u(th0);

    XComplex E;
    if (boundary) {
        // E_+/- = -u0/2 +/- (i sin th0 / 2pi) \int (u - u0)/(cos th - cos th0)
        XReal acc = 0, c0 = cos(th0);
        for (std::size_t k = 0; k < th.size(); ++k) acc += rule.weights[k] * (uv[k] - u0) / (cos(th[k]) - c0);
        acc *= hp;
        XReal im = sin(th0) * acc / two_pi;
        E = XComplex(-u0 / 2, side > 0 ? im : XReal(-im));
    } else {
        XComplex acc(0);
        for (std::size_t k = 0; k < th.size(); ++k) {
            XComplex x(c.mid + c.half * cos(th[k]));
            acc += XComplex(rule.weights[k] * (uv[k] - u0)) / (z - x);
        }
        acc *= XComplex(hp);
        E = XComplex(-u0 / 2) - w_of(c, z, side) * acc / XComplex(two_pi);
    }
    const XReal A0 = c.half * c.half / 4;
    XComplex ratio = phi_of(c, z, side) / (XComplex(boost::multiprecision::sqrt(A0)) * w_of(c, z, side));
    SzegoEval out;
    out.i = i;
    out.value = exp(E) * sqrt(ratio);
    out.at_infinity = XComplex(boost::multiprecision::exp(-mean / two_pi) / boost::multiprecision::sqrt(boost::multiprecision::sqrt(A0)));
    return out;
}

namespace {

XComplex sx0_radicand(const Cut& c, const XComplex& z, const XComplex& phi0, const XReal& x0, const XReal& A0, int side)
{
    XComplex p = phi_of(c, z, side);
    if (z.im == 0 && z.re == x0) {
        // removable point: (phi(z) - phi(x0))/(z - x0) -> phi'(x0)
        XComplex dphi = (XComplex(1) + (z - XComplex(c.mid)) / w_of(c, z, 0)) / XComplex(2);
        return dphi * phi0 * phi0 / (phi0 * phi0 - XComplex(A0));
    }
    return (p - phi0) / (phi0 * p - XComplex(A0)) * phi0 * p / (z - XComplex(x0));
}

}  // namespace

XComplex s_x0(const XComplex& z, const XReal& x0, const Geometry& g, const PrecisionContext& ctx, int side)
{
    PrecisionScope scope(ctx);
    const Cut c = cut_of(g, 2);
    if (x0 >= c.lo && x0 <= c.hi) throw DomainError("s_x0: x0 must lie outside Delta_2");
    if (on_cut(c, z) && side == 0) throw DomainError("s_x0: z on Delta_2 needs a side flag");
    if (z.im < 0 || (on_cut(c, z) && side < 0)) return conj(s_x0(conj(z), x0, g, ctx, on_cut(c, z) ? 1 : 0));

    const XReal A0 = c.half * c.half / 4;
    const XComplex phi0 = phi_of(c, XComplex(x0), 0);
    // branch of the root: follow the vertical ray from far above down to z,
    // where the radicand tends to 1
    const double span = static_cast<double>(c.hi - c.lo) + std::fabs(static_cast<double>(z.re - x0)) + 1;
    std::complex<double> root(1, 0);
    for (int k = 0; k <= 80; ++k) {
        XComplex zk(z.re, z.im + XReal(span * 1e6 * std::ldexp(1.0, -k / 2) * (k % 2 ? 0.70710678 : 1.0)));
        std::complex<double> q = sx0_radicand(c, zk, phi0, x0, A0, 0).to_complex();
        std::complex<double> r = std::sqrt(q);
        root = std::abs(r - root) <= std::abs(r + root) ? r : -r;
    }
    XComplex q = sx0_radicand(c, z, phi0, x0, A0, side);
    XComplex r = sqrt(q);
    std::complex<double> rd = r.to_complex();
    return std::abs(rd - root) <= std::abs(rd + root) ? r : -r;
}

XComplex marginal_predict(const MultiIndex& n, const XComplex& z, const Geometry& g, const WeightSpec& weight2,
                          const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    const Cut c2 = cut_of(g, 2);
    if (on_cut(c2, z)) throw DomainError("marginal_predict: z on Delta_2");
    if (n.n1 > 0 && z == XComplex(g.alpha1)) throw DomainError("marginal_predict: z at alpha_1");
    SzegoEval s = szego_rho(g, 2, z, weight2, ctx);
    XComplex out = s.value / s.at_infinity;
    if (n.n1 > 0) out *= pow(s_x0(z, g.alpha1, g, ctx) * (z - XComplex(g.alpha1)), n.n1);
    out *= pow(phi_of(c2, z, 0), n.n2);
    return out;
}

std::vector<RatioRow> ratio_report(const MopEngine& engine, const std::vector<MultiIndex>& indices, const XComplex& z)
{
    const PrecisionContext& ctx = engine.context();
    PrecisionScope scope(ctx);
    std::vector<RatioRow> rows;
    for (const auto& n : indices) {
        MopSolution s = engine.solve(n);
        XComplex pred = marginal_predict(n, z, engine.geometry(), engine.weight(2), ctx);
        RatioRow r;
        r.n = n;
        r.z = z;
        r.ratio = s.p_monic(z) / pred;
        r.abs_err = abs(r.ratio - XComplex(1));
        rows.push_back(r);
    }
    return rows;
}

void write_ratio_csv(std::ostream& os, const std::vector<RatioRow>& rows, int digits)
{
    os << "n1,n2,z_re,z_im,ratio_re,ratio_im,abs_err\n";
    for (const auto& r : rows)
        os << r.n.n1 << ',' << r.n.n2 << ',' << to_string(r.z.re, digits) << ',' << to_string(r.z.im, digits) << ','
           << to_string(r.ratio.re, digits) << ',' << to_string(r.ratio.im, digits) << ','
           << to_string(r.abs_err, digits) << '\n';
}

XReal b_from_ratio(const MopEngine& engine, const MultiIndex& n, int i)
{
    PrecisionScope scope(engine.context());
    if (i != 1 && i != 2) throw std::invalid_argument("b_from_ratio: i must be 1 or 2");
    MopSolution p = engine.solve(n);
    MopSolution q = engine.solve(n.plus(i));
    const int d = n.size();
    // P_{n+e_i}/P_n - z -> [z^d]P_{n+e_i} - [z^{d-1}]P_n
    return p.p_monic.coeff(d - 1) - q.p_monic.coeff(d);
}

}  // namespace angelesco
