#include "angelesco/curve.hpp"
#include "angelesco/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace angelesco {

using boost::multiprecision::cos;
using boost::multiprecision::log;
using boost::multiprecision::sin;

namespace {

struct Support {
    XReal lo, hi;
    XReal mid() const { return (lo + hi) / 2; }
    XReal half() const { return (hi - lo) / 2; }
    bool degenerate() const { return hi <= lo; }
};

// Integrals over a support in the variable t = mid - half*cos(theta), which
// absorbs both square-root edge types.
class SupportIntegrator {
public:
    SupportIntegrator(std::function<XReal(const XReal&)> density, Support s, const PrecisionContext& ctx)
        : rho_(std::move(density)), s_(std::move(s)), ctx_(ctx)
    {
    }

    XReal point(const XReal& theta) const { return s_.mid() - s_.half() * cos(theta); }

    XReal weight(const XReal& theta) const
    {
        // within a few ulps of an edge the cubic's near-double root carries no
        // digits; the weight is bounded there, so the sliver is dropped
        const XReal cut = boost::multiprecision::ldexp(XReal(1), -3 * static_cast<int>(ctx_.bits()) / 8);
        if (theta < cut || pi_x() - theta < cut) return 0;
        return rho_(point(theta)) * s_.half() * sin(theta);
    }

    XReal mass() const
    {
        if (s_.degenerate()) return 0;
        XReal prev = gauss(48), tol = boost::multiprecision::ldexp(XReal(1), -static_cast<int>(ctx_.bits()) / 3);
        for (int m = 96; m <= 768; m *= 2) {
            XReal next = gauss(m);
            if (boost::multiprecision::abs(next - prev) <= tol) return next;
            prev = next;
        }
        return prev;
    }

    // -\int log|x - t| rho(t) dt
    XReal potential(const XReal& x, const XReal& tol) const
    {
        if (s_.degenerate()) return 0;
        const XReal pi = pi_x();
        if (x <= s_.lo || x >= s_.hi) {
            auto f = [&](const XReal& th, const XReal&, const XReal&) {
                return -weight(th) * log(boost::multiprecision::abs(x - point(th)));
            };
            return tanh_sinh(f, XReal(0), pi, tol, ctx_, 8);
        }
        XReal thx = boost::multiprecision::acos((s_.mid() - x) / s_.half());
        // |x - t| = 2 h sin((th+thx)/2) |sin((th-thx)/2)|, with th - thx read off the node distances
        auto left = [&](const XReal& th, const XReal&, const XReal& db) {
            XReal gap = 2 * s_.half() * sin((th + thx) / 2) * sin(db / 2);
            return -weight(th) * log(gap);
        };
        auto right = [&](const XReal& th, const XReal& da, const XReal&) {
            XReal gap = 2 * s_.half() * sin((th + thx) / 2) * sin(da / 2);
            return -weight(th) * log(gap);
        };
        return tanh_sinh(left, XReal(0), thx, tol, ctx_, 8) + tanh_sinh(right, thx, pi, tol, ctx_, 8);
    }

private:
    XReal gauss(int m) const
    {
        auto rule = gauss_legendre(m, ctx_);
        const XReal half = pi_x() / 2;
        XReal sum = 0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) sum += rule.weights[k] * weight(half * (rule.nodes[k] + 1));
        return sum * half;
    }

    std::function<XReal(const XReal&)> rho_;
    Support s_;
    const PrecisionContext& ctx_;
};

}  // namespace

EquilibriumData equilibrium(const CurveData& cd, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    auto shared = std::make_shared<CurveData>(cd);
    auto context = std::make_shared<PrecisionContext>(ctx);

    auto density = [shared, context](int i, const XReal& x) -> XReal {
        if (i != 1 && i != 2) throw std::invalid_argument("density: i must be 1 or 2");
        const CurveData& c = *shared;
        if (!(x > c.support_lo(i) && x < c.support_hi(i))) return XReal(0);
        XReal v = h_branch(c, XComplex(x), i, *context, 1).im / pi_x();
        if (v < XReal("-1e-12")) throw InternalInconsistency("negative equilibrium density");
        return v < 0 ? XReal(0) : v;
    };

    std::array<std::shared_ptr<SupportIntegrator>, 2> parts;
    for (int i = 1; i <= 2; ++i)
        parts[i - 1] = std::make_shared<SupportIntegrator>([density, i](const XReal& x) { return density(i, x); },
                                                          Support{cd.support_lo(i), cd.support_hi(i)}, *context);

    EquilibriumData out;
    out.density = density;
    out.masses = {parts[0]->mass(), parts[1]->mass()};
    const XReal tol = boost::multiprecision::ldexp(XReal(1), -static_cast<int>(ctx.bits()) / 4);
    out.potential = [parts, context, tol](const XReal& x, const XReal& a, const XReal& b) {
        PrecisionScope s(*context);
        XReal v = 0;
        if (a != 0) v += a * parts[0]->potential(x, tol);
        if (b != 0) v += b * parts[1]->potential(x, tol);
        return v;
    };
    out.ell1 = out.potential((cd.support_lo(1) + cd.support_hi(1)) / 2, XReal(2), XReal(1));
    out.ell2 = out.potential((cd.support_lo(2) + cd.support_hi(2)) / 2, XReal(1), XReal(2));
    return out;
}

namespace {

// in-place Cholesky solve of the dense SPD system; false when not positive
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, std::size_t n)
{
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (!(d > 0)) return false;
        d = std::sqrt(d);
        a[j * n + j] = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / d;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
        b[i] = s / a[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[k * n + i] * b[k];
        b[i] = s / a[i * n + i];
    }
    return true;
}

}  // namespace

EnergyOracleResult energy_oracle(const Geometry& g, double c, int n_particles, int iterations, KernelMode mode)
{
    g.validate();
    if (n_particles < 50) throw std::invalid_argument("energy_oracle: need at least 50 particles");
    if (!(c > 0 && c < 1)) throw std::invalid_argument("energy_oracle: c must lie in (0, 1)");
    const int n1 = std::clamp(static_cast<int>(std::lround(c * n_particles)), 1, n_particles - 1);
    const int n2 = n_particles - n1;
    const std::size_t n = static_cast<std::size_t>(n_particles);
    const double lo[2] = {static_cast<double>(g.alpha1), static_cast<double>(g.alpha2)};
    const double hi[2] = {static_cast<double>(g.beta1), static_cast<double>(g.beta2)};

    LogGas gas;
    gas.x.resize(n);
    gas.q.resize(n);
    gas.group.resize(n);
    for (int k = 0; k < n_particles; ++k) {
        int grp = k < n1 ? 0 : 1;
        int cnt = grp == 0 ? n1 : n2, j = grp == 0 ? k : k - n1;
        double m = (lo[grp] + hi[grp]) / 2, h = (hi[grp] - lo[grp]) / 2;
        gas.x[k] = m - h * std::cos((2 * j + 1) * M_PI / (2 * cnt));
        gas.q[k] = grp == 0 ? c / n1 : (1 - c) / n2;
        gas.group[k] = grp;
    }

    auto feasible = [&](const std::vector<double>& x) {
        for (std::size_t k = 0; k < n; ++k) {
            int grp = gas.group[k];
            if (x[k] < lo[grp] || x[k] > hi[grp]) return false;
            if (k + 1 < n && gas.group[k + 1] == grp && !(x[k] < x[k + 1])) return false;
        }
        return true;
    };

    EnergyOracleResult out;
    out.n1 = n1;
    out.n2 = n2;
    double energy = log_gas_energy(gas, mode);
    out.history.push_back(energy);
    std::vector<double> grad, hess;
    for (int it = 0; it < iterations; ++it) {
        log_gas_derivatives(gas, &grad, &hess, mode);
        // particles pressed against a wall stay there for this step
        std::vector<char> active(n, 0);
        const double wall = 1e-14;
        for (std::size_t k = 0; k < n; ++k) {
            int grp = gas.group[k];
            if ((gas.x[k] - lo[grp] <= wall && grad[k] > 0) || (hi[grp] - gas.x[k] <= wall && grad[k] < 0)) active[k] = 1;
        }
        std::vector<std::size_t> free;
        for (std::size_t k = 0; k < n; ++k)
            if (!active[k]) free.push_back(k);
        const std::size_t f = free.size();
        std::vector<double> h(f * f), rhs(f);
        double diag = 0;
        for (std::size_t a = 0; a < f; ++a) diag = std::max(diag, hess[free[a] * n + free[a]]);
        for (std::size_t a = 0; a < f; ++a) {
            rhs[a] = -grad[free[a]];
            for (std::size_t b = 0; b < f; ++b) h[a * f + b] = hess[free[a] * n + free[b]];
            h[a * f + a] += 1e-12 * diag;
        }
        std::vector<double> dir(n, 0.0);
        if (f > 0 && cholesky_solve(h, rhs, f)) {
            for (std::size_t a = 0; a < f; ++a) dir[free[a]] = rhs[a];
        } else {
            for (std::size_t a = 0; a < f; ++a) dir[free[a]] = -grad[free[a]] / std::max(diag, 1e-300);
        }
        double slope = 0;
        for (std::size_t k = 0; k < n; ++k) slope += grad[k] * dir[k];
        if (slope >= 0) break;

        double lambda = 1;
        bool moved = false;
        std::vector<double> trial(n);
        for (int bt = 0; bt < 60; ++bt, lambda /= 2) {
            for (std::size_t k = 0; k < n; ++k) {
                int grp = gas.group[k];
                trial[k] = std::clamp(gas.x[k] + lambda * dir[k], lo[grp], hi[grp]);
            }
            if (!feasible(trial)) continue;
            LogGas next = gas;
            next.x = trial;
            double e = log_gas_energy(next, mode);
            if (e < energy) {
                gas = std::move(next);
                energy = e;
                moved = true;
                break;
            }
        }
        out.iterations = it + 1;
        if (!moved) break;
        out.history.push_back(energy);
    }
    out.energy = energy;
    out.x1.assign(gas.x.begin(), gas.x.begin() + n1);
    out.x2.assign(gas.x.begin() + n1, gas.x.end());
    out.beta_c1 = out.x1.back();
    out.alpha_c2 = out.x2.front();
    out.resolution = std::max((hi[0] - lo[0]) / n1, (hi[1] - lo[1]) / n2);
    return out;
}

}  // namespace angelesco
