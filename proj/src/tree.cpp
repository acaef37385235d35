#include "angelesco/tree.hpp"

#include "angelesco/quadrature.hpp"
#include "angelesco/roots.hpp"
#include "angelesco/szego.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

namespace angelesco {

TreeIndex build_tree(int depth)
{
    if (depth < 0) throw std::invalid_argument("build_tree: depth >= 0 required");
    if (depth > 24) throw std::invalid_argument("build_tree: depth too large");
    TreeIndex t;
    t.depth = depth;
    const std::size_t n = (std::size_t(1) << (depth + 1)) - 1;
    t.v.resize(n);
    t.v[0].proj = {1, 1};
    for (std::size_t k = 0; k < n; ++k) {
        TreeVertex& y = t.v[k];
        if (y.depth == depth) continue;
        for (int i = 1; i <= 2; ++i) {
            std::size_t c = 2 * k + i;
            y.child[i - 1] = static_cast<int>(c);
            TreeVertex& ch = t.v[c];
            ch.parent = static_cast<int>(k);
            ch.iota = i;
            ch.depth = y.depth + 1;
            ch.proj = y.proj.plus(i);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------

RecurrenceCoeffs curve_coeffs(const CurveData& cd)
{
    return {static_cast<double>(cd.A1), static_cast<double>(cd.A2), static_cast<double>(cd.B1),
            static_cast<double>(cd.B2)};
}

CoeffSource CoeffSource::computed(const NnrrTable& table, std::array<double, 2> kappa)
{
    CoeffSource s;
    s.kind_ = Kind::Computed;
    s.kappa_ = kappa;
    for (const auto& e : table.entries)
        s.table_[e.n] = {static_cast<double>(e.a1), static_cast<double>(e.a2), static_cast<double>(e.b1),
                         static_cast<double>(e.b2)};
    return s;
}

CoeffSource CoeffSource::synthetic(const CurveSolver& solver, std::array<double, 2> kappa)
{
    CoeffSource s;
    s.kind_ = Kind::Synthetic;
    s.kappa_ = kappa;
    s.solver_ = std::make_shared<CurveSolver>(solver);
    s.cache_ = std::make_shared<std::map<std::pair<int, int>, RecurrenceCoeffs>>();
    return s;
}

void CoeffSource::override_at(const MultiIndex& n, const RecurrenceCoeffs& c) { overrides_[n] = c; }

RecurrenceCoeffs CoeffSource::at(const MultiIndex& n) const
{
    if (auto it = overrides_.find(n); it != overrides_.end()) return it->second;
    if (n.n1 < 0 || n.n2 < 0 || n.size() == 0)
        throw SourceError("no coefficients at (" + std::to_string(n.n1) + "," + std::to_string(n.n2) + ")");
    if (kind_ == Kind::Computed) {
        auto it = table_.find(n);
        if (it == table_.end())
            throw SourceError("NNRR table does not cover (" + std::to_string(n.n1) + "," + std::to_string(n.n2) +
                              ")");
        return it->second;
    }
    const int g = std::gcd(n.n1, n.size());
    const std::pair<int, int> key{n.n1 / g, n.size() / g};
    auto it = cache_->find(key);
    if (it != cache_->end()) return it->second;
    PrecisionScope scope(solver_->context());
    RecurrenceCoeffs c = curve_coeffs(solver_->at(XReal(key.first) / XReal(key.second)));
    cache_->emplace(key, c);
    return c;
}

// ---------------------------------------------------------------------------

SymMatrix TreeTruncation::dense() const
{
    SymMatrix m(diag.size());
    for (std::size_t k = 0; k < diag.size(); ++k) m(k, k) = diag[k];
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [p, c] = edges[e];
        m(p, c) = offdiag[e];
        m(c, p) = offdiag[e];
    }
    return m;
}

namespace {

double checked_sqrt(double a, const MultiIndex& n, int i)
{
    if (!(a > 0) || !std::isfinite(a))
        throw SourceError("a_{(" + std::to_string(n.n1) + "," + std::to_string(n.n2) + ")," + std::to_string(i) +
                          "} is not positive");
    return std::sqrt(a);
}

}  // namespace

TreeTruncation assemble_J(const TreeIndex& tree, const CoeffSource& source)
{
    TreeTruncation t;
    t.tag = "J";
    t.depth = tree.depth;
    t.diag.resize(tree.size());
    const auto& kappa = source.kappa();
    double root = 0;
    for (int i = 1; i <= 2; ++i)
        if (kappa[i - 1] != 0) root += kappa[i - 1] * source.b(MultiIndex{1, 1}.minus(i), i);
    t.diag[0] = root;
    for (std::size_t k = 0; k < tree.size(); ++k) {
        const TreeVertex& y = tree.v[k];
        if (k > 0) t.diag[k] = source.b(tree.v[y.parent].proj, y.iota);
        if (y.depth == tree.depth) continue;
        RecurrenceCoeffs c = source.at(y.proj);
        for (int i = 1; i <= 2; ++i) {
            t.edges.emplace_back(static_cast<int>(k), y.child[i - 1]);
            t.offdiag.push_back(checked_sqrt(c.a(i), y.proj, i));
        }
    }
    return t;
}

TreeTruncation assemble_L(const TreeIndex& tree, const CurveData& cd, int l)
{
    if (l != 1 && l != 2) throw std::invalid_argument("assemble_L: l must be 1 or 2");
    RecurrenceCoeffs c = curve_coeffs(cd);
    TreeTruncation t;
    char buf[64];
    std::snprintf(buf, sizeof buf, "L(%.17g,%d)", static_cast<double>(cd.c), l);
    t.tag = buf;
    t.depth = tree.depth;
    t.diag.resize(tree.size());
    const double s[2] = {std::sqrt(std::max(c.a1, 0.0)), std::sqrt(std::max(c.a2, 0.0))};
    for (std::size_t k = 0; k < tree.size(); ++k) {
        const TreeVertex& y = tree.v[k];
        t.diag[k] = c.b(k == 0 ? l : y.iota);
        if (y.depth == tree.depth) continue;
        for (int i = 1; i <= 2; ++i) {
            t.edges.emplace_back(static_cast<int>(k), y.child[i - 1]);
            t.offdiag.push_back(s[i - 1]);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------

namespace {

double distance_to(const std::vector<Interval>& target, double x)
{
    double d = INFINITY;
    for (auto [lo, hi] : target) d = std::min(d, x < lo ? lo - x : (x > hi ? x - hi : 0.0));
    return d;
}

}  // namespace

SpectrumProbe spectrum_probe(const TreeTruncation& t, const std::vector<Interval>& target, double epsilon,
                             int grid_per_interval)
{
    if (t.size() > kEigenCap) throw std::invalid_argument("spectrum_probe: truncation exceeds eigensolver cap");
    SpectrumProbe p;
    p.depth = t.depth;
    p.epsilon = epsilon;
    p.eigs = sym_eig(t.dense()).values;
    std::size_t inside = 0;
    for (double e : p.eigs)
        if (distance_to(target, e) <= epsilon) ++inside;
    p.inside_fraction = p.eigs.empty() ? 0.0 : double(inside) / double(p.eigs.size());
    double gap = 0;
    for (auto [lo, hi] : target) {
        const int m = hi > lo ? grid_per_interval : 0;
        for (int k = 0; k <= m; ++k) {
            double x = m ? lo + (hi - lo) * k / m : lo;
            auto it = std::lower_bound(p.eigs.begin(), p.eigs.end(), x);
            double d = INFINITY;
            if (it != p.eigs.end()) d = *it - x;
            if (it != p.eigs.begin()) d = std::min(d, x - *(it - 1));
            gap = std::max(gap, d);
        }
    }
    p.max_coverage_gap = gap;
    return p;
}

std::vector<Interval> support_intervals(const CurveData& cd)
{
    std::vector<Interval> out;
    for (int i = 1; i <= 2; ++i)
        out.emplace_back(static_cast<double>(cd.support_lo(i)), static_cast<double>(cd.support_hi(i)));
    return out;
}

void write_eigs_csv(std::ostream& os, const std::vector<double>& eigs)
{
    os << "index,eigenvalue\n";
    char buf[40];
    for (std::size_t k = 0; k < eigs.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", eigs[k]);
        os << k << ',' << buf << '\n';
    }
}

std::string probe_json(const SpectrumProbe& p)
{
    auto str = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    nlohmann::ordered_json j;
    j["depth"] = p.depth;
    j["epsilon"] = str(p.epsilon);
    j["inside_fraction"] = str(p.inside_fraction);
    j["max_coverage_gap"] = str(p.max_coverage_gap);
    return j.dump(2);
}

// ---------------------------------------------------------------------------

MFunctionPair m_recursion(const CurveData& cd, int l, const XComplex& zx, int iterations)
{
    if (l != 1 && l != 2) throw std::invalid_argument("m_recursion: l must be 1 or 2");
    const std::complex<double> z = zx.to_complex();
    if (!(z.imag() > 0)) throw DomainError("m_recursion: Im z > 0 required");
    const RecurrenceCoeffs c = curve_coeffs(cd);
    std::complex<double> m1 = 0, m2 = 0;
    auto step = [&](std::complex<double> a, std::complex<double> b, std::complex<double>& n1,
                    std::complex<double>& n2) {
        std::complex<double> s = c.a1 * a + c.a2 * b + z;
        n1 = 1.0 / (c.b1 - s);
        n2 = 1.0 / (c.b2 - s);
    };
    MFunctionPair out;
    for (int it = 1; it <= iterations; ++it) {
        std::complex<double> n1, n2;
        step(m1, m2, n1, n2);
        if (!(n1.imag() > 0) || !(n2.imag() > 0))
            throw InternalInconsistency("m_recursion: iterate left the upper half-plane");
        double change = std::max(std::abs(n1 - m1), std::abs(n2 - m2));
        m1 = n1;
        m2 = n2;
        if (change <= 1e-15 * (1 + std::max(std::abs(m1), std::abs(m2)))) {
            step(m1, m2, n1, n2);
            out.residual = std::max(std::abs(n1 - m1), std::abs(n2 - m2));
            out.iterations = it;
            if (out.residual > 1e-12) break;
            out.m1 = XComplex(m1);
            out.m2 = XComplex(m2);
            return out;
        }
    }
    throw ConvergenceError("m_recursion: no convergence; try a larger Im z");
}

XComplex m_closed(const CurveData& cd, int l, const XComplex& z, const PrecisionContext& ctx, int side)
{
    if (l != 1 && l != 2) throw std::invalid_argument("m_closed: l must be 1 or 2");
    PrecisionScope scope(ctx);
    XComplex chi = chi0(cd, z, ctx, side);
    return XComplex(-1) / (chi - XComplex(cd.B(l)));
}

double spectral_density(const CurveData& cd, int l, double x, const PrecisionContext& ctx)
{
    for (int i = 1; i <= 2; ++i)
        if (x > cd.support_lo(i) && x < cd.support_hi(i))
            return std::max(0.0, static_cast<double>(m_closed(cd, l, XComplex(x), ctx, 1).im) / M_PI);
    return 0.0;
}

double spectral_mass(const CurveData& cd, int l, const PrecisionContext& ctx, int nodes)
{
    PrecisionScope scope(ctx);
    QuadratureRule rule = gauss_legendre(nodes, ctx);
    const XReal hp = pi_x() / 2;
    XReal total = 0;
    for (int i = 1; i <= 2; ++i) {
        XReal lo = cd.support_lo(i), hi = cd.support_hi(i);
        if (!(hi > lo)) continue;
        XReal mid = (lo + hi) / 2, half = (hi - lo) / 2;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            XReal th = hp * (rule.nodes[k] + 1);
            XReal x = mid - half * cos(th);
            XReal dens = m_closed(cd, l, XComplex(x), ctx, 1).im / pi_x();
            total += rule.weights[k] * hp * dens * half * sin(th);
        }
    }
    return static_cast<double>(total);
}

// ---------------------------------------------------------------------------

XComplex m_hat1(const Geometry& g, const XComplex& z, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    auto k = limit_constants(g, ctx);
    return (XComplex(k[3]) - z + w_map(g, 2, z)) / XComplex(2 * k[1]);
}

XComplex m_hat2(const Geometry& g, const XComplex& z, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    auto k = limit_constants(g, ctx);
    return XComplex(-1) / (XComplex(k[1]) * m_hat1(g, z, ctx) + z - XComplex(k[2]));
}

AppendixC0Report appendix_c0(const Geometry& g, const PrecisionContext& ctx, int depth, double fatten)
{
    PrecisionScope scope(ctx);
    g.validate();
    auto k = limit_constants(g, ctx);
    AppendixC0Report r;
    r.A02 = k[1];
    r.B01 = k[2];
    r.B02 = k[3];
    auto f = [&](const XReal& x) { return r.A02 * m_hat1(g, XComplex(x), ctx).re + x - r.B01; };
    r.m1_at_alpha1 = m_hat1(g, XComplex(g.alpha1), ctx).re;
    r.identity_residual = f(g.alpha1);
    // f increases on the left of Delta_2 from -infinity
    XReal lo = g.alpha1 - (g.beta2 - g.alpha1), hi = g.alpha2;
    while (f(lo) > 0) lo -= (g.beta2 - g.alpha1);
    r.pole = find_root(f, lo, hi, ctx.tol() * ctx.tol(), ctx);

    const std::size_t n = static_cast<std::size_t>(depth) + 1;
    const double s = std::sqrt(static_cast<double>(r.A02)), b1 = static_cast<double>(r.B01),
                 b2 = static_cast<double>(r.B02);
    SymMatrix a1(n), a2(n);
    for (std::size_t i = 0; i < n; ++i) {
        a1(i, i) = b2;
        a2(i, i) = i == 0 ? b1 : b2;
        if (i + 1 < n) a1(i, i + 1) = a1(i + 1, i) = a2(i, i + 1) = a2(i + 1, i) = s;
    }
    r.a1_eigs = sym_eig(a1).values;
    r.a2_eigs = sym_eig(a2).values;
    r.isolated = r.a2_eigs.front();
    const double lo2 = static_cast<double>(g.alpha2) - fatten, hi2 = static_cast<double>(g.beta2) + fatten;
    for (std::size_t i = 1; i < r.a2_eigs.size(); ++i)
        if (r.a2_eigs[i] < lo2 || r.a2_eigs[i] > hi2) ++r.outside_count;
    r.a1_spectrum_lo = b2 - 2 * s;
    r.a1_spectrum_hi = b2 + 2 * s;
    return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<MultiIndex> staircase(double c, int depth)
{
    std::vector<MultiIndex> out{{1, 1}};
    for (int k = 0; k < depth; ++k) {
        const MultiIndex& n = out.back();
        out.push_back(n.n1 + 0.5 < c * (n.size() + 1) ? n.plus(1) : n.plus(2));
    }
    return out;
}

}  // namespace

std::vector<int> ray_path(const TreeIndex& tree, double c)
{
    std::vector<MultiIndex> steps = staircase(c, tree.depth);
    std::vector<int> path{0};
    for (std::size_t k = 1; k < steps.size(); ++k) {
        int i = steps[k].n1 > steps[k - 1].n1 ? 1 : 2;
        path.push_back(tree.v[path.back()].child[i - 1]);
    }
    return path;
}

RLimitReport rlimit_check(const CoeffSource& source, const CurveData& limit, double c, int radius,
                          const std::vector<int>& depths)
{
    if (radius < 0) throw std::invalid_argument("rlimit_check: radius >= 0 required");
    RLimitReport r;
    r.c = c;
    r.radius = radius;
    r.depths = depths;
    const RecurrenceCoeffs L = curve_coeffs(limit);
    const int max_depth = depths.empty() ? 0 : *std::max_element(depths.begin(), depths.end());
    std::vector<MultiIndex> path = staircase(c, max_depth);
    for (int d : depths) {
        // ancestors at distance j contribute descendants within radius - j
        std::set<MultiIndex> ball;
        for (int j = 0; j <= std::min(radius, d); ++j) {
            const MultiIndex& p = path[d - j];
            for (int s = 0; s <= radius - j; ++s)
                for (int a = 0; a <= s; ++a) ball.insert({p.n1 + a, p.n2 + s - a});
        }
        double dev = 0;
        for (const auto& n : ball) {
            RecurrenceCoeffs x = source.at(n);
            for (int i = 1; i <= 2; ++i)
                dev = std::max({dev, std::abs(x.a(i) - L.a(i)), std::abs(x.b(i) - L.b(i))});
        }
        r.deviation.push_back(dev);
    }
    r.tail_sup.resize(r.deviation.size());
    double run = 0;
    for (std::size_t k = r.deviation.size(); k-- > 0;) r.tail_sup[k] = run = std::max(run, r.deviation[k]);
    return r;
}

}  // namespace angelesco
