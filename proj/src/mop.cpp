#include "angelesco/mop.hpp"
#include "angelesco/linalg.hpp"
#include "angelesco/quadrature.hpp"
#include "angelesco/roots.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace angelesco {

using boost::multiprecision::abs;

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

XReal parse_decimal(const std::string& s)
{
    try {
        std::size_t pos = 0;
        (void)std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw ValidationError("not a number: '" + s + "'");
    }
    return XReal(s);
}

}  // namespace

void Geometry::validate() const
{
    if (!(alpha1 < beta1 && beta1 < alpha2 && alpha2 < beta2))
        throw ValidationError("geometry must satisfy alpha1 < beta1 < alpha2 < beta2");
}

Geometry Geometry::parse(const std::string& csv)
{
    auto parts = split(csv, ',');
    if (parts.size() != 4) throw ValidationError("geometry needs four comma-separated endpoints");
    Geometry g{parse_decimal(parts[0]), parse_decimal(parts[1]), parse_decimal(parts[2]), parse_decimal(parts[3])};
    g.validate();
    return g;
}

Geometry Geometry::reference() { return {XReal(-2), XReal(-1), XReal(1), XReal(2)}; }

XReal WeightSpec::density(const XReal& x) const
{
    if (kind == Kind::Constant) return coeffs.at(0);
    XReal s = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * x + *it;
    return kind == Kind::ExpPoly ? boost::multiprecision::exp(s) : s;
}

int WeightSpec::degree() const { return kind == Kind::Constant ? 0 : std::max(0, static_cast<int>(coeffs.size()) - 1); }

std::string WeightSpec::describe() const
{
    std::string out = kind == Kind::Constant ? "const" : (kind == Kind::PositivePoly ? "poly" : "exppoly");
    for (std::size_t k = 0; k < coeffs.size(); ++k) out += (k ? "," : ":") + coeffs[k].str(0);
    return out;
}

WeightSpec WeightSpec::mirrored() const
{
    WeightSpec w = *this;
    if (kind != Kind::Constant)
        for (std::size_t k = 1; k < w.coeffs.size(); k += 2) w.coeffs[k] = -w.coeffs[k];
    return w;
}

WeightSpec WeightSpec::constant(const XReal& v) { return WeightSpec{Kind::Constant, {v}}; }

WeightSpec WeightSpec::parse(const std::string& text)
{
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::vector<XReal> cs;
    if (colon != std::string::npos)
        for (const auto& p : split(text.substr(colon + 1), ',')) cs.push_back(parse_decimal(p));
    if (head == "const") {
        if (cs.empty()) cs.push_back(XReal(1));
        if (cs.size() != 1) throw ValidationError("const weight takes one value");
        return {Kind::Constant, cs};
    }
    if (cs.empty()) throw ValidationError("weight '" + head + "' needs coefficients");
    if (head == "poly") return {Kind::PositivePoly, cs};
    if (head == "exppoly") return {Kind::ExpPoly, cs};
    throw ValidationError("unknown weight kind '" + head + "'");
}

void check_weight(const WeightSpec& w, const XReal& a, const XReal& b, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    switch (w.kind) {
    case WeightSpec::Kind::Constant:
        if (!(w.coeffs.at(0) > 0)) throw InvalidWeight("constant density must be positive");
        return;
    case WeightSpec::Kind::ExpPoly:
        return;
    case WeightSpec::Kind::PositivePoly: {
        XReal margin = (b - a) / 20;
        Poly p(w.coeffs);
        if (p.is_zero() || !(p((a + b) / 2) > 0)) throw InvalidWeight("polynomial density must be positive");
        if (!real_roots_in(p, a - margin, b + margin, ctx).empty())
            throw InvalidWeight("polynomial density vanishes near its interval");
        return;
    }
    }
}

double MultiIndex::eps() const
{
    int m = std::min(n1, n2);
    return m > 0 ? 1.0 / m : std::numeric_limits<double>::infinity();
}

std::vector<XReal> moments(const WeightSpec& w, const XReal& a, const XReal& b, int k_max, const PrecisionContext& ctx)
{
    if (k_max < 0) throw std::invalid_argument("moments: k_max >= 0 required");
    PrecisionScope scope(ctx);
    check_weight(w, a, b, ctx);
    int nodes = w.kind == WeightSpec::Kind::ExpPoly ? 64 + 2 * (k_max + w.degree()) : (k_max + w.degree()) / 2 + 1;
    auto rule = gauss_legendre(nodes, ctx);
    std::vector<XReal> m(k_max + 1, XReal(0));
    const XReal half = (b - a) / 2, mid = (a + b) / 2;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        XReal x = mid + half * rule.nodes[q];
        XReal v = rule.weights[q] * half * w.density(x);
        for (int k = 0; k <= k_max; ++k) {
            m[k] += v;
            v *= x;
        }
    }
    return m;
}

namespace {

void need_moments(const MomentPair& m, int k)
{
    if (static_cast<int>(m.m1.size()) <= k || static_cast<int>(m.m2.size()) <= k)
        throw std::invalid_argument("moment vectors too short for this multi-index");
}

}  // namespace

Poly type2_mop(const MultiIndex& n, const MomentPair& m, const PrecisionContext& ctx, XReal* residual)
{
    PrecisionScope scope(ctx);
    if (n.n1 < 0 || n.n2 < 0) throw std::invalid_argument("type2_mop: negative index");
    const int N = n.size();
    if (N == 0) {
        if (residual) *residual = 0;
        return Poly(std::vector<XReal>{XReal(1)});
    }
    need_moments(m, N + std::max(n.n1, n.n2) - 1);
    XMatrix A(N, N);
    std::vector<XReal> rhs(N);
    XReal scale = 0;
    int row = 0;
    for (int i = 1; i <= 2; ++i)
        for (int l = 0; l < n[i]; ++l, ++row) {
            for (int j = 0; j < N; ++j) {
                A(row, j) = m[i][l + j];
                scale = std::max(scale, abs(A(row, j)));
            }
            rhs[row] = -m[i][l + N];
            scale = std::max(scale, abs(rhs[row]));
        }
    DenseSolution sol;
    try {
        sol = solve_dense(A, rhs, ctx);
    } catch (const SingularSystem& e) {
        throw NormalityFailure(std::string("type II system not normal: ") + e.what());
    }
    if (residual) {
        XReal xm = 1;
        for (auto& v : sol.x) xm = std::max(xm, abs(v));
        *residual = sol.residual / (scale * xm);
    }
    std::vector<XReal> c = sol.x;
    c.push_back(XReal(1));
    return Poly(c);
}

std::pair<Poly, Poly> type1_mop(const MultiIndex& n, const MomentPair& m, const PrecisionContext& ctx, XReal* residual)
{
    PrecisionScope scope(ctx);
    const int N = n.size();
    if (N < 1 || n.n1 < 0 || n.n2 < 0) throw std::invalid_argument("type1_mop: |n| >= 1 required");
    need_moments(m, N + std::max(n.n1, n.n2) - 2);
    XMatrix A(N, N);
    std::vector<XReal> rhs(N, XReal(0));
    rhs[N - 1] = 1;
    XReal scale = 0;
    for (int l = 0; l < N; ++l) {
        int col = 0;
        for (int i = 1; i <= 2; ++i)
            for (int k = 0; k < n[i]; ++k, ++col) {
                A(l, col) = m[i][l + k];
                scale = std::max(scale, abs(A(l, col)));
            }
    }
    DenseSolution sol;
    try {
        sol = solve_dense(A, rhs, ctx);
    } catch (const SingularSystem& e) {
        throw NormalityFailure(std::string("type I system not normal: ") + e.what());
    }
    if (residual) {
        XReal xm = 1;
        for (auto& v : sol.x) xm = std::max(xm, abs(v));
        *residual = sol.residual / (std::max(scale, XReal(1)) * xm);
    }
    std::vector<XReal> a1(sol.x.begin(), sol.x.begin() + n.n1), a2(sol.x.begin() + n.n1, sol.x.end());
    return {Poly(a1), Poly(a2)};
}

MopSolution solve_mop(const MultiIndex& n, const MomentPair& m, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    MopSolution s;
    s.index = n;
    XReal r2 = 0, r1 = 0;
    s.p_monic = type2_mop(n, m, ctx, &r2);
    if (n.size() >= 1) std::tie(s.a1_poly, s.a2_poly) = type1_mop(n, m, ctx, &r1);
    s.residual = std::max(r1, r2);
    for (int i = 1; i <= 2; ++i) {
        need_moments(m, n[i] + n.size());
        XReal h = 0;
        for (int j = 0; j <= s.p_monic.degree(); ++j) h += s.p_monic.c[j] * m[i][n[i] + j];
        (i == 1 ? s.h1 : s.h2) = h;
    }
    return s;
}

XReal form_moment(const MopSolution& s, const MomentPair& m, int l)
{
    XReal v = 0;
    for (int i = 1; i <= 2; ++i) {
        const Poly& a = s.a_poly(i);
        for (int k = 0; k <= a.degree(); ++k) v += a.c[k] * m[i].at(l + k);
    }
    return v;
}

MopEngine::MopEngine(Geometry g, std::array<WeightSpec, 2> w, const PrecisionContext& ctx, int k_max)
    : g_(std::move(g)), w_(std::move(w)), ctx_(ctx)
{
    g_.validate();
    ensure_moments(k_max);
}

void MopEngine::ensure_moments(int k_max)
{
    if (static_cast<int>(m_.m1.size()) > k_max) return;
    PrecisionScope scope(ctx_);
    m_.m1 = moments(w_[0], g_.alpha1, g_.beta1, k_max, ctx_);
    m_.m2 = moments(w_[1], g_.alpha2, g_.beta2, k_max, ctx_);
}

int MopEngine::quad_nodes(int extra_degree) const
{
    return extra_degree + std::max(w_[0].degree(), w_[1].degree()) + 48;
}

MopSolution MopEngine::solve(const MultiIndex& n) const
{
    if (static_cast<int>(m_.m1.size()) <= n.size() + std::max(n.n1, n.n2))
        throw std::invalid_argument("MopEngine: call ensure_moments before solving this index");
    return solve_mop(n, m_, ctx_);
}

namespace {

XComplex cauchy(const MopEngine& e, const Poly& p, int i, const XComplex& z)
{
    const PrecisionContext& ctx = e.context();
    const Geometry& g = e.geometry();
    if (z.im == 0 && g.contains(i, z.re))
        throw DomainError("Cauchy transform evaluated on its own interval");
    const XReal a = g.lo(i), b = g.hi(i), half = (b - a) / 2, mid = (a + b) / 2;
    auto run = [&](int m) {
        auto rule = gauss_legendre(m, ctx);
        XComplex s(0);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            XReal x = mid + half * rule.nodes[q];
            s += XComplex(rule.weights[q] * p(x) * e.weight(i).density(x)) / (z - XComplex(x));
        }
        return s * XComplex(half);
    };
    int m = e.quad_nodes(std::max(p.degree(), 0));
    XComplex prev = run(m);
    for (int round = 0; round < 6; ++round) {
        m *= 2;
        XComplex next = run(m);
        if (abs(next - prev) <= ctx.tol() * abs(next)) return next;
        prev = next;
    }
    return prev;
}

}  // namespace

XComplex MopEngine::remainder(const MopSolution& s, int i, const XComplex& z) const
{
    PrecisionScope scope(ctx_);
    return cauchy(*this, s.p_monic, i, z);
}

XComplex MopEngine::linear_form(const MopSolution& s, const XComplex& z) const
{
    PrecisionScope scope(ctx_);
    if (z.im == 0 && (g_.contains(1, z.re) || g_.contains(2, z.re)))
        throw DomainError("linear form evaluated on an interval");
    XComplex v(0);
    for (int i = 1; i <= 2; ++i)
        if (!s.a_poly(i).is_zero()) v += cauchy(*this, s.a_poly(i), i, z);
    return v;
}

const MopSolution& NnrrTable::solution(const MultiIndex& n) const
{
    auto it = solutions.find(n);
    if (it == solutions.end()) throw std::out_of_range("no stored solution for this multi-index");
    return it->second;
}

NnrrTable nnrr_table(const MopEngine& engine_in, int n_max, KernelMode mode)
{
    if (n_max < 1) throw std::invalid_argument("nnrr_table: n_max >= 1 required");
    MopEngine engine = engine_in;
    const PrecisionContext& ctx = engine.context();
    PrecisionScope scope(ctx);
    // the scale below reads moments up to 2(2 n_max + 2)
    engine.ensure_moments(std::max(3 * (n_max + 2) + 2, 2 * (2 * n_max + 2)));

    std::vector<MultiIndex> todo;
    for (int n1 = 0; n1 <= n_max + 1; ++n1)
        for (int n2 = 0; n2 <= n_max + 1; ++n2)
            if (!(n1 == n_max + 1 && n2 == n_max + 1)) todo.push_back({n1, n2});
    // largest systems first for better load balance
    std::sort(todo.begin(), todo.end(), [](const MultiIndex& a, const MultiIndex& b) { return a.size() > b.size(); });
    std::vector<MopSolution> solved(todo.size());
    for_each_index(todo.size(), [&](std::size_t k) { solved[k] = engine.solve(todo[k]); }, mode);

    NnrrTable t;
    t.n_max = n_max;
    for (std::size_t k = 0; k < todo.size(); ++k) t.solutions.emplace(todo[k], std::move(solved[k]));

    const MomentPair& m = engine.moment_pair();
    XReal scale = 1;
    for (int i = 1; i <= 2; ++i)
        for (int k = 0; k <= 2 * (2 * n_max + 2); ++k) scale = std::max(scale, abs(m[i][k]));

    t.entries.resize(static_cast<std::size_t>(n_max + 1) * (n_max + 1));
    for (int n1 = 0; n1 <= n_max; ++n1)
        for (int n2 = 0; n2 <= n_max; ++n2) {
            MultiIndex n{n1, n2};
            const MopSolution& s = t.solution(n);
            const int N = n.size();
            NnrrEntry e;
            e.n = n;
            e.b_gap = 0;
            for (int j = 1; j <= 2; ++j) {
                XReal a = n[j] >= 1 ? s.h(j) / t.solution(n.minus(j)).h(j) : XReal(0);
                const MopSolution& up = t.solution(n.plus(j));
                XReal b_lead = s.p_monic.coeff(N - 1) - up.p_monic.coeff(N);
                XReal b_form = form_moment(up, m, N + 1) - (N >= 1 ? form_moment(s, m, N) : XReal(0));
                e.b_gap = std::max(e.b_gap, abs(b_lead - b_form));
                (j == 1 ? e.a1 : e.a2) = a;
                (j == 1 ? e.b1 : e.b2) = b_lead;
            }
            if (e.b_gap > ctx.tol() * scale)
                throw InternalInconsistency("b coefficients disagree at (" + std::to_string(n1) + "," +
                                            std::to_string(n2) + "); raise mantissa_bits");
            t.entries[static_cast<std::size_t>(n1) * (n_max + 1) + n2] = e;
        }
    return t;
}

XReal recurrence_residual(const NnrrTable& t, const MultiIndex& n, int j, bool relative)
{
    const NnrrEntry& e = t.at(n.n1, n.n2);
    const Poly& p = t.solution(n).p_monic;
    std::vector<XReal> zp(p.c.size() + 1, XReal(0));
    for (std::size_t k = 0; k < p.c.size(); ++k) zp[k + 1] = p.c[k];
    Poly r = Poly(zp) - t.solution(n.plus(j)).p_monic - e.b(j) * p;
    for (int i = 1; i <= 2; ++i)
        if (n[i] >= 1) r = r - e.a(i) * t.solution(n.minus(i)).p_monic;
    XReal worst = 0, scale = 0;
    for (const auto& v : r.c) worst = std::max(worst, abs(v));
    for (const auto& v : zp) scale = std::max(scale, abs(v));
    return relative ? worst / scale : worst;
}

std::vector<XReal> ZeroSet::all() const
{
    std::vector<XReal> v = on1;
    v.insert(v.end(), on2.begin(), on2.end());
    std::sort(v.begin(), v.end());
    return v;
}

ZeroSet zeros(const Poly& p, const MultiIndex& n, const Geometry& g, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    ZeroSet out;
    const XReal pi = pi_x();
    for (int i = 1; i <= 2; ++i) {
        const XReal a = g.lo(i), b = g.hi(i), half = (b - a) / 2, mid = (a + b) / 2;
        std::vector<XReal> found;
        // cosine grid clusters samples at the ends, where the zeros crowd
        for (int grid = 16 * (p.degree() + 1), round = 0; round < 5; grid *= 2, ++round) {
            found.clear();
            XReal xprev = a, fprev = p(a);
            for (int k = 1; k <= grid; ++k) {
                XReal x = k == grid ? b : mid - half * boost::multiprecision::cos(pi * k / grid);
                XReal fx = p(x);
                if (fx == 0) {
                    found.push_back(x);
                } else if (fprev != 0 && (fx > 0) != (fprev > 0)) {
                    found.push_back(find_root([&](const XReal& t) { return p(t); }, xprev, x, ctx.tol() * ctx.tol(), ctx));
                }
                xprev = x;
                fprev = fx;
            }
            if (static_cast<int>(found.size()) == n[i]) break;
        }
        if (static_cast<int>(found.size()) != n[i])
            throw ZeroLocationFailure("interval " + std::to_string(i) + " holds " + std::to_string(found.size()) +
                                      " zeros, expected " + std::to_string(n[i]));
        (i == 1 ? out.on1 : out.on2) = found;
    }
    return out;
}

bool interlaced(const std::vector<XReal>& a, const std::vector<XReal>& b)
{
    const std::vector<XReal>& lng = a.size() >= b.size() ? a : b;
    const std::vector<XReal>& sht = a.size() >= b.size() ? b : a;
    if (lng.size() - sht.size() > 1) return false;
    if (lng.size() == sht.size()) {
        // either order is admissible for equal counts
        auto alt = [](const std::vector<XReal>& x, const std::vector<XReal>& y) {
            for (std::size_t k = 0; k < x.size(); ++k) {
                if (!(x[k] < y[k])) return false;
                if (k + 1 < x.size() && !(y[k] < x[k + 1])) return false;
            }
            return true;
        };
        return alt(lng, sht) || alt(sht, lng);
    }
    for (std::size_t k = 0; k < sht.size(); ++k)
        if (!(lng[k] < sht[k] && sht[k] < lng[k + 1])) return false;
    return true;
}

XComplex remainder_eval(const MopEngine& engine, const MultiIndex& n, int i, const XComplex& z)
{
    MopEngine e = engine;
    e.ensure_moments(2 * n.size() + 2);
    return e.remainder(e.solve(n), i, z);
}

XComplex linear_form_eval(const MopEngine& engine, const MultiIndex& n, const XComplex& z)
{
    MopEngine e = engine;
    e.ensure_moments(2 * n.size() + 2);
    return e.linear_form(e.solve(n), z);
}

double loglog_slope(const std::vector<double>& z, const std::vector<double>& v)
{
    const std::size_t n = z.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double x = std::log(std::fabs(z[k])), y = std::log(std::fabs(v[k]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_nnrr_csv(std::ostream& os, const NnrrTable& t, int digits)
{
    os << "n1,n2,a1,a2,b1,b2\n";
    for (const auto& e : t.entries)
        os << e.n.n1 << ',' << e.n.n2 << ',' << to_string(e.a1, digits) << ',' << to_string(e.a2, digits) << ','
           << to_string(e.b1, digits) << ',' << to_string(e.b2, digits) << '\n';
}

std::string mop_json(const MopSolution& s, int digits)
{
    auto arr = [&](const Poly& p) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& v : p.c) a.push_back(to_string(v, digits));
        return a;
    };
    nlohmann::json j;
    j["n"] = {s.index.n1, s.index.n2};
    j["p_monic"] = arr(s.p_monic);
    j["a1"] = arr(s.a1_poly);
    j["a2"] = arr(s.a2_poly);
    j["h1"] = to_string(s.h1, digits);
    j["h2"] = to_string(s.h2, digits);
    j["residual"] = to_string(s.residual, 6);
    return j.dump(2);
}

}  // namespace angelesco
