#include "angelesco/poly.hpp"
#include "angelesco/roots.hpp"

#include <algorithm>

namespace angelesco {

using boost::multiprecision::abs;

Poly::Poly(std::vector<XReal> coeffs) : c(std::move(coeffs)) { trim(); }

void Poly::trim()
{
    while (!c.empty() && c.back() == 0) c.pop_back();
}

XReal Poly::coeff(int k) const { return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : XReal(0); }

XReal Poly::operator()(const XReal& x) const
{
    XReal s = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

XComplex Poly::operator()(const XComplex& z) const
{
    XComplex s(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + XComplex(*it);
    return s;
}

Poly Poly::derivative() const
{
    std::vector<XReal> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<int>(k));
    return Poly(d);
}

Poly operator+(const Poly& a, const Poly& b)
{
    std::vector<XReal> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) + b.coeff(k);
    return Poly(r);
}

Poly operator-(const Poly& a, const Poly& b)
{
    std::vector<XReal> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) - b.coeff(k);
    return Poly(r);
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<XReal> r(a.c.size() + b.c.size() - 1, XReal(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Poly(r);
}

Poly operator*(const XReal& s, const Poly& a)
{
    std::vector<XReal> r(a.c);
    for (auto& v : r) v *= s;
    return Poly(r);
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r)
{
    if (b.is_zero()) throw std::invalid_argument("divmod: zero divisor");
    std::vector<XReal> rem(a.c);
    int db = b.degree();
    int dq = a.degree() - db;
    std::vector<XReal> quo(std::max(dq + 1, 0), XReal(0));
    for (int k = dq; k >= 0; --k) {
        XReal t = rem[k + db] / b.lead();
        quo[k] = t;
        for (int j = 0; j <= db; ++j) rem[k + j] -= t * b.c[j];
        rem[k + db] = 0;
    }
    q = Poly(quo);
    if (static_cast<int>(rem.size()) > db) rem.resize(std::max(db, 0));
    r = Poly(rem);
}

Poly from_roots(const std::vector<XReal>& roots)
{
    Poly p(std::vector<XReal>{XReal(1)});
    for (const auto& x : roots) p = p * Poly(std::vector<XReal>{-x, XReal(1)});
    return p;
}

namespace {

XReal max_abs(const Poly& p)
{
    XReal m = 0;
    for (const auto& v : p.c) m = std::max(m, abs(v));
    return m;
}

// zero out coefficients negligible against the polynomial's own scale
void chop(Poly& p, const XReal& rel)
{
    XReal m = max_abs(p);
    for (auto& v : p.c)
        if (abs(v) <= rel * m) v = 0;
    p.trim();
}

XReal magnitude(const Poly& p, const XReal& x)
{
    XReal s = 0, ax = abs(x);
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) s = s * ax + abs(*it);
    return s;
}

Poly gcd_approx(Poly a, Poly b, const XReal& rel)
{
    while (!b.is_zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        // remainder measured against the dividend
        XReal scale = max_abs(a);
        for (auto& v : r.c)
            if (abs(v) <= rel * scale) v = 0;
        r.trim();
        a = b;
        b = r;
    }
    return a;
}

int sign_changes(const std::vector<Poly>& seq, const XReal& x)
{
    int count = 0, last = 0;
    for (const auto& p : seq) {
        XReal v = p(x);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace

std::vector<RealRoot> real_roots_in(const Poly& p_in, const XReal& lo_in, const XReal& hi_in,
                                    const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    if (p_in.is_zero()) throw std::invalid_argument("real_roots_in: zero polynomial");
    Poly p = p_in;
    std::vector<RealRoot> out;
    if (p.degree() == 0) return out;

    const XReal tol = ctx.tol();
    const XReal loose = boost::multiprecision::sqrt(tol);

    Poly g = gcd_approx(p, p.derivative(), tol);
    Poly q, r;
    divmod(p, g, q, r);
    chop(q, tol * tol);

    std::vector<Poly> seq{q, q.derivative()};
    while (seq.back().degree() > 0) {
        Poly qq, rr;
        divmod(seq[seq.size() - 2], seq.back(), qq, rr);
        chop(rr, tol);
        if (rr.is_zero()) break;
        seq.push_back(XReal(-1) * rr);
    }

    XReal lo = lo_in, hi = hi_in;
    auto on_root = [&](const XReal& x) { return abs(q(x)) <= tol * magnitude(q, x); };
    std::vector<XReal> roots;
    // endpoint roots are taken directly and the interval shrunk past them
    const XReal nudge = loose * (abs(hi - lo) + 1) * tol;
    if (on_root(lo)) {
        roots.push_back(lo);
        lo += nudge;
    }
    bool hi_root = on_root(hi);
    if (hi_root) hi -= nudge;

    struct Piece {
        XReal a, b;
        int va, vb;
    };
    std::vector<Piece> work{{lo, hi, sign_changes(seq, lo), sign_changes(seq, hi)}};
    while (!work.empty()) {
        Piece w = work.back();
        work.pop_back();
        int n = w.va - w.vb;
        if (n <= 0) continue;
        if (n == 1 && (q(w.a) > 0) != (q(w.b) > 0) && q(w.a) != 0 && q(w.b) != 0) {
            roots.push_back(find_root([&](const XReal& x) { return q(x); }, w.a, w.b, tol * tol, ctx));
            continue;
        }
        if (w.b - w.a <= tol * (abs(w.a) + 1)) {
            roots.push_back((w.a + w.b) / 2);
            continue;
        }
        XReal m = (w.a + w.b) / 2;
        int vm = sign_changes(seq, m);
        if (q(m) == 0) {
            roots.push_back(m);
            m += nudge;
            vm = sign_changes(seq, m);
        }
        work.push_back({w.a, m, w.va, vm});
        work.push_back({m, w.b, vm, w.vb});
    }
    if (hi_root) roots.push_back(hi_in);
    std::sort(roots.begin(), roots.end());

    for (const auto& x : roots) {
        int mult = 1;
        Poly d = p.derivative();
        while (mult < p.degree() && abs(d(x)) < loose * magnitude(d, x)) {
            ++mult;
            d = d.derivative();
        }
        out.push_back({x, mult});
    }
    return out;
}

}  // namespace angelesco
