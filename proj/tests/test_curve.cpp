#include "doctest.h"

#include "angelesco/curve.hpp"

#include <cmath>

using namespace angelesco;
using boost::multiprecision::abs;
using boost::multiprecision::sqrt;

namespace {

const PrecisionContext& ctx256()
{
    static PrecisionContext c(256);
    return c;
}

const CurveSolver& g0()
{
    static CurveSolver s(Geometry::reference(), ctx256());
    return s;
}

XReal X(const char* s) { return XReal(s); }

// pushed-left constants from an independent scipy fsolve of the same five
// equations (critical points by brentq, mass by the residue formula)
struct PlRow {
    const char* c;
    double A1, A2, B1, B2, beta;
};
const PlRow kPushedLeft[] = {
    {"0.001", 1.2013675e-05, 0.06250006250, -1.975100668, 1.499996525, -1.986171624},
    {"0.02", 4.4545496e-03, 0.06252500433, -1.848199232, 1.498661563, -1.733776786},
    {"0.05", 2.4766242e-02, 0.06265653938, -1.666359279, 1.492109094, -1.372493200},
    {"0.08", 5.6576152e-02, 0.06290209137, -1.504774027, 1.480915346, -1.051954868},
};

}  // namespace

TEST_CASE("critical points and chi_solve")
{
    PrecisionScope s(ctx256());
    auto w = critical_points(X("0.0625"), X("0.0625"), X("-1.5"), X("1.5"), ctx256());
    ChiMap m{X("0.0625"), X("0.0625"), X("-1.5"), X("1.5"), w, 0};
    for (const auto& v : w) CHECK(abs(m.dR(v)) < X("1e-60"));
    CHECK(w[0] < -1.5);
    CHECK(w[1] > -1.5);
    CHECK(w[2] < 1.5);
    CHECK(w[3] > 1.5);
    CHECK_THROWS_AS(critical_points(X("1"), X("1"), X("-0.1"), X("0.1"), ctx256()), SolveFailure);

    // symmetric points
    const ChiMap& f = g0().surface();
    CHECK(f.A1 == f.A2);
    CHECK(f.B1 == -f.B2);
    CHECK(f.w[0] == -f.w[3]);
    CHECK(f.w[1] == -f.w[2]);
    CHECK(abs(f.A1 - X("0.0629565962740410")) < X("1e-15"));
    CHECK(abs(f.B1 + X("1.47855454395549")) < X("1e-14"));

    // collapsing first interval
    ChiMap n = chi_solve({X("-2"), X("-1.99"), X("1"), X("2")}, ctx256());
    CHECK(abs(n.A2 - X("0.0625")) < X("0.0625") * X("0.02"));
    CHECK(abs(n.B2 - X("1.5")) < X("0.03"));
    CHECK(abs(n.B1 + X("1.9820508")) < X("0.04"));
    CHECK(n.A1 <= X("1e-4"));

    // any solution reproduces its branch points
    const std::array<XReal, 4> pts{X("-3"), X("-1.2"), X("0.5"), X("2.5")};
    ChiMap a = chi_solve(pts, ctx256());
    for (int j = 0; j < 4; ++j) CHECK(abs(a.R(a.w[j]) - pts[j]) < X("1e-64"));
    XReal big("1e40");
    CHECK(abs(a.R(big) - big) < X("1e-39"));

    // a poor seed goes through the homotopy fallback
    ChiMap bad{X("0.5"), X("0.001"), X("-2.9"), X("2.4"), {}, 0};
    ChiMap b = chi_solve(pts, ctx256(), &bad);
    CHECK(abs(b.A1 - a.A1) < X("1e-60"));
    CHECK(abs(b.B2 - a.B2) < X("1e-60"));
    CHECK_THROWS_AS(chi_solve({X("-2"), X("1"), X("-1"), X("2")}, ctx256()), SolveFailure);
}

TEST_CASE("thresholds")
{
    PrecisionScope s(ctx256());
    const auto& t = g0().thresholds();
    CHECK(abs(t.c_star + t.c_dstar - 1) < X("1e-60"));
    CHECK(t.c_star > 0);
    CHECK(t.c_star < X("0.5"));
    CHECK(abs(t.c_star - X("0.0852176522670595")) < X("1e-15"));

    // c* located independently: bisection on the discriminant backend's
    // endpoint reaching beta1
    XReal lo("0.05"), hi("0.1");
    auto reaches = [&](const XReal& c) {
        try {
            return dc_oracle(Geometry::reference(), c, ctx256()).beta_c1 >= -1;
        } catch (const RegimeError&) {
            return true;
        }
    };
    for (int it = 0; it < 30; ++it) {
        XReal mid = (lo + hi) / 2;
        (reaches(mid) ? hi : lo) = mid;
    }
    CHECK(abs((lo + hi) / 2 - t.c_star) < X("1e-6"));

    Thresholds asym = critical_thresholds(Geometry::parse("-3,-1.2,0.5,2.5"), ctx256());
    CHECK(asym.c_star > 0);
    CHECK(asym.c_star < asym.c_dstar);
    CHECK(asym.c_dstar < 1);
}

TEST_CASE("curve regimes and limits")
{
    PrecisionScope s(ctx256());
    auto half = g0().at(X("0.5"));
    CHECK(half.regime == Regime::Middle);
    CHECK(abs(half.z_c) < X("1e-60"));
    CHECK(half.B1 == -half.B2);
    CHECK(half.A1 == half.A2);

    for (const auto& row : kPushedLeft) {
        auto cd = g0().at(X(row.c));
        CAPTURE(row.c);
        CHECK(cd.regime == Regime::PushedLeft);
        CHECK(static_cast<double>(cd.A1) == doctest::Approx(row.A1).epsilon(1e-6));
        CHECK(static_cast<double>(cd.A2) == doctest::Approx(row.A2).epsilon(1e-8));
        CHECK(static_cast<double>(cd.B1) == doctest::Approx(row.B1).epsilon(1e-8));
        CHECK(static_cast<double>(cd.B2) == doctest::Approx(row.B2).epsilon(1e-8));
        CHECK(static_cast<double>(cd.beta_c1) == doctest::Approx(row.beta).epsilon(1e-8));
        CHECK(cd.z_c == cd.beta_c1);
        CHECK(cd.d_c.has_value());
        CHECK(cd.solve_residual < X("1e-30"));
    }

    auto small = g0().at(X("0.001"));
    XReal rate = (small.beta_c1 + 2) / (4 * X("0.001"));
    CHECK(abs(rate / sqrt(XReal(12)) - 1) < X("0.05"));
    CHECK(abs(small.A2 / X("0.0625") - 1) < X("0.01"));
    CHECK(abs(small.B2 / X("1.5") - 1) < X("0.01"));
    CHECK(abs(small.B1 / X("-1.9820508") - 1) < X("0.01"));
    CHECK(small.A1 > 0);
    CHECK(small.A1 < X("1e-4"));

    // closed forms at the ends, mirrored
    auto zero = g0().at(XReal(0));
    auto lim = limit_constants(Geometry::reference(), ctx256());
    CHECK(zero.limit);
    CHECK(zero.A1 == 0);
    CHECK(zero.A2 == X("0.0625"));
    CHECK(zero.B2 == X("1.5"));
    CHECK(zero.B1 == lim[2]);
    CHECK(abs(lim[2] - (X("1.5") + (X("-3.5") - sqrt(XReal(12))) / 2)) < X("1e-70"));
    auto one = g0().at(XReal(1));
    CHECK(one.A2 == 0);
    CHECK(one.A1 == zero.A2);
    CHECK(one.B1 == -zero.B2);
    CHECK(one.B2 == -zero.B1);

    // mirror regime
    auto right = g0().at(X("0.95"));
    auto left = g0().at(X("0.05"));
    CHECK(right.regime == Regime::PushedRight);
    CHECK(abs(right.alpha_c2 + left.beta_c1) < X("1e-60"));
    CHECK(abs(right.A1 - left.A2) < X("1e-60"));
    CHECK(abs(right.B2 + left.B1) < X("1e-60"));

    CHECK_THROWS_AS(g0().at(X("1.5")), std::invalid_argument);
}

TEST_CASE("endpoint law for small c")
{
    PrecisionScope s(ctx256());
    const XReal r12 = sqrt(XReal(12));
    XReal prev = 1;
    for (const char* c : {"1e-2", "1e-3", "1e-4"}) {
        XReal cc(c);
        auto cd = g0().at(cc);
        XReal err = abs((cd.beta_c1 + 2) / (4 * cc) - r12) / r12;
        CAPTURE(c);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < X("0.01"));
    // bracket 4c/(1-c)(alpha2-beta1) < beta - alpha1 < 4c/(1-c)(beta2-alpha1)
    for (const char* c : {"1e-4", "1e-3", "0.02", "0.05", "0.08"}) {
        XReal cc(c);
        auto cd = g0().at(cc);
        XReal d = cd.beta_c1 + 2, k = 4 * cc / (1 - cc);
        CAPTURE(c);
        CHECK(d > k * 2);
        CHECK(d < k * 4);
    }
}

TEST_CASE("discriminant oracle")
{
    PrecisionScope s(ctx256());
    for (const char* c : {"0.02", "0.05", "0.08"}) {
        auto dc = dc_oracle(Geometry::reference(), X(c), ctx256());
        auto cd = g0().at(X(c));
        CAPTURE(c);
        CHECK(abs(dc.beta_c1 - cd.beta_c1) < X("1e-64"));
        CHECK(dc.d_c > -2);
        CHECK(dc.d_c < dc.beta_c1);
        CHECK(dc.certificate < X("1e-60"));
    }
    CHECK_THROWS_AS(dc_oracle(Geometry::reference(), X("0.1"), ctx256()), RegimeError);
    CHECK_THROWS_AS(dc_oracle(Geometry::reference(), X("0.5"), ctx256()), RegimeError);
}

TEST_CASE("pushed-left across precisions")
{
    PrecisionContext c512(512);
    PrecisionScope s(c512);
    auto a = pushed_left_solve(Geometry::reference(), X("0.05"), c512);
    auto dc = dc_oracle(Geometry::reference(), X("0.05"), c512);
    CHECK(abs(a.beta_c1 - dc.beta_c1) < X("1e-128"));
    auto b = g0().at(X("0.05"));
    CHECK(abs(a.B1 - b.B1) < X("1e-64"));
}

TEST_CASE("middle regime, monotone z_c, continuity")
{
    PrecisionScope s(ctx256());
    auto a = g0().at(X("0.45")), b = g0().at(X("0.5")), c = g0().at(X("0.55"));
    for (const auto* p : {&a, &c}) {
        CHECK(abs(p->A1 - b.A1) < X("1e-10"));
        CHECK(abs(p->B2 - b.B2) < X("1e-10"));
    }
    XReal prev = -10;
    for (const char* cc : {"0.2", "0.35", "0.5", "0.65", "0.8"}) {
        auto cd = g0().at(X(cc));
        CHECK(cd.z_c > prev);
        CHECK(cd.z_c >= -1);
        CHECK(cd.z_c <= 1);
        prev = cd.z_c;
    }
    auto star = g0().at(g0().thresholds().c_star);
    CHECK(star.z_c == -1);
    auto dstar = g0().at(g0().thresholds().c_dstar);
    CHECK(dstar.z_c == 1);
    for (const char* cc : {"0.03", "0.3", "0.7", "0.97"}) {
        XReal x(cc), d("1e-4");
        auto m = g0().at(x), lo = g0().at(x - d), hi = g0().at(x + d);
        for (const auto* p : {&lo, &hi}) {
            CHECK(abs(p->A1 - m.A1) < X("1e-3"));
            CHECK(abs(p->B1 - m.B1) < X("1e-3"));
            CHECK(abs(p->z_c - m.z_c) < X("1e-2"));
        }
    }
}

TEST_CASE("sheets of the surface")
{
    PrecisionScope s(ctx256());
    const XComplex grid[] = {{0.3, 0.7}, {-1.5, 1e-3}, {4, 0}, {0, 0}, {1.2, -2}, {-3, 0.5}, {1.9, 1e-5}, {-7, 0}};
    for (const char* cc : {"0.02", "0.3", "0.5", "0.95"}) {
        auto cd = g0().at(X(cc));
        CAPTURE(cc);
        ChiMap m = cd.map();
        for (const auto& z : grid) {
            auto w = chi_eval(cd, z, ctx256());
            XComplex hs(0);
            for (int k = 0; k < 3; ++k) {
                CHECK(abs(m.R(w[k]) - z) < X("1e-60"));
                hs += h_branch(cd, z, k, ctx256());
            }
            CHECK(abs(hs) < X("1e-60"));
            // conjugate symmetry per sheet
            auto wc = chi_eval(cd, conj(z), ctx256());
            for (int k = 0; k < 3; ++k) CHECK(abs(wc[k] - conj(w[k])) < X("1e-60"));
            for (int i = 1; i <= 2; ++i) {
                XComplex prod = upsilon(cd, 1, z, 0, ctx256()) * upsilon(cd, 1, z, 1, ctx256()) *
                                upsilon(cd, 1, z, 2, ctx256());
                CHECK(abs(abs(prod) - cd.A1 * cd.A1 / (cd.B2 - cd.B1)) < X("1e-60"));
                XComplex u = upsilon(cd, i, z, 1, ctx256()), uc = upsilon(cd, i, conj(z), 1, ctx256());
                CHECK(abs(uc - conj(u)) < X("1e-60"));
            }
        }
        // real z in gaps: sheet 1 root between w1, w2 and sheet 2 root between w3, w4
        auto w = chi_eval(cd, XComplex(X("-0.2")), ctx256());
        if (cd.z_c != X("-0.2")) {
            CHECK(w[1].re > cd.w_crit[0]);
            CHECK(w[1].re < cd.w_crit[1]);
            CHECK(w[2].re > cd.w_crit[2]);
            CHECK(w[2].re < cd.w_crit[3]);
        }
        // expansions at infinity
        XComplex big(X("1e8"));
        auto wb = chi_eval(cd, big, ctx256());
        CHECK(abs(wb[0] - big) <= (cd.A1 + cd.A2) * X("1e-7"));
        CHECK(abs(wb[1] - XComplex(cd.B1 + cd.A1 / X("1e8"))) < X("1e-14"));
        CHECK(abs(wb[2] - XComplex(cd.B2 + cd.A2 / X("1e8"))) < X("1e-14"));
        XComplex u1 = upsilon(cd, 1, big, 1, ctx256());
        CHECK(abs(u1 - big) < 4);
        XComplex u0 = upsilon(cd, 1, big, 0, ctx256());
        CHECK(abs(u0 * big - XComplex(cd.A1)) < X("1e-6"));
        XComplex far(X("1e6"));
        CHECK(abs(far * h_branch(cd, far, 1, ctx256()) + XComplex(cd.c)) < X("1e-4"));
        CHECK(abs(far * h_branch(cd, far, 2, ctx256()) + XComplex(1 - cd.c)) < X("1e-4"));
        CHECK(abs(far * h_branch(cd, far, 0, ctx256()) - XComplex(1)) < X("1e-4"));
        // the zero of h on sheet 0
        if (cd.regime == Regime::Middle) CHECK(abs(h_branch(cd, XComplex(cd.z_c), 0, ctx256())) < X("1e-60"));
        // cuts need a side
        CHECK_THROWS_AS(chi_eval(cd, XComplex(X("1.5")), ctx256()), ClassificationError);
        auto up = chi_eval(cd, XComplex(X("1.5")), ctx256(), 1);
        auto dn = chi_eval(cd, XComplex(X("1.5")), ctx256(), -1);
        CHECK(up[0].im > 0);
        CHECK(abs(dn[0] - conj(up[0])) < X("1e-60"));
        CHECK(abs(up[2] - dn[0]) < X("1e-60"));
        CHECK(up[1].im == 0);
    }
    auto half = g0().at(X("0.5"));
    CHECK(abs(chi0(half, XComplex(0), ctx256())) < X("1e-60"));

    // pushed-left: the pole over the soft edge cancels, h stays bounded and
    // its jump closes like a square root
    auto pl = g0().at(X("0.05"));
    XComplex out = h_branch(pl, XComplex(pl.beta_c1 + X("1e-20")), 0, ctx256());
    XComplex in = h_branch(pl, XComplex(pl.beta_c1 - X("1e-20")), 0, ctx256(), 1);
    CHECK(abs(out) < 1);
    CHECK(abs(in.im) < X("1e-8"));
    CHECK(abs(in.im) > X("1e-12"));

    // the c = 0 surface
    auto zero = g0().at(XReal(0));
    auto wz = chi_eval(zero, XComplex(0.3, 0.4), ctx256());
    CHECK(wz[1] == XComplex(zero.B1));
    CHECK(abs(zero.map().R(wz[0]) - XComplex(0.3, 0.4)) < X("1e-60"));
    CHECK(abs(h_branch(zero, XComplex(0.3, 0.4), 0, ctx256()) + h_branch(zero, XComplex(0.3, 0.4), 2, ctx256())) <
          X("1e-60"));
}

TEST_CASE("equilibrium measures")
{
    PrecisionScope s(ctx256());
    for (const char* cc : {"0.3", "0.05"}) {
        auto cd = g0().at(X(cc));
        auto eq = equilibrium(cd, ctx256());
        CAPTURE(cc);
        CHECK(abs(eq.masses[0] - cd.c) < X("1e-8"));
        CHECK(abs(eq.masses[1] - (1 - cd.c)) < X("1e-8"));
        for (int k = 1; k <= 5; ++k) {
            XReal x = cd.support_lo(1) + (cd.support_hi(1) - cd.support_lo(1)) * k / 6;
            XReal y = cd.support_lo(2) + (cd.support_hi(2) - cd.support_lo(2)) * k / 6;
            CHECK(eq.density(1, x) > 0);
            CHECK(eq.density(2, y) > 0);
            CHECK(abs(eq.potential(x, 2, 1) - eq.ell1) < X("1e-6"));
            CHECK(abs(eq.potential(y, 1, 2) - eq.ell2) < X("1e-6"));
        }
        CHECK(eq.density(1, X("-0.5")) == 0);
        // off the supports the inequality side of the variational conditions
        if (cd.regime == Regime::PushedLeft) CHECK(eq.potential((cd.beta_c1 - 1) / 2, 2, 1) > eq.ell1);
    }
    auto small = g0().at(X("0.001"));
    auto eq = equilibrium(small, ctx256());
    CHECK(abs(eq.ell2 - 2 * log(XReal(4))) < X("0.01"));
}

TEST_CASE("energy oracle")
{
    auto r = energy_oracle(Geometry::reference(), 0.5, 100, 50);
    CHECK(r.n1 == 50);
    for (std::size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] < r.history[k - 1]);
    CHECK(r.beta_c1 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.alpha_c2 == doctest::Approx(1.0).epsilon(1e-12));
    auto a = energy_oracle(Geometry::reference(), 0.3, 120, 50, KernelMode::Serial);
    auto b = energy_oracle(Geometry::reference(), 0.3, 120, 50, KernelMode::Parallel);
    CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-12));
    CHECK(a.beta_c1 == doctest::Approx(-1.0));
    // pushed charges stay inside the soft edge and approach it
    auto p = energy_oracle(Geometry::reference(), 0.05, 200, 60);
    CHECK(p.beta_c1 < -1.37249);
    CHECK(p.beta_c1 > -1.37249 - 8 * p.resolution);
    CHECK_THROWS_AS(energy_oracle(Geometry::reference(), 0.5, 20, 10), std::invalid_argument);
}

TEST_CASE("constants export")
{
    PrecisionScope s(ctx256());
    auto j = constants_json(g0().at(X("0.5")), 30);
    CHECK(j.find("\"regime\": \"Middle\"") != std::string::npos);
    CHECK(j.find("\"c_star\"") != std::string::npos);
    CHECK(j.find("\"B1\": \"-1.4785545") != std::string::npos);
}
