#include "doctest.h"

#include "angelesco/szego.hpp"

#include <algorithm>
#include <sstream>

using namespace angelesco;
using boost::multiprecision::abs;
using boost::multiprecision::sqrt;

namespace {

const PrecisionContext& ctx256()
{
    static PrecisionContext c(256);
    return c;
}

const PrecisionContext& ctx512()
{
    static PrecisionContext c(512);
    return c;
}

const MopEngine& engine()
{
    static MopEngine e(Geometry::reference(), {WeightSpec::constant(), WeightSpec::constant()}, ctx512(), 128);
    return e;
}

double d(const XReal& x) { return static_cast<double>(x); }

// 2 pi mu'(x) |w_+(x)| on Delta_2 of G0
XReal boundary_weight(const WeightSpec& w, double x)
{
    XReal X(x);
    return 2 * pi_x() * w.density(X) * sqrt((X - 1) * (2 - X));
}

const char* kWeights[] = {"const", "exppoly:0.2,0.5,-0.3", "poly:2,1"};

}  // namespace

TEST_CASE("conformal maps")
{
    PrecisionScope s(ctx256());
    Geometry g = Geometry::reference();
    XComplex w = w_map(g, 2, XComplex(-2));
    CHECK(d(abs(w.re + sqrt(XReal(12)))) < 1e-70);
    CHECK(d(abs(w.im)) < 1e-70);
    for (double x : {1.1, 1.5, 1.9}) {
        CHECK(d(abs(abs(phi_map(g, 2, XComplex(x), 1)) - XReal("0.25"))) < 1e-70);
        CHECK(d(abs(abs(phi_map(g, 2, XComplex(x), -1)) - XReal("0.25"))) < 1e-70);
        XComplex up = phi_map(g, 2, XComplex(x), 1), dn = phi_map(g, 2, XComplex(x), -1);
        CHECK(d(abs(up - conj(dn))) < 1e-70);
    }
    XComplex big(XReal("1e30"), XReal("3e29"));
    CHECK(d(abs(phi_map(g, 2, big) - big + XComplex(1.5))) < 1e-25);
    // w_1 of the mirrored interval
    XComplex w1 = w_map(g, 1, XComplex(2));
    CHECK(d(abs(w1.re - sqrt(XReal(12)))) < 1e-70);
    // side 0 on the cut is the upper value
    CHECK(phi_map(g, 2, XComplex(1.3)) == phi_map(g, 2, XComplex(1.3), 1));
}

TEST_CASE("szego function boundary identity")
{
    PrecisionScope s(ctx256());
    Geometry g = Geometry::reference();
    for (const char* spec : kWeights) {
        WeightSpec w = WeightSpec::parse(spec);
        for (double x : {1.1, 1.3, 1.5, 1.77, 1.95}) {
            SzegoEval p = szego_rho(g, 2, XComplex(x), w, ctx256(), 1);
            SzegoEval m = szego_rho(g, 2, XComplex(x), w, ctx256(), -1);
            XComplex prod = p.value * m.value * XComplex(boundary_weight(w, x));
            CHECK_MESSAGE(d(abs(prod - XComplex(1))) < 1e-8, spec << " x=" << x);
            CHECK(d(abs(p.value - conj(m.value))) < 1e-60);
            // approach from above
            SzegoEval near = szego_rho(g, 2, XComplex(XReal(x), XReal("1e-12")), w, ctx256());
            CHECK(d(abs(near.value - p.value)) < 1e-10);
        }
    }
}

TEST_CASE("szego function on the real line and at infinity")
{
    PrecisionScope s(ctx256());
    Geometry g = Geometry::reference();
    for (const char* spec : kWeights) {
        WeightSpec w = WeightSpec::parse(spec);
        for (double x : {2.5, 4.0, 40.0, -1.5, 0.0}) {
            SzegoEval e = szego_rho(g, 2, XComplex(x), w, ctx256());
            CHECK(d(e.value.re) > 0);
            CHECK(d(abs(e.value.im)) < 1e-60);
        }
        SzegoEval far = szego_rho(g, 2, XComplex(XReal("1e40")), w, ctx256());
        CHECK(d(abs(far.value / far.at_infinity - XComplex(1))) < 1e-30);
        XComplex z(0.3, 0.8);
        SzegoEval up = szego_rho(g, 2, z, w, ctx256());
        SzegoEval dn = szego_rho(g, 2, conj(z), w, ctx256());
        CHECK(d(abs(up.value - conj(dn.value))) < 1e-60);
        SzegoEval fine = szego_rho(g, 2, z, w, ctx256(), 0, 256);
        CHECK(d(abs(fine.value - up.value)) < 1e-10);
    }
    // constant density: the theta average of log(2 pi) over [0, pi] gives 1/sqrt(2 pi), A0 = 1/16
    SzegoEval leb = szego_rho(g, 2, XComplex(4), WeightSpec::constant(), ctx256());
    CHECK(d(abs(leb.at_infinity.re - 2 / sqrt(2 * pi_x()))) < 1e-60);
}

TEST_CASE("szego function domain errors")
{
    Geometry g = Geometry::reference();
    WeightSpec w = WeightSpec::constant();
    CHECK_THROWS_AS(szego_rho(g, 2, XComplex(1.5), w, ctx256()), DomainError);
    CHECK_THROWS_AS(szego_rho(g, 2, XComplex(1.0), w, ctx256(), 1), DomainError);
    CHECK_THROWS_AS(szego_rho(g, 2, XComplex(4), w, ctx256(), 0, 7), std::invalid_argument);
    CHECK_THROWS_AS(szego_rho(g, 2, XComplex(4), WeightSpec::parse("poly:-1"), ctx256()), InvalidWeight);
    CHECK_THROWS_AS(s_x0(XComplex(4), XReal("1.5"), g, ctx256()), DomainError);
    CHECK_THROWS_AS(s_x0(XComplex(1.5), XReal(-2), g, ctx256()), DomainError);
    MultiIndex n{1, 3};
    CHECK_THROWS_AS(marginal_predict(n, XComplex(1.2), g, w, ctx256()), DomainError);
    CHECK_THROWS_AS(marginal_predict(n, XComplex(-2), g, w, ctx256()), DomainError);
}

TEST_CASE("S(z; x0)")
{
    PrecisionScope s(ctx256());
    Geometry g = Geometry::reference();
    for (double x0 : {-2.0, -1.0, 0.0, 3.0}) {
        XReal X0(x0);
        CHECK(d(abs(s_x0(XComplex(XReal("1e40")), X0, g, ctx256()) - XComplex(1))) < 1e-30);
        XReal phi0 = phi_map(g, 2, XComplex(X0)).re;
        for (double x : {1.2, 1.5, 1.9}) {
            XComplex sp = s_x0(XComplex(x), X0, g, ctx256(), 1);
            XComplex sm = s_x0(XComplex(x), X0, g, ctx256(), -1);
            CHECK(d(abs(norm(sp) * (XReal(x) - X0) + phi0)) < 1e-10);
            CHECK(d(abs(sp - conj(sm))) < 1e-60);
        }
        XComplex z(0.3, 2.0);
        CHECK(d(abs(s_x0(z, X0, g, ctx256()) - conj(s_x0(conj(z), X0, g, ctx256())))) < 1e-60);
        // removable point z = x0 is continuous
        XComplex at = s_x0(XComplex(X0), X0, g, ctx256());
        XComplex by = s_x0(XComplex(X0, XReal("1e-30")), X0, g, ctx256());
        CHECK(d(abs(at - by)) < 1e-25);
    }
    // positive on the real axis outside Delta_2 and away from x0
    for (double x : {-3.0, -1.5, 0.5, 2.5, 10.0}) {
        XComplex v = s_x0(XComplex(x), XReal(-2), g, ctx256());
        CHECK(d(v.re) > 0);
        CHECK(d(abs(v.im)) < 1e-60);
    }
}

TEST_CASE("marginal predictor")
{
    PrecisionScope s(ctx256());
    Geometry g = Geometry::reference();
    WeightSpec w = WeightSpec::constant();
    XComplex z(4);
    // n1 = 0 drops the S(z; alpha1) factor
    XComplex p = marginal_predict({0, 5}, z, g, w, ctx256());
    SzegoEval e = szego_rho(g, 2, z, w, ctx256());
    CHECK(d(abs(p - e.value / e.at_infinity * pow(phi_map(g, 2, z), 5))) < 1e-60);
    // each n1 step multiplies by S(z; alpha1)(z - alpha1)
    XComplex q = marginal_predict({1, 5}, z, g, w, ctx256());
    CHECK(d(abs(q / p - s_x0(z, g.alpha1, g, ctx256()) * XComplex(6))) < 1e-60);
    // leading behaviour z^|n|
    XComplex big(XReal("1e40"));
    XComplex r = marginal_predict({2, 7}, big, g, w, ctx256()) / pow(big, 9);
    CHECK(d(abs(r - XComplex(1))) < 1e-30);
}

TEST_CASE("ratio to the prediction")
{
    PrecisionScope s(ctx512());
    auto rows = ratio_report(engine(), {{1, 10}, {1, 20}, {1, 40}}, XComplex(4));
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].abs_err < rows[0].abs_err);
    CHECK(rows[2].abs_err < rows[1].abs_err);
    CHECK(d(rows[2].abs_err) < 0.02);
    // classical one-interval case converges faster
    auto single = ratio_report(engine(), {{0, 10}, {0, 20}}, XComplex(4));
    CHECK(single[1].abs_err < single[0].abs_err);
    CHECK(d(single[1].abs_err) < 2e-4);
    // off the real axis
    auto cplx = ratio_report(engine(), {{0, 12}, {0, 24}}, XComplex(0.3, 1.0));
    CHECK(cplx[1].abs_err < cplx[0].abs_err);

    std::ostringstream os;
    write_ratio_csv(os, rows, 10);
    std::string text = os.str();
    CHECK(text.rfind("n1,n2,z_re,z_im,ratio_re,ratio_im,abs_err\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("b extraction")
{
    PrecisionScope s(ctx512());
    // values from an independent 60-digit mpmath build of the same polynomials
    CHECK(d(b_from_ratio(engine(), {1, 10}, 1)) == doctest::Approx(-1.4764885312).epsilon(1e-9));
    CHECK(d(b_from_ratio(engine(), {1, 40}, 1)) == doctest::Approx(-1.7485804488).epsilon(1e-9));
    CHECK(d(b_from_ratio(engine(), {1, 40}, 2)) == doctest::Approx(1.4980725832).epsilon(1e-9));
    // b matches the recurrence coefficient of the NNRR table
    NnrrTable t = nnrr_table(engine(), 6, KernelMode::Serial);
    for (int i = 1; i <= 2; ++i) {
        MultiIndex n{2, 3};
        CHECK(d(abs(b_from_ratio(engine(), n, i) - t.at(2, 3).b(i))) < 1e-80);
    }
    CHECK_THROWS_AS(b_from_ratio(engine(), {1, 1}, 3), std::invalid_argument);
}
