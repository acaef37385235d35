#include "angelesco/precision.hpp"

#include <cmath>
#include <sstream>

namespace angelesco {

namespace {

unsigned digits_for_bits(unsigned bits)
{
    // mpfr_float_backend maps digits10 d to ceil(d / log10 2) bits, so this
    // never lands below the requested mantissa width
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace

PrecisionContext::PrecisionContext(unsigned bits) : bits_(bits), digits10_(digits_for_bits(bits))
{
    if (bits < 128) throw std::invalid_argument("mantissa_bits must be >= 128");
    PrecisionScope scope(*this);
    tol_ = boost::multiprecision::ldexp(XReal(1), -static_cast<int>(bits / 2));
}

PrecisionScope::PrecisionScope(const PrecisionContext& ctx) : PrecisionScope(ctx.digits10()) {}

PrecisionScope::PrecisionScope(unsigned digits10) : saved_(XReal::default_precision())
{
    // only write when the value changes, so worker threads that open a scope
    // at the prevailing precision never touch the shared setting
    if (saved_ != digits10) XReal::default_precision(digits10);
}

PrecisionScope::~PrecisionScope()
{
    if (XReal::default_precision() != saved_) XReal::default_precision(saved_);
}

XReal pi_x()
{
    XReal p;
    mpfr_const_pi(p.backend().data(), GMP_RNDN);
    return p;
}

XReal from_string(const std::string& s) { return XReal(s); }

std::string to_string(const XReal& x, int digits)
{
    return x.str(digits, std::ios_base::scientific);
}

XComplex& XComplex::operator*=(const XComplex& o)
{
    XReal r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
}

XComplex& XComplex::operator/=(const XComplex& o)
{
    // Smith's algorithm
    using boost::multiprecision::abs;
    if (abs(o.re) >= abs(o.im)) {
        XReal t = o.im / o.re;
        XReal d = o.re + o.im * t;
        XReal r = (re + im * t) / d;
        im = (im - re * t) / d;
        re = r;
    } else {
        XReal t = o.re / o.im;
        XReal d = o.re * t + o.im;
        XReal r = (re * t + im) / d;
        im = (im * t - re) / d;
        re = r;
    }
    return *this;
}

XComplex conj(const XComplex& z) { return {z.re, -z.im}; }

XReal abs(const XComplex& z) { return boost::multiprecision::hypot(z.re, z.im); }

XReal norm(const XComplex& z) { return z.re * z.re + z.im * z.im; }

XReal arg(const XComplex& z) { return boost::multiprecision::atan2(z.im, z.re); }

XComplex sqrt(const XComplex& z)
{
    using boost::multiprecision::sqrt;
    if (z.re == 0 && z.im == 0) return {XReal(0), XReal(0)};
    XReal r = abs(z);
    if (z.re >= 0) {
        XReal t = sqrt((r + z.re) / 2);
        return {t, z.im / (2 * t)};
    }
    XReal t = sqrt((r - z.re) / 2);
    if (z.im < 0) t = -t;
    return {z.im / (2 * t), t};
}

XComplex exp(const XComplex& z)
{
    XReal m = boost::multiprecision::exp(z.re);
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

XComplex log(const XComplex& z) { return {boost::multiprecision::log(abs(z)), arg(z)}; }

XComplex pow(const XComplex& z, long n)
{
    if (n < 0) return XComplex(1) / pow(z, -n);
    XComplex r(1), b = z;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

}  // namespace angelesco
