#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace angelesco {

using XReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                            boost::multiprecision::et_off>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ANGELESCO_ERROR(Name)                 \
    struct Name : Error {                     \
        using Error::Error;                   \
    }

ANGELESCO_ERROR(SingularSystem);
ANGELESCO_ERROR(BracketError);
ANGELESCO_ERROR(ShapeError);
ANGELESCO_ERROR(EvaluationError);
ANGELESCO_ERROR(InvalidWeight);
ANGELESCO_ERROR(NormalityFailure);
ANGELESCO_ERROR(InternalInconsistency);
ANGELESCO_ERROR(ZeroLocationFailure);
ANGELESCO_ERROR(DomainError);
ANGELESCO_ERROR(SolveFailure);
ANGELESCO_ERROR(RegimeError);
ANGELESCO_ERROR(ClassificationError);
ANGELESCO_ERROR(ConvergenceError);
ANGELESCO_ERROR(SourceError);
ANGELESCO_ERROR(ValidationError);

#undef ANGELESCO_ERROR

// Working precision. Every XReal created while a PrecisionScope for this
// context is alive carries at least `bits` mantissa bits.
class PrecisionContext {
public:
    explicit PrecisionContext(unsigned bits = 512);

    unsigned bits() const { return bits_; }
    unsigned digits10() const { return digits10_; }
    const XReal& tol() const { return tol_; }
    void set_tol(const XReal& t) { tol_ = t; }

private:
    unsigned bits_;
    unsigned digits10_;
    XReal tol_;
};

class PrecisionScope {
public:
    explicit PrecisionScope(const PrecisionContext& ctx);
    explicit PrecisionScope(unsigned digits10);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

XReal pi_x();
XReal from_string(const std::string& s);
std::string to_string(const XReal& x, int digits);

struct XComplex {
    XReal re, im;

    XComplex() = default;
    XComplex(const XReal& r) : re(r), im(0) {}
    XComplex(const XReal& r, const XReal& i) : re(r), im(i) {}
    XComplex(double r) : re(r), im(0) {}
    XComplex(double r, double i) : re(r), im(i) {}
    explicit XComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_complex() const
    {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    XComplex& operator+=(const XComplex& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    XComplex& operator-=(const XComplex& o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    XComplex& operator*=(const XComplex& o);
    XComplex& operator/=(const XComplex& o);
};

inline XComplex operator+(XComplex a, const XComplex& b) { return a += b; }
inline XComplex operator-(XComplex a, const XComplex& b) { return a -= b; }
inline XComplex operator*(XComplex a, const XComplex& b) { return a *= b; }
inline XComplex operator/(XComplex a, const XComplex& b) { return a /= b; }
inline XComplex operator-(const XComplex& a) { return {-a.re, -a.im}; }
inline bool operator==(const XComplex& a, const XComplex& b) { return a.re == b.re && a.im == b.im; }

XComplex conj(const XComplex& z);
XReal abs(const XComplex& z);
XReal norm(const XComplex& z);
XReal arg(const XComplex& z);
XComplex sqrt(const XComplex& z);
XComplex exp(const XComplex& z);
XComplex log(const XComplex& z);
XComplex pow(const XComplex& z, long n);

}  // namespace angelesco
