#pragma once

#include "angelesco/precision.hpp"

#include <vector>

namespace angelesco {

// Coefficients in ascending degree.
struct Poly {
    std::vector<XReal> c;

    Poly() = default;
    explicit Poly(std::vector<XReal> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const XReal& lead() const { return c.back(); }
    XReal coeff(int k) const;

    XReal operator()(const XReal& x) const;
    XComplex operator()(const XComplex& z) const;

    Poly derivative() const;
    void trim();
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const XReal& s, const Poly& a);

// Division with remainder; b must be nonzero.
void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);

Poly from_roots(const std::vector<XReal>& roots);

struct RealRoot {
    XReal x;
    int multiplicity;
};

// Sturm isolation of the distinct real roots in [lo, hi], refinement to the
// context tolerance, multiplicity read off the vanishing derivatives.
std::vector<RealRoot> real_roots_in(const Poly& p, const XReal& lo, const XReal& hi,
                                    const PrecisionContext& ctx);

}  // namespace angelesco
