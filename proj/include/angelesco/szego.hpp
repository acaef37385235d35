#pragma once

#include "angelesco/mop.hpp"
#include "angelesco/precision.hpp"

#include <ostream>
#include <vector>

namespace angelesco {

// w_i(z) = sqrt((z-alpha_i)(z-beta_i)) with w_i(z)/z -> 1 and
// phi_i(z) = (z - (alpha_i+beta_i)/2 + w_i(z))/2. On the cut, side = +1/-1
// picks the boundary value from above/below; side 0 means from above.
XComplex w_map(const Geometry& g, int i, const XComplex& z, int side = 0);
XComplex phi_map(const Geometry& g, int i, const XComplex& z, int side = 0);

struct SzegoEval {
    int i = 0;
    XComplex value;
    XComplex at_infinity;
};

// Szego function of rho_i = -2 pi i mu_i'. On the cut a side flag is required.
SzegoEval szego_rho(const Geometry& g, int i, const XComplex& z, const WeightSpec& weight, const PrecisionContext& ctx,
                    int side = 0, int nodes = 128);

// S(z; x0) for x0 outside Delta_2, normalized by S(infinity; x0) = 1.
XComplex s_x0(const XComplex& z, const XReal& x0, const Geometry& g, const PrecisionContext& ctx, int side = 0);

// Marginal predictor (S_rho2(z)/S_rho2(inf)) S(z;alpha1)^n1 (z-alpha1)^n1 phi_2(z)^n2.
XComplex marginal_predict(const MultiIndex& n, const XComplex& z, const Geometry& g, const WeightSpec& weight2,
                          const PrecisionContext& ctx);

struct RatioRow {
    MultiIndex n;
    XComplex z, ratio;
    XReal abs_err;  // |ratio - 1|
};

std::vector<RatioRow> ratio_report(const MopEngine& engine, const std::vector<MultiIndex>& indices,
                                   const XComplex& z);
void write_ratio_csv(std::ostream& os, const std::vector<RatioRow>& rows, int digits = 20);

// b_{n,i} = -lim (P_{n+e_i}(z)/P_n(z) - z), read off the subleading coefficients.
XReal b_from_ratio(const MopEngine& engine, const MultiIndex& n, int i);

}  // namespace angelesco
