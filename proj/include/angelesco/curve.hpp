#pragma once

#include "angelesco/kernels.hpp"
#include "angelesco/mop.hpp"
#include "angelesco/precision.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace angelesco {

enum class Regime { PushedLeft, Middle, PushedRight };
std::string regime_name(Regime r);

// R(w) = w + A1/(w-B1) + A2/(w-B2), the inverse of the conformal map.
struct ChiMap {
    XReal A1, A2, B1, B2;
    std::array<XReal, 4> w;  // critical points, ascending
    XReal residual;

    XReal R(const XReal& x) const;
    XComplex R(const XComplex& x) const;
    XReal dR(const XReal& x) const;
    XReal d2R(const XReal& x) const;
};

// Critical points of R bracketed around the poles; SolveFailure when the
// pair between the poles does not exist.
std::array<XReal, 4> critical_points(const XReal& A1, const XReal& A2, const XReal& B1, const XReal& B2,
                                     const PrecisionContext& ctx);

// Solve R(w_j) = e_j for the four ordered branch points.
ChiMap chi_solve(const std::array<XReal, 4>& e, const PrecisionContext& ctx, const ChiMap* seed = nullptr);

struct Thresholds {
    XReal c_star, c_dstar;
};

struct CurveData {
    XReal c;
    Regime regime = Regime::Middle;
    Geometry geometry;
    XReal beta_c1, alpha_c2;
    XReal A1, A2, B1, B2;
    std::array<XReal, 4> w_crit;
    XReal w_star, z_c;
    std::optional<XReal> d_c;
    XReal K;
    XReal solve_residual;
    Thresholds thresholds;
    bool limit = false;  // c in {0, 1}: closed-form constants, degenerate surface

    ChiMap map() const { return {A1, A2, B1, B2, w_crit, solve_residual}; }
    const XReal& A(int i) const { return i == 1 ? A1 : A2; }
    const XReal& B(int i) const { return i == 1 ? B1 : B2; }
    XReal support_lo(int i) const { return i == 1 ? geometry.alpha1 : alpha_c2; }
    XReal support_hi(int i) const { return i == 1 ? beta_c1 : geometry.beta2; }
};

// Reuses the full-interval surface and thresholds across many c.
class CurveSolver {
public:
    CurveSolver(Geometry g, const PrecisionContext& ctx);

    const Geometry& geometry() const { return g_; }
    const PrecisionContext& context() const { return ctx_; }
    const ChiMap& surface() const { return full_; }
    const Thresholds& thresholds() const { return th_; }
    CurveData at(const XReal& c) const;

private:
    Geometry g_;
    PrecisionContext ctx_;
    ChiMap full_;
    Thresholds th_;
};

Thresholds critical_thresholds(const Geometry& g, const PrecisionContext& ctx);
CurveData curve(const Geometry& g, const XReal& c, const PrecisionContext& ctx);

// c -> 0 limits: (A_{0,1}, A_{0,2}, B_{0,1}, B_{0,2})
std::array<XReal, 4> limit_constants(const Geometry& g, const PrecisionContext& ctx);

// Pushed-left solve without regime classification: unknowns A1, A2, B1, B2 and
// the moving endpoint. Exposed for cross-checks.
CurveData pushed_left_solve(const Geometry& g, const XReal& c, const PrecisionContext& ctx);

struct DcOracleResult {
    XReal d_c, beta_c1, z_double;
    XReal certificate;  // max of |C|, |C'| at the double root, relative
};

DcOracleResult dc_oracle(const Geometry& g, const XReal& c, const PrecisionContext& ctx);

// Sheet-labelled preimages. side = +1/-1 selects boundary values on a cut.
std::array<XComplex, 3> chi_eval(const CurveData& cd, const XComplex& z, const PrecisionContext& ctx, int side = 0);
XComplex chi0(const CurveData& cd, const XComplex& z, const PrecisionContext& ctx, int side = 0);
XComplex h_of_w(const CurveData& cd, const XComplex& w);
XComplex h_branch(const CurveData& cd, const XComplex& z, int sheet, const PrecisionContext& ctx, int side = 0);
XComplex upsilon(const CurveData& cd, int i, const XComplex& z, int sheet, const PrecisionContext& ctx, int side = 0);

struct EquilibriumData {
    std::function<XReal(int, const XReal&)> density;  // omega'_{c,i}(x)
    std::array<XReal, 2> masses;
    XReal ell1, ell2;
    std::function<XReal(const XReal&, const XReal&, const XReal&)> potential;  // (x, weight on 1, weight on 2)
};

EquilibriumData equilibrium(const CurveData& cd, const PrecisionContext& ctx);

struct EnergyOracleResult {
    double beta_c1 = 0, alpha_c2 = 0, energy = 0;
    int n1 = 0, n2 = 0, iterations = 0;
    double resolution = 0;  // O(1/N) scale of the endpoint read-out
    std::vector<double> history;
    std::vector<double> x1, x2;
};

EnergyOracleResult energy_oracle(const Geometry& g, double c, int n_particles, int iterations,
                                 KernelMode mode = KernelMode::Parallel);

std::string constants_json(const CurveData& cd, int digits);

}  // namespace angelesco
