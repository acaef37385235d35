#pragma once

#include "angelesco/kernels.hpp"
#include "angelesco/poly.hpp"
#include "angelesco/precision.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace angelesco {

struct Geometry {
    XReal alpha1, beta1, alpha2, beta2;

    void validate() const;
    const XReal& lo(int i) const { return i == 1 ? alpha1 : alpha2; }
    const XReal& hi(int i) const { return i == 1 ? beta1 : beta2; }
    bool contains(int i, const XReal& x) const { return x >= lo(i) && x <= hi(i); }
    std::array<XReal, 4> points() const { return {alpha1, beta1, alpha2, beta2}; }
    // x -> -x, intervals swap roles
    Geometry mirrored() const { return {-beta2, -alpha2, -beta1, -alpha1}; }
    bool symmetric() const { return alpha1 == -beta2 && beta1 == -alpha2; }

    static Geometry parse(const std::string& csv);
    static Geometry reference();  // [-2,-1] and [1,2]
};

struct WeightSpec {
    enum class Kind { Constant, PositivePoly, ExpPoly };
    Kind kind = Kind::Constant;
    std::vector<XReal> coeffs{XReal(1)};

    XReal density(const XReal& x) const;
    int degree() const;  // of the polynomial part
    std::string describe() const;
    WeightSpec mirrored() const;  // density of x -> -x

    static WeightSpec constant(const XReal& v = XReal(1));
    static WeightSpec parse(const std::string& text);
};

// Throws InvalidWeight when the density can vanish near its interval.
void check_weight(const WeightSpec& w, const XReal& a, const XReal& b, const PrecisionContext& ctx);

struct MultiIndex {
    int n1 = 0, n2 = 0;

    int operator[](int i) const { return i == 1 ? n1 : n2; }
    int size() const { return n1 + n2; }
    double c() const { return size() ? static_cast<double>(n1) / size() : 0.0; }
    double eps() const;
    MultiIndex plus(int i) const { return i == 1 ? MultiIndex{n1 + 1, n2} : MultiIndex{n1, n2 + 1}; }
    MultiIndex minus(int i) const { return i == 1 ? MultiIndex{n1 - 1, n2} : MultiIndex{n1, n2 - 1}; }
    auto operator<=>(const MultiIndex&) const = default;
};

std::vector<XReal> moments(const WeightSpec& w, const XReal& a, const XReal& b, int k_max,
                           const PrecisionContext& ctx);

struct MomentPair {
    std::vector<XReal> m1, m2;
    const std::vector<XReal>& operator[](int i) const { return i == 1 ? m1 : m2; }
};

struct MopSolution {
    MultiIndex index;
    Poly p_monic;
    Poly a1_poly, a2_poly;
    XReal h1, h2;
    XReal residual;

    const XReal& h(int i) const { return i == 1 ? h1 : h2; }
    const Poly& a_poly(int i) const { return i == 1 ? a1_poly : a2_poly; }
};

// Residuals are relative to the largest moment entering the system.
Poly type2_mop(const MultiIndex& n, const MomentPair& m, const PrecisionContext& ctx, XReal* residual = nullptr);
std::pair<Poly, Poly> type1_mop(const MultiIndex& n, const MomentPair& m, const PrecisionContext& ctx,
                                XReal* residual = nullptr);
MopSolution solve_mop(const MultiIndex& n, const MomentPair& m, const PrecisionContext& ctx);

// int x^l Q_n for the type I form of `s`
XReal form_moment(const MopSolution& s, const MomentPair& m, int l);

class MopEngine {
public:
    MopEngine(Geometry g, std::array<WeightSpec, 2> w, const PrecisionContext& ctx, int k_max = 64);

    const Geometry& geometry() const { return g_; }
    const WeightSpec& weight(int i) const { return w_[i - 1]; }
    const PrecisionContext& context() const { return ctx_; }
    const MomentPair& moment_pair() const { return m_; }
    void ensure_moments(int k_max);
    int quad_nodes(int extra_degree) const;

    MopSolution solve(const MultiIndex& n) const;

    XComplex remainder(const MopSolution& s, int i, const XComplex& z) const;
    XComplex linear_form(const MopSolution& s, const XComplex& z) const;

private:
    Geometry g_;
    std::array<WeightSpec, 2> w_;
    PrecisionContext ctx_;
    MomentPair m_;
};

struct NnrrEntry {
    MultiIndex n;
    XReal a1, a2, b1, b2;
    XReal b_gap;  // max disagreement of the two b computations
    const XReal& a(int i) const { return i == 1 ? a1 : a2; }
    const XReal& b(int i) const { return i == 1 ? b1 : b2; }
};

struct NnrrTable {
    int n_max = 0;
    std::vector<NnrrEntry> entries;  // row-major in (n1, n2)
    std::map<MultiIndex, MopSolution> solutions;  // n1, n2 <= n_max + 1

    const NnrrEntry& at(int n1, int n2) const { return entries.at(static_cast<std::size_t>(n1) * (n_max + 1) + n2); }
    const MopSolution& solution(const MultiIndex& n) const;
};

NnrrTable nnrr_table(const MopEngine& engine, int n_max, KernelMode mode = KernelMode::Parallel);

// max |coeff| of zP_n - P_{n+e_j} - b_{n,j} P_n - sum_i a_{n,i} P_{n-e_i};
// `relative` divides by the largest coefficient of zP_n.
XReal recurrence_residual(const NnrrTable& table, const MultiIndex& n, int j, bool relative = false);

struct ZeroSet {
    std::vector<XReal> on1, on2;
    std::vector<XReal> all() const;
};

ZeroSet zeros(const Poly& p, const MultiIndex& n, const Geometry& g, const PrecisionContext& ctx);

// strict alternation of two sorted sequences whose sizes differ by at most one
bool interlaced(const std::vector<XReal>& a, const std::vector<XReal>& b);

XComplex remainder_eval(const MopEngine& engine, const MultiIndex& n, int i, const XComplex& z);
XComplex linear_form_eval(const MopEngine& engine, const MultiIndex& n, const XComplex& z);

// least-squares slope of log|v| against log|z|
double loglog_slope(const std::vector<double>& z, const std::vector<double>& v);

void write_nnrr_csv(std::ostream& os, const NnrrTable& t, int digits);
std::string mop_json(const MopSolution& s, int digits);

}  // namespace angelesco
