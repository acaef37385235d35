#pragma once

#include "angelesco/curve.hpp"
#include "angelesco/linalg.hpp"
#include "angelesco/mop.hpp"

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace angelesco {

// Rooted binary tree in BFS order: children of v are 2v+1 (type 1) and 2v+2
// (type 2). The edge from a vertex to its child i has type i.
struct TreeVertex {
    int parent = -1;
    std::array<int, 2> child{-1, -1};
    MultiIndex proj;  // Pi(Y)
    int iota = 0;     // type of the vertex, 0 at the root
    int depth = 0;
};

struct TreeIndex {
    int depth = 0;
    std::vector<TreeVertex> v;

    std::size_t size() const { return v.size(); }
};

TreeIndex build_tree(int depth);

struct RecurrenceCoeffs {
    double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
    double a(int i) const { return i == 1 ? a1 : a2; }
    double b(int i) const { return i == 1 ? b1 : b2; }
};

// Recurrence coefficients indexed by multi-index, either read from an NNRR
// table or synthesized from the curve constants at c_n = n1/|n|.
class CoeffSource {
public:
    enum class Kind { Computed, Synthetic };

    static CoeffSource computed(const NnrrTable& table, std::array<double, 2> kappa = {0.0, 1.0});
    static CoeffSource synthetic(const CurveSolver& solver, std::array<double, 2> kappa = {0.0, 1.0});

    Kind kind() const { return kind_; }
    const std::array<double, 2>& kappa() const { return kappa_; }

    // SourceError when n is not covered.
    RecurrenceCoeffs at(const MultiIndex& n) const;
    double a(const MultiIndex& n, int i) const { return at(n).a(i); }
    double b(const MultiIndex& n, int i) const { return at(n).b(i); }

    // replace the coefficients at one index (finite-rank perturbations)
    void override_at(const MultiIndex& n, const RecurrenceCoeffs& c);

private:
    Kind kind_ = Kind::Synthetic;
    std::array<double, 2> kappa_{0.0, 1.0};
    std::map<MultiIndex, RecurrenceCoeffs> table_;
    std::map<MultiIndex, RecurrenceCoeffs> overrides_;
    std::shared_ptr<const CurveSolver> solver_;
    std::shared_ptr<std::map<std::pair<int, int>, RecurrenceCoeffs>> cache_;  // keyed by reduced c
};

// constants of the curve at c as machine reals
RecurrenceCoeffs curve_coeffs(const CurveData& cd);

struct TreeTruncation {
    std::string tag;  // "J" or "L(c,l)"
    int depth = 0;
    std::vector<double> diag;
    std::vector<std::pair<int, int>> edges;  // (parent, child)
    std::vector<double> offdiag;             // one per edge

    std::size_t size() const { return diag.size(); }
    SymMatrix dense() const;
};

TreeTruncation assemble_J(const TreeIndex& tree, const CoeffSource& source);
TreeTruncation assemble_L(const TreeIndex& tree, const CurveData& cd, int l);

using Interval = std::pair<double, double>;

struct SpectrumProbe {
    int depth = 0;
    double epsilon = 0;
    std::vector<double> eigs;
    double inside_fraction = 0;
    double max_coverage_gap = 0;
};

SpectrumProbe spectrum_probe(const TreeTruncation& t, const std::vector<Interval>& target, double epsilon,
                             int grid_per_interval = 2000);
std::vector<Interval> support_intervals(const CurveData& cd);

void write_eigs_csv(std::ostream& os, const std::vector<double>& eigs);
std::string probe_json(const SpectrumProbe& p);

struct MFunctionPair {
    XComplex m1, m2;
    int iterations = 0;
    double residual = 0;

    const XComplex& m(int l) const { return l == 1 ? m1 : m2; }
};

// Fixed point m_l = 1/(B_l - A1 m1 - A2 m2 - z) iterated from (0, 0).
// `l` only selects which of the pair the caller reads; both are returned.
MFunctionPair m_recursion(const CurveData& cd, int l, const XComplex& z, int iterations = 200000);

// m_l = -1/(chi^(0)(z) - B_l)
XComplex m_closed(const CurveData& cd, int l, const XComplex& z, const PrecisionContext& ctx, int side = 0);
double spectral_density(const CurveData& cd, int l, double x, const PrecisionContext& ctx);
double spectral_mass(const CurveData& cd, int l, const PrecisionContext& ctx, int nodes = 96);

struct AppendixC0Report {
    XReal A02, B01, B02;
    XReal m1_at_alpha1;       // m-hat_1(alpha_1)
    XReal identity_residual;  // A02 m-hat_1(alpha_1) + alpha_1 - B01
    XReal pole;               // root of A02 m-hat_1(x) + x - B01 left of Delta_2
    std::vector<double> a1_eigs, a2_eigs;
    double isolated = 0;       // lowest eigenvalue of the A_2 truncation
    int outside_count = 0;     // A_2 eigenvalues outside the fattened Delta_2, besides the isolated one
    double a1_spectrum_lo = 0, a1_spectrum_hi = 0;  // B02 -/+ 2 sqrt(A02)
};

XComplex m_hat1(const Geometry& g, const XComplex& z, const PrecisionContext& ctx);
XComplex m_hat2(const Geometry& g, const XComplex& z, const PrecisionContext& ctx);
AppendixC0Report appendix_c0(const Geometry& g, const PrecisionContext& ctx, int depth = 40, double fatten = 0.05);

// multi-index staircase closest to the ray n1/|n| = c, starting at the root
std::vector<int> ray_path(const TreeIndex& tree, double c);

struct RLimitReport {
    double c = 0;
    int radius = 0;
    std::vector<int> depths;
    std::vector<double> deviation;  // sup over the ball at each depth
    std::vector<double> tail_sup;   // sup over depths >= this one
};

RLimitReport rlimit_check(const CoeffSource& source, const CurveData& limit, double c, int radius,
                          const std::vector<int>& depths);

}  // namespace angelesco
