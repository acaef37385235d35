#pragma once

#include "angelesco/precision.hpp"

#include <vector>

namespace angelesco {

class XMatrix {
public:
    XMatrix() = default;
    XMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, XReal(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    XReal& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const XReal& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<XReal> a_;
};

struct DenseSolution {
    std::vector<XReal> x;
    XReal residual;  // max |Ax - b|
};

// Gaussian elimination with partial pivoting.
DenseSolution solve_dense(const XMatrix& A, const std::vector<XReal>& b, const PrecisionContext& ctx);

XReal max_residual(const XMatrix& A, const std::vector<XReal>& x, const std::vector<XReal>& b);

// Dense symmetric matrix in machine precision, row-major.
struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    SymMatrix() = default;
    explicit SymMatrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct EigenDecomposition {
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // column k is the vector of values[k], row-major n x n; empty unless requested
};

constexpr std::size_t kEigenCap = 5000;

EigenDecomposition sym_eig(const SymMatrix& S, bool want_vectors = false);

}  // namespace angelesco
