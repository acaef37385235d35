#include "angelesco/linalg.hpp"
#include "angelesco/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace angelesco {

using boost::multiprecision::abs;

XReal max_residual(const XMatrix& A, const std::vector<XReal>& x, const std::vector<XReal>& b)
{
    XReal worst = 0;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        XReal s = -b[i];
        for (std::size_t j = 0; j < A.cols(); ++j) s += A(i, j) * x[j];
        worst = std::max(worst, abs(s));
    }
    return worst;
}

DenseSolution solve_dense(const XMatrix& A, const std::vector<XReal>& b, const PrecisionContext& ctx)
{
    PrecisionScope scope(ctx);
    const std::size_t n = A.rows();
    if (A.cols() != n || b.size() != n) throw ShapeError("solve_dense: square system required");
    XMatrix M = A;
    std::vector<XReal> y = b;
    XReal amax = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) amax = std::max(amax, abs(M(i, j)));
    // rounding noise sits near 2^-bits * amax; anything well above it is a real pivot
    const XReal floor = boost::multiprecision::ldexp(amax, 32 - static_cast<int>(ctx.bits()));

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (abs(M(i, k)) > abs(M(p, k))) p = i;
        if (abs(M(p, k)) <= floor || M(p, k) == 0)
            throw SingularSystem("solve_dense: pivot below tolerance at column " + std::to_string(k));
        if (p != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(M(k, j), M(p, j));
            std::swap(y[k], y[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            XReal f = M(i, k) / M(k, k);
            if (f == 0) continue;
            for (std::size_t j = k + 1; j < n; ++j) M(i, j) -= f * M(k, j);
            y[i] -= f * y[k];
        }
    }
    std::vector<XReal> x(n);
    for (std::size_t k = n; k-- > 0;) {
        XReal s = y[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= M(k, j) * x[j];
        x[k] = s / M(k, k);
    }
    DenseSolution out;
    out.residual = max_residual(A, x, b);
    out.x = std::move(x);
    return out;
}

namespace {

// Implicit QL on the tridiagonal (d, e) with e[0] unused on entry shifted
// down by one; z accumulates rotations when non-null.
void tql2(std::size_t n, std::vector<double>& d, std::vector<double>& e, std::vector<double>* z)
{
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    double f = 0.0, tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
        std::size_t m = l;
        while (m < n) {
            if (std::fabs(e[m]) <= 2.220446049250313e-16 * tst1) break;
            ++m;
        }
        if (m == n) m = n - 1;
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 60) throw ConvergenceError("sym_eig: QL iteration did not converge");
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;
                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t ii = m; ii-- > l;) {
                    std::size_t i = ii;
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if (z) {
                        for (std::size_t k = 0; k < n; ++k) {
                            double& zk1 = (*z)[k * n + i + 1];
                            double& zk = (*z)[k * n + i];
                            h = zk1;
                            zk1 = s * zk + c * h;
                            zk = c * zk - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::fabs(e[l]) > 2.220446049250313e-16 * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

}  // namespace

EigenDecomposition sym_eig(const SymMatrix& S, bool want_vectors)
{
    const std::size_t n = S.n;
    if (n > kEigenCap) throw ShapeError("sym_eig: dimension exceeds cap");
    double scale = 0.0;
    for (double v : S.a) scale = std::max(scale, std::fabs(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(S(i, j) - S(j, i)) > 1e-12 * std::max(scale, 1e-300))
                throw ShapeError("sym_eig: matrix is not symmetric");
    EigenDecomposition out;
    if (n == 0) return out;

    std::vector<double> z = S.a, d(n), e(n);
    householder_tridiagonalize(n, z, d, e, want_vectors, KernelMode::Parallel);
    tql2(n, d, e, want_vectors ? &z : nullptr);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = d[order[k]];
    if (want_vectors) {
        out.vectors.resize(n * n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = z[i * n + order[k]];
    }
    return out;
}

}  // namespace angelesco
