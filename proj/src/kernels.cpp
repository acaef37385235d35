#include "angelesco/kernels.hpp"

#include <cmath>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace angelesco {

int kernel_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {

inline double& at(std::vector<double>& a, std::size_t n, std::size_t i, std::size_t j) { return a[i * n + j]; }

void tred_serial(std::size_t n, std::vector<double>& V, std::vector<double>& d, std::vector<double>& e,
                 std::size_t i, double h)
{
    // y = A d using the stored lower triangle, scattered
    for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
        double f = d[j];
        at(V, n, j, i) = f;
        double g = e[j] + at(V, n, j, j) * f;
        for (std::size_t k = j + 1; k + 1 <= i; ++k) {
            g += at(V, n, k, j) * d[k];
            e[k] += at(V, n, k, j) * f;
        }
        e[j] = g;
    }
    double f = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
    }
    double hh = f / (h + h);
    for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
    for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        double g = e[j];
        for (std::size_t k = j; k + 1 <= i; ++k) at(V, n, k, j) -= (f * e[k] + g * d[k]);
        d[j] = at(V, n, i - 1, j);
        at(V, n, i, j) = 0.0;
    }
}

void tred_parallel(std::size_t n, std::vector<double>& V, std::vector<double>& d, std::vector<double>& e,
                   std::size_t i, double h)
{
    const long ii = static_cast<long>(i);
#pragma omp parallel for schedule(static)
    for (long j = 0; j < ii; ++j) {
        // row j of the symmetric active block, gathered instead of scattered
        double g = 0.0;
        for (long k = 0; k < j; ++k) g += V[j * n + k] * d[k];
        for (long k = j; k < ii; ++k) g += V[k * n + j] * d[k];
        e[j] = g;
    }
    for (std::size_t j = 0; j < i; ++j) at(V, n, j, i) = d[j];
    double f = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
    }
    double hh = f / (h + h);
    for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
#pragma omp parallel for schedule(dynamic, 16)
    for (long j = 0; j < ii; ++j) {
        double fj = d[j], gj = e[j];
        for (long k = j; k < ii; ++k) V[k * n + j] -= (fj * e[k] + gj * d[k]);
    }
    for (std::size_t j = 0; j < i; ++j) {
        d[j] = at(V, n, i - 1, j);
        at(V, n, i, j) = 0.0;
    }
}

}  // namespace

void householder_tridiagonalize(std::size_t n, std::vector<double>& V, std::vector<double>& d,
                                std::vector<double>& e, bool vectors, KernelMode mode)
{
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    if (n == 0) return;
    for (std::size_t j = 0; j < n; ++j) d[j] = at(V, n, n - 1, j);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0, h = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::fabs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = at(V, n, i - 1, j);
                at(V, n, i, j) = 0.0;
                at(V, n, j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            if (mode == KernelMode::Parallel)
                tred_parallel(n, V, d, e, i, h);
            else
                tred_serial(n, V, d, e, i, h);
        }
        d[i] = h;
    }

    if (!vectors) {
        for (std::size_t j = 0; j < n; ++j) d[j] = at(V, n, j, j);
        e[0] = 0.0;
        return;
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        at(V, n, n - 1, i) = at(V, n, i, i);
        at(V, n, i, i) = 1.0;
        double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) d[k] = at(V, n, k, i + 1) / h;
            const long ni = static_cast<long>(i);
            auto column = [&](long j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) g += V[k * n + i + 1] * V[k * n + j];
                for (std::size_t k = 0; k <= i; ++k) V[k * n + j] -= g * d[k];
            };
            if (mode == KernelMode::Parallel) {
#pragma omp parallel for schedule(static)
                for (long j = 0; j <= ni; ++j) column(j);
            } else {
                for (long j = 0; j <= ni; ++j) column(j);
            }
        }
        for (std::size_t k = 0; k <= i; ++k) at(V, n, k, i + 1) = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = at(V, n, n - 1, j);
        at(V, n, n - 1, j) = 0.0;
    }
    at(V, n, n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

double log_gas_energy(const LogGas& g, KernelMode mode)
{
    const long n = static_cast<long>(g.x.size());
    double total = 0.0;
    if (mode == KernelMode::Parallel) {
#pragma omp parallel for reduction(+ : total) schedule(dynamic, 8)
        for (long k = 0; k < n; ++k)
            for (long l = k + 1; l < n; ++l)
                total -= g.coupling[g.group[k]][g.group[l]] * g.q[k] * g.q[l] * std::log(std::fabs(g.x[k] - g.x[l]));
    } else {
        for (long k = 0; k < n; ++k)
            for (long l = k + 1; l < n; ++l)
                total -= g.coupling[g.group[k]][g.group[l]] * g.q[k] * g.q[l] * std::log(std::fabs(g.x[k] - g.x[l]));
    }
    return total;
}

void log_gas_derivatives(const LogGas& g, std::vector<double>* grad, std::vector<double>* hess, KernelMode mode)
{
    const long n = static_cast<long>(g.x.size());
    if (grad) grad->assign(n, 0.0);
    if (hess) hess->assign(static_cast<std::size_t>(n) * n, 0.0);
    // each row k is owned by one iteration, so the parallel loop has no races
    auto row = [&](long k) {
        double gk = 0.0, hkk = 0.0;
        for (long l = 0; l < n; ++l) {
            if (l == k) continue;
            double w = g.coupling[g.group[k]][g.group[l]] * g.q[k] * g.q[l];
            double t = g.x[k] - g.x[l];
            gk -= w / t;
            double c = w / (t * t);
            hkk += c;
            if (hess) (*hess)[k * n + l] = -c;
        }
        if (grad) (*grad)[k] = gk;
        if (hess) (*hess)[k * n + k] = hkk;
    };
    if (mode == KernelMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (long k = 0; k < n; ++k) row(k);
    } else {
        for (long k = 0; k < n; ++k) row(k);
    }
}

void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body, KernelMode mode)
{
    if (mode == KernelMode::Serial) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex guard;
    const long m = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < m; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace angelesco
