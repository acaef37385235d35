#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace angelesco {

// Hot loops come in two flavours: an OpenMP version and the plain serial
// reference it is tested against.
enum class KernelMode { Serial, Parallel };

int kernel_threads();

// Householder reduction of the symmetric row-major matrix `a` (lower triangle
// read) to tridiagonal form: diagonal d, subdiagonal e with e[0] = 0.
// With vectors, `a` is overwritten by the orthogonal transformation.
void householder_tridiagonalize(std::size_t n, std::vector<double>& a, std::vector<double>& d,
                                std::vector<double>& e, bool vectors, KernelMode mode);

// Discrete log-gas: energy  sum_{k<l} W_kl (-log|x_k - x_l|)  with
// W_kl = coupling[group_k][group_l] * q_k * q_l. Fills gradient and the dense
// Hessian (row-major) when the pointers are non-null.
struct LogGas {
    std::vector<double> x;
    std::vector<double> q;
    std::vector<int> group;
    double coupling[2][2] = {{4.0, 2.0}, {2.0, 4.0}};
};

double log_gas_energy(const LogGas& g, KernelMode mode);
void log_gas_derivatives(const LogGas& g, std::vector<double>* grad, std::vector<double>* hess,
                         KernelMode mode);

// Runs body(i) for i in [0, count); parallel iterations must be independent.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body, KernelMode mode);

}  // namespace angelesco
