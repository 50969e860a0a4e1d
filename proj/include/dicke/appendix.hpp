// appendix.hpp: temporal modes of the log-approximation kernel at arbitrarily large N.
//
// In z = beta e^tau the kernel is linear in beta with
//     d/d beta K = sqrt(z z') / ((1 + z)(1 + z')),
// and it decomposes as K = beta sum_i g_i(z) g_i(z') with
//     g_1 + z g_1' = sqrt(z) / (1 + z),     z g_i' = g_{i+1} + z g_{i+1}'.
// The g_i are not orthogonal in time. Their Gram matrix
//     A_ij = <w_i, w_j> = beta / (N Gamma) int g_i g_j dz / z,   w_i = sqrt(beta / lambda_i) g_i,
// turns the kernel eigenproblem into the small generalised problem
//     nu a_j / lambda_j = sum_i A_ji a_i,
// whose eigenvectors assemble the modes psi = sum_i a_i w_i.
//
// Only lambda_i c_i^2 = 1 is fixed by the decomposition; the default gauge is lambda_i = 1.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dicke/analytic.hpp"
#include "dicke/modes.hpp"
#include "dicke/time_grid.hpp"

namespace dicke {

struct GFunctionOptions {
    std::size_t points = 2000;  // nodes on the emission window [beta, beta e^tau_max]
    double tau_extra = 8.0;     // tau_max = ln N + tau_extra
    double lower_factor = 1e-3; // grid continues down to beta * lower_factor for the cumulative integrals
};

// Uniform grid in s = ln z.
struct LogZGrid {
    double log_z0 = 0.0;
    double step = 0.0;
    std::size_t size = 0;

    double log_z(std::size_t i) const { return log_z0 + step * static_cast<double>(i); }
    double z(std::size_t i) const;
};

struct GFunctionSet {
    AnalyticParams params;
    LogZGrid grid;
    std::size_t window_begin = 0; // node where z = beta, i.e. t = 0
    double tau_max = 0.0;
    std::vector<std::vector<double>> g; // g[i] samples g_{i+1} on the grid

    std::size_t count() const { return g.size(); }
    // Cubic Lagrange interpolation of g_{i+1} at z = exp(log_z).
    double interpolate(std::size_t i, double log_z) const;
    // t = 0 .. tau_max / (N Gamma)
    double window_end_time() const;
};

// 2 (sqrt z - arctan sqrt z) / z
double g1(double z);

// g_{i+1}(z) = g_i(z) - (1/z) int_0^z g_i(u) du by cumulative quadrature in ln z.
std::vector<double> next_g(std::span<const double> g, const LogZGrid& grid);

GFunctionSet make_gfunctions(const AnalyticParams& params, std::size_t count, const GFunctionOptions& options = {});

struct GramProblem {
    Eigen::MatrixXd overlap;    // A_ij = <w_i, w_j>
    std::vector<double> lambda; // lambda_i, B_ij = delta_ij / lambda_j
    double kernel_trace = 0.0;  // int K(t, t) dt over the window, same units as A
};

// Gram problem in the gauge given by `lambda` (empty means lambda_i = 1).
GramProblem overlap_matrix(const GFunctionSet& gset, std::span<const double> lambda = {});

struct GramSolution {
    std::vector<double> occupations; // nu_i, descending
    std::vector<double> fractions;   // nu_i / kernel_trace
    Eigen::MatrixXd coefficients;    // column i holds a^(i)
    std::vector<double> lambda;
    double kernel_trace = 0.0;
};

GramSolution solve_modes(const GramProblem& problem, std::size_t k);

// Samples psi_i on a time grid inside the window, unit-normalised, sign-fixed.
// Occupations are reported as photon numbers of the N-normalised kernel.
ModeSet assemble_modes(const GramSolution& solution, const GFunctionSet& gset, const TimeGrid& grid);

// beta sum_{i<k} g_i(z) g_i(z') on the grid; directly comparable to kernel_log_approx.
Eigen::MatrixXd reconstruct_kernel(const GFunctionSet& gset, std::size_t k, const TimeGrid& grid);

// Integral of intensity_log_approx over [0, tau_max] in physical time.
double log_approx_window_trace(const AnalyticParams& params, double tau_max);

} // namespace dicke
