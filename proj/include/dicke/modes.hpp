// modes.hpp: Karhunen-Loeve decomposition of a sampled correlation kernel.
//
// Nystrom discretisation: with trapezoid weights D the symmetric matrix
// M = D^1/2 K D^1/2 is diagonalised, and each eigenvector u maps back to a
// time-domain mode v = D^-1/2 u that is orthonormal under the grid quadrature.
// Eigenvalues are the photon occupations.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dicke/regression.hpp"
#include "dicke/time_grid.hpp"

namespace dicke {

struct ModeSet {
    TimeGrid grid;
    std::vector<double> occupations;     // descending, clamped at zero
    std::vector<double> raw_eigenvalues; // as returned by the eigensolver, same order
    Eigen::MatrixXd modes;               // column i samples v_i(t_k)
    double photon_total = 0.0;           // what occupation_fractions normalises against

    std::size_t mode_count() const { return static_cast<std::size_t>(modes.cols()); }
    std::span<const double> mode(std::size_t i) const;
};

// Keeps every eigenvalue in occupations; only the first k_max modes are stored.
ModeSet decompose(const CorrelationKernel& kernel, std::size_t k_max);

// n_i / photon_total. For a full decomposition photon_total = sum_j n_j.
std::vector<double> occupation_fractions(const ModeSet& modes);

double mode_overlap(std::span<const double> a, std::span<const double> b, const TimeGrid& grid);

// Flips v so its largest-magnitude sample is positive; ties resolve to the earliest sample.
void apply_sign_convention(Eigen::Ref<Eigen::VectorXd> v);

} // namespace dicke
