// regression.hpp: two-time field correlation Gamma <J+(t') J-(t)> by quantum regression.
//
// At an anchor time t the diagonal state is hit with J-, which leaves only the
// subdiagonal xi_m = rho_{m,m+1}. Those N amplitudes evolve as
//
//     d xi_m / dt = -(Gamma_m + Gamma_{m+1}) xi_m / 2 + sqrt(Gamma_{m+1} Gamma_{m+2}) xi_{m+1},
//
// and applying sqrt(Gamma) J+ followed by the trace at t' gives the kernel.

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "dicke/ladder.hpp"
#include "dicke/time_grid.hpp"

namespace dicke {

struct CoherenceState {
    std::vector<double> xi; // xi_0 .. xi_{N-1}, units of sqrt(rate)
};

struct CorrelationKernel {
    TimeGrid grid;
    Eigen::MatrixXd values; // K x K, symmetric

    // Sum_k w_k K_kk: the photon number carried by the kernel.
    double weighted_trace() const;
};

struct KernelBuildOptions {
    StepPolicy step{};
    unsigned threads = 0; // 0 picks std::thread::hardware_concurrency()
};

// xi_m = sqrt(Gamma) sqrt((m+1)(N-m)) pi_{m+1}. The pi_{m+1} index makes the
// equal-time kernel equal the intensity sum_m Gamma_m pi_m.
CoherenceState seed_coherence(const PopulationState& state, const DickeParams& params);

std::vector<double> regression_rhs(const CoherenceState& state, const DickeParams& params);

// K_ij for j = i .. K-1, seeded from the trajectory at grid index i.
std::vector<double> correlation_row(std::size_t anchor, const PopulationTrajectory& trajectory,
                                    const StepPolicy& policy = {});

// Upper triangle row by row, mirrored. Rows may be computed on several threads;
// the result does not depend on the thread count.
CorrelationKernel build_kernel(const DickeParams& params, const TimeGrid& grid, const KernelBuildOptions& options = {});
CorrelationKernel build_kernel(const PopulationTrajectory& trajectory, const KernelBuildOptions& options = {});

} // namespace dicke
