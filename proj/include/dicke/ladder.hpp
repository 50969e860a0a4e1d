// ladder.hpp: exact dynamics of the symmetric Dicke ladder.
//
// The N+1 symmetric states |m> (m excitations) decay down the ladder with
// collective rates Gamma_m = Gamma m (N - m + 1). Starting from |N>, the
// density matrix stays diagonal and the populations obey
//
//     d pi_m / dt = -Gamma_m pi_m + Gamma_{m+1} pi_{m+1},   pi_{N+1} = 0.
//
// Collective operators are never materialised; only rates and the ladder
// coupling coefficients appear.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dicke/time_grid.hpp"

namespace dicke {

// Largest N accepted by the exact (master equation) pipelines.
inline constexpr int kMaxExactEmitters = 2000;

class DickeParams {
public:
    explicit DickeParams(int n_emitters, double gamma = 1.0);

    int n_emitters() const { return n_; }
    double gamma() const { return gamma_; }

    bool operator==(const DickeParams&) const = default;

private:
    int n_;
    double gamma_;
};

struct PopulationState {
    double time = 0.0;
    std::vector<double> populations; // pi_0 .. pi_N
};

struct PopulationTrajectory {
    DickeParams params;
    TimeGrid grid;
    std::vector<PopulationState> states; // one per grid point

    // Populations at grid index k with roundoff negatives clamped to zero.
    std::vector<double> clamped(std::size_t k) const;
};

// Integrator resolution: dt = step_fraction / Gamma_max.
struct StepPolicy {
    double step_fraction = 0.05;
};

double collective_rate(int m, const DickeParams& params);

// Gamma_0 .. Gamma_N.
std::vector<double> collective_rates(const DickeParams& params);

// Gamma * ceil(N/2) * (N - ceil(N/2) + 1), the largest rate on the ladder.
double max_collective_rate(const DickeParams& params);

double max_step(const DickeParams& params, const StepPolicy& policy = {});

std::vector<double> master_rhs(std::span<const double> populations, const DickeParams& params);

PopulationTrajectory evolve(const DickeParams& params, const TimeGrid& grid, const StepPolicy& policy = {});
PopulationTrajectory evolve(const DickeParams& params, double t_end, std::size_t points = 300,
                            const StepPolicy& policy = {});

// I(t_k) = sum_m Gamma_m pi_m(t_k), on the trajectory's grid.
std::vector<double> intensity(const PopulationTrajectory& trajectory);

// First multiple of the integrator step at which the residual excitation
// sum_{m>=1} pi_m drops below 1e-8. For N above kMaxExactEmitters the cascade
// is not integrated and the bound 8 ln(N) / (N Gamma) is returned instead.
double auto_time_window(const DickeParams& params, const StepPolicy& policy = {});

// 8 ln(max(N, 2)) / (N Gamma).
double time_window_cap(const DickeParams& params);

} // namespace dicke
