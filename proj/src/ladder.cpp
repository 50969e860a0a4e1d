#include "dicke/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "dicke/error.hpp"
#include "dicke/rk4.hpp"

namespace dicke {

namespace {

constexpr double kResidualThreshold = 1e-8;

void cascade_rhs(const std::vector<double>& rates, const std::vector<double>& pi, std::vector<double>& d) {
    const std::size_t top = pi.size() - 1;
    for (std::size_t m = 0; m < top; ++m) {
        d[m] = -rates[m] * pi[m] + rates[m + 1] * pi[m + 1];
    }
    d[top] = -rates[top] * pi[top];
}

std::vector<double> excited_top(const DickeParams& params) {
    std::vector<double> pi(static_cast<std::size_t>(params.n_emitters()) + 1, 0.0);
    pi.back() = 1.0;
    return pi;
}

} // namespace

DickeParams::DickeParams(int n_emitters, double gamma) : n_(n_emitters), gamma_(gamma) {
    if (n_ < 1) {
        throw DomainError("N must be >= 1, got " + std::to_string(n_));
    }
    if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) {
        throw DomainError("Gamma must be finite and > 0");
    }
}

std::vector<double> PopulationTrajectory::clamped(std::size_t k) const {
    std::vector<double> pi = states.at(k).populations;
    for (double& p : pi) p = std::max(p, 0.0);
    return pi;
}

double collective_rate(int m, const DickeParams& params) {
    const int n = params.n_emitters();
    if (m < 0 || m > n) {
        throw DomainError("excitation count " + std::to_string(m) + " outside [0, " + std::to_string(n) + "]");
    }
    const std::int64_t q = static_cast<std::int64_t>(m) * (n - m + 1);
    return params.gamma() * static_cast<double>(q);
}

std::vector<double> collective_rates(const DickeParams& params) {
    std::vector<double> rates(static_cast<std::size_t>(params.n_emitters()) + 1);
    for (int m = 0; m <= params.n_emitters(); ++m) {
        rates[static_cast<std::size_t>(m)] = collective_rate(m, params);
    }
    return rates;
}

double max_collective_rate(const DickeParams& params) {
    const int n = params.n_emitters();
    return collective_rate((n + 1) / 2, params);
}

double max_step(const DickeParams& params, const StepPolicy& policy) {
    if (!(policy.step_fraction > 0.0)) {
        throw DomainError("step fraction must be > 0");
    }
    return policy.step_fraction / max_collective_rate(params);
}

std::vector<double> master_rhs(std::span<const double> populations, const DickeParams& params) {
    const auto expected = static_cast<std::size_t>(params.n_emitters()) + 1;
    if (populations.size() != expected) {
        throw DomainError("population vector has " + std::to_string(populations.size()) + " entries, expected " +
                          std::to_string(expected));
    }
    const std::vector<double> rates = collective_rates(params);
    std::vector<double> pi(populations.begin(), populations.end());
    std::vector<double> d(pi.size());
    cascade_rhs(rates, pi, d);
    return d;
}

PopulationTrajectory evolve(const DickeParams& params, const TimeGrid& grid, const StepPolicy& policy) {
    if (grid.front() != 0.0) {
        throw DomainError("evolve expects a grid starting at t = 0");
    }
    const std::vector<double> rates = collective_rates(params);
    const double dt = max_step(params, policy);
    auto rhs = [&rates](const std::vector<double>& y, std::vector<double>& d) { cascade_rhs(rates, y, d); };

    std::vector<double> pi = excited_top(params);
    Rk4Workspace work(pi.size());

    PopulationTrajectory out{params, grid, {}};
    out.states.reserve(grid.size());
    out.states.push_back({grid[0], pi});
    for (std::size_t k = 1; k < grid.size(); ++k) {
        work.advance(rhs, pi, grid[k] - grid[k - 1], dt);
        out.states.push_back({grid[k], pi});
    }
    return out;
}

PopulationTrajectory evolve(const DickeParams& params, double t_end, std::size_t points, const StepPolicy& policy) {
    return evolve(params, TimeGrid::uniform(t_end, points), policy);
}

std::vector<double> intensity(const PopulationTrajectory& trajectory) {
    const std::vector<double> rates = collective_rates(trajectory.params);
    std::vector<double> out;
    out.reserve(trajectory.states.size());
    for (const auto& state : trajectory.states) {
        double sum = 0.0;
        for (std::size_t m = 0; m < rates.size(); ++m) {
            sum += rates[m] * state.populations[m];
        }
        out.push_back(sum);
    }
    return out;
}

double time_window_cap(const DickeParams& params) {
    const double n = params.n_emitters();
    return 8.0 * std::log(std::max(n, 2.0)) / (n * params.gamma());
}

double auto_time_window(const DickeParams& params, const StepPolicy& policy) {
    if (params.n_emitters() > kMaxExactEmitters) {
        return time_window_cap(params);
    }
    const std::vector<double> rates = collective_rates(params);
    const double dt = max_step(params, policy);
    auto rhs = [&rates](const std::vector<double>& y, std::vector<double>& d) { cascade_rhs(rates, y, d); };

    std::vector<double> pi = excited_top(params);
    Rk4Workspace work(pi.size());
    auto residual = [&pi] {
        double r = 0.0;
        for (std::size_t m = 1; m < pi.size(); ++m) r += pi[m];
        return r;
    };
    constexpr std::size_t kMaxSteps = 100'000'000;
    std::size_t steps = 0;
    while (residual() >= kResidualThreshold) {
        work.advance(rhs, pi, dt, dt);
        if (++steps > kMaxSteps) {
            throw NumericalFailure("auto_time_window: residual excitation did not decay");
        }
    }
    return static_cast<double>(steps) * dt;
}

} // namespace dicke
