#include "dicke/regression.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "dicke/error.hpp"
#include "dicke/rk4.hpp"

namespace dicke {

namespace {

// Everything is carried in units where Gamma factors out: xi = sqrt(Gamma) * scaled,
// coefficients are Gamma * (integer-derived) numbers. Doubling Gamma then scales
// every intermediate by an exact power of two.
struct RegressionCoefficients {
    std::vector<double> ladder; // sqrt((m+1)(N-m)), m = 0..N-1
    std::vector<double> decay;  // (Gamma_m + Gamma_{m+1}) / 2
    std::vector<double> feed;   // sqrt(Gamma_{m+1} Gamma_{m+2}), zero for m = N-1
};

RegressionCoefficients coefficients(const DickeParams& params) {
    const int n = params.n_emitters();
    const double gamma = params.gamma();
    auto q = [n](int m) { return static_cast<double>(static_cast<std::int64_t>(m) * (n - m + 1)); };
    RegressionCoefficients c;
    c.ladder.resize(static_cast<std::size_t>(n));
    c.decay.resize(static_cast<std::size_t>(n));
    c.feed.resize(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        const auto i = static_cast<std::size_t>(m);
        c.ladder[i] = std::sqrt(q(m + 1));
        c.decay[i] = 0.5 * (collective_rate(m, params) + collective_rate(m + 1, params));
        c.feed[i] = (m + 2 <= n) ? gamma * std::sqrt(q(m + 1) * q(m + 2)) : 0.0;
    }
    return c;
}

void coherence_rhs(const RegressionCoefficients& c, const std::vector<double>& xi, std::vector<double>& d) {
    const std::size_t n = xi.size();
    for (std::size_t m = 0; m + 1 < n; ++m) {
        d[m] = -c.decay[m] * xi[m] + c.feed[m] * xi[m + 1];
    }
    d[n - 1] = -c.decay[n - 1] * xi[n - 1];
}

double project(const RegressionCoefficients& c, const std::vector<double>& scaled_xi, double gamma) {
    double sum = 0.0;
    for (std::size_t m = 0; m < scaled_xi.size(); ++m) {
        sum += c.ladder[m] * scaled_xi[m];
    }
    return gamma * sum;
}

std::vector<double> row_impl(std::size_t anchor, const PopulationTrajectory& trajectory,
                             const RegressionCoefficients& c, double dt) {
    const TimeGrid& grid = trajectory.grid;
    const double gamma = trajectory.params.gamma();
    const std::vector<double>& pi = trajectory.states[anchor].populations;

    std::vector<double> xi(c.ladder.size());
    for (std::size_t m = 0; m < xi.size(); ++m) {
        xi[m] = c.ladder[m] * pi[m + 1];
    }
    auto rhs = [&c](const std::vector<double>& y, std::vector<double>& d) { coherence_rhs(c, y, d); };
    Rk4Workspace work(xi.size());

    std::vector<double> row;
    row.reserve(grid.size() - anchor);
    row.push_back(project(c, xi, gamma));
    for (std::size_t j = anchor + 1; j < grid.size(); ++j) {
        work.advance(rhs, xi, grid[j] - grid[j - 1], dt);
        row.push_back(project(c, xi, gamma));
    }
    return row;
}

void check_trajectory(const PopulationTrajectory& trajectory) {
    if (trajectory.states.size() != trajectory.grid.size()) {
        throw DomainError("trajectory does not cover its grid");
    }
}

} // namespace

double CorrelationKernel::weighted_trace() const {
    double sum = 0.0;
    const auto w = grid.weights();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        sum += w[k] * values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    }
    return sum;
}

CoherenceState seed_coherence(const PopulationState& state, const DickeParams& params) {
    const auto n = static_cast<std::size_t>(params.n_emitters());
    if (state.populations.size() != n + 1) {
        throw DomainError("population state has the wrong length");
    }
    const RegressionCoefficients c = coefficients(params);
    const double root_gamma = std::sqrt(params.gamma());
    CoherenceState out;
    out.xi.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        out.xi[m] = root_gamma * c.ladder[m] * state.populations[m + 1];
    }
    return out;
}

std::vector<double> regression_rhs(const CoherenceState& state, const DickeParams& params) {
    if (state.xi.size() != static_cast<std::size_t>(params.n_emitters())) {
        throw DomainError("coherence state has the wrong length");
    }
    const RegressionCoefficients c = coefficients(params);
    std::vector<double> d(state.xi.size());
    coherence_rhs(c, state.xi, d);
    return d;
}

std::vector<double> correlation_row(std::size_t anchor, const PopulationTrajectory& trajectory,
                                    const StepPolicy& policy) {
    check_trajectory(trajectory);
    if (anchor >= trajectory.grid.size()) {
        throw DomainError("anchor index outside the grid");
    }
    return row_impl(anchor, trajectory, coefficients(trajectory.params), max_step(trajectory.params, policy));
}

CorrelationKernel build_kernel(const PopulationTrajectory& trajectory, const KernelBuildOptions& options) {
    check_trajectory(trajectory);
    const RegressionCoefficients c = coefficients(trajectory.params);
    const double dt = max_step(trajectory.params, options.step);
    const std::size_t size = trajectory.grid.size();
    const auto K = static_cast<Eigen::Index>(size);

    CorrelationKernel kernel{trajectory.grid, Eigen::MatrixXd::Zero(K, K)};

    unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(size));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < size; i = next++) {
            try {
                const std::vector<double> row = row_impl(i, trajectory, c, dt);
                const auto ii = static_cast<Eigen::Index>(i);
                for (std::size_t off = 0; off < row.size(); ++off) {
                    const auto jj = ii + static_cast<Eigen::Index>(off);
                    kernel.values(ii, jj) = row[off];
                    kernel.values(jj, ii) = row[off];
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = size;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return kernel;
}

CorrelationKernel build_kernel(const DickeParams& params, const TimeGrid& grid, const KernelBuildOptions& options) {
    return build_kernel(evolve(params, grid, options.step), options);
}

} // namespace dicke
