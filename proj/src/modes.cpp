#include "dicke/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dicke/error.hpp"

namespace dicke {

namespace {

constexpr double kResidualTolerance = 1e-10;

} // namespace

std::span<const double> ModeSet::mode(std::size_t i) const {
    if (i >= mode_count()) {
        throw DomainError("mode index " + std::to_string(i) + " out of range");
    }
    return {modes.col(static_cast<Eigen::Index>(i)).data(), static_cast<std::size_t>(modes.rows())};
}

void apply_sign_convention(Eigen::Ref<Eigen::VectorXd> v) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < v.size(); ++k) {
        if (std::abs(v[k]) > std::abs(v[best])) best = k;
    }
    if (v.size() > 0 && v[best] < 0.0) v = -v;
}

ModeSet decompose(const CorrelationKernel& kernel, std::size_t k_max) {
    const auto K = static_cast<Eigen::Index>(kernel.grid.size());
    if (kernel.values.rows() != K || kernel.values.cols() != K) {
        throw DomainError("kernel shape does not match its grid");
    }
    if (k_max > kernel.grid.size()) {
        throw DomainError("k_max exceeds the number of grid points");
    }
    if (kernel.values != kernel.values.transpose()) {
        throw DomainError("kernel is not symmetric");
    }

    const auto w = kernel.grid.weights();
    Eigen::VectorXd root_w(K);
    for (Eigen::Index k = 0; k < K; ++k) root_w[k] = std::sqrt(w[static_cast<std::size_t>(k)]);
    const Eigen::MatrixXd m = root_w.asDiagonal() * kernel.values * root_w.asDiagonal();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("symmetric eigensolver did not converge");
    }
    const Eigen::VectorXd& values = solver.eigenvalues();
    const Eigen::MatrixXd& vectors = solver.eigenvectors();

    // Eigen returns ascending order.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(K));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values[a] > values[b]; });

    const double scale = std::max(std::abs(values.maxCoeff()), std::abs(values.minCoeff()));

    ModeSet out{kernel.grid, {}, {}, Eigen::MatrixXd(K, static_cast<Eigen::Index>(k_max)), 0.0};
    out.occupations.reserve(static_cast<std::size_t>(K));
    out.raw_eigenvalues.reserve(static_cast<std::size_t>(K));
    for (Eigen::Index idx : order) {
        out.raw_eigenvalues.push_back(values[idx]);
        out.occupations.push_back(std::max(values[idx], 0.0));
    }
    for (std::size_t i = 0; i < k_max; ++i) {
        const Eigen::Index src = order[i];
        const Eigen::VectorXd u = vectors.col(src);
        const double residual = (m * u - values[src] * u).norm();
        if (residual > kResidualTolerance * std::max(scale, 1e-300)) {
            throw NumericalFailure("eigenpair residual above tolerance");
        }
        Eigen::VectorXd v = u.cwiseQuotient(root_w);
        apply_sign_convention(v);
        out.modes.col(static_cast<Eigen::Index>(i)) = v;
    }
    out.photon_total = std::accumulate(out.occupations.begin(), out.occupations.end(), 0.0);
    return out;
}

std::vector<double> occupation_fractions(const ModeSet& modes) {
    if (modes.occupations.empty()) {
        throw DegenerateInput("mode set is empty");
    }
    if (!(modes.photon_total > 0.0)) {
        throw DegenerateInput("mode set carries no photons");
    }
    std::vector<double> out;
    out.reserve(modes.occupations.size());
    for (double n : modes.occupations) out.push_back(n / modes.photon_total);
    return out;
}

double mode_overlap(std::span<const double> a, std::span<const double> b, const TimeGrid& grid) {
    if (a.size() != grid.size() || b.size() != grid.size()) {
        throw DomainError("mode samples do not match the grid");
    }
    const auto w = grid.weights();
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sum += w[k] * a[k] * b[k];
    return sum;
}

} // namespace dicke
