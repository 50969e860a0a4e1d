#include "dicke/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dicke/error.hpp"

namespace dicke {

namespace {

// Composite weights of the 4-point (cubic) rule on n uniform nodes.
std::vector<double> cubic_weights(std::size_t n, double h) {
    if (n < 4) {
        throw DomainError("cubic quadrature needs at least four nodes");
    }
    std::vector<double> w(n, 0.0);
    const double c = h / 24.0;
    w[0] += 9 * c; w[1] += 19 * c; w[2] -= 5 * c; w[3] += c;
    for (std::size_t k = 1; k + 2 < n; ++k) {
        w[k - 1] -= c; w[k] += 13 * c; w[k + 1] += 13 * c; w[k + 2] -= c;
    }
    w[n - 4] += c; w[n - 3] -= 5 * c; w[n - 2] += 19 * c; w[n - 1] += 9 * c;
    return w;
}

double g1_small(double r) {
    // 2 r (1/3 - r^2/5 + r^4/7 - ...), r = sqrt z
    const double r2 = r * r;
    double power = 1.0;
    double sum = 0.0;
    for (int k = 0; k < 8; ++k) {
        sum += ((k % 2 == 0) ? 1.0 : -1.0) * power / (2 * k + 3);
        power *= r2;
    }
    return 2.0 * r * sum;
}

} // namespace

double LogZGrid::z(std::size_t i) const { return std::exp(log_z(i)); }

double GFunctionSet::interpolate(std::size_t i, double log_z) const {
    const std::vector<double>& f = g.at(i);
    const double pos = (log_z - grid.log_z0) / grid.step;
    const double last = static_cast<double>(grid.size - 1);
    if (pos < -1e-9 || pos > last + 1e-9) {
        throw DomainError("interpolation point outside the g-function grid");
    }
    const auto base = static_cast<std::ptrdiff_t>(std::floor(std::clamp(pos, 0.0, last)));
    const std::ptrdiff_t j0 = std::clamp<std::ptrdiff_t>(base - 1, 0, static_cast<std::ptrdiff_t>(grid.size) - 4);
    double value = 0.0;
    for (std::ptrdiff_t a = 0; a < 4; ++a) {
        double basis = 1.0;
        for (std::ptrdiff_t b = 0; b < 4; ++b) {
            if (a != b) basis *= (pos - static_cast<double>(j0 + b)) / static_cast<double>(a - b);
        }
        value += basis * f[static_cast<std::size_t>(j0 + a)];
    }
    return value;
}

double GFunctionSet::window_end_time() const { return tau_max / params.collective_rate(); }

double g1(double z) {
    if (!(z > 0.0)) {
        throw DomainError("g1 requires z > 0");
    }
    const double r = std::sqrt(z);
    if (r < 0.05) {
        return g1_small(r);
    }
    return 2.0 * (r - std::atan(r)) / z;
}

std::vector<double> next_g(std::span<const double> g, const LogZGrid& grid) {
    const std::size_t n = g.size();
    if (n != grid.size || n < 4) {
        throw DomainError("g samples do not match the log grid");
    }
    // int g dz = int g(e^s) e^s ds
    std::vector<double> f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = g[k] * grid.z(k);

    const double c = grid.step / 24.0;
    std::vector<double> out(n);
    // g ~ sqrt(z) below the first node, so int_0^z0 g = (2/3) z0 g(z0).
    double cumulative = (2.0 / 3.0) * f[0];
    out[0] = g[0] - cumulative / grid.z(0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double piece = 0.0;
        if (k == 0) {
            piece = c * (9 * f[0] + 19 * f[1] - 5 * f[2] + f[3]);
        } else if (k + 2 == n) {
            piece = c * (f[n - 4] - 5 * f[n - 3] + 19 * f[n - 2] + 9 * f[n - 1]);
        } else {
            piece = c * (-f[k - 1] + 13 * f[k] + 13 * f[k + 1] - f[k + 2]);
        }
        cumulative += piece;
        out[k + 1] = g[k + 1] - cumulative / grid.z(k + 1);
    }
    for (double v : out) {
        if (!std::isfinite(v)) throw NumericalFailure("g recurrence produced a non-finite value");
    }
    return out;
}

GFunctionSet make_gfunctions(const AnalyticParams& params, std::size_t count, const GFunctionOptions& options) {
    if (count == 0) {
        throw DomainError("need at least one g function");
    }
    if (options.points < 4 || !(options.tau_extra > 0.0) || !(options.lower_factor > 0.0 && options.lower_factor < 1.0)) {
        throw DomainError("invalid g-function grid options");
    }
    const double tau_max = std::log(params.n()) + options.tau_extra;
    const double step = tau_max / static_cast<double>(options.points - 1);
    const auto below = static_cast<std::size_t>(std::ceil(-std::log(options.lower_factor) / step));

    GFunctionSet set{params, {}, below, tau_max, {}};
    set.grid.step = step;
    set.grid.log_z0 = std::log(params.beta()) - step * static_cast<double>(below);
    set.grid.size = below + options.points;

    std::vector<double> first(set.grid.size);
    for (std::size_t k = 0; k < first.size(); ++k) first[k] = g1(set.grid.z(k));
    set.g.push_back(std::move(first));
    while (set.g.size() < count) {
        set.g.push_back(next_g(set.g.back(), set.grid));
    }
    return set;
}

double log_approx_window_trace(const AnalyticParams& params, double tau_max) {
    // int_1^X [ln(1 + beta x)/x^2 - beta/(x (1 + beta x))] dx = [-ln(1 + beta x)/x]_1^X
    const double beta = params.beta();
    const double x_end = std::exp(tau_max);
    return (std::log1p(beta) - std::log1p(beta * x_end) / x_end) / params.collective_rate();
}

GramProblem overlap_matrix(const GFunctionSet& gset, std::span<const double> lambda) {
    const std::size_t count = gset.count();
    std::vector<double> weights_lambda(lambda.begin(), lambda.end());
    if (weights_lambda.empty()) weights_lambda.assign(count, 1.0);
    if (weights_lambda.size() != count) {
        throw DomainError("one lambda per g function is required");
    }
    for (double l : weights_lambda) {
        if (!(l > 0.0)) throw DomainError("lambda_i must be > 0");
    }

    const std::size_t begin = gset.window_begin;
    const std::size_t nodes = gset.grid.size - begin;
    const std::vector<double> w = cubic_weights(nodes, gset.grid.step);
    const double beta = gset.params.beta();
    const double scale = beta / gset.params.collective_rate();

    const auto n = static_cast<Eigen::Index>(count);
    GramProblem problem{Eigen::MatrixXd(n, n), weights_lambda, log_approx_window_trace(gset.params, gset.tau_max)};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const auto& gi = gset.g[static_cast<std::size_t>(i)];
            const auto& gj = gset.g[static_cast<std::size_t>(j)];
            double sum = 0.0;
            for (std::size_t k = 0; k < nodes; ++k) sum += w[k] * gi[begin + k] * gj[begin + k];
            const double a = scale * sum /
                             std::sqrt(weights_lambda[static_cast<std::size_t>(i)] * weights_lambda[static_cast<std::size_t>(j)]);
            problem.overlap(i, j) = a;
            problem.overlap(j, i) = a;
        }
    }
    return problem;
}

GramSolution solve_modes(const GramProblem& problem, std::size_t k) {
    const auto dim = static_cast<std::size_t>(problem.overlap.rows());
    if (k == 0 || k > dim) {
        throw DomainError("mode count must lie in [1, " + std::to_string(dim) + "]");
    }
    const auto kk = static_cast<Eigen::Index>(k);
    // nu Lambda^-1 a = A a  <=>  (Lambda^1/2 A Lambda^1/2) b = nu b,  a = Lambda^1/2 b
    Eigen::VectorXd root_lambda(kk);
    for (Eigen::Index i = 0; i < kk; ++i) root_lambda[i] = std::sqrt(problem.lambda[static_cast<std::size_t>(i)]);
    const Eigen::MatrixXd sym = root_lambda.asDiagonal() * problem.overlap.topLeftCorner(kk, kk) * root_lambda.asDiagonal();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("Gram eigenproblem did not converge");
    }
    GramSolution out;
    out.kernel_trace = problem.kernel_trace;
    out.lambda.assign(problem.lambda.begin(), problem.lambda.begin() + static_cast<std::ptrdiff_t>(k));
    out.coefficients.resize(kk, kk);
    for (Eigen::Index i = 0; i < kk; ++i) {
        const Eigen::Index src = kk - 1 - i; // ascending -> descending
        const double nu = solver.eigenvalues()[src];
        out.occupations.push_back(nu);
        out.fractions.push_back(nu / problem.kernel_trace);
        out.coefficients.col(i) = root_lambda.asDiagonal() * solver.eigenvectors().col(src);
    }
    return out;
}

ModeSet assemble_modes(const GramSolution& solution, const GFunctionSet& gset, const TimeGrid& grid) {
    const auto k = static_cast<std::size_t>(solution.coefficients.cols());
    if (k > gset.count()) {
        throw DomainError("solution uses more functions than the set provides");
    }
    const double beta = gset.params.beta();
    const double log_beta = std::log(beta);
    const double rate = gset.params.collective_rate();
    const auto K = static_cast<Eigen::Index>(grid.size());

    // w_j(t_k) = sqrt(beta / lambda_j) g_j(z(t_k))
    Eigen::MatrixXd basis(K, static_cast<Eigen::Index>(k));
    for (Eigen::Index t = 0; t < K; ++t) {
        const double log_z = log_beta + rate * grid[static_cast<std::size_t>(t)];
        for (std::size_t j = 0; j < k; ++j) {
            basis(t, static_cast<Eigen::Index>(j)) = std::sqrt(beta / solution.lambda[j]) * gset.interpolate(j, log_z);
        }
    }

    ModeSet out{grid, {}, {}, basis * solution.coefficients, gset.params.n()};
    for (std::size_t i = 0; i < k; ++i) {
        auto column = out.modes.col(static_cast<Eigen::Index>(i));
        const std::span<const double> samples(column.data(), static_cast<std::size_t>(K));
        const double norm = std::sqrt(mode_overlap(samples, samples, grid));
        if (!(norm > 0.0)) throw DegenerateInput("assembled mode vanishes on the grid");
        column /= norm;
        apply_sign_convention(column);
        out.raw_eigenvalues.push_back(solution.occupations[i]);
        out.occupations.push_back(std::max(solution.fractions[i], 0.0) * gset.params.n());
    }
    return out;
}

Eigen::MatrixXd reconstruct_kernel(const GFunctionSet& gset, std::size_t k, const TimeGrid& grid) {
    if (k == 0 || k > gset.count()) {
        throw DomainError("reconstruction order outside the available g functions");
    }
    const double beta = gset.params.beta();
    const double log_beta = std::log(beta);
    const double rate = gset.params.collective_rate();
    const auto K = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd samples(K, static_cast<Eigen::Index>(k));
    for (Eigen::Index t = 0; t < K; ++t) {
        for (std::size_t i = 0; i < k; ++i) {
            samples(t, static_cast<Eigen::Index>(i)) = gset.interpolate(i, log_beta + rate * grid[static_cast<std::size_t>(t)]);
        }
    }
    return beta * samples * samples.transpose();
}

} // namespace dicke
