#include "dicke/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dicke/error.hpp"
#include "dicke/quadrature.hpp"
#include "dicke/special_functions.hpp"

namespace dicke {

namespace {

// Both exponential-integral arguments above this go through the asymptotic tails.
constexpr double kAsymptoticArgument = 40.0;
// Below this u = beta x the log forms switch to their Taylor series.
constexpr double kSeriesArgument = 1e-2;

const quad::Tolerance kKernelTolerance{1e-10, 0.0, 20000};

void require_time(double tau, const char* what) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw DomainError(std::string(what) + " requires a finite tau >= 0");
    }
}

void require_ordered(double tau, double tau_prime, const char* what) {
    require_time(tau, what);
    require_time(tau_prime, what);
    if (tau > tau_prime) {
        throw DomainError(std::string(what) + " requires tau <= tau_prime");
    }
}

void require_interior(double m, const AnalyticParams& params) {
    if (!(m > 0.0 && m < params.n())) {
        throw DomainError("continuous excitation m must lie strictly inside (0, N)");
    }
}

// ln(1 + u) / u - 1
double log_ratio_minus_one(double u) {
    if (u < kSeriesArgument) {
        // sum_{k>=1} (-u)^k / (k + 1)
        double power = 1.0;
        double sum = 0.0;
        for (int k = 1; k <= 10; ++k) {
            power *= -u;
            sum += power / (k + 1);
        }
        return sum;
    }
    return std::log1p(u) / u - 1.0;
}

// ln(1 + u) / u - 1 / (1 + u)
double log_intensity_shape(double u) {
    if (u < kSeriesArgument) {
        // sum_{k>=1} (-1)^(k+1) k / (k + 1) u^k
        double power = 1.0;
        double sum = 0.0;
        for (int k = 1; k <= 10; ++k) {
            power *= -u;
            sum -= power * k / (k + 1);
        }
        return sum;
    }
    return std::log1p(u) / u - 1.0 / (1.0 + u);
}

std::vector<double> decade_breaks(int deepest) {
    std::vector<double> breaks{0.0};
    for (int k = deepest; k >= 1; --k) breaks.push_back(std::pow(10.0, -k));
    return breaks;
}

} // namespace

AnalyticParams::AnalyticParams(std::int64_t n_emitters, double gamma, double lambda)
    : n_(n_emitters), gamma_(gamma), lambda_(lambda) {
    if (n_ < 2) {
        throw DomainError("the continuous-m model needs N >= 2");
    }
    if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) {
        throw DomainError("Gamma must be finite and > 0");
    }
    if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
        throw DomainError("lambda must be finite and > 0");
    }
    beta_ = 2.0 / (lambda_ * n());
}

ScaledTime ScaledTime::from_time(double t, const AnalyticParams& params) { return {params.collective_rate() * t}; }

double ScaledTime::x() const { return std::exp(tau); }

double ScaledTime::z(const AnalyticParams& params) const { return params.beta() * x(); }

double tee_of_m(double m, const AnalyticParams& params) {
    require_interior(m, params);
    return std::log(m / (params.n() - m)) / params.gamma();
}

double m_of_tee(double tee, const AnalyticParams& params) {
    if (!std::isfinite(tee)) {
        throw DomainError("m_of_tee requires a finite argument");
    }
    return params.n() / (1.0 + std::exp(-params.gamma() * tee));
}

double shift_m(double m, double tau, const AnalyticParams& params) {
    require_interior(m, params);
    require_time(tau, "shift_m");
    const double n = params.n();
    const double grow = std::expm1(tau);
    if (std::isinf(grow)) return n;
    return n * m * (1.0 + grow) / (n + m * grow);
}

double population_analytic(double tau, double m, const AnalyticParams& params) {
    require_interior(m, params);
    require_time(tau, "population_analytic");
    const double n = params.n();
    const double grow = std::expm1(tau);
    if (std::isinf(grow)) return 0.0;
    const double denom = n + m * grow;
    const double shifted = n * m * (1.0 + grow) / denom;
    const double shifted_gap = n * (n - m) / denom; // N - m', without cancellation
    const double rate_ratio = (shifted * shifted_gap) / (m * (n - m));
    return rate_ratio * std::exp(-params.lambda() * shifted_gap);
}

double kernel_characteristic(double tau, double tau_prime, const AnalyticParams& params) {
    require_ordered(tau, tau_prime, "kernel_characteristic");
    const double grow_p = std::expm1(tau_prime);
    const double grow_d = std::expm1(tau_prime - tau);
    const double lambda_n = params.lambda() * params.n();
    auto integrand = [=](double y, double u) {
        const double den_p = 1.0 + y * grow_p;
        return y * u * std::exp(-lambda_n * u / den_p) / ((1.0 + y * grow_d) * den_p * den_p);
    };
    // Early times concentrate the mass at u = 1 - y -> 0, late times at y ~ lambda N e^-tau'.
    // Each half is integrated in the variable that stays accurate near its end.
    std::vector<double> upper = decade_breaks(16);
    upper.push_back(0.5);
    const double a_prime = lambda_n * std::exp(-tau_prime);
    const int deepest = std::clamp(static_cast<int>(std::ceil(-std::log10(a_prime))) + 4, 16, 300);
    std::vector<double> lower = decade_breaks(deepest);
    lower.push_back(0.5);
    const auto near_one = quad::integrate([&](double u) { return integrand(1.0 - u, u); },
                                          std::span<const double>(upper), kKernelTolerance);
    const auto near_zero = quad::integrate([&](double y) { return integrand(y, 1.0 - y); },
                                           std::span<const double>(lower), kKernelTolerance);
    const quad::Result r{near_one.value + near_zero.value, near_one.error + near_zero.error};
    return std::exp(0.5 * (3.0 * tau_prime - tau)) * r.value;
}

double kernel_large_n(double tau, double tau_prime, const AnalyticParams& params) {
    require_ordered(tau, tau_prime, "kernel_large_n");
    const double grow_d = std::expm1(tau_prime - tau);
    const double a_prime = params.lambda() * params.n() * std::exp(-tau_prime);
    auto integrand = [=](double y) {
        const double v = 1.0 - y;
        return v * std::exp(-a_prime * v / y) / (y * (1.0 + y * grow_d));
    };
    // Late times push the mass towards y ~ a'; early times towards y = 1.
    const int deepest = std::clamp(static_cast<int>(std::ceil(-std::log10(a_prime))) + 4, 16, 300);
    std::vector<double> breaks = decade_breaks(deepest);
    breaks.push_back(0.5);
    for (int k = 1; k <= 15; ++k) breaks.push_back(1.0 - std::pow(10.0, -k));
    breaks.push_back(1.0);
    const auto r = quad::integrate(integrand, std::span<const double>(breaks), kKernelTolerance);
    return std::exp(-0.5 * (tau + tau_prime)) * r.value;
}

double kernel_exp_integral(double tau, double tau_prime, const AnalyticParams& params) {
    require_ordered(tau, tau_prime, "kernel_exp_integral");
    if (tau == tau_prime) {
        throw DomainError("kernel_exp_integral is off-diagonal only; use intensity_exp_integral");
    }
    const double grow = std::expm1(tau_prime - tau);
    const double ratio = 1.0 + grow;
    const double lambda_n = params.lambda() * params.n();
    const double a = lambda_n * std::exp(-tau);
    const double a_prime = lambda_n * std::exp(-tau_prime);
    double numerator = 0.0;
    if (a_prime >= kAsymptoticArgument) {
        // ratio / a == 1 / a', so the leading 1/x terms cancel identically.
        numerator = ratio * e1_scaled_tail(a, 1) - e1_scaled_tail(a_prime, 1);
    } else {
        numerator = ratio * e1_scaled(a) - e1_scaled(a_prime);
    }
    return std::exp(-0.5 * (tau + tau_prime)) * numerator / grow;
}

double kernel_log_approx(double tau, double tau_prime, const AnalyticParams& params) {
    require_time(tau, "kernel_log_approx");
    require_time(tau_prime, "kernel_log_approx");
    if (tau == tau_prime) {
        throw DomainError("kernel_log_approx is off-diagonal only; use intensity_log_approx");
    }
    const double lo = std::min(tau, tau_prime);
    const double hi = std::max(tau, tau_prime);
    const double beta = params.beta();
    const double x = std::exp(lo);
    const double gap = x * std::expm1(hi - lo); // x' - x
    const double u = beta * x;
    const double u_prime = beta * std::exp(hi);
    return std::exp(0.5 * (lo + hi)) * beta * (log_ratio_minus_one(u) - log_ratio_minus_one(u_prime)) / gap;
}

double intensity_exp_integral(double tau, const AnalyticParams& params) {
    require_time(tau, "intensity_exp_integral");
    const double a = params.lambda() * params.n() * std::exp(-tau);
    double bracket = 0.0;
    if (a >= kAsymptoticArgument) {
        bracket = -1.0 / (a * a) + (1.0 + a) * e1_scaled_tail(a, 2);
    } else {
        bracket = (1.0 + a) * e1_scaled(a) - 1.0;
    }
    return std::exp(-tau) * bracket;
}

double intensity_log_approx(double tau, const AnalyticParams& params) {
    require_time(tau, "intensity_log_approx");
    const double beta = params.beta();
    return beta * log_intensity_shape(beta * std::exp(tau));
}

double mean_field_delay(const AnalyticParams& params) { return std::log(params.n()) / params.collective_rate(); }

double intensity_mean_field(double t, const AnalyticParams& params) {
    if (!(t >= 0.0)) {
        throw DomainError("intensity_mean_field requires t >= 0");
    }
    const double ng = params.collective_rate();
    const double c = std::cosh(0.5 * ng * (t - mean_field_delay(params)));
    return 0.25 * params.n() * ng / (c * c);
}

std::string_view to_string(KernelMethod method) {
    switch (method) {
    case KernelMethod::Characteristic: return "eq19";
    case KernelMethod::LargeN: return "eq20";
    case KernelMethod::ExpIntegral: return "eq22";
    case KernelMethod::LogApprox: return "eq23";
    }
    return "unknown";
}

std::string_view to_string(IntensityMethod method) {
    switch (method) {
    case IntensityMethod::ExpIntegral: return "eq24";
    case IntensityMethod::LogApprox: return "eq25";
    case IntensityMethod::MeanField: return "meanfield";
    }
    return "unknown";
}

double kernel_value(KernelMethod method, double tau, double tau_prime, const AnalyticParams& params) {
    const double lo = std::min(tau, tau_prime);
    const double hi = std::max(tau, tau_prime);
    switch (method) {
    case KernelMethod::Characteristic: return kernel_characteristic(lo, hi, params);
    case KernelMethod::LargeN: return kernel_large_n(lo, hi, params);
    case KernelMethod::ExpIntegral:
        return lo == hi ? intensity_exp_integral(lo, params) : kernel_exp_integral(lo, hi, params);
    case KernelMethod::LogApprox:
        return lo == hi ? intensity_log_approx(lo, params) : kernel_log_approx(lo, hi, params);
    }
    throw DomainError("unknown kernel method");
}

CorrelationKernel normalize_to_photons(const CorrelationKernel& kernel, double photons) {
    const double trace = kernel.weighted_trace();
    if (!(trace > 0.0) || !std::isfinite(trace)) {
        throw DegenerateInput("kernel diagonal integrates to zero; nothing to normalise");
    }
    CorrelationKernel out = kernel;
    out.values *= photons / trace;
    return out;
}

std::vector<double> normalize_to_photons(std::span<const double> intensity, const TimeGrid& grid, double photons) {
    const double total = grid.integrate(intensity);
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw DegenerateInput("intensity integrates to zero; nothing to normalise");
    }
    const double scale = photons / total;
    std::vector<double> out(intensity.begin(), intensity.end());
    for (double& v : out) v *= scale;
    return out;
}

CorrelationKernel sample_kernel(KernelMethod method, const TimeGrid& grid, const AnalyticParams& params) {
    const std::size_t size = grid.size();
    std::vector<double> tau(size);
    for (std::size_t k = 0; k < size; ++k) tau[k] = ScaledTime::from_time(grid[k], params).tau;

    const auto K = static_cast<Eigen::Index>(size);
    CorrelationKernel kernel{grid, Eigen::MatrixXd(K, K)};
    for (Eigen::Index i = 0; i < K; ++i) {
        for (Eigen::Index j = i; j < K; ++j) {
            const double v = kernel_value(method, tau[static_cast<std::size_t>(i)], tau[static_cast<std::size_t>(j)], params);
            kernel.values(i, j) = v;
            kernel.values(j, i) = v;
        }
    }
    return normalize_to_photons(kernel, params.n());
}

std::vector<double> sample_intensity(IntensityMethod method, const TimeGrid& grid, const AnalyticParams& params) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid.points()) {
        const double tau = ScaledTime::from_time(t, params).tau;
        switch (method) {
        case IntensityMethod::ExpIntegral: out.push_back(intensity_exp_integral(tau, params)); break;
        case IntensityMethod::LogApprox: out.push_back(intensity_log_approx(tau, params)); break;
        case IntensityMethod::MeanField: out.push_back(intensity_mean_field(t, params)); break;
        }
    }
    if (method == IntensityMethod::MeanField) {
        return out;
    }
    return normalize_to_photons(out, grid, params.n());
}

} // namespace dicke
