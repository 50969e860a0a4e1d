// analytic.hpp: continuous-m model of the superradiant cascade.
//
// Treating m as continuous turns the ladder into a first-order transport
// equation solved along characteristics T(m) + N t = const, with
// T(m) = ln(m / (N - m)) / Gamma. From the initial profile
// pi(0, m) = exp(-lambda (N - m)) this yields closed-form (unnormalised)
// correlation kernels in the rescaled time tau = N Gamma t. Every kernel here
// is symmetric and positive; constant prefactors are dropped and fixed later
// by normalise_to_photons.
//
// Whenever an exponential integral appears it is evaluated through the scaled
// e^x E1(x) (or its asymptotic tail) so that no e^(lambda N) factor is formed.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dicke/regression.hpp"
#include "dicke/time_grid.hpp"

namespace dicke {

inline constexpr double kDefaultLambda = 0.96;

class AnalyticParams {
public:
    explicit AnalyticParams(std::int64_t n_emitters, double gamma = 1.0, double lambda = kDefaultLambda);

    std::int64_t n_emitters() const { return n_; }
    double n() const { return static_cast<double>(n_); }
    double gamma() const { return gamma_; }
    double lambda() const { return lambda_; }
    // 2 / (lambda N)
    double beta() const { return beta_; }
    // N Gamma: converts t to tau.
    double collective_rate() const { return n() * gamma_; }

private:
    std::int64_t n_;
    double gamma_;
    double lambda_;
    double beta_;
};

// tau = N Gamma t, x = e^tau, z = beta x.
struct ScaledTime {
    double tau = 0.0;

    static ScaledTime from_time(double t, const AnalyticParams& params);
    double x() const;
    double z(const AnalyticParams& params) const;
};

// Characteristic coordinate T(m) = ln(m / (N - m)) / Gamma on 0 < m < N, and its inverse.
double tee_of_m(double m, const AnalyticParams& params);
double m_of_tee(double tee, const AnalyticParams& params);

// Solves T(m') = T(m) + tau / Gamma: m' = N m e^tau / (N + m (e^tau - 1)).
double shift_m(double m, double tau, const AnalyticParams& params);

// pi(t, m) = [Gamma(m') / Gamma(m)] exp(-lambda (N - m')), Gamma(m) = Gamma m (N - m).
double population_analytic(double tau, double m, const AnalyticParams& params);

// Trace over m of the characteristic solution, as an integral over y = m / N.
// Requires 0 <= tau <= tau_prime.
double kernel_characteristic(double tau, double tau_prime, const AnalyticParams& params);

// Large-N reduction of kernel_characteristic, still by quadrature. tau <= tau_prime.
double kernel_large_n(double tau, double tau_prime, const AnalyticParams& params);

// Closed form of kernel_large_n in exponential integrals, tau < tau_prime:
//   e^-(tau+tau')/2 / (e^(tau'-tau) - 1) [e^(tau'-tau) S(a) - S(a')],
// S = e^x E1(x), a = lambda N e^-tau, a' = lambda N e^-tau'.
double kernel_exp_integral(double tau, double tau_prime, const AnalyticParams& params);

// kernel_exp_integral with S(x) replaced by ln(1 + 2/x) / 2:
//   sqrt(x x') (s(x) - s(x')) / (x' - x),  s(x) = ln(1 + beta x) / x.
// Requires tau != tau_prime.
double kernel_log_approx(double tau, double tau_prime, const AnalyticParams& params);

// Diagonal limit of kernel_exp_integral: e^-tau [(1 + a) S(a) - 1].
double intensity_exp_integral(double tau, const AnalyticParams& params);

// Diagonal limit of kernel_log_approx: ln(1 + beta e^tau) / e^tau - beta / (1 + beta e^tau).
double intensity_log_approx(double tau, const AnalyticParams& params);

// (N^2 Gamma / 4) sech^2(N Gamma (t - t_D) / 2), t_D = ln N / (N Gamma). Physical time t.
double intensity_mean_field(double t, const AnalyticParams& params);

// ln N / (N Gamma)
double mean_field_delay(const AnalyticParams& params);

enum class KernelMethod { Characteristic, LargeN, ExpIntegral, LogApprox };
enum class IntensityMethod { ExpIntegral, LogApprox, MeanField };

std::string_view to_string(KernelMethod method);
std::string_view to_string(IntensityMethod method);

// Kernel value at (tau, tau') for any ordering, using the diagonal limit where needed.
double kernel_value(KernelMethod method, double tau, double tau_prime, const AnalyticParams& params);

// Scales a copy so the quadrature of the diagonal (or of the samples) equals `photons`.
CorrelationKernel normalize_to_photons(const CorrelationKernel& kernel, double photons);
std::vector<double> normalize_to_photons(std::span<const double> intensity, const TimeGrid& grid, double photons);

// Fills a kernel on a physical-time grid, normalised to N photons.
CorrelationKernel sample_kernel(KernelMethod method, const TimeGrid& grid, const AnalyticParams& params);

// Intensity on a physical-time grid. The closed forms are normalised to N photons;
// the mean-field pulse keeps its own full-line normalisation.
std::vector<double> sample_intensity(IntensityMethod method, const TimeGrid& grid, const AnalyticParams& params);

} // namespace dicke
