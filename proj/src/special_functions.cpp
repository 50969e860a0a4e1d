#include "dicke/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dicke/error.hpp"

namespace dicke {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 10000;
// Above this the optimally truncated asymptotic series is accurate to better than 1e-13.
constexpr double kAsymptoticThreshold = 40.0;
constexpr double kTruncationTolerance = 1e-12;

void require_positive(double x, const char* name) {
    if (!(x > 0.0) || std::isnan(x)) {
        throw DomainError(std::string(name) + " requires x > 0");
    }
}

// -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
double e1_series(double x) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < kMaxIterations; ++k) {
        term *= -x / k;
        const double contribution = term / k;
        sum += contribution;
        if (std::abs(contribution) < 0.25 * kEps * std::abs(sum)) {
            return -std::numbers::egamma - std::log(x) - sum;
        }
    }
    throw NumericalFailure("E1 series did not converge");
}

// Modified Lentz evaluation of e^x E1(x) = 1/(x+1-) 1/(x+3-) 4/(x+5-) ...
double e1_scaled_fraction(double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            return h;
        }
    }
    throw NumericalFailure("E1 continued fraction did not converge");
}

} // namespace

double e1(double x) {
    require_positive(x, "e1");
    if (x <= 1.0) {
        return e1_series(x);
    }
    return std::exp(-x) * e1_scaled_fraction(x);
}

double e1_scaled(double x) {
    require_positive(x, "e1_scaled");
    if (x <= 1.0) {
        return std::exp(x) * e1_series(x);
    }
    if (x < kAsymptoticThreshold) {
        return e1_scaled_fraction(x);
    }
    // 1/(x+1) plus a positive remainder ~ 1/x^3, so rounding never crosses either bracket 1/(x+1) or 1/x
    const double lower = 1.0 / (x + 1.0);
    const double remainder = e1_scaled_tail(x, 2) - lower / (x * x);
    return lower + remainder;
}

double e1_scaled_tail(double x, int terms) {
    require_positive(x, "e1_scaled_tail");
    if (terms < 0 || terms > 2) {
        throw DomainError("e1_scaled_tail supports 0, 1 or 2 subtracted terms");
    }
    if (x < kAsymptoticThreshold) {
        const double inv = 1.0 / x;
        double value = e1_scaled(x);
        if (terms >= 1) value -= inv;
        if (terms >= 2) value += inv * inv;
        return value;
    }
    // sum_{k>=terms} (-1)^k k! / x^(k+1). Stops at eps or, failing that, at the smallest term,
    // whose size bounds the error of the optimally truncated series.
    const double inv = 1.0 / x;
    double term = inv; // k = 0
    for (int k = 1; k <= terms; ++k) term *= -k * inv;
    double sum = 0.0;
    for (int k = terms; k < kMaxIterations; ++k) {
        sum += term;
        const double next = term * (-(k + 1) * inv);
        if (std::abs(next) < 0.25 * kEps * std::abs(sum)) {
            return sum;
        }
        if (std::abs(next) >= std::abs(term)) {
            if (std::abs(next) <= kTruncationTolerance * std::abs(sum)) return sum;
            break;
        }
        term = next;
    }
    throw NumericalFailure("E1 asymptotic series did not converge");
}

double ei_neg_approx(double x) {
    require_positive(x, "ei_neg_approx");
    return -0.5 * std::exp(-x) * std::log1p(2.0 / x);
}

} // namespace dicke
