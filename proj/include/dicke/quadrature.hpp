// quadrature.hpp: globally adaptive 7/15-point Gauss-Kronrod integration.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

#include "dicke/error.hpp"

namespace dicke::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
};

struct Tolerance {
    double relative = 1e-10;
    double absolute = 0.0;
    int max_intervals = 4000;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gk15(F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[static_cast<std::size_t>(i)];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kKronrodWeights[static_cast<std::size_t>(i)] * pair;
        if (i % 2 == 1) gauss += kGaussWeights[static_cast<std::size_t>(i / 2)] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace detail

// Integrates f over consecutive breakpoints, bisecting the worst segment until
// the summed error estimate meets the tolerance.
template <class F>
Result integrate(F&& f, std::span<const double> breaks, const Tolerance& tol = {}) {
    if (breaks.size() < 2) {
        throw DomainError("quadrature needs at least two breakpoints");
    }
    std::priority_queue<detail::Segment> heap;
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) {
            throw DomainError("quadrature breakpoints must increase");
        }
        const auto s = detail::gk15(f, breaks[i], breaks[i + 1]);
        value += s.value;
        error += s.error;
        heap.push(s);
    }
    int intervals = static_cast<int>(heap.size());
    while (error > std::max(tol.absolute, tol.relative * std::abs(value))) {
        if (!std::isfinite(value) || !std::isfinite(error)) {
            throw NumericalFailure("quadrature produced a non-finite estimate");
        }
        if (intervals >= tol.max_intervals) {
            throw NumericalFailure("adaptive quadrature did not converge");
        }
        const detail::Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const auto left = detail::gk15(f, worst.a, mid);
        const auto right = detail::gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // Re-sum to shed the drift of the running updates.
    value = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error};
}

template <class F>
Result integrate(F&& f, double a, double b, const Tolerance& tol = {}) {
    const std::array<double, 2> breaks{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(breaks), tol);
}

} // namespace dicke::quad
