// rk4.hpp: classical fixed-step Runge-Kutta for the linear ladder systems.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dicke/error.hpp"

namespace dicke {

// Scratch buffers reused across calls so the inner loop does not allocate.
class Rk4Workspace {
public:
    explicit Rk4Workspace(std::size_t dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

    // Advances y by `duration` using ceil(duration / max_step) equal substeps.
    // Rhs is callable as rhs(const std::vector<double>& y, std::vector<double>& dydt).
    template <class Rhs>
    void advance(Rhs&& rhs, std::vector<double>& y, double duration, double max_step) {
        if (duration == 0.0) {
            return;
        }
        const double ratio = std::ceil(duration / max_step);
        if (!(ratio >= 1.0) || ratio > 1e9) {
            throw NumericalFailure("RK4 step count out of range (step-size underflow)");
        }
        const auto steps = static_cast<std::size_t>(ratio);
        const double h = duration / ratio;
        const double half = 0.5 * h;
        const double sixth = h / 6.0;
        const std::size_t n = y.size();
        for (std::size_t s = 0; s < steps; ++s) {
            rhs(y, k1_);
            for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + half * k1_[i];
            rhs(tmp_, k2_);
            for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + half * k2_[i];
            rhs(tmp_, k3_);
            for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * k3_[i];
            rhs(tmp_, k4_);
            for (std::size_t i = 0; i < n; ++i) {
                y[i] += sixth * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
            }
        }
        for (double v : y) {
            if (!std::isfinite(v)) {
                throw NumericalFailure("RK4 produced a non-finite state");
            }
        }
    }

private:
    std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

} // namespace dicke
