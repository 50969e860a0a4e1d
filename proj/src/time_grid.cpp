#include "dicke/time_grid.hpp"

#include <cmath>
#include <string>

#include "dicke/error.hpp"

namespace dicke {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw DomainError("TimeGrid needs at least two points");
    }
    for (std::size_t k = 0; k < points_.size(); ++k) {
        if (!std::isfinite(points_[k])) {
            throw DomainError("TimeGrid point " + std::to_string(k) + " is not finite");
        }
        if (k > 0 && !(points_[k] > points_[k - 1])) {
            throw DomainError("TimeGrid points must be strictly increasing");
        }
    }
    weights_.assign(points_.size(), 0.0);
    for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
        const double half = 0.5 * (points_[k + 1] - points_[k]);
        weights_[k] += half;
        weights_[k + 1] += half;
    }
}

TimeGrid TimeGrid::uniform(double t_end, std::size_t points) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw DomainError("TimeGrid::uniform needs a finite t_end > 0");
    }
    if (points < 2) {
        throw DomainError("TimeGrid::uniform needs at least two points");
    }
    std::vector<double> t(points);
    const auto last = static_cast<double>(points - 1);
    for (std::size_t k = 0; k + 1 < points; ++k) {
        t[k] = t_end * static_cast<double>(k) / last;
    }
    t.back() = t_end;
    return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::from_points(std::vector<double> points) { return TimeGrid(std::move(points)); }

double TimeGrid::integrate(std::span<const double> samples) const {
    if (samples.size() != points_.size()) {
        throw DomainError("sample count does not match the grid");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        sum += weights_[k] * samples[k];
    }
    return sum;
}

} // namespace dicke
