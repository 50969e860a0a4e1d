// time_grid.hpp: sampling grid with trapezoid weights.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dicke {

class TimeGrid {
public:
    // K uniform points on [0, t_end].
    static TimeGrid uniform(double t_end, std::size_t points);
    // Arbitrary strictly increasing points; at least two.
    static TimeGrid from_points(std::vector<double> points);

    std::span<const double> points() const { return points_; }
    std::span<const double> weights() const { return weights_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }

    // Sum_k w_k f_k.
    double integrate(std::span<const double> samples) const;

    bool operator==(const TimeGrid&) const = default;

private:
    explicit TimeGrid(std::vector<double> points);

    std::vector<double> points_;
    std::vector<double> weights_;
};

} // namespace dicke
