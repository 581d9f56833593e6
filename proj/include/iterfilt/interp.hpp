#pragma once

#include <cstddef>
#include <vector>

namespace iterfilt {

/// Natural-periodic cubic spline on a uniform grid: nodes at i*period/n for
/// i = 0..n-1, with value, first and second derivative continuous across
/// the period seam. Evaluation wraps the argument into [0, period).
class PeriodicCubicSpline {
public:
    PeriodicCubicSpline(const std::vector<double>& values, double period);

    double operator()(double x) const;

private:
    std::vector<double> y_;
    std::vector<double> second_; // second derivatives at the nodes
    double period_;
    double h_;
};

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes)
/// on strictly increasing nodes. Monotone data yields a monotone
/// interpolant; evaluation clamps to the node range.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double xq) const;

private:
    std::vector<double> x_, y_, slope_;
};

} // namespace iterfilt
