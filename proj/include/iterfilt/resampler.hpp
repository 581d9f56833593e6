#pragma once

#include "iterfilt/interp.hpp"
#include "iterfilt/signal.hpp"

#include <cstddef>
#include <vector>

namespace iterfilt {

/// Sampled positive smoothing-scale function l(x_i), x_i = i/n, with
/// 0 < l < 1/2. `clamped` records whether construction had to clamp values
/// into the admissible open interval.
class LengthFunction {
public:
    explicit LengthFunction(std::vector<double> values, bool clamped = false);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    const std::vector<double>& values() const noexcept { return values_; }
    bool clamped() const noexcept { return clamped_; }

    double mean() const noexcept;

private:
    std::vector<double> values_;
    bool clamped_;
};

/// Tabulated time warp derived from a length function: g_inv holds the
/// cumulative integral of 1/l on the grid (n+1 nodes, g_inv[0] = 0) and
/// m_total = g_inv[n] > 2 is the warped period. Both warp directions are
/// realized by monotone piecewise-cubic interpolation of the tabulation.
class ResamplingMap {
public:
    std::size_t n() const noexcept { return n_; }
    double m_total() const noexcept { return m_total_; }

    /// Warp coordinate -> signal coordinate, G : [0, M] -> [0, 1].
    double g(double y) const { return to_x_(y); }
    /// Signal coordinate -> warp coordinate, G^{-1} : [0, 1] -> [0, M].
    double g_inv(double x) const { return to_y_(x); }
    /// Exact tabulated G^{-1}(i/n), i in [0, n].
    double g_inv_node(std::size_t i) const { return g_inv_[i]; }

    friend ResamplingMap compute_resampling(const LengthFunction& ell);

private:
    ResamplingMap(std::vector<double> g_inv, MonotoneCubic to_x, MonotoneCubic to_y);

    std::vector<double> g_inv_;
    MonotoneCubic to_x_;
    MonotoneCubic to_y_;
    double m_total_;
    std::size_t n_;
};

/// l(x_i) = xi / freq[i], clamped into (1e-6, 1/2 - 1e-6). The clamped
/// flag is set on the result when clamping occurred.
LengthFunction length_from_freq(const std::vector<double>& freq, double xi);

/// Length from the relative positions of the strict extrema of s: the local
/// half-period between consecutive extrema, times xi, piecewise-linearly
/// interpolated between extremum midpoints, smoothed by one centered moving
/// average of width equal to the median extremum gap, then clamped.
/// Throws TrendError when s has fewer than 2 strict extrema.
LengthFunction default_length_from_extrema(const Signal& s, double xi);

/// Integrates 1/l with the composite trapezoid rule on the periodic grid
/// (node n reuses l(x_0)). Throws TrendError when the warped period M is
/// not greater than 2.
ResamplingMap compute_resampling(const LengthFunction& ell);

/// h[i] = S(G(M i/n)) where S is the periodic cubic-spline interpolant
/// of s over [0, 1).
Signal resample(const Signal& s, const ResamplingMap& map);

/// out[i] = H(G^{-1}(i/n)) where H is the periodic cubic-spline
/// interpolant of h over [0, M).
Signal inverse_resample(const Signal& h, const ResamplingMap& map);

} // namespace iterfilt
