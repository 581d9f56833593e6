#include "iterfilt/resampler.hpp"

#include "iterfilt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iterfilt {

namespace {
constexpr double kClampLo = 1e-6;
constexpr double kClampHi = 0.5 - 1e-6;
} // namespace

LengthFunction::LengthFunction(std::vector<double> values, bool clamped)
    : values_(std::move(values)), clamped_(clamped) {
    if (values_.size() < 8)
        throw std::invalid_argument("LengthFunction: need at least 8 samples");
    for (double v : values_) {
        if (!std::isfinite(v) || !(v > 0.0) || !(v < 0.5))
            throw std::invalid_argument("LengthFunction: values must lie in (0, 1/2)");
    }
}

double LengthFunction::mean() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0) /
           static_cast<double>(values_.size());
}

LengthFunction length_from_freq(const std::vector<double>& freq, double xi) {
    if (!(xi > 0.0))
        throw std::invalid_argument("length_from_freq: xi must be positive");
    std::vector<double> ell(freq.size());
    bool clamped = false;
    for (std::size_t i = 0; i < freq.size(); ++i) {
        if (!(freq[i] > 0.0))
            throw std::invalid_argument("length_from_freq: frequencies must be positive");
        double v = xi / freq[i];
        if (v < kClampLo || v > kClampHi) {
            v = std::clamp(v, kClampLo, kClampHi);
            clamped = true;
        }
        ell[i] = v;
    }
    return LengthFunction(std::move(ell), clamped);
}

LengthFunction default_length_from_extrema(const Signal& s, double xi) {
    if (!(xi > 0.0))
        throw std::invalid_argument("default_length_from_extrema: xi must be positive");
    const std::vector<std::size_t> ext = extrema_indices(s);
    if (ext.size() < 2)
        throw TrendError("default_length_from_extrema: signal is a trend (fewer than 2 extrema)");

    const std::size_t n = s.size();
    const std::size_t k = ext.size();

    // One knot per extrema pair, at the midpoint, valued xi * half-period.
    std::vector<double> knot_pos(k), knot_val(k), gaps(k);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t a = ext[j];
        const std::size_t b = ext[(j + 1) % k];
        const std::size_t gap = (b + n - a) % n == 0 ? n : (b + n - a) % n;
        gaps[j] = static_cast<double>(gap);
        knot_pos[j] = std::fmod(static_cast<double>(a) + gaps[j] / 2.0, static_cast<double>(n));
        knot_val[j] = xi * gaps[j] / static_cast<double>(n);
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return knot_pos[a] < knot_pos[b]; });

    // Periodic piecewise-linear interpolation of the knots onto the grid,
    // with one ghost knot on each side for the wrap segments.
    std::vector<double> pos(k + 2), val(k + 2);
    for (std::size_t j = 0; j < k; ++j) {
        pos[j + 1] = knot_pos[order[j]];
        val[j + 1] = knot_val[order[j]];
    }
    pos[0] = pos[k] - static_cast<double>(n);
    val[0] = val[k];
    pos[k + 1] = pos[1] + static_cast<double>(n);
    val[k + 1] = val[1];

    std::vector<double> ell(n);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = static_cast<double>(i);
        while (seg + 2 < pos.size() && pos[seg + 1] <= x)
            ++seg;
        const double span = pos[seg + 1] - pos[seg];
        const double t = span > 0.0 ? (x - pos[seg]) / span : 0.0;
        ell[i] = val[seg] * (1.0 - t) + val[seg + 1] * t;
    }

    // One smoothing pass: centered moving average, width = median gap.
    std::vector<double> sorted_gaps = gaps;
    std::sort(sorted_gaps.begin(), sorted_gaps.end());
    auto width = static_cast<std::size_t>(sorted_gaps[k / 2]);
    if (width % 2 == 0)
        ++width;
    if (width > 1 && width < n) {
        const std::size_t half = width / 2;
        std::vector<double> smooth(n, 0.0);
        double acc = 0.0;
        for (std::size_t d = 0; d < width; ++d)
            acc += ell[(n - half + d) % n];
        for (std::size_t i = 0; i < n; ++i) {
            smooth[i] = acc / static_cast<double>(width);
            acc -= ell[(i + n - half) % n];
            acc += ell[(i + 1 + half) % n];
        }
        ell.swap(smooth);
    }

    bool clamped = false;
    for (double& v : ell) {
        if (v < kClampLo || v > kClampHi) {
            v = std::clamp(v, kClampLo, kClampHi);
            clamped = true;
        }
    }
    return LengthFunction(std::move(ell), clamped);
}

ResamplingMap::ResamplingMap(std::vector<double> g_inv, MonotoneCubic to_x, MonotoneCubic to_y)
    : g_inv_(std::move(g_inv)), to_x_(std::move(to_x)), to_y_(std::move(to_y)),
      m_total_(g_inv_.back()), n_(g_inv_.size() - 1) {}

ResamplingMap compute_resampling(const LengthFunction& ell) {
    const std::size_t n = ell.size();
    std::vector<double> g_inv(n + 1);
    g_inv[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double inv_a = 1.0 / ell[i];
        const double inv_b = 1.0 / ell[(i + 1) % n]; // node n wraps to l(x_0)
        g_inv[i + 1] = g_inv[i] + (inv_a + inv_b) / (2.0 * static_cast<double>(n));
    }
    if (!(g_inv[n] > 2.0))
        throw TrendError("compute_resampling: signal is already a trend at this scale");

    std::vector<double> grid(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        grid[i] = static_cast<double>(i) / static_cast<double>(n);
    MonotoneCubic to_x(g_inv, grid);            // y -> x
    MonotoneCubic to_y(std::move(grid), g_inv); // x -> y
    return ResamplingMap(std::move(g_inv), std::move(to_x), std::move(to_y));
}

Signal resample(const Signal& s, const ResamplingMap& map) {
    if (s.size() != map.n())
        throw std::invalid_argument("resample: signal/map size mismatch");
    const std::size_t n = s.size();
    const PeriodicCubicSpline spline(s.values(), 1.0);
    const double m = map.m_total();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = m * static_cast<double>(i) / static_cast<double>(n);
        out[i] = spline(map.g(y)); // spline wraps its argument into [0,1)
    }
    return Signal(std::move(out));
}

Signal inverse_resample(const Signal& h, const ResamplingMap& map) {
    if (h.size() != map.n())
        throw std::invalid_argument("inverse_resample: signal/map size mismatch");
    const std::size_t n = h.size();
    const PeriodicCubicSpline spline(h.values(), map.m_total());
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = spline(map.g_inv_node(i));
    return Signal(std::move(out));
}

} // namespace iterfilt
