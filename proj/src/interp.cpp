#include "iterfilt/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iterfilt {

namespace {

// Cyclic tridiagonal solve (Sherman-Morrison on top of the Thomas
// algorithm) for a system with constant diagonals [c, d, c] and cyclic
// corner entries c.
std::vector<double> solve_cyclic_constant(double d, double c, std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    // Rank-one correction: A = T + u v^T with u = gamma e_0 + c/gamma e_{n-1},
    // v = e_0 + ... (standard trick); T is strictly tridiagonal.
    const double gamma = -d;
    auto solve_tri = [&](std::vector<double> b, double d0, double dn) {
        std::vector<double> cp(n), x(n);
        double diag = d0;
        cp[0] = c / diag;
        b[0] /= diag;
        for (std::size_t i = 1; i < n; ++i) {
            diag = (i == n - 1 ? dn : d) - c * cp[i - 1];
            cp[i] = c / diag;
            b[i] = (b[i] - c * b[i - 1]) / diag;
        }
        x[n - 1] = b[n - 1];
        for (std::size_t i = n - 1; i-- > 0;)
            x[i] = b[i] - cp[i] * x[i + 1];
        return x;
    };

    const double d0 = d - gamma;
    const double dn = d - c * c / gamma;
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = c;
    const std::vector<double> y = solve_tri(std::move(rhs), d0, dn);
    const std::vector<double> z = solve_tri(std::move(u), d0, dn);
    const double factor = (y[0] + y[n - 1] * c / gamma) / (1.0 + z[0] + z[n - 1] * c / gamma);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = y[i] - factor * z[i];
    return x;
}

} // namespace

PeriodicCubicSpline::PeriodicCubicSpline(const std::vector<double>& values, double period)
    : y_(values), period_(period) {
    const std::size_t n = y_.size();
    if (n < 3)
        throw std::invalid_argument("PeriodicCubicSpline: need at least 3 nodes");
    if (!(period > 0.0))
        throw std::invalid_argument("PeriodicCubicSpline: period must be positive");
    h_ = period_ / static_cast<double>(n);

    // Continuity of S' at the nodes: h/6 (m_{i-1} + 4 m_i + m_{i+1}) =
    // (y_{i+1} - 2 y_i + y_{i-1}) / h, cyclically.
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ym = y_[(i + n - 1) % n];
        const double yp = y_[(i + 1) % n];
        rhs[i] = 6.0 * (yp - 2.0 * y_[i] + ym) / (h_ * h_);
    }
    second_ = solve_cyclic_constant(4.0, 1.0, std::move(rhs));
}

double PeriodicCubicSpline::operator()(double x) const {
    const std::size_t n = y_.size();
    double u = std::fmod(x, period_);
    if (u < 0.0)
        u += period_;
    auto i = static_cast<std::size_t>(u / h_);
    if (i >= n)
        i = n - 1;
    const double t = u - static_cast<double>(i) * h_;
    const std::size_t ip = (i + 1) % n;
    const double mi = second_[i], mp = second_[ip];
    const double b = (y_[ip] - y_[i]) / h_ - h_ * (2.0 * mi + mp) / 6.0;
    return y_[i] + t * (b + t * (mi / 2.0 + t * (mp - mi) / (6.0 * h_)));
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("MonotoneCubic: need >= 2 matching nodes");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("MonotoneCubic: nodes must be strictly increasing");

    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }

    slope_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            // Weighted harmonic mean of the adjacent secants.
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto edge_slope = [](double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m * d0 <= 0.0)
            m = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(m) > 3.0 * std::abs(d0))
            m = 3.0 * d0;
        return m;
    };
    if (n == 2) {
        slope_[0] = slope_[1] = delta[0];
    } else {
        slope_[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
        slope_[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
}

double MonotoneCubic::operator()(double xq) const {
    if (xq <= x_.front())
        return y_.front();
    if (xq >= x_.back())
        return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (xq - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

} // namespace iterfilt
