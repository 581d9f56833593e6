#include "iterfilt/signal.hpp"

#include <cmath>
#include <stdexcept>

namespace iterfilt {

Signal::Signal(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 8)
        throw std::invalid_argument("Signal: need at least 8 samples");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("Signal: samples must be finite");
}

double Signal::at_periodic(std::ptrdiff_t i) const noexcept {
    const auto n = static_cast<std::ptrdiff_t>(values_.size());
    std::ptrdiff_t r = i % n;
    if (r < 0)
        r += n;
    return values_[static_cast<std::size_t>(r)];
}

void StoppingConfig::validate() const {
    if (!(delta > 0.0))
        throw std::invalid_argument("StoppingConfig: delta must be positive");
    if (max_iter < 1)
        throw std::invalid_argument("StoppingConfig: max_iter must be >= 1");
}

std::vector<std::size_t> extrema_indices(const Signal& s) {
    const std::size_t n = s.size();
    const auto& v = s.values();

    // Start scanning at a sample that differs from its predecessor, so
    // every plateau lies inside one sweep of the circular walk.
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] != v[(i + n - 1) % n]) {
            start = i;
            break;
        }
    }
    if (start == n)
        return {}; // constant signal

    std::vector<std::size_t> out;
    std::size_t pos = start;
    std::size_t walked = 0;
    while (walked < n) {
        // Maximal plateau [pos, pos+len) of equal values.
        std::size_t len = 1;
        while (len < n && v[(pos + len) % n] == v[pos])
            ++len;
        const double left = v[(pos + n - 1) % n];
        const double right = v[(pos + len) % n];
        const double val = v[pos];
        const bool is_max = val > left && val > right;
        const bool is_min = val < left && val < right;
        if (is_max || is_min)
            out.push_back((pos + len / 2) % n);
        pos = (pos + len) % n;
        walked += len;
    }
    return out;
}

int count_extrema(const Signal& s) {
    return static_cast<int>(extrema_indices(s).size());
}

double norm2(const Signal& s) {
    double acc = 0.0;
    for (double v : s.values())
        acc += v * v;
    return std::sqrt(acc);
}

Signal subtract(const Signal& a, const Signal& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("subtract: length mismatch");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return Signal(std::move(out));
}

double stopping_value(const Signal& g_next, const Signal& g_cur) {
    if (g_next.size() != g_cur.size())
        throw std::invalid_argument("stopping_value: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g_cur.size(); ++i) {
        const double d = g_next[i] - g_cur[i];
        num += d * d;
        den += g_cur[i] * g_cur[i];
    }
    if (den == 0.0)
        return 0.0; // zero iterate: already a fixed point
    return std::sqrt(num / den);
}

double relative_error(const Signal& estimate, const Signal& truth) {
    if (estimate.size() != truth.size())
        throw std::invalid_argument("relative_error: length mismatch");
    const double den = norm2(truth);
    if (den == 0.0)
        throw std::invalid_argument("relative_error: zero ground truth");
    double num = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = estimate[i] - truth[i];
        num += d * d;
    }
    return std::sqrt(num) / den;
}

} // namespace iterfilt
