#include "iterfilt/filter_bank.hpp"

#include "iterfilt/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace iterfilt {

namespace {
constexpr double kPi = std::numbers::pi;
}

double FilterKernel::operator()(double z) const {
    const double a = std::abs(z);
    if (a > half_support_)
        return 0.0;
    switch (kind_) {
    case Kind::triangular:
        return 1.0 - a;
    case Kind::uniform:
        return 1.0;
    case Kind::cosine_window:
        return (kPi / 4.0) * std::cos(kPi * z / 2.0);
    default:
        break;
    }
    // Tabulated: linear interpolation on the uniform grid over [-hs, hs].
    const auto& tab = *table_;
    const double pos = (z + half_support_) / (2.0 * half_support_) * static_cast<double>(tab.size() - 1);
    const auto cell = static_cast<std::size_t>(std::min(pos, static_cast<double>(tab.size() - 2)));
    const double t = pos - static_cast<double>(cell);
    return tab[cell] * (1.0 - t) + tab[cell + 1] * t;
}

FilterKernel FilterKernel::triangular() { return FilterKernel(Kind::triangular, 1.0); }
FilterKernel FilterKernel::uniform() { return FilterKernel(Kind::uniform, 0.5); }
FilterKernel FilterKernel::cosine_window() { return FilterKernel(Kind::cosine_window, 1.0); }

FilterKernel FilterKernel::tabulated(std::vector<double> table, double half_support, Kind kind) {
    if (table.size() < 3)
        throw std::invalid_argument("FilterKernel::tabulated: table too small");
    if (!(half_support > 0.0))
        throw std::invalid_argument("FilterKernel::tabulated: half_support must be positive");
    FilterKernel k(kind, half_support);
    k.table_ = std::make_shared<const std::vector<double>>(std::move(table));
    return k;
}

FilterKernel self_convolve(const FilterKernel& omega, int resolution) {
    if (resolution < 256)
        throw std::invalid_argument("self_convolve: resolution must be >= 256");
    if (resolution % 2 != 0)
        ++resolution;

    const double hs = omega.half_support();
    const int refine = 32; // inner quadrature grid per table cell
    const int ni = resolution / 2 * refine; // subintervals of [-hs, hs]
    const double h_in = 2.0 * hs / static_cast<double>(ni);

    std::vector<double> samples(static_cast<std::size_t>(ni) + 1);
    for (int m = 0; m <= ni; ++m)
        samples[static_cast<std::size_t>(m)] = omega(-hs + h_in * m);

    // k(z_j) for z_j = j * (4 hs / resolution) >= 0; the overlap window in t
    // is [z_j - hs, hs], whose endpoints land on the inner grid, so the
    // trapezoid rule sees the integrand's kinks only at nodes.
    std::vector<double> table(static_cast<std::size_t>(resolution) + 1, 0.0);
    const int center = resolution / 2;
    for (int j = 0; j <= center; ++j) {
        const int p = j * refine; // z_j / h_in; overlap window is [z_j - hs, hs]
        double acc = 0.0;
        if (p < ni) {
            for (int m = p; m <= ni; ++m) {
                const int q = p + ni - m;
                double term =
                    samples[static_cast<std::size_t>(m)] * samples[static_cast<std::size_t>(q)];
                if (m == p || m == ni)
                    term *= 0.5;
                acc += term;
            }
        }
        const double val = acc * h_in;
        table[static_cast<std::size_t>(center + j)] = val;
        table[static_cast<std::size_t>(center - j)] = val;
    }
    return FilterKernel::tabulated(std::move(table), 2.0 * hs);
}

FilterKernel make_filter(FilterKernel::Kind kind) {
    switch (kind) {
    case FilterKernel::Kind::triangular:
        return FilterKernel::triangular();
    case FilterKernel::Kind::double_convolved_cosine: {
        const FilterKernel raw = self_convolve(FilterKernel::cosine_window(), 4096);
        // Rescale support [-2,2] -> [-1,1]: k(z) = 2 * raw(2z), then divide
        // by the table's own trapezoid mass so the sampled kernel carries
        // exact unit mass.
        const int res = 4096;
        std::vector<double> table(static_cast<std::size_t>(res) + 1);
        for (int j = 0; j <= res; ++j) {
            const double z = -1.0 + 2.0 * static_cast<double>(j) / res;
            table[static_cast<std::size_t>(j)] = 2.0 * raw(2.0 * z);
        }
        const double h = 2.0 / res;
        double mass = 0.0;
        for (int j = 0; j <= res; ++j) {
            double w = (j == 0 || j == res) ? 0.5 : 1.0;
            mass += w * table[static_cast<std::size_t>(j)];
        }
        mass *= h;
        for (double& v : table)
            v /= mass;
        return FilterKernel::tabulated(std::move(table), 1.0,
                                       FilterKernel::Kind::double_convolved_cosine);
    }
    default:
        throw std::invalid_argument("make_filter: unsupported kernel kind");
    }
}

CirculantRow circulant_row(const FilterKernel& k, std::size_t n, double inv_length) {
    if (n < 8)
        throw std::invalid_argument("circulant_row: n must be >= 8");
    if (!(inv_length > 0.0))
        throw std::invalid_argument("circulant_row: inv_length must be positive");

    const double step = inv_length / static_cast<double>(n);
    const auto support_index = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * k.half_support() / inv_length));
    if (support_index >= n / 2)
        throw ConfigError("circulant_row: filter too wide for signal length");

    std::vector<double> entries(n, 0.0);
    for (std::size_t j = 0; j <= n / 2; ++j) {
        const double arg = static_cast<double>(j) * step;
        if (arg > k.half_support())
            continue;
        const double v = step * k(arg);
        entries[j] = v;
        if (j > 0)
            entries[n - j] = v;
    }

    double sum = 0.0;
    for (double v : entries)
        sum += v;
    if (!(sum > 0.0))
        throw ConfigError("circulant_row: filter support narrower than grid step");
    for (double& v : entries)
        v /= sum;
    return CirculantRow{std::move(entries), 1.0 / sum};
}

std::vector<double> spectral_symbol(const CirculantRow& row) {
    const std::size_t n = row.entries.size();
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> freq(n);
    fft.fwd(freq, row.entries);

    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(freq[j].imag()) > 1e-10)
            throw InternalError("spectral_symbol: Hermitian symmetry violated");
        out[j] = freq[j].real();
    }
    return out;
}

} // namespace iterfilt
