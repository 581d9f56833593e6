#include "iterfilt/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace iterfilt {

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform double in (0,1) from the top 53 bits of the generator output;
// avoids the implementation-defined std::normal_distribution stream.
double uniform01(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
}

} // namespace

ExampleSignals generate_example(int id, std::size_t n) {
    if (n < 8)
        throw std::invalid_argument("generate_example: n must be >= 8");

    std::vector<double> c1(n), c2(n), trend(n), sum(n), a1(n), a2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        if (id == 1) {
            c1[i] = std::cos(20.0 * std::exp(kPi * t) + 120.0 * kPi * t);
            c2[i] = std::cos(20.0 * std::exp(kPi * t) + 20.0 * kPi * t);
            trend[i] = -10.0 * t + 20.0;
            a1[i] = 10.0 * std::exp(kPi * t) + 60.0;
            a2[i] = 10.0 * std::exp(kPi * t) + 10.0;
        } else if (id == 2) {
            const double warp = 20.0 * std::cos(4.0 * kPi * t);
            c1[i] = std::cos(warp - 160.0 * kPi * t);
            c2[i] = std::cos(warp - 280.0 * kPi * t);
            trend[i] = std::cos(2.0 * kPi * t);
            const double s = -40.0 * std::sin(4.0 * kPi * t);
            a1[i] = std::abs(s - 80.0);
            a2[i] = std::abs(s - 140.0);
        } else {
            throw std::invalid_argument("generate_example: unknown example id");
        }
        sum[i] = c1[i] + c2[i] + trend[i];
    }

    ExampleSignals out{Signal(std::move(sum)), {}, {}};
    out.components.emplace_back(std::move(c1));
    out.components.emplace_back(std::move(c2));
    out.components.emplace_back(std::move(trend));
    out.freq_curves.push_back(std::move(a1));
    out.freq_curves.push_back(std::move(a2));
    return out;
}

Signal add_noise(const Signal& s, double snr_db, std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0.0)
        return s;
    const double signal_energy = norm2(s) * norm2(s);
    if (signal_energy == 0.0)
        throw std::invalid_argument("add_noise: signal must be nonzero");

    const std::size_t n = s.size();
    std::mt19937_64 rng(seed);
    std::vector<double> eps(n);
    for (std::size_t i = 0; i < n; i += 2) {
        const double u1 = uniform01(rng);
        const double u2 = uniform01(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        eps[i] = r * std::cos(2.0 * kPi * u2);
        if (i + 1 < n)
            eps[i + 1] = r * std::sin(2.0 * kPi * u2);
    }

    double noise_energy = 0.0;
    for (double e : eps)
        noise_energy += e * e;
    // Scale the realized noise vector so the SNR identity holds exactly.
    const double target = signal_energy * std::pow(10.0, -snr_db / 10.0);
    const double scale = std::sqrt(target / noise_energy);

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = s[i] + scale * eps[i];
    return Signal(std::move(out));
}

} // namespace iterfilt
