#include "iterfilt/errors.hpp"
#include "iterfilt/generators.hpp"
#include "iterfilt/resampler.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

using namespace iterfilt;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> grid_eval(std::size_t n, auto f) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = f(static_cast<double>(i) / static_cast<double>(n));
    return v;
}

} // namespace

TEST_CASE("LengthFunction invariants") {
    CHECK_THROWS_AS(LengthFunction(std::vector<double>(16, 0.6)), std::invalid_argument);
    CHECK_THROWS_AS(LengthFunction(std::vector<double>(16, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(LengthFunction(std::vector<double>(16, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(LengthFunction(std::vector<double>(16, -0.1)), std::invalid_argument);
    CHECK_NOTHROW(LengthFunction(std::vector<double>(16, 0.25)));
}

TEST_CASE("length_from_freq") {
    const LengthFunction a = length_from_freq(std::vector<double>(32, 10.0), 2.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK_FALSE(a.clamped());

    const LengthFunction b = length_from_freq(std::vector<double>(32, 2.0), 2.0);
    CHECK(b.clamped());
    for (std::size_t i = 0; i < b.size(); ++i)
        CHECK(b[i] == doctest::Approx(0.5 - 1e-6).epsilon(1e-12));

    const auto ex1 = generate_example(1, 64);
    const LengthFunction c = length_from_freq(ex1.freq_curves[0], 2.0);
    CHECK(c[0] == doctest::Approx(2.0 / 70.0).epsilon(1e-14));

    CHECK_THROWS_AS(length_from_freq(std::vector<double>(32, -1.0), 2.0), std::invalid_argument);
}

TEST_CASE("default_length_from_extrema on a pure tone") {
    const std::size_t n = 1000;
    const Signal s(grid_eval(n, [](double x) { return std::sin(2.0 * kPi * 10.0 * x); }));
    const LengthFunction ell = default_length_from_extrema(s, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(ell[i] >= 0.045);
        CHECK(ell[i] <= 0.055);
    }
    CHECK_THROWS_AS(default_length_from_extrema(Signal(std::vector<double>(64, 1.0)), 1.0),
                    TrendError);
}

TEST_CASE("default_length_from_extrema tracks a chirp") {
    const auto ex1 = generate_example(1, 4000);
    const LengthFunction ell = default_length_from_extrema(ex1.components[0], 1.0);
    double head = 0.0, tail = 0.0;
    const std::size_t q = ell.size() / 4;
    for (std::size_t i = 0; i < q; ++i) {
        head += ell[i];
        tail += ell[ell.size() - 1 - i];
    }
    CHECK(head > 1.5 * tail); // frequency rises, the length must fall
}

TEST_CASE("compute_resampling constant length") {
    const std::size_t n = 64;
    const LengthFunction ell(std::vector<double>(n, 0.2));
    const ResamplingMap map = compute_resampling(ell);
    CHECK(map.m_total() == doctest::Approx(5.0).epsilon(1e-12));
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) / n;
        CHECK(map.g_inv_node(i) == doctest::Approx(5.0 * x).epsilon(1e-10));
    }
    for (double y : {0.37, 1.93, 4.21})
        CHECK(map.g(y) == doctest::Approx(0.2 * y).epsilon(1e-10));
}

TEST_CASE("compute_resampling against a closed-form antiderivative") {
    // l(t) = 1/(4+2t): the cumulative integral of 1/l is 4x + x^2 and the
    // trapezoid rule is exact for the linear integrand at interior nodes.
    // (The very last interval straddles the periodic seam, where 1/l jumps
    // back to 1/l(0), so only the interior is compared against the formula.)
    const std::size_t n = 4096;
    const LengthFunction ell(
        grid_eval(n, [](double t) { return 1.0 / (4.0 + 2.0 * t); }));
    const ResamplingMap map = compute_resampling(ell);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / n;
        CHECK(map.g_inv_node(i) == doctest::Approx(4.0 * x + x * x).epsilon(1e-6));
    }
    CHECK(map.m_total() == doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("compute_resampling at the trend boundary") {
    // l < 1/2 pointwise forces M = int 1/l > 2, so a valid LengthFunction
    // always yields a usable map, even grazing the boundary.
    const ResamplingMap map =
        compute_resampling(LengthFunction(std::vector<double>(64, 0.4999999)));
    CHECK(map.m_total() > 2.0);
    CHECK(map.m_total() == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("resample identity warp hits the grid exactly") {
    const std::size_t n = 256;
    const Signal s(grid_eval(n, [](double x) { return std::sin(2.0 * kPi * x) + 0.2; }));
    const LengthFunction ell(std::vector<double>(n, 0.25)); // M = 4
    const ResamplingMap map = compute_resampling(ell);
    const Signal h = resample(s, map);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(h[i] == doctest::Approx(s[i]).epsilon(1e-12));
    const Signal back = inverse_resample(h, map);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(back[i] == doctest::Approx(s[i]).epsilon(1e-12));
}

TEST_CASE("resample preserves constants") {
    const std::size_t n = 128;
    const LengthFunction ell(
        grid_eval(n, [](double t) { return 0.2 + 0.05 * std::sin(2.0 * kPi * t); }));
    const ResamplingMap map = compute_resampling(ell);
    const Signal c(std::vector<double>(n, 2.75));
    const Signal h = resample(c, map);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(h[i] == doctest::Approx(2.75).epsilon(1e-13));
    const Signal back = inverse_resample(h, map);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(back[i] == doctest::Approx(2.75).epsilon(1e-13));
}

TEST_CASE("warp round trip on a smooth band-limited signal") {
    const std::size_t n = 4096;
    const Signal s(grid_eval(n, [](double x) {
        return std::sin(2.0 * kPi * x) + 0.3 * std::cos(4.0 * kPi * x);
    }));
    const LengthFunction ell(
        grid_eval(n, [](double t) { return 0.2 + 0.05 * std::sin(2.0 * kPi * t); }));
    const ResamplingMap map = compute_resampling(ell);
    const Signal round_trip = inverse_resample(resample(s, map), map);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(round_trip[i] - s[i]));
    CHECK(worst <= 1e-6);
}

TEST_CASE("warp consistency") {
    const std::size_t n = 4096;
    const LengthFunction ell(
        grid_eval(n, [](double t) { return 0.1 + 0.04 * std::cos(2.0 * kPi * t); }));
    const ResamplingMap map = compute_resampling(ell);

    for (std::size_t i = 1; i < n; ++i)
        CHECK(map.g_inv_node(i) > map.g_inv_node(i - 1)); // strict monotonicity

    for (std::size_t i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) / n;
        CHECK(map.g(map.g_inv_node(i)) == doctest::Approx(x).epsilon(1e-10));
    }

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.0, map.m_total());
    for (int t = 0; t < 1000; ++t) {
        const double y = dist(rng);
        CHECK(map.g_inv(map.g(y)) == doctest::Approx(y).epsilon(1e-8));
        if (t > 0) {
            const double y2 = dist(rng);
            const double lo = std::min(y, y2), hi = std::max(y, y2);
            if (hi - lo > 1e-9)
                CHECK(map.g(hi) > map.g(lo)); // realized warp is increasing
        }
    }
}

TEST_CASE("resampling a chirp with its own length is nearly stationary") {
    const std::size_t n = 8192;
    const auto ex1 = generate_example(1, n);
    const LengthFunction ell = length_from_freq(ex1.freq_curves[0], 1.0);
    const ResamplingMap map = compute_resampling(ell);
    const Signal h = resample(ex1.components[0], map);

    // Zero-crossing intervals of the warped chirp.
    std::vector<double> crossings;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = h[i], b = h[i + 1];
        if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0))
            crossings.push_back(static_cast<double>(i) + a / (a - b));
    }
    REQUIRE(crossings.size() > 10);
    std::vector<double> gaps(crossings.size() - 1);
    double mean = 0.0;
    for (std::size_t i = 0; i + 1 < crossings.size(); ++i) {
        gaps[i] = crossings[i + 1] - crossings[i];
        mean += gaps[i];
    }
    mean /= static_cast<double>(gaps.size());
    double var = 0.0;
    for (double g : gaps)
        var += (g - mean) * (g - mean);
    var /= static_cast<double>(gaps.size());
    const double cv = std::sqrt(var) / mean;
    CHECK(cv < 0.05);

    // Mean frequency of the warped component stays below max a1.
    const double mean_freq = static_cast<double>(crossings.size()) / 2.0;
    double max_a1 = 0.0;
    for (double f : ex1.freq_curves[0])
        max_a1 = std::max(max_a1, f);
    CHECK(mean_freq <= max_a1);
}

TEST_CASE("resampling respects signal bounds up to mild spline overshoot") {
    const std::size_t n = 4096;
    const Signal s(grid_eval(n, [](double x) {
        return std::sin(2.0 * kPi * 12.0 * x) + 0.4 * std::cos(2.0 * kPi * 3.0 * x);
    }));
    const LengthFunction ell(
        grid_eval(n, [](double t) { return 0.05 + 0.02 * std::sin(2.0 * kPi * t); }));
    const ResamplingMap map = compute_resampling(ell);

    double lo = s[0], hi = s[0];
    for (std::size_t i = 0; i < n; ++i) {
        lo = std::min(lo, s[i]);
        hi = std::max(hi, s[i]);
    }
    const double slack = 0.05 * (hi - lo);
    for (const Signal& t : {resample(s, map), inverse_resample(s, map)}) {
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(t[i] >= lo - slack);
            CHECK(t[i] <= hi + slack);
        }
    }
}
