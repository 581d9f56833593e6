#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace iterfilt {

/// Uniform samples of a real 1-periodic function on [0,1), taken at
/// x_i = i/n. All engines in this library treat the sample vector as
/// periodic: index arithmetic wraps around the seam.
class Signal {
public:
    /// Validates n >= 8 and finiteness of every sample.
    explicit Signal(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Sample at an arbitrary (possibly negative) index of the periodic
    /// extension.
    double at_periodic(std::ptrdiff_t i) const noexcept;

private:
    std::vector<double> values_;
};

/// Tolerance and iteration cap for the inner sifting loops.
struct StoppingConfig {
    double delta = 1e-3;
    int max_iter = 500;

    void validate() const; // delta > 0, max_iter >= 1
};

/// Per-IMF diagnostics collected by the sifting engines.
struct ImfDiagnostics {
    int iterations = 0;
    double final_stopping_value = 0.0;
    double scale_used = 1.0;
    std::vector<double> stopping_history;
    std::vector<std::string> warnings;
};

/// Ordered IMFs plus the trend residual. The input signal is recovered
/// exactly as sum(imfs) + residual (each IMF is subtracted from the
/// running residual as it is extracted). Extraction stops when the
/// residual has fewer than 2 strict extrema, the IMF cap is hit, or the
/// length provider runs out of curves; the latter two are flagged.
struct DecompositionResult {
    std::vector<Signal> imfs;
    Signal residual;
    std::vector<ImfDiagnostics> diagnostics;
    bool max_imf_cap_hit = false;
    bool provider_exhausted = false;
};

/// Number of strict local extrema of the periodic extension. A plateau
/// (run of equal samples) counts as at most one extremum, judged by the
/// first differing neighbours on each side.
int count_extrema(const Signal& s);

/// Indices of the strict local extrema counted by count_extrema. A
/// plateau is represented by its middle sample.
std::vector<std::size_t> extrema_indices(const Signal& s);

/// ||g_next - g_cur||_2 / ||g_cur||_2. A zero g_cur is treated as
/// converged and yields 0.
double stopping_value(const Signal& g_next, const Signal& g_cur);

/// ||estimate - truth||_2 / ||truth||_2. Throws on zero truth.
double relative_error(const Signal& estimate, const Signal& truth);

double norm2(const Signal& s);
Signal subtract(const Signal& a, const Signal& b);

} // namespace iterfilt
