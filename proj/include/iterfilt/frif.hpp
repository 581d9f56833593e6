#pragma once

#include "iterfilt/dense_engines.hpp"
#include "iterfilt/filter_bank.hpp"
#include "iterfilt/resampler.hpp"
#include "iterfilt/signal.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace iterfilt {

/// Spectral-domain state of the FFT-accelerated inner loop. The symbol is
/// 1 - DFT(row) with every entry clamped into [-1, 1] and the DC entry
/// pinned to 0 (the row is stochastic, so the mean is removed in one step).
class SpectrumState {
public:
    SpectrumState(const Signal& h, const CirculantRow& row);

    /// Applies one Hadamard step and returns the spectral stopping value
    /// ||h_next - h_cur|| / ||h_cur|| (Parseval-equivalent to time domain).
    double step();

    /// Inverse DFT of the current coefficients. The imaginary residue must
    /// stay below 1e-9 times the input's max magnitude.
    Signal inverse() const;

    const std::vector<double>& symbol() const noexcept { return symbol_; }
    const std::vector<std::complex<double>>& coeffs() const noexcept { return coeffs_; }

private:
    std::vector<std::complex<double>> coeffs_;
    std::vector<double> symbol_;
    double input_inf_norm_;
};

enum class Method { IF, ALIF, SALIF, FRIF, RIF_DENSE };

enum class LengthSource { analytic_curves, csv_file, extrema_heuristic };

/// Everything a decomposition run needs besides the signal itself.
struct MethodConfig {
    Method method = Method::FRIF;
    FilterKernel::Kind filter = FilterKernel::Kind::triangular;
    StoppingConfig stopping;
    double xi = 1.0;
    int max_imfs = 12;
    LengthSource length_source = LengthSource::extrema_heuristic;

    void validate() const;
};

/// Supplies the length function for each extraction round, given the
/// current residual. Returning nullopt ends the decomposition (the
/// residual becomes the trend).
using LengthProvider =
    std::function<std::optional<LengthFunction>(const Signal& residual, int round)>;

/// Provider that serves the given analytic frequency curves in order of
/// decreasing mean frequency, one per round, and stops when exhausted.
LengthProvider analytic_length_provider(std::vector<std::vector<double>> freq_curves, double xi);

/// Provider that re-derives the length from the residual's extrema each
/// round.
LengthProvider extrema_length_provider(double xi);

/// FFT inner loop shared by IF and FRIF: DFT once, Hadamard-multiply by the
/// clamped symbol until the spectral stopping value drops below delta, one
/// inverse DFT at exit.
SiftResult fif_sift(const Signal& h, const CirculantRow& row, const StoppingConfig& stop);

/// Outer decomposition loop: extracts IMFs while the residual has at least
/// 2 strict extrema, the provider yields a length function, and the IMF cap
/// is not hit. Dispatches the inner loop according to cfg.method.
DecompositionResult decompose(const Signal& g, const MethodConfig& cfg,
                              const LengthProvider& provider);

/// Relative error against ground truth after every inner-loop step of a
/// single-IMF run with the stopping rule removed.
std::vector<double> convergence_trace(const Signal& g, const MethodConfig& cfg,
                                      const LengthFunction& ell, const Signal& truth, int steps);

} // namespace iterfilt
