#pragma once

#include "iterfilt/signal.hpp"

#include <cstdint>
#include <vector>

namespace iterfilt {

/// A benchmark signal together with its ground-truth components and the
/// analytic instantaneous-frequency curve of each oscillatory component.
/// components holds the oscillatory parts first and the trend last;
/// freq_curves[k] belongs to components[k].
struct ExampleSignals {
    Signal signal;
    std::vector<Signal> components;
    std::vector<std::vector<double>> freq_curves;
};

/// Two-chirps-plus-trend test signals:
///   id 1: cos(20 e^{pi t} + 120 pi t) + cos(20 e^{pi t} + 20 pi t) - 10t + 20
///   id 2: cos(20 cos(4 pi t) - 160 pi t) + cos(20 cos(4 pi t) - 280 pi t)
///         + cos(2 pi t)
/// Frequency curves are |phase'/(2 pi)| of each oscillatory component.
ExampleSignals generate_example(int id, std::size_t n);

/// Adds zero-mean Gaussian noise scaled post hoc so the realized SNR in dB
/// equals snr_db exactly. An infinite snr_db returns the signal unchanged.
/// The noise stream is a fixed Box-Muller transform over mt19937_64, so
/// results are reproducible across standard libraries.
Signal add_noise(const Signal& s, double snr_db, std::uint64_t seed);

} // namespace iterfilt
