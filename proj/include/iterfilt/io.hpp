#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace iterfilt::io {

/// Columnar CSV with a header row; numbers are written with 17 significant
/// digits so the decimal text round-trips the binary doubles exactly.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

std::string format_double(double v);

/// One sample per line (optional "value" header), or two uniform-time
/// columns "time,value". Throws ConfigError on malformed content or a
/// non-uniform time column.
std::vector<double> read_signal_csv(const std::filesystem::path& path);

/// One value per line, exactly n rows expected.
std::vector<double> read_column_csv(const std::filesystem::path& path);

/// PCM 16-bit mono little-endian WAV, scaled into [-1, 1).
std::vector<double> read_wav_pcm16_mono(const std::filesystem::path& path);

} // namespace iterfilt::io
