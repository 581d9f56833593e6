#include "iterfilt/io.hpp"

#include "iterfilt/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace iterfilt::io {

namespace {

std::string strip(const std::string& s) {
    auto b = s.begin(), e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b)))
        ++b;
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1))))
        --e;
    return std::string(b, e);
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = strip(s);
    if (t.empty())
        return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size())
        throw ConfigError("write_csv: header/column count mismatch");
    std::ofstream out(path);
    if (!out)
        throw ConfigError("write_csv: cannot open " + path.string());
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (const auto& col : columns)
        if (col.size() != rows)
            throw ConfigError("write_csv: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_double(columns[c][r]);
        out << '\n';
    }
    if (!out)
        throw ConfigError("write_csv: write failed for " + path.string());
}

std::vector<double> read_signal_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open input file " + path.string());

    std::vector<double> values;
    std::vector<double> times;
    bool two_columns = false;
    bool first_line = true;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = strip(line);
        if (t.empty())
            continue;
        const auto comma = t.find(',');
        if (first_line) {
            two_columns = comma != std::string::npos;
            // Optional header: "value" or "time,value".
            double probe;
            const std::string head = two_columns ? t.substr(0, comma) : t;
            if (!parse_double(head, probe)) {
                first_line = false;
                continue;
            }
        }
        first_line = false;
        if (two_columns) {
            if (comma == std::string::npos)
                throw ConfigError("malformed CSV: expected two columns in " + path.string());
            double time, value;
            if (!parse_double(t.substr(0, comma), time) ||
                !parse_double(t.substr(comma + 1), value))
                throw ConfigError("malformed CSV: bad number in " + path.string());
            times.push_back(time);
            values.push_back(value);
        } else {
            double value;
            if (!parse_double(t, value))
                throw ConfigError("malformed CSV: bad number in " + path.string());
            values.push_back(value);
        }
    }
    if (values.size() < 8)
        throw ConfigError("input has fewer than 8 samples: " + path.string());

    if (two_columns) {
        const double span = times.back() - times.front();
        if (!(span > 0.0))
            throw ConfigError("non-increasing time column in " + path.string());
        const double step = span / static_cast<double>(times.size() - 1);
        for (std::size_t i = 1; i < times.size(); ++i) {
            const double d = times[i] - times[i - 1];
            if (std::abs(d - step) > 1e-9 * std::max(std::abs(step), 1e-300))
                throw ConfigError("non-uniform time column in " + path.string());
        }
    }
    return values;
}

std::vector<double> read_column_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open file " + path.string());
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = strip(line);
        if (t.empty())
            continue;
        double v;
        if (!parse_double(t, v)) {
            if (values.empty())
                continue; // tolerate one header line
            throw ConfigError("malformed CSV: bad number in " + path.string());
        }
        values.push_back(v);
    }
    return values;
}

std::vector<double> read_wav_pcm16_mono(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open input file " + path.string());

    auto read_bytes = [&](char* dst, std::size_t count) {
        in.read(dst, static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count)
            throw ConfigError("truncated WAV file " + path.string());
    };
    auto read_u32 = [&]() {
        unsigned char b[4];
        read_bytes(reinterpret_cast<char*>(b), 4);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    };
    auto read_u16 = [&]() {
        unsigned char b[2];
        read_bytes(reinterpret_cast<char*>(b), 2);
        return static_cast<std::uint16_t>(static_cast<std::uint16_t>(b[0]) |
                                          (static_cast<std::uint16_t>(b[1]) << 8));
    };

    char tag[4];
    read_bytes(tag, 4);
    if (std::memcmp(tag, "RIFF", 4) != 0)
        throw ConfigError("not a RIFF/WAV file: " + path.string());
    read_u32(); // total size
    read_bytes(tag, 4);
    if (std::memcmp(tag, "WAVE", 4) != 0)
        throw ConfigError("not a WAV file: " + path.string());

    bool have_fmt = false;
    std::vector<double> samples;
    while (in.peek() != EOF) {
        read_bytes(tag, 4);
        const std::uint32_t size = read_u32();
        if (std::memcmp(tag, "fmt ", 4) == 0) {
            if (size < 16)
                throw ConfigError("malformed fmt chunk in " + path.string());
            const std::uint16_t format = read_u16();
            const std::uint16_t channels = read_u16();
            read_u32(); // sample rate
            read_u32(); // byte rate
            read_u16(); // block align
            const std::uint16_t bits = read_u16();
            if (format != 1 || channels != 1 || bits != 16)
                throw ConfigError("unsupported WAV encoding (need PCM 16-bit mono): " +
                                  path.string());
            in.seekg(size - 16, std::ios::cur);
            have_fmt = true;
        } else if (std::memcmp(tag, "data", 4) == 0) {
            if (!have_fmt)
                throw ConfigError("WAV data chunk before fmt chunk: " + path.string());
            const std::size_t count = size / 2;
            samples.resize(count);
            for (std::size_t i = 0; i < count; ++i) {
                const std::uint16_t raw = read_u16();
                samples[i] = static_cast<double>(static_cast<std::int16_t>(raw)) / 32768.0;
            }
            if (size % 2 == 1)
                in.seekg(1, std::ios::cur);
            return samples;
        } else {
            in.seekg(size + (size % 2), std::ios::cur);
        }
    }
    throw ConfigError("WAV file has no data chunk: " + path.string());
}

} // namespace iterfilt::io
