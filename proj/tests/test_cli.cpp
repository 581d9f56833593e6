#include "iterfilt/commands.hpp"
#include "iterfilt/errors.hpp"
#include "iterfilt/generators.hpp"
#include "iterfilt/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace iterfilt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("iterfilt_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> read_csv_columns(const fs::path& p, std::size_t& out_cols) {
    std::ifstream in(p);
    std::string line;
    REQUIRE(std::getline(in, line)); // header
    out_cols = 1 + static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    std::vector<std::vector<double>> cols(out_cols);
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        for (std::size_t c = 0; c < out_cols; ++c) {
            REQUIRE(std::getline(ss, cell, ','));
            cols[c].push_back(std::stod(cell));
        }
    }
    return cols;
}

void write_pcm16_wav(const fs::path& p, const std::vector<std::int16_t>& samples,
                     std::uint16_t channels = 1) {
    std::ofstream out(p, std::ios::binary);
    auto u32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    auto u16 = [&](std::uint16_t v) { out.write(reinterpret_cast<const char*>(&v), 2); };
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
    out.write("RIFF", 4);
    u32(36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    u32(16);
    u16(1); // PCM
    u16(channels);
    u32(8000);
    u32(8000u * 2u * channels);
    u16(static_cast<std::uint16_t>(2 * channels));
    u16(16);
    out.write("data", 4);
    u32(data_bytes);
    for (std::int16_t s : samples)
        out.write(reinterpret_cast<const char*>(&s), 2);
}

} // namespace

TEST_CASE("CSV numbers round-trip exactly at 17 significant digits") {
    TempDir dir("csv_roundtrip");
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    std::vector<double> values(64);
    for (double& v : values)
        v = dist(rng) * std::pow(10.0, static_cast<int>(rng() % 7) - 3);
    io::write_csv(dir.path / "x.csv", {"value"}, {values});
    const std::vector<double> back = io::read_signal_csv(dir.path / "x.csv");
    REQUIRE(back.size() == values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        CHECK(back[i] == values[i]); // bitwise
}

TEST_CASE("read_signal_csv input formats") {
    TempDir dir("csv_formats");

    {
        std::ofstream f(dir.path / "two_col.csv");
        f << "time,value\n";
        for (int i = 0; i < 16; ++i)
            f << 0.25 * i << "," << i * i << "\n";
    }
    const auto v = io::read_signal_csv(dir.path / "two_col.csv");
    REQUIRE(v.size() == 16);
    CHECK(v[3] == 9.0);

    {
        std::ofstream f(dir.path / "nonuniform.csv");
        f << "time,value\n";
        for (int i = 0; i < 16; ++i)
            f << (i == 7 ? 0.25 * i + 0.01 : 0.25 * i) << "," << i << "\n";
    }
    CHECK_THROWS_AS(io::read_signal_csv(dir.path / "nonuniform.csv"), ConfigError);

    {
        std::ofstream f(dir.path / "garbage.csv");
        f << "value\n1.0\ntwo\n3.0\n";
        for (int i = 0; i < 8; ++i)
            f << i << "\n";
    }
    CHECK_THROWS_AS(io::read_signal_csv(dir.path / "garbage.csv"), ConfigError);

    CHECK_THROWS_AS(io::read_signal_csv(dir.path / "missing.csv"), ConfigError);
}

TEST_CASE("WAV ingestion") {
    TempDir dir("wav");
    std::vector<std::int16_t> samples(64);
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = static_cast<std::int16_t>(1000 * static_cast<int>(i % 8) - 4000);
    write_pcm16_wav(dir.path / "mono.wav", samples);
    const auto v = io::read_wav_pcm16_mono(dir.path / "mono.wav");
    REQUIRE(v.size() == samples.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(v[i] == doctest::Approx(samples[i] / 32768.0).epsilon(1e-12));

    write_pcm16_wav(dir.path / "stereo.wav", samples, 2);
    CHECK_THROWS_AS(io::read_wav_pcm16_mono(dir.path / "stereo.wav"), ConfigError);
}

TEST_CASE("cmd_generate writes the signal, components, and realized SNR") {
    TempDir dir("generate");
    cli::RunManifest m;
    m.generator = 2;
    m.n = 1000;
    m.snr_db = 8.6;
    m.seed = 7;
    m.out_dir = (dir.path / "out").string();
    REQUIRE(cli::cmd_generate(m) == cli::kExitOk);

    for (const char* name : {"signal.csv", "component_1.csv", "component_2.csv",
                             "component_3.csv"}) {
        const auto col = io::read_signal_csv(dir.path / "out" / name);
        CHECK(col.size() == 1000);
    }
    const std::string meta = slurp(dir.path / "out" / "meta.json");
    CHECK(meta.find("\"realized_snr_db\": \"8.600000\"") != std::string::npos);
}

TEST_CASE("cmd_decompose reconstructs the generated benchmark signal") {
    TempDir dir("decompose");
    cli::RunManifest m;
    m.generator = 1;
    m.method = "frif";
    m.length = "analytic";
    m.out_dir = (dir.path / "out").string();
    REQUIRE(cli::cmd_decompose(m) == cli::kExitOk);

    std::size_t ncols = 0;
    const auto cols = read_csv_columns(dir.path / "out" / "imfs.csv", ncols);
    REQUIRE(ncols == 3); // IMF1, IMF2, residual
    REQUIRE(cols[0].size() == 10000);

    const auto ex = generate_example(1, 10000);
    for (std::size_t i = 0; i < 10000; ++i) {
        const double recon = cols[0][i] + cols[1][i] + cols[2][i];
        CHECK(recon == doctest::Approx(ex.signal[i])
                           .epsilon(1e-12)); // row sums reproduce the input
    }
    CHECK(fs::exists(dir.path / "out" / "imf_1.csv"));
    CHECK(fs::exists(dir.path / "out" / "imf_2.csv"));
    CHECK(fs::exists(dir.path / "out" / "diagnostics.json"));
}

TEST_CASE("cmd_decompose flags trend inputs") {
    TempDir dir("trend");
    {
        std::ofstream f(dir.path / "flat.csv");
        f << "value\n";
        for (int i = 0; i < 64; ++i)
            f << "2.5\n";
    }
    cli::RunManifest m;
    m.input = (dir.path / "flat.csv").string();
    m.out_dir = (dir.path / "out").string();
    CHECK(cli::cmd_decompose(m) == cli::kExitTrend);
}

TEST_CASE("cmd_decompose is byte-deterministic") {
    TempDir dir("determinism");
    cli::RunManifest m;
    m.generator = 2;
    m.n = 2000;
    m.method = "frif";
    m.length = "analytic";
    m.snr_db = 12.0;
    m.seed = 3;

    m.out_dir = (dir.path / "a").string();
    REQUIRE(cli::cmd_decompose(m) == cli::kExitOk);
    m.out_dir = (dir.path / "b").string();
    REQUIRE(cli::cmd_decompose(m) == cli::kExitOk);

    CHECK(slurp(dir.path / "a" / "imfs.csv") == slurp(dir.path / "b" / "imfs.csv"));
    CHECK(slurp(dir.path / "a" / "diagnostics.json") == slurp(dir.path / "b" / "diagnostics.json"));
}

TEST_CASE("cmd_benchmark rejects an empty method list") {
    cli::RunManifest m;
    CHECK(cli::cmd_benchmark({1}, {}, m) == cli::kExitConfig);
}

TEST_CASE("cmd_diagnose exit codes") {
    TempDir dir("diagnose");
    {
        std::ofstream f(dir.path / "ell.csv");
        for (int i = 0; i < 256; ++i)
            f << "0.1\n";
    }
    {
        std::ofstream f(dir.path / "tone.csv");
        f << "value\n";
        for (int i = 0; i < 256; ++i)
            f << std::sin(2.0 * 3.14159265358979 * 20.0 * i / 256.0) << "\n";
    }
    cli::RunManifest m;
    m.input = (dir.path / "tone.csv").string();
    m.length = "file:" + (dir.path / "ell.csv").string();
    CHECK(cli::cmd_diagnose(m) == cli::kExitOk);

    m.length = "nonsense";
    CHECK(cli::cmd_diagnose(m) == cli::kExitConfig);
}

TEST_CASE("cmd_decompose ingests WAV and file-based lengths") {
    TempDir dir("wav_decompose");
    // 1024-sample tone pair at PCM 16-bit mono.
    std::vector<std::int16_t> samples(1024);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double x = static_cast<double>(i) / 1024.0;
        const double v = 0.5 * std::sin(2.0 * 3.14159265358979 * 60.0 * x) +
                         0.3 * std::sin(2.0 * 3.14159265358979 * 7.0 * x);
        samples[i] = static_cast<std::int16_t>(v * 30000);
    }
    write_pcm16_wav(dir.path / "tones.wav", samples);

    cli::RunManifest m;
    m.input = (dir.path / "tones.wav").string();
    m.method = "frif";
    m.length = "extrema";
    m.out_dir = (dir.path / "out").string();
    REQUIRE(cli::cmd_decompose(m) == cli::kExitOk);
    CHECK(fs::exists(dir.path / "out" / "imfs.csv"));

    // Same input, first round driven by a length file.
    {
        std::ofstream f(dir.path / "ell.csv");
        for (int i = 0; i < 1024; ++i)
            f << 2.0 / 120.0 << "\n";
    }
    m.length = "file:" + (dir.path / "ell.csv").string();
    m.out_dir = (dir.path / "out2").string();
    REQUIRE(cli::cmd_decompose(m) == cli::kExitOk);
    std::size_t ncols = 0;
    const auto cols = read_csv_columns(dir.path / "out2" / "imfs.csv", ncols);
    CHECK(ncols >= 2);
    CHECK(cols[0].size() == 1024);
}
