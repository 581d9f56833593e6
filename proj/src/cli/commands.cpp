#include "iterfilt/commands.hpp"

#include "iterfilt/errors.hpp"
#include "iterfilt/frif.hpp"
#include "iterfilt/generators.hpp"
#include "iterfilt/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

namespace iterfilt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Method parse_method(const std::string& name) {
    if (name == "if")
        return Method::IF;
    if (name == "alif")
        return Method::ALIF;
    if (name == "salif")
        return Method::SALIF;
    if (name == "frif")
        return Method::FRIF;
    if (name == "rif-dense")
        return Method::RIF_DENSE;
    throw ConfigError("unknown method '" + name + "'");
}

bool is_dense(Method m) {
    return m == Method::ALIF || m == Method::SALIF || m == Method::RIF_DENSE;
}

FilterKernel::Kind parse_filter(const std::string& name) {
    if (name == "triangular")
        return FilterKernel::Kind::triangular;
    if (name == "cosine2")
        return FilterKernel::Kind::double_convolved_cosine;
    throw ConfigError("unknown filter '" + name + "'");
}

struct LengthSpec {
    LengthSource source = LengthSource::extrema_heuristic;
    std::string file;
};

LengthSpec parse_length(const std::string& spec) {
    if (spec == "analytic")
        return {LengthSource::analytic_curves, {}};
    if (spec == "extrema")
        return {LengthSource::extrema_heuristic, {}};
    if (spec.rfind("file:", 0) == 0)
        return {LengthSource::csv_file, spec.substr(5)};
    throw ConfigError("unknown length source '" + spec + "' "
                      "(expected analytic, extrema, or file:<path>)");
}

double resolve_xi(const RunManifest& m, LengthSource source) {
    if (m.xi)
        return *m.xi;
    return source == LengthSource::extrema_heuristic ? 2.0 : 1.0;
}

struct LoadedSignal {
    Signal signal;
    std::optional<ExampleSignals> example; // present for generator inputs
    std::optional<double> realized_snr_db;
};

std::size_t resolve_n(const RunManifest& m, int generator_id) {
    if (m.n != 0)
        return m.n;
    return generator_id == 1 ? 10000 : 8000;
}

LoadedSignal load_input(const RunManifest& m) {
    if (m.generator) {
        ExampleSignals ex = generate_example(*m.generator, resolve_n(m, *m.generator));
        Signal signal = ex.signal;
        std::optional<double> realized;
        if (m.snr_db && std::isfinite(*m.snr_db)) {
            signal = add_noise(signal, *m.snr_db, m.seed);
            const Signal eps = subtract(signal, ex.signal);
            realized = 10.0 * std::log10(std::pow(norm2(ex.signal) / norm2(eps), 2.0));
        }
        return LoadedSignal{std::move(signal), std::move(ex), realized};
    }
    if (m.input.empty())
        throw ConfigError("no input file and no generator id given");
    const fs::path path(m.input);
    std::vector<double> values;
    if (path.extension() == ".wav")
        values = io::read_wav_pcm16_mono(path);
    else
        values = io::read_signal_csv(path);
    return LoadedSignal{Signal(std::move(values)), std::nullopt, std::nullopt};
}

MethodConfig build_config(const RunManifest& m, const LengthSpec& length) {
    MethodConfig cfg;
    cfg.method = parse_method(m.method);
    cfg.filter = parse_filter(m.filter);
    cfg.stopping = StoppingConfig{m.delta, m.max_iter};
    cfg.xi = resolve_xi(m, length.source);
    cfg.length_source = length.source;
    cfg.validate();
    return cfg;
}

LengthProvider build_provider(const MethodConfig& cfg, const LengthSpec& length,
                              const LoadedSignal& input) {
    switch (length.source) {
    case LengthSource::analytic_curves:
        if (!input.example)
            throw ConfigError("--length analytic requires a generator input");
        return analytic_length_provider(input.example->freq_curves, cfg.xi);
    case LengthSource::extrema_heuristic:
        return extrema_length_provider(cfg.xi);
    case LengthSource::csv_file: {
        std::vector<double> raw = io::read_column_csv(length.file);
        if (raw.size() != input.signal.size())
            throw ConfigError("length file row count does not match the signal length");
        LengthFunction file_ell(std::move(raw));
        const double xi = cfg.xi;
        // The file drives the first round; later rounds fall back to the
        // extrema heuristic on the residual.
        return [file_ell, xi](const Signal& residual, int round) -> std::optional<LengthFunction> {
            if (round == 0)
                return file_ell;
            return default_length_from_extrema(residual, xi);
        };
    }
    }
    throw ConfigError("unhandled length source");
}

json diagnostics_json(const DecompositionResult& res) {
    json imfs = json::array();
    for (std::size_t k = 0; k < res.diagnostics.size(); ++k) {
        const ImfDiagnostics& d = res.diagnostics[k];
        imfs.push_back({{"imf", k + 1},
                        {"iterations", d.iterations},
                        {"final_stopping_value", d.final_stopping_value},
                        {"scale_used", d.scale_used},
                        {"stopping_history", d.stopping_history},
                        {"warnings", d.warnings}});
    }
    return json{{"imfs", imfs},
                {"max_imf_cap_hit", res.max_imf_cap_hit},
                {"length_provider_exhausted", res.provider_exhausted}};
}

void write_decomposition(const fs::path& dir, const Signal& input,
                         const DecompositionResult& res, const json& extra) {
    std::vector<std::string> header;
    std::vector<std::vector<double>> cols;
    for (std::size_t k = 0; k < res.imfs.size(); ++k) {
        header.push_back("IMF" + std::to_string(k + 1));
        cols.push_back(res.imfs[k].values());
    }
    header.emplace_back("residual");
    cols.push_back(res.residual.values());
    io::write_csv(dir / "imfs.csv", header, cols);

    for (std::size_t k = 0; k < res.imfs.size(); ++k) {
        std::vector<double> x(input.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = static_cast<double>(i) / static_cast<double>(x.size());
        io::write_csv(dir / ("imf_" + std::to_string(k + 1) + ".csv"), {"x", "value"},
                      {x, res.imfs[k].values()});
    }

    json report = diagnostics_json(res);
    for (auto it = extra.begin(); it != extra.end(); ++it)
        report[it.key()] = it.value();
    std::ofstream out(dir / "diagnostics.json");
    out << report.dump(2) << '\n';
}

std::vector<double> decimate(const std::vector<double>& v, std::size_t stride) {
    std::vector<double> out;
    out.reserve(v.size() / stride + 1);
    for (std::size_t i = 0; i < v.size(); i += stride)
        out.push_back(v[i]);
    return out;
}

} // namespace

int cmd_decompose(const RunManifest& manifest) {
    try {
        const LengthSpec length = parse_length(manifest.length);
        const MethodConfig cfg = build_config(manifest, length);
        const LoadedSignal input = load_input(manifest);
        const LengthProvider provider = build_provider(cfg, length, input);

        fs::create_directories(manifest.out_dir);
        DecompositionResult res = decompose(input.signal, cfg, provider);
        if (res.imfs.empty()) {
            log::error("signal is a trend: no IMF could be extracted");
            return kExitTrend;
        }
        if (length.source == LengthSource::csv_file)
            for (std::size_t k = 1; k < res.diagnostics.size(); ++k)
                res.diagnostics[k].warnings.emplace_back(
                    "length re-derived from residual extrema (file covers round 1 only)");

        json extra{{"method", manifest.method},
                   {"filter", manifest.filter},
                   {"delta", manifest.delta},
                   {"max_iter", manifest.max_iter},
                   {"xi", resolve_xi(manifest, length.source)},
                   {"length", manifest.length},
                   {"seed", manifest.seed}};
        if (input.realized_snr_db)
            extra["realized_snr_db"] = *input.realized_snr_db;
        write_decomposition(manifest.out_dir, input.signal, res, extra);
        log::info("wrote " + std::to_string(res.imfs.size()) + " IMFs + residual to " +
                  manifest.out_dir);
        return kExitOk;
    } catch (const TrendError& e) {
        log::error(std::string("signal is a trend: ") + e.what());
        return kExitTrend;
    } catch (const Error& e) {
        log::error(e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        log::error(e.what());
        return kExitConfig;
    }
}

int cmd_generate(const RunManifest& manifest) {
    try {
        if (!manifest.generator)
            throw ConfigError("generate requires an example id (1 or 2)");
        const LoadedSignal input = load_input(manifest);
        const ExampleSignals& ex = *input.example;

        fs::create_directories(manifest.out_dir);
        const fs::path dir(manifest.out_dir);
        io::write_csv(dir / "signal.csv", {"value"}, {input.signal.values()});
        for (std::size_t k = 0; k < ex.components.size(); ++k)
            io::write_csv(dir / ("component_" + std::to_string(k + 1) + ".csv"), {"value"},
                          {ex.components[k].values()});
        for (std::size_t k = 0; k < ex.freq_curves.size(); ++k)
            io::write_csv(dir / ("freq_" + std::to_string(k + 1) + ".csv"), {"value"},
                          {ex.freq_curves[k]});

        json meta{{"generator", *manifest.generator},
                  {"n", input.signal.size()},
                  {"seed", manifest.seed}};
        if (manifest.snr_db)
            meta["requested_snr_db"] = *manifest.snr_db;
        if (input.realized_snr_db) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6f", *input.realized_snr_db);
            meta["realized_snr_db"] = buf;
        }
        std::ofstream out(dir / "meta.json");
        out << meta.dump(2) << '\n';
        log::info("wrote example " + std::to_string(*manifest.generator) + " with n=" +
                  std::to_string(input.signal.size()) + " to " + manifest.out_dir);
        return kExitOk;
    } catch (const Error& e) {
        log::error(e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        log::error(e.what());
        return kExitConfig;
    }
}

int cmd_benchmark(const std::vector<int>& example_ids, const std::vector<std::string>& methods,
                  const RunManifest& manifest) {
    try {
        if (methods.empty())
            throw ConfigError("benchmark needs at least one method");
        if (example_ids.empty())
            throw ConfigError("benchmark needs at least one example id");
        for (const std::string& m : methods)
            parse_method(m); // validate before any work

        fs::create_directories(manifest.out_dir);
        const fs::path dir(manifest.out_dir);

        std::vector<std::string> rows_text;
        std::vector<std::vector<double>> table_cols(7);
        std::vector<std::string> table_methods, table_examples;

        for (int id : example_ids) {
            const std::size_t full_n = manifest.n ? manifest.n : (id == 1 ? 10000 : 8000);
            const ExampleSignals full = generate_example(id, full_n);

            for (const std::string& method_name : methods) {
                const Method method = parse_method(method_name);
                RunManifest run = manifest;
                run.method = method_name;
                run.generator = id;

                // Dense engines get decimated onto the n <= 2048 budget.
                ExampleSignals ex = full;
                std::size_t n = full_n;
                if (is_dense(method) && full_n > 2048) {
                    const std::size_t stride = (full_n + 2047) / 2048;
                    n = (full_n + stride - 1) / stride;
                    log::info("dense method " + method_name + ": decimating n=" +
                              std::to_string(full_n) + " to n=" + std::to_string(n));
                    std::vector<Signal> comps;
                    std::vector<std::vector<double>> curves;
                    for (const Signal& c : ex.components)
                        comps.emplace_back(decimate(c.values(), stride));
                    for (const auto& f : ex.freq_curves)
                        curves.push_back(decimate(f, stride));
                    ex = ExampleSignals{Signal(decimate(ex.signal.values(), stride)),
                                        std::move(comps), std::move(curves)};
                }

                MethodConfig cfg = build_config(run, {LengthSource::analytic_curves, {}});
                const LengthProvider provider = analytic_length_provider(ex.freq_curves, cfg.xi);

                const auto t0 = std::chrono::steady_clock::now();
                const DecompositionResult res = decompose(ex.signal, cfg, provider);
                const double seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

                // Curves are served in decreasing-frequency order; map each
                // IMF back to its ground-truth component.
                std::vector<std::size_t> order(ex.freq_curves.size());
                std::iota(order.begin(), order.end(), 0);
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    const auto mean = [&](std::size_t k) {
                        const auto& f = ex.freq_curves[k];
                        return std::accumulate(f.begin(), f.end(), 0.0) / f.size();
                    };
                    return mean(a) > mean(b);
                });
                std::vector<double> errs(ex.components.size(),
                                         std::numeric_limits<double>::quiet_NaN());
                for (std::size_t r = 0; r < order.size() && r < res.imfs.size(); ++r)
                    errs[order[r]] = relative_error(res.imfs[r], ex.components[order[r]]);
                errs.back() = relative_error(res.residual, ex.components.back());

                table_examples.push_back(std::to_string(id));
                table_methods.push_back(method_name);
                table_cols[0].push_back(static_cast<double>(n));
                table_cols[1].push_back(seconds);
                table_cols[2].push_back(errs[0]);
                table_cols[3].push_back(errs[1]);
                table_cols[4].push_back(errs[2]);
                const int iters1 =
                    res.diagnostics.empty() ? 0 : res.diagnostics[0].iterations;
                const int iters2 =
                    res.diagnostics.size() < 2 ? 0 : res.diagnostics[1].iterations;
                table_cols[5].push_back(static_cast<double>(iters1));
                table_cols[6].push_back(static_cast<double>(iters2));

                char buf[256];
                std::snprintf(buf, sizeof(buf),
                              "example %d  %-9s n=%6zu  time=%8.4fs  err1=%.6f  err2=%.6f  "
                              "err3=%.6f  iters=[%d, %d]",
                              id, method_name.c_str(), n, seconds, errs[0], errs[1], errs[2],
                              iters1, iters2);
                rows_text.emplace_back(buf);

                // Convergence trace of the first IMF for trace plots.
                const LengthFunction ell = length_from_freq(ex.freq_curves[order[0]], cfg.xi);
                const int steps = is_dense(method) ? 500 : 200;
                const auto trace =
                    convergence_trace(ex.signal, cfg, ell, ex.components[order[0]], steps);
                io::write_csv(dir / ("trace_" + method_name + "_ex" + std::to_string(id) + ".csv"),
                              {"relative_error"}, {trace});
            }
        }

        // Aligned text table plus a machine-readable CSV.
        std::ofstream text(dir / "benchmark.txt");
        for (const std::string& row : rows_text)
            text << row << '\n';
        std::ofstream csv(dir / "benchmark.csv");
        csv << "example,method,n,time_s,err1,err2,err3,iters_imf1,iters_imf2\n";
        for (std::size_t r = 0; r < table_methods.size(); ++r) {
            csv << table_examples[r] << ',' << table_methods[r];
            for (const auto& col : table_cols)
                csv << ',' << io::format_double(col[r]);
            csv << '\n';
        }
        for (const std::string& row : rows_text)
            log::info(row);
        return kExitOk;
    } catch (const Error& e) {
        log::error(e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        log::error(e.what());
        return kExitConfig;
    }
}

int cmd_diagnose(const RunManifest& manifest) {
    try {
        const LengthSpec length = parse_length(manifest.length);
        const MethodConfig cfg = build_config(manifest, length);
        const LoadedSignal input = load_input(manifest);
        if (input.signal.size() > 2048)
            throw BudgetError("diagnose is limited to n <= 2048");

        std::optional<LengthFunction> ell;
        switch (length.source) {
        case LengthSource::analytic_curves:
            if (!input.example)
                throw ConfigError("--length analytic requires a generator input");
            ell = length_from_freq(input.example->freq_curves[0], cfg.xi);
            break;
        case LengthSource::extrema_heuristic:
            ell = default_length_from_extrema(input.signal, cfg.xi);
            break;
        case LengthSource::csv_file: {
            std::vector<double> raw = io::read_column_csv(length.file);
            if (raw.size() != input.signal.size())
                throw ConfigError("length file row count does not match the signal length");
            ell = LengthFunction(std::move(raw));
            break;
        }
        }

        const FilterKernel kernel = make_filter(cfg.filter);
        const DenseOperator op = build_alif_matrix(kernel, *ell, input.signal.size());
        const SpectralReport report = spectral_diagnostics(op);

        std::cout << "n:              " << input.signal.size() << '\n'
                  << "eigenvalues:    " << report.eigenvalues.size() << '\n'
                  << "violations:     " << report.num_violations << '\n'
                  << "max_violation:  " << io::format_double(report.max_violation) << '\n'
                  << "complex_count:  " << report.num_complex << '\n';
        return report.num_violations == 0 ? kExitOk : kExitViolations;
    } catch (const TrendError& e) {
        log::error(e.what());
        return kExitTrend;
    } catch (const Error& e) {
        log::error(e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        log::error(e.what());
        return kExitConfig;
    }
}

} // namespace iterfilt::cli

namespace iterfilt::log {

Level threshold() {
    static const Level level = [] {
        const char* env = std::getenv("ITERFILT_LOG");
        if (!env)
            return Level::info;
        const std::string v(env);
        if (v == "error")
            return Level::error;
        if (v == "debug")
            return Level::debug;
        return Level::info;
    }();
    return level;
}

namespace {
void emit(Level level, const char* tag, const std::string& msg) {
    if (static_cast<int>(level) <= static_cast<int>(threshold()))
        std::cerr << "[iterfilt " << tag << "] " << msg << '\n';
}
} // namespace

void error(const std::string& msg) { emit(Level::error, "error", msg); }
void info(const std::string& msg) { emit(Level::info, "info", msg); }
void debug(const std::string& msg) { emit(Level::debug, "debug", msg); }

} // namespace iterfilt::log
