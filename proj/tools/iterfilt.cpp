// Command-line front end: decompose, generate, benchmark, diagnose.

#include "iterfilt/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace {

void add_common_options(CLI::App* cmd, iterfilt::cli::RunManifest& m, std::string& snr,
                        std::string& xi) {
    cmd->add_option("--method", m.method, "if|alif|salif|frif|rif-dense")
        ->default_val(m.method);
    cmd->add_option("--filter", m.filter, "triangular|cosine2")->default_val(m.filter);
    cmd->add_option("--delta", m.delta, "stopping tolerance on the relative update norm")
        ->default_val(m.delta);
    cmd->add_option("--max-iter", m.max_iter, "inner loop iteration cap")->default_val(m.max_iter);
    cmd->add_option("--xi", xi, "length tuning factor (default 1 for curves, 2 for extrema)");
    cmd->add_option("--length", m.length, "analytic|extrema|file:<path>")->default_val(m.length);
    cmd->add_option("--n", m.n, "sample count for generated signals (0 = example default)")->default_val(m.n);
    cmd->add_option("--snr", snr, "additive-noise SNR in dB, or 'inf'");
    cmd->add_option("--seed", m.seed, "noise seed")->default_val(m.seed);
    cmd->add_option("--out", m.out_dir, "output directory")->default_val(m.out_dir);
}

void finish_manifest(iterfilt::cli::RunManifest& m, const std::string& snr,
                     const std::string& xi) {
    if (!snr.empty())
        m.snr_db = snr == "inf" ? std::numeric_limits<double>::infinity() : std::stod(snr);
    if (!xi.empty())
        m.xi = std::stod(xi);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iterative-filtering signal decomposition (IF/ALIF/SALIF/FRIF)"};
    app.require_subcommand(1);

    iterfilt::cli::RunManifest manifest;
    std::string snr, xi;
    std::string input;
    int generator = 0;

    auto* dec = app.add_subcommand("decompose", "decompose a signal into IMFs");
    dec->add_option("input", input, "CSV or WAV input path (omit when using --generate)");
    dec->add_option("--generate", generator, "use built-in example signal 1 or 2");
    add_common_options(dec, manifest, snr, xi);

    auto* gen = app.add_subcommand("generate", "write a benchmark signal and its ground truth");
    gen->add_option("id", generator, "example id (1 or 2)")->required();
    add_common_options(gen, manifest, snr, xi);

    std::vector<int> examples{1, 2};
    std::vector<std::string> methods;
    auto* bench = app.add_subcommand("benchmark", "reproduce the benchmark tables and traces");
    bench->add_option("--examples", examples, "example ids")->delimiter(',');
    bench->add_option("--methods", methods, "methods to run")->delimiter(',')->required();
    add_common_options(bench, manifest, snr, xi);

    auto* diag = app.add_subcommand("diagnose", "spectral convergence certificate for ALIF");
    diag->add_option("input", input, "CSV or WAV input path (omit when using --generate)");
    diag->add_option("--generate", generator, "use built-in example signal 1 or 2");
    add_common_options(diag, manifest, snr, xi);

    CLI11_PARSE(app, argc, argv);

    manifest.input = input;
    if (generator != 0)
        manifest.generator = generator;
    try {
        finish_manifest(manifest, snr, xi);
    } catch (const std::exception&) {
        iterfilt::log::error("bad numeric option value");
        return iterfilt::cli::kExitConfig;
    }

    if (dec->parsed())
        return iterfilt::cli::cmd_decompose(manifest);
    if (gen->parsed())
        return iterfilt::cli::cmd_generate(manifest);
    if (bench->parsed())
        return iterfilt::cli::cmd_benchmark(examples, methods, manifest);
    if (diag->parsed())
        return iterfilt::cli::cmd_diagnose(manifest);
    return iterfilt::cli::kExitConfig;
}
