#include "iterfilt/frif.hpp"

#include "iterfilt/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace iterfilt {

SpectrumState::SpectrumState(const Signal& h, const CirculantRow& row) {
    if (h.size() != row.entries.size())
        throw std::invalid_argument("SpectrumState: signal/row size mismatch");

    Eigen::FFT<double> fft;
    fft.fwd(coeffs_, h.values());

    const std::vector<double> dft_row = spectral_symbol(row);
    symbol_.resize(dft_row.size());
    for (std::size_t j = 0; j < dft_row.size(); ++j)
        symbol_[j] = std::clamp(1.0 - dft_row[j], -1.0, 1.0);
    symbol_[0] = 0.0; // stochastic row: the DC mode is removed exactly

    input_inf_norm_ = 0.0;
    for (double v : h.values())
        input_inf_norm_ = std::max(input_inf_norm_, std::abs(v));
}

double SpectrumState::step() {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        const double mag2 = std::norm(coeffs_[j]);
        den += mag2;
        const double f = symbol_[j] - 1.0;
        num += f * f * mag2;
        coeffs_[j] *= symbol_[j];
    }
    return den == 0.0 ? 0.0 : std::sqrt(num / den);
}

Signal SpectrumState::inverse() const {
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> time;
    fft.inv(time, coeffs_);

    std::vector<double> out(time.size());
    double residue = 0.0;
    for (std::size_t i = 0; i < time.size(); ++i) {
        residue = std::max(residue, std::abs(time[i].imag()));
        out[i] = time[i].real();
    }
    if (residue > 1e-9 * std::max(input_inf_norm_, 1e-300))
        throw InternalError("SpectrumState: imaginary residue above tolerance");
    return Signal(std::move(out));
}

void MethodConfig::validate() const {
    stopping.validate();
    if (!(xi > 0.0))
        throw std::invalid_argument("MethodConfig: xi must be positive");
    if (max_imfs < 1)
        throw std::invalid_argument("MethodConfig: max_imfs must be >= 1");
}

SiftResult fif_sift(const Signal& h, const CirculantRow& row, const StoppingConfig& stop) {
    stop.validate();
    SpectrumState state(h, row);
    SiftResult result{Signal(h.values()), 0, {}, false, row.scale};
    for (int m = 1; m <= stop.max_iter; ++m) {
        const double sv = state.step();
        result.history.push_back(sv);
        result.iterations = m;
        if (sv <= stop.delta)
            break;
    }
    result.imf = state.inverse();
    return result;
}

LengthProvider analytic_length_provider(std::vector<std::vector<double>> freq_curves, double xi) {
    // Extraction goes from the highest-frequency component down.
    std::sort(freq_curves.begin(), freq_curves.end(),
              [](const std::vector<double>& a, const std::vector<double>& b) {
                  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
                  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / b.size();
                  return ma > mb;
              });
    return [curves = std::move(freq_curves), xi](const Signal&,
                                                 int round) -> std::optional<LengthFunction> {
        if (round < 0 || static_cast<std::size_t>(round) >= curves.size())
            return std::nullopt;
        return length_from_freq(curves[static_cast<std::size_t>(round)], xi);
    };
}

LengthProvider extrema_length_provider(double xi) {
    return [xi](const Signal& residual, int) -> std::optional<LengthFunction> {
        return default_length_from_extrema(residual, xi);
    };
}

namespace {

SiftResult run_round(const Signal& r, const MethodConfig& cfg, const FilterKernel& kernel,
                     const LengthFunction& ell) {
    switch (cfg.method) {
    case Method::IF: {
        const CirculantRow row = circulant_row(kernel, r.size(), 1.0 / ell.mean());
        return fif_sift(r, row, cfg.stopping);
    }
    case Method::FRIF: {
        const ResamplingMap map = compute_resampling(ell);
        const Signal h = resample(r, map);
        const CirculantRow row = circulant_row(kernel, r.size(), map.m_total());
        SiftResult res = fif_sift(h, row, cfg.stopping);
        res.imf = inverse_resample(res.imf, map);
        return res;
    }
    case Method::ALIF: {
        const DenseOperator op = build_alif_matrix(kernel, ell, r.size());
        return alif_sift(op, r, cfg.stopping);
    }
    case Method::SALIF: {
        const DenseOperator op = build_alif_matrix(kernel, ell, r.size());
        return salif_sift(op, r, cfg.stopping);
    }
    case Method::RIF_DENSE: {
        const RifDenseOperator op = build_rif_dense(kernel, ell, r.size());
        return rif_dense_sift(op, r, cfg.stopping);
    }
    }
    throw std::invalid_argument("decompose: unknown method");
}

} // namespace

DecompositionResult decompose(const Signal& g, const MethodConfig& cfg,
                              const LengthProvider& provider) {
    cfg.validate();
    const FilterKernel kernel = make_filter(cfg.filter);

    DecompositionResult result{{}, Signal(g.values()), {}, false, false};
    Signal r = g;
    for (int round = 0;; ++round) {
        if (count_extrema(r) < 2)
            break;
        if (static_cast<int>(result.imfs.size()) >= cfg.max_imfs) {
            result.max_imf_cap_hit = true;
            break;
        }
        std::optional<LengthFunction> ell = provider(r, round);
        if (!ell) {
            result.provider_exhausted = true;
            break;
        }

        std::optional<SiftResult> sift;
        try {
            sift = run_round(r, cfg, kernel, *ell);
        } catch (const TrendError&) {
            if (round == 0)
                throw; // the whole input is a trend at this scale
            break;     // later rounds: the residual is the trend
        }

        ImfDiagnostics diag;
        diag.iterations = sift->iterations;
        diag.final_stopping_value = sift->history.empty() ? 0.0 : sift->history.back();
        diag.scale_used = sift->scale_used;
        diag.stopping_history = sift->history;
        if (ell->clamped())
            diag.warnings.emplace_back("length function clamped into (0, 1/2)");
        if (sift->diverged)
            diag.warnings.emplace_back("inner loop diverged; aborted at norm guard");
        if (sift->iterations >= cfg.stopping.max_iter &&
            diag.final_stopping_value > cfg.stopping.delta)
            diag.warnings.emplace_back("iteration cap reached before convergence");

        r = subtract(r, sift->imf);
        result.imfs.push_back(std::move(sift->imf));
        result.diagnostics.push_back(std::move(diag));
    }
    result.residual = std::move(r);
    return result;
}

std::vector<double> convergence_trace(const Signal& g, const MethodConfig& cfg,
                                      const LengthFunction& ell, const Signal& truth, int steps) {
    cfg.validate();
    if (steps < 1)
        throw std::invalid_argument("convergence_trace: steps must be >= 1");
    const FilterKernel kernel = make_filter(cfg.filter);
    std::vector<double> errs;
    errs.reserve(static_cast<std::size_t>(steps));

    switch (cfg.method) {
    case Method::IF:
    case Method::FRIF: {
        const bool warped = cfg.method == Method::FRIF;
        std::optional<ResamplingMap> map;
        Signal h = g;
        double inv_length = 0.0;
        if (warped) {
            map.emplace(compute_resampling(ell));
            h = resample(g, *map);
            inv_length = map->m_total();
        } else {
            inv_length = 1.0 / ell.mean();
        }
        const CirculantRow row = circulant_row(kernel, g.size(), inv_length);
        SpectrumState state(h, row);
        for (int m = 0; m < steps; ++m) {
            state.step();
            Signal iterate = state.inverse();
            if (warped)
                iterate = inverse_resample(iterate, *map);
            errs.push_back(relative_error(iterate, truth));
        }
        return errs;
    }
    case Method::ALIF:
    case Method::SALIF: {
        const DenseOperator op = build_alif_matrix(kernel, ell, g.size());
        Eigen::VectorXd cur = Eigen::Map<const Eigen::VectorXd>(
            g.values().data(), static_cast<Eigen::Index>(g.size()));
        double s2 = 1.0;
        if (cfg.method == Method::SALIF) {
            const double n1 = op.matrix.cwiseAbs().colwise().sum().maxCoeff();
            const double ni = op.matrix.cwiseAbs().rowwise().sum().maxCoeff();
            s2 = n1 * ni;
        }
        for (int m = 0; m < steps; ++m) {
            if (cfg.method == Method::ALIF)
                cur = (cur - op.matrix * cur).eval();
            else
                cur = (cur - (op.matrix.transpose() * (op.matrix * cur)) / s2).eval();
            errs.push_back(relative_error(
                Signal(std::vector<double>(cur.data(), cur.data() + cur.size())), truth));
        }
        return errs;
    }
    case Method::RIF_DENSE: {
        const RifDenseOperator op = build_rif_dense(kernel, ell, g.size());
        Eigen::VectorXd cur = Eigen::Map<const Eigen::VectorXd>(
            g.values().data(), static_cast<Eigen::Index>(g.size()));
        for (int m = 0; m < steps; ++m) {
            cur = (cur - op.a_scaled * op.d.cwiseProduct(cur)).eval();
            errs.push_back(relative_error(
                Signal(std::vector<double>(cur.data(), cur.data() + cur.size())), truth));
        }
        return errs;
    }
    }
    throw std::invalid_argument("convergence_trace: unknown method");
}

} // namespace iterfilt
