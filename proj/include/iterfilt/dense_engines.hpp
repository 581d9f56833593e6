#pragma once

#include "iterfilt/filter_bank.hpp"
#include "iterfilt/resampler.hpp"
#include "iterfilt/signal.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace iterfilt {

/// Dense realization of a smoothing operator.
struct DenseOperator {
    enum class Normalization { row_stochastic, raw };

    Eigen::MatrixXd matrix;
    Normalization normalization = Normalization::raw;
    double scale_used = 1.0;

    std::size_t n() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
};

/// Interpolation-free resampled operator pair: iteration matrix is
/// I - a_scaled * diag(d), where a_scaled = A / rho and rho is a power-
/// iteration estimate of the top eigenvalue of D^{1/2} A D^{1/2}.
struct RifDenseOperator {
    Eigen::MatrixXd a_scaled;
    Eigen::VectorXd d;
    double rho = 1.0;
};

/// Full eigenvalue set of a smoothing matrix with the convergence
/// condition |1 - lambda| <= 1 checked per eigenvalue.
struct SpectralReport {
    std::vector<std::complex<double>> eigenvalues;
    int num_violations = 0;
    double max_violation = 0.0; ///< max(|1-lambda|) - 1, clipped at 0
    int num_complex = 0;        ///< eigenvalues with |Im| > 1e-9
};

/// Outcome of one inner sifting loop.
struct SiftResult {
    Signal imf;
    int iterations = 0;
    std::vector<double> history; ///< stopping value after each step
    bool diverged = false;
    double scale_used = 1.0;
};

/// K[i][j] = k(wrap(x_i - x_j)/l(x_i)) / (n l(x_i)), rows normalized to
/// sum 1. The periodic distance wraps into (-1/2, 1/2]. Throws ConfigError
/// when the local filter support is narrower than the grid step.
DenseOperator build_alif_matrix(const FilterKernel& k, const LengthFunction& ell, std::size_t n);

/// Iterates g <- g - K g until the relative update drops below delta or
/// max_iter is reached. May legitimately diverge; growth beyond 1e6x the
/// initial norm aborts with the diverged flag set.
SiftResult alif_sift(const DenseOperator& op, const Signal& g, const StoppingConfig& stop);

/// Stabilized iteration g <- g - s^{-2} K^T K g with s = sqrt(|K|_1 |K|_inf)
/// (an upper bound on |K|_2), so the per-step 2-norm never increases.
SiftResult salif_sift(const DenseOperator& op, const Signal& g, const StoppingConfig& stop);

/// A[i][j] = k(wrap_M(H(x_i) - H(x_j)))/(n-1) with H = G^{-1} extended
/// periodically, D = diag(1/l). A is filled symmetrically (exact equality).
RifDenseOperator build_rif_dense(const FilterKernel& k, const LengthFunction& ell, std::size_t n);

/// Iterates g <- g - a_scaled (d .* g); non-expansive in the D^{1/2}-
/// weighted norm.
SiftResult rif_dense_sift(const RifDenseOperator& op, const Signal& g, const StoppingConfig& stop);

/// Dense eigensolve (n <= 2048) with violation counts of the convergence
/// condition. Throws BudgetError beyond the size budget.
SpectralReport spectral_diagnostics(const DenseOperator& op);

} // namespace iterfilt
