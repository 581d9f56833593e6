#include "iterfilt/dense_engines.hpp"

#include "iterfilt/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <stdexcept>

namespace iterfilt {

namespace {

// Periodic distance wrapped into (-1/2, 1/2].
double wrap_unit(double d) {
    double w = std::remainder(d, 1.0);
    if (w == -0.5)
        w = 0.5;
    return w;
}

double wrap_period(double d, double period) {
    double w = std::remainder(d, period);
    if (w == -period / 2.0)
        w = period / 2.0;
    return w;
}

// Shared sifting loop: `apply` maps the current iterate to the next one.
template <typename Apply>
SiftResult run_sift(const Signal& g, const StoppingConfig& stop, double scale, Apply&& apply) {
    stop.validate();
    Eigen::VectorXd cur = Eigen::Map<const Eigen::VectorXd>(g.values().data(),
                                                            static_cast<Eigen::Index>(g.size()));
    const double initial_norm = cur.norm();

    SiftResult result{Signal(g.values()), 0, {}, false, scale};
    for (int m = 1; m <= stop.max_iter; ++m) {
        Eigen::VectorXd next = apply(cur);
        const double den = cur.norm();
        const double sv = den == 0.0 ? 0.0 : (next - cur).norm() / den;
        result.history.push_back(sv);
        result.iterations = m;
        cur.swap(next);
        if (sv <= stop.delta)
            break;
        if (initial_norm > 0.0 && cur.norm() > 1e6 * initial_norm) {
            result.diverged = true;
            break;
        }
    }
    std::vector<double> out(cur.data(), cur.data() + cur.size());
    result.imf = Signal(std::move(out));
    return result;
}

} // namespace

DenseOperator build_alif_matrix(const FilterKernel& k, const LengthFunction& ell, std::size_t n) {
    if (n != ell.size())
        throw std::invalid_argument("build_alif_matrix: n must match the length function");
    const double grid_step = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        if (ell[i] * k.half_support() < grid_step)
            throw ConfigError("build_alif_matrix: grid too coarse for the length function");

    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    double scale_acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double li = ell[i];
        const double xi = static_cast<double>(i) * grid_step;
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = wrap_unit(xi - static_cast<double>(j) * grid_step);
            const double v = k(d / li) / (static_cast<double>(n) * li);
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            row_sum += v;
        }
        if (!(row_sum > 0.0))
            throw ConfigError("build_alif_matrix: a row sums to zero");
        m.row(static_cast<Eigen::Index>(i)) /= row_sum;
        scale_acc += row_sum;
    }
    return DenseOperator{std::move(m), DenseOperator::Normalization::row_stochastic,
                         scale_acc / static_cast<double>(n)};
}

SiftResult alif_sift(const DenseOperator& op, const Signal& g, const StoppingConfig& stop) {
    if (op.n() != g.size())
        throw std::invalid_argument("alif_sift: operator/signal size mismatch");
    return run_sift(g, stop, op.scale_used,
                    [&](const Eigen::VectorXd& cur) { return (cur - op.matrix * cur).eval(); });
}

SiftResult salif_sift(const DenseOperator& op, const Signal& g, const StoppingConfig& stop) {
    if (op.n() != g.size())
        throw std::invalid_argument("salif_sift: operator/signal size mismatch");
    const double norm1 = op.matrix.cwiseAbs().colwise().sum().maxCoeff();
    const double norm_inf = op.matrix.cwiseAbs().rowwise().sum().maxCoeff();
    const double s2 = norm1 * norm_inf; // >= |K|_2^2 for any K
    return run_sift(g, stop, std::sqrt(s2), [&](const Eigen::VectorXd& cur) {
        return (cur - (op.matrix.transpose() * (op.matrix * cur)) / s2).eval();
    });
}

RifDenseOperator build_rif_dense(const FilterKernel& k, const LengthFunction& ell, std::size_t n) {
    if (n != ell.size())
        throw std::invalid_argument("build_rif_dense: n must match the length function");
    const double grid_step = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        if (ell[i] * k.half_support() < grid_step)
            throw ConfigError("build_rif_dense: grid too coarse for the length function");

    const ResamplingMap map = compute_resampling(ell);
    const double m_total = map.m_total();

    Eigen::VectorXd d(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        d(static_cast<Eigen::Index>(i)) = 1.0 / ell[i];

    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double hi = map.g_inv_node(i);
        for (std::size_t j = 0; j <= i; ++j) {
            const double diff = wrap_period(hi - map.g_inv_node(j), m_total);
            const double v = k(diff) / static_cast<double>(n - 1);
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    }

    // Power iteration on S = D^{1/2} A D^{1/2} (symmetric PSD). The Rayleigh
    // quotient approaches the top eigenvalue from below; the final estimate
    // is inflated by 1e-11 relative to absorb the residual underestimate.
    const Eigen::VectorXd d_sqrt = d.cwiseSqrt();
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unit(0.5, 1.5);
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        v(static_cast<Eigen::Index>(i)) = unit(rng);
    v.normalize();

    const auto budget =
        std::clamp<long>(static_cast<long>(2e9 / (static_cast<double>(n) * static_cast<double>(n))),
                         300L, 20000L);
    double rho = 0.0;
    for (long it = 0; it < budget; ++it) {
        Eigen::VectorXd w = d_sqrt.asDiagonal() * (a * (d_sqrt.asDiagonal() * v));
        const double rayleigh = v.dot(w);
        const double wn = w.norm();
        if (wn == 0.0)
            break;
        v = w / wn;
        if (it > 32 && std::abs(rayleigh - rho) <= 1e-14 * std::abs(rayleigh)) {
            rho = rayleigh;
            break;
        }
        rho = rayleigh;
    }
    rho *= 1.0 + 1e-11;

    return RifDenseOperator{a / rho, std::move(d), rho};
}

SiftResult rif_dense_sift(const RifDenseOperator& op, const Signal& g, const StoppingConfig& stop) {
    if (static_cast<std::size_t>(op.d.size()) != g.size())
        throw std::invalid_argument("rif_dense_sift: operator/signal size mismatch");
    return run_sift(g, stop, op.rho, [&](const Eigen::VectorXd& cur) {
        return (cur - op.a_scaled * op.d.cwiseProduct(cur)).eval();
    });
}

SpectralReport spectral_diagnostics(const DenseOperator& op) {
    if (op.n() > 2048)
        throw BudgetError("spectral_diagnostics: n exceeds the dense budget of 2048; "
                          "use the circulant spectral symbol instead");

    // Symmetric operators (constant-length smoothing) get the self-adjoint
    // solver; the general Schur path splits their degenerate eigenvalue
    // pairs into spurious complex conjugates.
    const double scale = op.matrix.cwiseAbs().maxCoeff();
    const bool symmetric =
        (op.matrix - op.matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * std::max(scale, 1.0);

    Eigen::VectorXcd vals;
    if (symmetric) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix,
                                                              Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw InternalError("spectral_diagnostics: eigensolver failed to converge");
        vals = solver.eigenvalues().cast<std::complex<double>>();
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> solver(op.matrix, /*computeEigenvectors=*/false);
        if (solver.info() != Eigen::Success)
            throw InternalError("spectral_diagnostics: eigensolver failed to converge");
        vals = solver.eigenvalues();
    }

    SpectralReport report;
    report.eigenvalues.reserve(static_cast<std::size_t>(vals.size()));
    double worst = 0.0;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        const std::complex<double> lambda = vals(i);
        report.eigenvalues.push_back(lambda);
        const double dist = std::abs(1.0 - lambda);
        worst = std::max(worst, dist);
        if (dist > 1.0 + 1e-9)
            ++report.num_violations;
        if (std::abs(lambda.imag()) > 1e-9)
            ++report.num_complex;
    }
    report.max_violation = std::max(0.0, worst - 1.0);
    return report;
}

} // namespace iterfilt
