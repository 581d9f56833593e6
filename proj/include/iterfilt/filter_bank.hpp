#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace iterfilt {

/// An even, nonnegative, compactly supported convolution kernel with unit
/// mass. Either closed form (triangular) or tabulated on a uniform grid
/// with linear interpolation in between.
class FilterKernel {
public:
    enum class Kind {
        triangular,              ///< max(0, 1-|z|), support [-1,1]
        double_convolved_cosine, ///< cosine window convolved with itself
        uniform,                 ///< building block: 1 on [-1/2,1/2]
        cosine_window,           ///< building block: (pi/4) cos(pi z/2) on [-1,1]
        tabulated,               ///< generic sampled kernel
    };

    double operator()(double z) const;
    double half_support() const noexcept { return half_support_; }
    Kind kind() const noexcept { return kind_; }

    static FilterKernel triangular();
    static FilterKernel uniform();
    static FilterKernel cosine_window();
    /// Table spans [-half_support, half_support] uniformly, values.front()
    /// and values.back() at the support edges.
    static FilterKernel tabulated(std::vector<double> table, double half_support,
                                  Kind kind = Kind::tabulated);

private:
    FilterKernel(Kind kind, double half_support) : kind_(kind), half_support_(half_support) {}

    Kind kind_;
    double half_support_;
    std::shared_ptr<const std::vector<double>> table_; // null for closed forms
};

/// First row of the Hermitian circulant smoothing matrix, normalized to be
/// row-stochastic. scale is the factor the raw entries were multiplied by.
struct CirculantRow {
    std::vector<double> entries;
    double scale = 1.0;
};

/// Built-in kernels: triangular (uniform convolved with itself, closed
/// form) or double_convolved_cosine (numerically self-convolved cosine
/// window, rescaled to support [-1,1] and normalized to unit mass).
FilterKernel make_filter(FilterKernel::Kind kind);

/// Tabulated convolution k(z) = int omega(t) omega(z-t) dt over the doubled
/// support, computed by refined composite trapezoid quadrature. resolution
/// is the number of table subintervals (>= 256). No normalization: the
/// result's mass is (mass of omega)^2 up to quadrature error.
FilterKernel self_convolve(const FilterKernel& omega, int resolution = 4096);

/// Samples k at grid step inv_length/n (entry j carries k(j*inv_length/n)
/// times that step, mirrored for j > n/2) and normalizes the row to sum 1.
/// Throws ConfigError when the filter support does not fit half a period.
CirculantRow circulant_row(const FilterKernel& k, std::size_t n, double inv_length);

/// DFT of the row. Hermitian symmetry makes it real; the imaginary residue
/// is checked against 1e-10 and dropped. Entry 0 is the row sum (= 1).
std::vector<double> spectral_symbol(const CirculantRow& row);

} // namespace iterfilt
