#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sqm/config.hpp"

namespace sqm {

/// Mode decomposition of a real periodic lattice field,
///   field(x_j) = mean + (1/sqrt(L)) * sum_n c_n exp(i 2 pi n x_j / L),
/// with modes stored in DFT order (index m holds n = m for m <= N/2,
/// n = m - N otherwise). Hermitian symmetry c_{-n} = conj(c_n) holds exactly
/// for real input.
struct FourierField {
    std::vector<std::complex<double>> modes;
    double length = 0.0;  // L = N a
    double mean = 0.0;    // reference value subtracted before the transform

    int n_modes() const { return static_cast<int>(modes.size()); }

    /// Signed-index access, n in [-N/2, N/2).
    std::complex<double> mode(int n) const;

    /// Wavenumber 2 pi n / L for the signed index.
    double wavenumber(int n) const;
};

/// Forward transform; open-boundary fields are rejected (the decomposition
/// assumes periodicity). `mean` is the reference subtracted from the field
/// (0 keeps the full field, including its average, in the modes).
FourierField fourier_forward(std::span<const double> field, Boundary boundary,
                             double mean = 0.0);

/// Inverse of fourier_forward: rebuilds mean + fluctuation on the lattice.
std::vector<double> fourier_inverse(const FourierField& field);

/// Unnormalized forward DFT of a real row-major rows x cols array,
/// F_q = sum_x f(x) exp(-i q.x); used for square-lattice mode weights.
std::vector<std::complex<double>> dft_2d(std::span<const double> field, int rows, int cols);

} // namespace sqm
