#include <lapacke.h>

#include <cmath>
#include <vector>

#include "sqm/errors.hpp"
#include "sqm/spinon.hpp"

namespace sqm {

// Basis: sigma_x product states, bit i clear = sigma_x(i) eigenvalue +1.
// The field term is diagonal; a z-z bond flips the two x-spins it touches
// with matrix element Ktilde/4 and no sign. The global x-parity
// (-1)^popcount is diagonal and commutes with H.
DenseSpectrum dense_solve(const SpinChainSpec& spec) {
    const int n = static_cast<int>(spec.splittings.size());
    if (n < 1) throw ValidationError("dense_solve: empty chain");
    if (n > 12) throw ValidationError("dense_solve: N must be <= 12 (2^N memory guard)");
    const std::size_t dim = 1ull << n;

    std::vector<double> h(dim * dim, 0.0);
    for (std::size_t s = 0; s < dim; ++s) {
        double e = 0.0;
        for (int i = 0; i < n; ++i)
            e += 0.5 * spec.splittings[i] * ((s >> i) & 1 ? -1.0 : 1.0);
        h[s * dim + s] = e;
        for (int i = 0; i + 1 < n; ++i) {
            const std::size_t t = s ^ (3ull << i);  // flip x-spins i, i+1
            h[t * dim + s] += 0.25 * spec.coupling;
        }
    }

    std::vector<double> w(dim);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L',
                                           static_cast<lapack_int>(dim), h.data(),
                                           static_cast<lapack_int>(dim), w.data());
    if (info != 0)
        throw SolverError("dense_solve: dsyevd failed with info = " + std::to_string(info));

    DenseSpectrum out;
    out.energies = std::move(w);
    out.parities.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        // Eigenvectors live in one parity sector; read it off the dominant weight.
        double even = 0.0, odd = 0.0;
        const double* v = h.data() + k * dim;
        for (std::size_t s = 0; s < dim; ++s) {
            const double p = v[s] * v[s];
            if (__builtin_parityll(s)) odd += p;
            else even += p;
        }
        out.parities[k] = even >= odd ? 1 : -1;
    }
    out.ground_vector.assign(h.begin(), h.begin() + dim);
    return out;
}

} // namespace sqm
