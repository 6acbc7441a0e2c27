#include "kernels_impl.hpp"

namespace sqm::kernels::scalar {

void lorentzian_sum(const double* grid, std::size_t n_grid,
                    const double* centers, std::size_t n_centers,
                    double alpha, double gamma, double* out) {
    const double g2 = gamma * gamma;
    for (std::size_t g = 0; g < n_grid; ++g) {
        const double w = grid[g];
        double acc = 0.0;
        for (std::size_t i = 0; i < n_centers; ++i) {
            const double d = w - centers[i];
            acc += alpha / (d * d + g2);
        }
        out[g] = acc;
    }
}

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double screened_mode_sum(const double* w, const double* k2, std::size_t n, double rho) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double den = rho * k2[i] + 1.0;
        acc += w[i] * k2[i] / (den * den);
    }
    return acc;
}

double abs_neighbor_diff_sum(const double* x, std::size_t n, bool periodic) {
    double acc = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = x[i] - x[i - 1];
        acc += d < 0.0 ? -d : d;
    }
    if (periodic && n > 1) {
        const double d = x[0] - x[n - 1];
        acc += d < 0.0 ? -d : d;
    }
    return acc;
}

double sq_dev_sum(const double* x, const double* c, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - c[i];
        acc += d * d;
    }
    return acc;
}

} // namespace sqm::kernels::scalar
