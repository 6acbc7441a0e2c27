#include "sqm/kernels.hpp"

#include <cstdlib>
#include <mutex>

#include "kernels_impl.hpp"
#include "sqm/errors.hpp"

namespace sqm::kernels {

namespace {

struct Table {
    void (*lorentzian_sum)(const double*, std::size_t, const double*, std::size_t,
                           double, double, double*);
    double (*dot)(const double*, const double*, std::size_t);
    double (*screened_mode_sum)(const double*, const double*, std::size_t, double);
    double (*abs_neighbor_diff_sum)(const double*, std::size_t, bool);
    double (*sq_dev_sum)(const double*, const double*, std::size_t);
    std::string name;
};

Table scalar_table() {
    return {scalar::lorentzian_sum, scalar::dot, scalar::screened_mode_sum,
            scalar::abs_neighbor_diff_sum, scalar::sq_dev_sum, "scalar"};
}

bool avx2_supported() {
#ifdef SQM_HAVE_AVX2_BUILD
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Table avx2_table() {
#ifdef SQM_HAVE_AVX2_BUILD
    return {avx2::lorentzian_sum, avx2::dot, avx2::screened_mode_sum,
            avx2::abs_neighbor_diff_sum, avx2::sq_dev_sum, "avx2"};
#else
    return scalar_table();
#endif
}

Table g_table;     // guarded by g_init
std::once_flag g_init;

void select(const std::string& name) {
    if (name == "scalar") {
        g_table = scalar_table();
    } else if (name == "avx2") {
        if (!avx2_supported())
            throw ValidationError("SQM_KERNELS=avx2 requested but the CPU lacks AVX2+FMA");
        g_table = avx2_table();
    } else if (name == "auto" || name.empty()) {
        g_table = avx2_supported() ? avx2_table() : scalar_table();
    } else {
        throw ValidationError("unknown kernel backend '" + name + "' (scalar|avx2|auto)");
    }
}

const Table& table() {
    std::call_once(g_init, [] {
        const char* env = std::getenv("SQM_KERNELS");
        select(env ? env : "auto");
    });
    return g_table;
}

} // namespace

void set_backend(const std::string& name) {
    std::call_once(g_init, [] {});  // make sure later table() calls don't overwrite
    select(name);
}

const std::string& backend() { return table().name; }

void lorentzian_sum(const double* grid, std::size_t n_grid, const double* centers,
                    std::size_t n_centers, double alpha, double gamma, double* out) {
    table().lorentzian_sum(grid, n_grid, centers, n_centers, alpha, gamma, out);
}

double dot(const double* a, const double* b, std::size_t n) {
    return table().dot(a, b, n);
}

void periodic_autocorr(const double* x, std::size_t n, std::size_t max_lag, double* out) {
    // Wrap-around split: lag m is one contiguous dot of length n-m plus the
    // m-term wrapped remainder; both pieces vectorize.
    for (std::size_t m = 0; m <= max_lag; ++m) {
        double s = table().dot(x, x + m, n - m);
        if (m > 0) s += table().dot(x + (n - m), x, m);
        out[m] = s / static_cast<double>(n);
    }
}

double screened_mode_sum(const double* w, const double* k2, std::size_t n, double rho) {
    return table().screened_mode_sum(w, k2, n, rho);
}

double abs_neighbor_diff_sum(const double* x, std::size_t n, bool periodic) {
    return table().abs_neighbor_diff_sum(x, n, periodic);
}

double sq_dev_sum(const double* x, const double* c, std::size_t n) {
    return table().sq_dev_sum(x, c, n);
}

} // namespace sqm::kernels
