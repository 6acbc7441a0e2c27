#pragma once

#include <cstddef>

// Per-backend entry points. The avx2 translation unit is compiled with
// -mavx2 -mfma; everything else stays on the default ISA and selects through
// the dispatch table in dispatch.cpp.

namespace sqm::kernels::scalar {
void lorentzian_sum(const double* grid, std::size_t n_grid, const double* centers,
                    std::size_t n_centers, double alpha, double gamma, double* out);
double dot(const double* a, const double* b, std::size_t n);
double screened_mode_sum(const double* w, const double* k2, std::size_t n, double rho);
double abs_neighbor_diff_sum(const double* x, std::size_t n, bool periodic);
double sq_dev_sum(const double* x, const double* c, std::size_t n);
} // namespace sqm::kernels::scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SQM_HAVE_AVX2_BUILD 1
namespace sqm::kernels::avx2 {
void lorentzian_sum(const double* grid, std::size_t n_grid, const double* centers,
                    std::size_t n_centers, double alpha, double gamma, double* out);
double dot(const double* a, const double* b, std::size_t n);
double screened_mode_sum(const double* w, const double* k2, std::size_t n, double rho);
double abs_neighbor_diff_sum(const double* x, std::size_t n, bool periodic);
double sq_dev_sum(const double* x, const double* c, std::size_t n);
} // namespace sqm::kernels::avx2
#endif
