#include "sqm/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "sqm/errors.hpp"

namespace sqm {

namespace {

// FFTW plan creation is not thread-safe and ESTIMATE plans are deterministic
// per size, so plans live in a small cache and each transform holds the
// cache entry's lock while copying through the plan's own buffers.
struct PlanEntry {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    std::mutex mtx;
};

std::mutex g_cache_mtx;
std::map<std::pair<int, int>, PlanEntry*> g_cache;  // (rows, cols); cols = 0 for 1D

PlanEntry& plan_for(int rows, int cols) {
    std::lock_guard<std::mutex> lock(g_cache_mtx);
    auto key = std::make_pair(rows, cols);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return *it->second;
    auto* e = new PlanEntry;
    const int n = cols == 0 ? rows : rows * cols;
    e->in = fftw_alloc_complex(n);
    e->out = fftw_alloc_complex(n);
    if (cols == 0) {
        e->forward = fftw_plan_dft_1d(rows, e->in, e->out, FFTW_FORWARD, FFTW_ESTIMATE);
        e->backward = fftw_plan_dft_1d(rows, e->in, e->out, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
        e->forward = fftw_plan_dft_2d(rows, cols, e->in, e->out, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    g_cache.emplace(key, e);
    return *e;
}

} // namespace

std::complex<double> FourierField::mode(int n) const {
    const int N = n_modes();
    int m = n % N;
    if (m < 0) m += N;
    return modes[m];
}

double FourierField::wavenumber(int n) const {
    return 2.0 * M_PI * n / length;
}

FourierField fourier_forward(std::span<const double> field, Boundary boundary, double mean) {
    if (boundary != Boundary::periodic)
        throw ValidationError("mode decomposition requires periodic boundary");
    const int n = static_cast<int>(field.size());
    if (n < 2) throw ValidationError("mode decomposition needs at least 2 sites");

    FourierField out;
    out.length = static_cast<double>(n);  // a = 1
    out.mean = mean;
    out.modes.resize(n);

    PlanEntry& plan = plan_for(n, 0);
    std::lock_guard<std::mutex> lock(plan.mtx);
    for (int j = 0; j < n; ++j) {
        plan.in[j][0] = field[j] - mean;
        plan.in[j][1] = 0.0;
    }
    fftw_execute(plan.forward);
    // c_n = (sqrt(L)/N) * F_n
    const double scale = std::sqrt(out.length) / n;
    for (int m = 0; m < n; ++m)
        out.modes[m] = {plan.out[m][0] * scale, plan.out[m][1] * scale};
    return out;
}

std::vector<double> fourier_inverse(const FourierField& field) {
    const int n = field.n_modes();
    if (n < 2) throw ValidationError("mode decomposition needs at least 2 sites");
    PlanEntry& plan = plan_for(n, 0);
    std::lock_guard<std::mutex> lock(plan.mtx);
    for (int m = 0; m < n; ++m) {
        plan.in[m][0] = field.modes[m].real();
        plan.in[m][1] = field.modes[m].imag();
    }
    fftw_execute(plan.backward);
    // f_j = mean + (1/sqrt(L)) * sum c_n e^{+i...}; FFTW backward is unnormalized.
    const double scale = 1.0 / std::sqrt(field.length);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = field.mean + plan.out[j][0] * scale;
    return out;
}

std::vector<std::complex<double>> dft_2d(std::span<const double> field, int rows, int cols) {
    if (rows < 2 || cols < 2)
        throw ValidationError("2D transform needs at least 2x2 sites");
    if (static_cast<int>(field.size()) != rows * cols)
        throw ValidationError("2D transform: field size does not match rows*cols");
    PlanEntry& plan = plan_for(rows, cols);
    std::lock_guard<std::mutex> lock(plan.mtx);
    for (int j = 0; j < rows * cols; ++j) {
        plan.in[j][0] = field[j];
        plan.in[j][1] = 0.0;
    }
    fftw_execute(plan.forward);
    std::vector<std::complex<double>> out(rows * cols);
    for (int j = 0; j < rows * cols; ++j) out[j] = {plan.out[j][0], plan.out[j][1]};
    return out;
}

} // namespace sqm
