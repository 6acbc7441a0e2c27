#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "sqm/errors.hpp"
#include "sqm/fourier.hpp"
#include "sqm/rng.hpp"

using namespace sqm;

TEST_CASE("constant field has only the zero mode") {
    const std::vector<double> field(32, 4.2);
    const FourierField f = fourier_forward(field, Boundary::periodic);
    CHECK(std::abs(f.mode(0)) > 0.0);
    for (int n = 1; n < 16; ++n) {
        CHECK(std::abs(f.mode(n)) < 1e-12);
        CHECK(std::abs(f.mode(-n)) < 1e-12);
    }
}

TEST_CASE("round-trip is the identity to 1e-10") {
    CounterRng rng = CounterRng::stream(2, 0);
    for (int n : {2, 5, 20, 4096}) {
        std::vector<double> field(n);
        for (auto& x : field) x = 1.0 + 0.1 * rng.next_gaussian();
        const std::vector<double> back =
            fourier_inverse(fourier_forward(field, Boundary::periodic, 1.0));
        double max_err = 0.0;
        for (int j = 0; j < n; ++j) max_err = std::max(max_err, std::abs(back[j] - field[j]));
        CHECK(max_err <= 1e-10);
    }
}

TEST_CASE("pure cosine of mode 3 carries amplitude A sqrt(L) / 2") {
    const int n = 60;
    const double amp = 0.7;
    std::vector<double> field(n);
    for (int j = 0; j < n; ++j)
        field[j] = amp * std::cos(2.0 * std::numbers::pi * 3.0 * j / n);
    const FourierField f = fourier_forward(field, Boundary::periodic);
    const double expected = amp * std::sqrt(static_cast<double>(n)) / 2.0;
    CHECK(std::abs(f.mode(3)) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(std::abs(f.mode(-3)) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("hermitian symmetry for real input") {
    CounterRng rng = CounterRng::stream(4, 0);
    std::vector<double> field(24);
    for (auto& x : field) x = rng.next_gaussian();
    const FourierField f = fourier_forward(field, Boundary::periodic);
    for (int n = 1; n < 12; ++n) {
        const auto c = f.mode(n), cm = f.mode(-n);
        CHECK(c.real() == doctest::Approx(cm.real()).epsilon(1e-12));
        CHECK(c.imag() == doctest::Approx(-cm.imag()).epsilon(1e-12));
    }
}

TEST_CASE("open boundary is rejected") {
    const std::vector<double> field(8, 1.0);
    CHECK_THROWS_AS(fourier_forward(field, Boundary::open), ValidationError);
}

TEST_CASE("mean splits off the fluctuation") {
    // with mean = 1 the zero mode holds only the sample-mean deviation
    std::vector<double> field(16, 1.0);
    field[3] += 0.16;
    const FourierField f = fourier_forward(field, Boundary::periodic, 1.0);
    // c_0 = sqrt(L) * (sample mean - 1) = 4 * 0.01
    CHECK(f.mode(0).real() == doctest::Approx(0.04).epsilon(1e-12));
}
