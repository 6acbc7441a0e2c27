#include "sqm/rng.hpp"

#include <cmath>
#include <numbers>

namespace sqm {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
} // namespace

std::uint64_t mix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

CounterRng CounterRng::stream(std::uint64_t seed, std::uint64_t stream_id) {
    return CounterRng(mix64(mix64(seed) ^ (stream_id * 0xd6e8feb86659fd93ull)));
}

std::uint64_t CounterRng::next_u64() {
    return mix64(key_ ^ (counter_++ * kGolden));
}

double CounterRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on (0,1] x [0,1) uniforms.
    double u = 1.0 - next_double();
    double v = next_double();
    double r = std::sqrt(-2.0 * std::log(u));
    double t = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point_index,
                          std::uint64_t realization_index) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ (point_index * 0xa0761d6478bd642full));
    h = mix64(h ^ (realization_index * 0xe7037ed1a0b428dbull));
    return h;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace sqm
