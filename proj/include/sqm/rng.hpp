#pragma once

#include <cstdint>
#include <string_view>

namespace sqm {

/// 64-bit counter-based generator (SplitMix64 output function over a
/// keyed counter). State is (key, counter); jumping to any counter value
/// is O(1), so independent streams are cheap and draws are reproducible
/// and order-independent across threads.
///
/// Streams: stream(seed, id) derives an unrelated key, one stream per
/// realization index by convention.
class CounterRng {
public:
    CounterRng() : CounterRng(0) {}
    explicit CounterRng(std::uint64_t key) : key_(key), counter_(0) {}

    static CounterRng stream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 random bits.
    double next_double();

    /// Standard normal via Box-Muller; draws are consumed in pairs and the
    /// spare is cached, so a fixed draw sequence is fully reproducible.
    double next_gaussian();

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// SplitMix64 finalizer; also used as the stable scalar hash behind
/// derive_seed and stream keys.
std::uint64_t mix64(std::uint64_t x);

/// Stable 64-bit seed for (master seed, sweep point, realization).
/// Deterministic and order-free, so parallel schedules cannot change it.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point_index,
                          std::uint64_t realization_index);

/// FNV-1a 64-bit digest, used for config hashes and manifest entries.
std::uint64_t fnv1a64(std::string_view bytes);

} // namespace sqm
