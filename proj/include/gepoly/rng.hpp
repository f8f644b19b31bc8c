#pragma once

#include <cstdint>

namespace gepoly {

// Counter-based generator (splitmix64): the state advances by a fixed odd
// constant and each output is a finalizer hash of the counter, so streams
// derived from (seed, stream_id) are reproducible regardless of thread
// scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    // Independent stream `stream_id` of a master seed.
    SplitMix64(std::uint64_t seed, std::uint64_t stream_id)
        : state_(mix(seed + mix(stream_id + 0x9E3779B97F4A7C15ull))) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // uniform on the open interval (0,1)
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    // standard normal via Box-Muller (pairs cached)
    double normal();

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Kahan-compensated accumulator for the heavy-tailed Monte Carlo sums.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double get() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace gepoly
