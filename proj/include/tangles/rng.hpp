#pragma once

#include <cstdint>

namespace tangles {

// Counter-based pseudo-randomness: every value is a pure function of the key
// tuple, so draws are reproducible independent of iteration order and thread
// schedule.

inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t a, uint64_t b) { return mix64(mix64(a) ^ (b + 0x517cc1b727220a95ULL)); }
inline uint64_t mix64(uint64_t a, uint64_t b, uint64_t c) { return mix64(mix64(a, b), c); }
inline uint64_t mix64(uint64_t a, uint64_t b, uint64_t c, uint64_t d) { return mix64(mix64(a, b, c), d); }

// Uniform in the open interval (0,1); 53 mantissa bits, never 0 or 1.
inline double uniform01(uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Sequential substream addressed by a key; used where a natural counter
// (column index, trial index) is not available.
class RngStream {
public:
    explicit RngStream(uint64_t key) : key_(key), counter_(0) {}
    uint64_t next_bits() { return mix64(key_, counter_++); }
    double next_uniform() { return uniform01(next_bits()); }

private:
    uint64_t key_;
    uint64_t counter_;
};

}  // namespace tangles
