#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tangles/rng.hpp"

namespace tangles {

// Generalized Halton sequence with multiplicative digit scrambling.  The
// scramble keeps plain Halton's low discrepancy in low dimensions and breaks
// the lattice correlation of high prime bases.  Estimates are produced from
// randomly shifted replicates (Cranley-Patterson), which also gives an
// honest standard error.

namespace detail {

inline const std::vector<int>& primes() {
    static const std::vector<int> p = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                       41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    return p;
}

inline int scramble_multiplier(int base) {
    if (base <= 3) return 1;
    int w = static_cast<int>(0.618 * base);
    while (std::gcd(w, base) != 1 || w <= 1) ++w;
    return w;
}

inline double scrambled_radical_inverse(uint64_t i, int base, int mult) {
    double inv = 1.0 / base, f = inv, result = 0.0;
    while (i > 0) {
        const int digit = static_cast<int>(i % base);
        result += f * ((digit * mult) % base);
        i /= base;
        f *= inv;
    }
    return result;
}

}  // namespace detail

class HaltonSequence {
public:
    explicit HaltonSequence(int dim) : dim_(dim) {
        if (dim > static_cast<int>(detail::primes().size()))
            throw std::invalid_argument("HaltonSequence: dimension too large");
        for (int j = 0; j < dim; ++j) {
            bases_.push_back(detail::primes()[j]);
            mults_.push_back(detail::scramble_multiplier(bases_[j]));
        }
    }

    int dim() const { return dim_; }

    // Writes point number i (1-based) into out[0..dim).
    void point(uint64_t i, double* out) const {
        for (int j = 0; j < dim_; ++j)
            out[j] = detail::scrambled_radical_inverse(i, bases_[j], mults_[j]);
    }

private:
    int dim_;
    std::vector<int> bases_;
    std::vector<int> mults_;
};

struct QmcEstimate {
    double value = 0.0;
    double std_error = 0.0;
    int64_t points = 0;
};

struct QmcOptions {
    int64_t total_points = 1 << 20;
    int replicates = 16;
    uint64_t seed = 0x7a6e676c65ULL;
};

// Mean of eval(u) for u uniform on [0,1)^dim.  eval must be pure.
template <typename F>
QmcEstimate qmc_mean(int dim, const QmcOptions& opt, F&& eval) {
    const HaltonSequence seq(dim);
    const int reps = opt.replicates;
    const int64_t per_rep = std::max<int64_t>(1, opt.total_points / reps);
    std::vector<double> shift(dim), u(dim);
    std::vector<double> rep_means(reps);
    for (int r = 0; r < reps; ++r) {
        for (int j = 0; j < dim; ++j)
            shift[j] = uniform01(mix64(opt.seed, static_cast<uint64_t>(r), static_cast<uint64_t>(j)));
        double acc = 0.0;
        for (int64_t i = 1; i <= per_rep; ++i) {
            seq.point(static_cast<uint64_t>(i), u.data());
            for (int j = 0; j < dim; ++j) {
                u[j] += shift[j];
                if (u[j] >= 1.0) u[j] -= 1.0;
            }
            acc += eval(u.data());
        }
        rep_means[r] = acc / static_cast<double>(per_rep);
    }
    double mean = 0.0;
    for (double m : rep_means) mean += m;
    mean /= reps;
    double var = 0.0;
    for (double m : rep_means) var += (m - mean) * (m - mean);
    var = reps > 1 ? var / (reps - 1) : 0.0;
    QmcEstimate est;
    est.value = mean;
    est.std_error = std::sqrt(var / reps);
    est.points = per_rep * reps;
    return est;
}

}  // namespace tangles
