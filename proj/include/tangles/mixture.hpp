#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tangles/errors.hpp"
#include "tangles/normal.hpp"
#include "tangles/rational.hpp"
#include "tangles/rng.hpp"

namespace tangles {

using Vec = std::vector<double>;

struct Component {
    Rational ratio;
    Vec mean;
    double stddev = 1.0;
};

// Spherical Gaussian mixture: dimension, and per component a ratio (exact
// rational), a mean in R^d and a standard deviation.
class MixtureSpec {
public:
    MixtureSpec(int dimension, std::vector<Component> components)
        : d_(dimension), components_(std::move(components)) {
        if (d_ < 1) throw std::invalid_argument("MixtureSpec: dimension must be >= 1");
        if (components_.empty()) throw std::invalid_argument("MixtureSpec: needs >= 1 component");
        Rational total(0);
        for (const auto& c : components_) {
            if (!c.ratio.positive())
                throw std::invalid_argument("MixtureSpec: ratios must be positive");
            if (static_cast<int>(c.mean.size()) != d_)
                throw DimensionMismatch("MixtureSpec: mean length != dimension");
            if (!(c.stddev > 0.0))
                throw std::invalid_argument("MixtureSpec: stddev must be positive");
            total = total + c.ratio;
        }
        if (total != Rational(1))
            throw std::invalid_argument("MixtureSpec: ratios must sum to 1 exactly, got " +
                                        total.str());
    }

    int dimension() const { return d_; }
    int num_components() const { return static_cast<int>(components_.size()); }
    const Component& component(int k) const {
        check_component(k);
        return components_[k];
    }
    const std::vector<Component>& components() const { return components_; }

    bool equal_stddevs() const {
        for (const auto& c : components_)
            if (c.stddev != components_[0].stddev) return false;
        return true;
    }

    void check_component(int k) const {
        if (k < 0 || k >= num_components())
            throw InvalidIndex("component index " + std::to_string(k) + " out of range");
    }

private:
    int d_;
    std::vector<Component> components_;
};

// Assignment of each data index to its generating component, with the counts
// n_k = r_k * n fixed exactly.
class HiddenLabeling {
public:
    // Canonical block layout: first n_1 indices labeled 0, next n_2 labeled 1, ...
    static HiddenLabeling blocks(const MixtureSpec& spec, long long n);

    long long n() const { return static_cast<long long>(labels_.size()); }
    int label(long long i) const { return labels_[static_cast<size_t>(i)]; }
    const std::vector<long long>& counts() const { return counts_; }

    HiddenLabeling(std::vector<int> labels, int num_components)
        : labels_(std::move(labels)), counts_(num_components, 0) {
        for (int l : labels_) {
            if (l < 0 || l >= num_components) throw InvalidIndex("label out of range");
            ++counts_[l];
        }
    }

private:
    std::vector<int> labels_;
    std::vector<long long> counts_;
};

// Column-major d x n data matrix, column i = point i, plus the seed that
// generated it.
struct Dataset {
    int d = 0;
    long long n = 0;
    uint64_t seed = 0;
    std::vector<double> values;  // column-major: point i at values[i*d .. i*d+d)

    const double* point(long long i) const { return values.data() + i * d; }
    double* point(long long i) { return values.data() + i * d; }
};

// Returns the counts (n_k) iff every r_k * n is an integer; throws
// IncompatibleError naming the offending component otherwise.
inline std::vector<long long> compatible_counts(const MixtureSpec& spec, long long n) {
    if (n < 1) throw std::invalid_argument("compatible_counts: n must be >= 1");
    std::vector<long long> counts;
    counts.reserve(spec.num_components());
    for (int k = 0; k < spec.num_components(); ++k) {
        const Rational& r = spec.component(k).ratio;
        if (!r.times_is_integral(n))
            throw IncompatibleError(n, k,
                                    "n = " + std::to_string(n) + " is not compatible: r_" +
                                        std::to_string(k) + " * n = " + r.str() + " * " +
                                        std::to_string(n) + " is not an integer");
        counts.push_back(r.times(n));
    }
    return counts;
}

inline HiddenLabeling HiddenLabeling::blocks(const MixtureSpec& spec, long long n) {
    const auto counts = compatible_counts(spec, n);
    std::vector<int> labels;
    labels.reserve(static_cast<size_t>(n));
    for (int k = 0; k < spec.num_components(); ++k)
        labels.insert(labels.end(), static_cast<size_t>(counts[k]), k);
    return HiddenLabeling(std::move(labels), spec.num_components());
}

// Draws the dataset: column i is an independent spherical-Gaussian draw with
// the parameters of component label(i).  Coordinate j of column i derives
// from the counter key (seed, i, j), so the result is bit-identical for a
// given seed regardless of evaluation order.
inline Dataset sample_dataset(const MixtureSpec& spec, const HiddenLabeling& labeling,
                              uint64_t seed) {
    for (int k = 0; k < spec.num_components(); ++k) {
        if (labeling.counts()[k] != spec.component(k).ratio.times(labeling.n()) ||
            !spec.component(k).ratio.times_is_integral(labeling.n()))
            throw IncompatibleError(labeling.n(), k, "labeling counts do not match the ratios");
    }
    Dataset ds;
    ds.d = spec.dimension();
    ds.n = labeling.n();
    ds.seed = seed;
    ds.values.resize(static_cast<size_t>(ds.d) * static_cast<size_t>(ds.n));
    for (long long i = 0; i < ds.n; ++i) {
        const Component& comp = spec.component(labeling.label(i));
        double* col = ds.point(i);
        for (int j = 0; j < ds.d; ++j) {
            const double u = uniform01(mix64(seed, static_cast<uint64_t>(i), static_cast<uint64_t>(j)));
            col[j] = comp.mean[j] + comp.stddev * normal_quantile(u);
        }
    }
    return ds;
}

// Density of component k at x.
inline double density_at(const MixtureSpec& spec, const double* x, int k) {
    spec.check_component(k);
    const Component& c = spec.component(k);
    double q = 0.0;
    for (int j = 0; j < spec.dimension(); ++j) {
        const double z = (x[j] - c.mean[j]) / c.stddev;
        q += z * z;
    }
    const double norm = std::pow(kInvSqrt2Pi / c.stddev, spec.dimension());
    return norm * std::exp(-0.5 * q);
}

inline double density_at(const MixtureSpec& spec, const Vec& x, int k) {
    if (static_cast<int>(x.size()) != spec.dimension())
        throw DimensionMismatch("density_at: point length != dimension");
    return density_at(spec, x.data(), k);
}

// Mean density f-bar = sum_k r_k f_k.
inline double mean_density_at(const MixtureSpec& spec, const double* x) {
    double total = 0.0;
    for (int k = 0; k < spec.num_components(); ++k)
        total += spec.component(k).ratio.to_double() * density_at(spec, x, k);
    return total;
}

inline double mean_density_at(const MixtureSpec& spec, const Vec& x) {
    if (static_cast<int>(x.size()) != spec.dimension())
        throw DimensionMismatch("mean_density_at: point length != dimension");
    return mean_density_at(spec, x.data());
}

// 1D helpers used by the threshold searches and closed-form measures.
inline double mean_density_1d(const MixtureSpec& spec, double x) {
    if (spec.dimension() != 1) throw DimensionMismatch("mean_density_1d: d != 1");
    return mean_density_at(spec, &x);
}

inline double mean_cdf_1d(const MixtureSpec& spec, double x) {
    if (spec.dimension() != 1) throw DimensionMismatch("mean_cdf_1d: d != 1");
    double total = 0.0;
    for (const auto& c : spec.components())
        total += c.ratio.to_double() * normal_cdf(x, c.mean[0], c.stddev);
    return total;
}

// Convenience constructor for the recurring two-component 1D family:
// means 0 and lambda, stddevs sigma and alpha*sigma, ratios r and 1-r.
inline MixtureSpec two_gaussians_1d(double lambda, Rational r = Rational(1, 2),
                                    double alpha = 1.0, double sigma = 1.0) {
    return MixtureSpec(1, {{r, {0.0}, sigma}, {Rational(1) - r, {lambda}, alpha * sigma}});
}

// d-dimensional base case: two spherical components with means 0 and
// lambda*e1 and common sigma.
inline MixtureSpec two_gaussians(int d, double lambda, double sigma = 1.0) {
    Vec mu0(d, 0.0), mu1(d, 0.0);
    mu1[0] = lambda;
    return MixtureSpec(d, {{Rational(1, 2), mu0, sigma}, {Rational(1, 2), mu1, sigma}});
}

// Three spherical 2D components on an equilateral triangle with side lambda.
inline MixtureSpec equilateral_triangle(double lambda, double sigma = 1.0) {
    const double h = lambda * std::sqrt(3.0) / 2.0;
    return MixtureSpec(2, {{Rational(1, 3), {0.0, 0.0}, sigma},
                           {Rational(1, 3), {lambda, 0.0}, sigma},
                           {Rational(1, 3), {lambda / 2.0, h}, sigma}});
}

}  // namespace tangles
