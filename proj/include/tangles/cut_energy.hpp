#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "tangles/measure.hpp"
#include "tangles/weight.hpp"

namespace tangles {

// cut_energy(S, w) = integral over S x comp(S) of w(x,y) fbar(x) fbar(y).
// Ordered: the first density argument lives on the S side.  Three paths:
// closed-inner quadrature in 1D, a chi-distribution reduction for halfspace
// cuts with collinear means in higher dimensions, and QMC pair sampling as
// the general fallback.

struct CutEnergyResult {
    double value = 0.0;
    double error = 0.0;
    MeasureMethod method = MeasureMethod::Quadrature;
};

struct CutEnergyOptions {
    double quad_tol = 1e-12;
    int64_t qmc_points = 1 << 20;
    int qmc_replicates = 16;
    uint64_t qmc_seed = 0x63757465ULL;
};

namespace detail {

struct Gaussian1d {
    double mean;
    double sigma;
};

// One-sided threshold cut in 1D: S = (-inf, c] when upper_side is false,
// S = [c, inf) when true.
struct ThresholdCut {
    double c;
    bool upper_side;
};

// Recognize S as a 1D threshold cut, unwrapping complements.
inline std::optional<ThresholdCut> as_threshold_1d(const Region& s) {
    if (s.dim != 1) return std::nullopt;
    if (s.kind == RegionKind::Halfspace) {
        if (s.normal[0] > 0) return ThresholdCut{s.offset / s.normal[0], false};
        return ThresholdCut{s.offset / s.normal[0], true};
    }
    if (s.kind == RegionKind::Complement) {
        if (auto t = as_threshold_1d(*s.child)) return ThresholdCut{t->c, !t->upper_side};
        return std::nullopt;
    }
    return std::nullopt;
}

// Pair cut-energy for the delta kernel in 1D with S = (-inf,c]:
//   int_{c-r}^{c} f_a(x) (F_b(x+r) - F_b(c)) dx.
inline double delta_pair_threshold_1d(const Gaussian1d& fa, const Gaussian1d& fb, double c,
                                      bool upper_side, double r, double tol) {
    if (!(r > 0.0)) return 0.0;
    if (upper_side) {
        // S = [c, inf): mirror both densities around c.
        return delta_pair_threshold_1d({2.0 * c - fa.mean, fa.sigma},
                                       {2.0 * c - fb.mean, fb.sigma}, c, false, r, tol);
    }
    const auto f = [&](double x) {
        return normal_pdf(x, fa.mean, fa.sigma) *
               (normal_cdf(x + r, fb.mean, fb.sigma) - normal_cdf(c, fb.mean, fb.sigma));
    };
    return integrate(f, c - r, c, tol);
}

// Pair cut-energy for the delta kernel in 1D with S = [a,b]: contributions
// across both endpoints.
inline double delta_pair_interval_1d(const Gaussian1d& fa, const Gaussian1d& fb, double a,
                                     double b, double r, double tol) {
    if (!(r > 0.0)) return 0.0;
    const auto f = [&](double x) {
        double inner = 0.0;
        if (x - r < a)
            inner += normal_cdf(a, fb.mean, fb.sigma) -
                     normal_cdf(std::min(x - r, a), fb.mean, fb.sigma);
        if (x + r > b)
            inner += normal_cdf(std::max(x + r, b), fb.mean, fb.sigma) -
                     normal_cdf(b, fb.mean, fb.sigma);
        return normal_pdf(x, fa.mean, fa.sigma) * inner;
    };
    // Split at the interior kink points for the adaptive rule.
    double total = 0.0;
    const double k1 = std::min(a + r, b), k2 = std::max(b - r, a);
    if (k2 > k1) {
        total += integrate(f, a, k1, tol);
        total += integrate(f, k1, k2, tol);
        total += integrate(f, k2, b, tol);
    } else {
        total += integrate(f, a, b, tol);
    }
    return total;
}

// Pair cut-energy for the Gaussian kernel in 1D, S = (-inf,c] or [c,inf).
// Inner integral is closed form by the Gaussian product rule:
//   int_{S-bar} exp(-(x-y)^2/2w^2) f_b(y) dy
//     = sqrt(v)/sigma_b * exp(-(x-mu_b)^2 / (2(w^2+sigma_b^2))) * tail,
//   v = w^2 sigma_b^2/(w^2+sigma_b^2),  m = (sigma_b^2 x + w^2 mu_b)/(w^2+sigma_b^2).
inline double kernel_pair_threshold_1d(const Gaussian1d& fa, const Gaussian1d& fb, double c,
                                       bool upper_side, double w, double tol) {
    if (upper_side) {
        return kernel_pair_threshold_1d({2.0 * c - fa.mean, fa.sigma},
                                        {2.0 * c - fb.mean, fb.sigma}, c, false, w, tol);
    }
    const double w2 = w * w, s2 = fb.sigma * fb.sigma;
    const double v = w2 * s2 / (w2 + s2);
    const auto inner = [&](double x) {
        const double m = (s2 * x + w2 * fb.mean) / (w2 + s2);
        const double z = (x - fb.mean);
        return std::sqrt(v) / fb.sigma * std::exp(-z * z / (2.0 * (w2 + s2))) *
               (1.0 - normal_cdf((c - m) / std::sqrt(v)));
    };
    const auto f = [&](double x) { return normal_pdf(x, fa.mean, fa.sigma) * inner(x); };
    const double scale = std::max({fa.sigma, fb.sigma, w});
    const double lo = std::min({fa.mean, fb.mean, c}) - 12.0 * scale;
    return integrate(f, lo, c, tol);
}

inline double chi_pdf(double t, int nu) {
    if (!(t > 0.0)) return 0.0;
    return std::exp((nu - 1) * std::log(t) - 0.5 * t * t - (0.5 * nu - 1.0) * std::numbers::ln2 -
                    std::lgamma(0.5 * nu));
}

// Halfspace cut {x.u <= c} in dimension d >= 2, delta kernel, component pair
// whose mean difference is parallel to u.  The perpendicular offset of the
// pair is then a centered (d-1)-dimensional Gaussian with variance
// sigma_a^2 + sigma_b^2 per axis, so its norm s is a scaled chi variable and
//   cutE = int_0^delta pdf(s) * C1(sqrt(delta^2 - s^2)) ds
// with C1 the 1D pair cut-energy along u at the reduced radius.
inline double delta_pair_halfspace_aligned(const Gaussian1d& fa, const Gaussian1d& fb, double c,
                                           int d, double delta, double tol) {
    if (d == 1) return delta_pair_threshold_1d(fa, fb, c, false, delta, tol);
    const double tau = std::sqrt(fa.sigma * fa.sigma + fb.sigma * fb.sigma);
    const auto f = [&](double s) {
        const double rem = delta * delta - s * s;
        if (rem <= 0.0) return 0.0;
        return chi_pdf(s / tau, d - 1) / tau *
               delta_pair_threshold_1d(fa, fb, c, false, std::sqrt(rem), tol * 0.01);
    };
    return integrate(f, 0.0, delta, tol);
}

struct HalfspaceCut {
    Vec normal;
    double offset;
};

inline std::optional<HalfspaceCut> as_halfspace(const Region& s) {
    if (s.kind == RegionKind::Halfspace) return HalfspaceCut{s.normal, s.offset};
    if (s.kind == RegionKind::Complement) {
        if (auto h = as_halfspace(*s.child)) {
            Vec neg = h->normal;
            for (double& v : neg) v = -v;
            return HalfspaceCut{neg, -h->offset};
        }
    }
    return std::nullopt;
}

// All pairwise mean differences parallel to u?
inline bool means_collinear_with(const MixtureSpec& spec, const Vec& u) {
    const int d = spec.dimension();
    for (int a = 0; a < spec.num_components(); ++a)
        for (int b = a + 1; b < spec.num_components(); ++b) {
            double along = 0.0, norm_sq = 0.0;
            for (int j = 0; j < d; ++j) {
                const double diff = spec.component(a).mean[j] - spec.component(b).mean[j];
                along += diff * u[j];
                norm_sq += diff * diff;
            }
            if (norm_sq - along * along > 1e-18 * std::max(1.0, norm_sq)) return false;
        }
    return true;
}

// QMC pair sampling from f_a x f_b of w * 1_S(x) * 1_{comp S}(y).
inline CutEnergyResult qmc_pair(const MixtureSpec& spec, int ka, int kb, const Region& s,
                                const WeightModel& w, const CutEnergyOptions& opt) {
    const int d = spec.dimension();
    const Component& ca = spec.component(ka);
    const Component& cb = spec.component(kb);
    QmcOptions qopt{opt.qmc_points, opt.qmc_replicates,
                    mix64(opt.qmc_seed, static_cast<uint64_t>(ka), static_cast<uint64_t>(kb))};
    Vec x(d), y(d);
    const QmcEstimate est = qmc_mean(2 * d, qopt, [&](const double* u) {
        for (int j = 0; j < d; ++j) {
            x[j] = ca.mean[j] + ca.stddev * normal_quantile(u[j]);
            y[j] = cb.mean[j] + cb.stddev * normal_quantile(u[d + j]);
        }
        if (!s.contains(x.data()) || s.contains(y.data())) return 0.0;
        double dist_sq = 0.0;
        for (int j = 0; j < d; ++j) dist_sq += (x[j] - y[j]) * (x[j] - y[j]);
        return w.weight_sq(dist_sq);
    });
    return {std::max(est.value, 0.0), est.std_error, MeasureMethod::Qmc};
}

}  // namespace detail

// Cut energy contribution of the ordered component pair (ka on the S side,
// kb on the complement side), without the ratio factors.
inline CutEnergyResult cut_energy_pair(const MixtureSpec& spec, int ka, int kb, const Region& s,
                                       const WeightModel& w, const CutEnergyOptions& opt = {}) {
    spec.check_component(ka);
    spec.check_component(kb);
    const int d = spec.dimension();

    if (d == 1) {
        const detail::Gaussian1d fa{spec.component(ka).mean[0], spec.component(ka).stddev};
        const detail::Gaussian1d fb{spec.component(kb).mean[0], spec.component(kb).stddev};
        if (auto t = detail::as_threshold_1d(s)) {
            double v;
            if (w.kind == WeightModel::Kind::DeltaNeighborhood)
                v = detail::delta_pair_threshold_1d(fa, fb, t->c, t->upper_side, w.parameter,
                                                    opt.quad_tol);
            else
                v = detail::kernel_pair_threshold_1d(fa, fb, t->c, t->upper_side, w.parameter,
                                                     opt.quad_tol);
            return {v, opt.quad_tol, MeasureMethod::Quadrature};
        }
        if (s.kind == RegionKind::Interval && w.kind == WeightModel::Kind::DeltaNeighborhood) {
            const double v = detail::delta_pair_interval_1d(fa, fb, s.a, s.b, w.parameter,
                                                            opt.quad_tol);
            return {v, opt.quad_tol, MeasureMethod::Quadrature};
        }
    }
    if (d >= 2 && w.kind == WeightModel::Kind::DeltaNeighborhood) {
        if (auto h = detail::as_halfspace(s)) {
            double pa = 0.0, pb = 0.0, norm_sq = 0.0, along = 0.0;
            for (int j = 0; j < d; ++j) {
                pa += spec.component(ka).mean[j] * h->normal[j];
                pb += spec.component(kb).mean[j] * h->normal[j];
                const double diff = spec.component(ka).mean[j] - spec.component(kb).mean[j];
                along += diff * h->normal[j];
                norm_sq += diff * diff;
            }
            if (norm_sq - along * along <= 1e-18 * std::max(1.0, norm_sq)) {
                const detail::Gaussian1d fa{pa, spec.component(ka).stddev};
                const detail::Gaussian1d fb{pb, spec.component(kb).stddev};
                const double v = detail::delta_pair_halfspace_aligned(fa, fb, h->offset, d,
                                                                       w.parameter, opt.quad_tol);
                return {v, opt.quad_tol, MeasureMethod::Quadrature};
            }
        }
    }
    return detail::qmc_pair(spec, ka, kb, s, w, opt);
}

// Mixture cut energy: sum over ordered component pairs with ratio weights.
inline CutEnergyResult cut_energy(const MixtureSpec& spec, const Region& s, const WeightModel& w,
                                  const CutEnergyOptions& opt = {}) {
    CutEnergyResult total;
    total.method = MeasureMethod::Quadrature;
    for (int a = 0; a < spec.num_components(); ++a)
        for (int b = 0; b < spec.num_components(); ++b) {
            const double rr =
                spec.component(a).ratio.to_double() * spec.component(b).ratio.to_double();
            const CutEnergyResult part = cut_energy_pair(spec, a, b, s, w, opt);
            total.value += rr * part.value;
            total.error += rr * part.error;
            if (part.method == MeasureMethod::Qmc) total.method = MeasureMethod::Qmc;
        }
    return total;
}

// sum_k r_k * cutE_pair(k,k): the O(n) correction constant in the expected
// edge connectivity.
inline CutEnergyResult cut_energy_same_component(const MixtureSpec& spec, const Region& s,
                                                 const WeightModel& w,
                                                 const CutEnergyOptions& opt = {}) {
    CutEnergyResult total;
    total.method = MeasureMethod::Quadrature;
    for (int k = 0; k < spec.num_components(); ++k) {
        const double rk = spec.component(k).ratio.to_double();
        const CutEnergyResult part = cut_energy_pair(spec, k, k, s, w, opt);
        total.value += rk * part.value;
        total.error += rk * part.error;
        if (part.method == MeasureMethod::Qmc) total.method = MeasureMethod::Qmc;
    }
    return total;
}

// Delta-model cut energies for a whole grid of deltas, sharing one QMC point
// set per replicate: each sampled pair contributes its straddle indicator and
// distance once, and the per-delta values are read off a distance histogram.
inline std::vector<CutEnergyResult> cut_energy_profile(const MixtureSpec& spec, const Region& s,
                                                       const std::vector<double>& deltas,
                                                       const CutEnergyOptions& opt = {}) {
    const int d = spec.dimension();
    const int m = spec.num_components();
    std::vector<double> sorted = deltas;
    std::sort(sorted.begin(), sorted.end());

    // Quadrature path (cheap per delta) when available.
    const bool quad_ok =
        (d == 1 && (detail::as_threshold_1d(s) || s.kind == RegionKind::Interval)) ||
        (d >= 2 && detail::as_halfspace(s) &&
         detail::means_collinear_with(spec, detail::as_halfspace(s)->normal));
    std::vector<CutEnergyResult> out(deltas.size());
    if (quad_ok) {
        for (size_t i = 0; i < deltas.size(); ++i)
            out[i] = cut_energy(spec, s, WeightModel::delta(deltas[i]), opt);
        return out;
    }

    // QMC path: mixture sampling with component-selector coordinates.
    const int dim = 2 * d + 2;
    const HaltonSequence seq(dim);
    const int reps = opt.qmc_replicates;
    const int64_t per_rep = std::max<int64_t>(1, opt.qmc_points / reps);
    std::vector<double> cum(m);
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
        acc += spec.component(k).ratio.to_double();
        cum[k] = acc;
    }
    const auto pick = [&](double u) {
        for (int k = 0; k < m; ++k)
            if (u < cum[k]) return k;
        return m - 1;
    };
    std::vector<std::vector<double>> rep_vals(deltas.size(), std::vector<double>(reps, 0.0));
    std::vector<double> u(dim), shift(dim);
    Vec x(d), y(d);
    for (int r = 0; r < reps; ++r) {
        for (int j = 0; j < dim; ++j)
            shift[j] = uniform01(mix64(opt.qmc_seed, static_cast<uint64_t>(r),
                                       static_cast<uint64_t>(j)));
        std::vector<int64_t> hist(sorted.size() + 1, 0);
        for (int64_t i = 1; i <= per_rep; ++i) {
            seq.point(static_cast<uint64_t>(i), u.data());
            for (int j = 0; j < dim; ++j) {
                u[j] += shift[j];
                if (u[j] >= 1.0) u[j] -= 1.0;
            }
            const Component& ca = spec.component(pick(u[0]));
            const Component& cb = spec.component(pick(u[1]));
            for (int j = 0; j < d; ++j) {
                x[j] = ca.mean[j] + ca.stddev * normal_quantile(u[2 + j]);
                y[j] = cb.mean[j] + cb.stddev * normal_quantile(u[2 + d + j]);
            }
            if (!s.contains(x.data()) || s.contains(y.data())) continue;
            double dist_sq = 0.0;
            for (int j = 0; j < d; ++j) dist_sq += (x[j] - y[j]) * (x[j] - y[j]);
            const double dist = std::sqrt(dist_sq);
            const auto it = std::lower_bound(sorted.begin(), sorted.end(), dist);
            ++hist[static_cast<size_t>(it - sorted.begin())];
        }
        int64_t cum_hits = 0;
        for (size_t i = 0; i < sorted.size(); ++i) {
            cum_hits += hist[i];
            // hist slot i counts pairs with dist <= sorted[i] not already counted.
            rep_vals[i][r] = static_cast<double>(cum_hits) / static_cast<double>(per_rep);
        }
    }
    for (size_t i = 0; i < sorted.size(); ++i) {
        double mean = 0.0;
        for (int r = 0; r < reps; ++r) mean += rep_vals[i][r];
        mean /= reps;
        double var = 0.0;
        for (int r = 0; r < reps; ++r) var += (rep_vals[i][r] - mean) * (rep_vals[i][r] - mean);
        var = reps > 1 ? var / (reps - 1) : 0.0;
        // Map back to the caller's delta order.
        const size_t pos = static_cast<size_t>(
            std::find(deltas.begin(), deltas.end(), sorted[i]) - deltas.begin());
        out[pos] = {mean, std::sqrt(var / reps), MeasureMethod::Qmc};
    }
    return out;
}

}  // namespace tangles
