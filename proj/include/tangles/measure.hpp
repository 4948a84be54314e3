#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "tangles/mixture.hpp"
#include "tangles/qmc.hpp"
#include "tangles/quadrature.hpp"
#include "tangles/regions.hpp"

namespace tangles {

enum class MeasureMethod { ClosedForm, Quadrature, Qmc };
enum class MeasureSide { Exact, LowerBound, UpperBound };

struct MeasureResult {
    double value = 0.0;
    MeasureMethod method = MeasureMethod::ClosedForm;
    double error = 0.0;  // reported for non-closed-form methods
    MeasureSide side = MeasureSide::Exact;
};

struct MeasureOptions {
    double quad_tol = 1e-9;
    int64_t qmc_points = 1 << 20;
    int qmc_replicates = 16;
    uint64_t qmc_seed = 0x6d656173ULL;
};

// The delta/2-neighborhood of a component mean: every pair of points inside
// is adjacent in the delta-graph.
inline RegionPtr ball_around_mean(const MixtureSpec& spec, int k, double delta) {
    spec.check_component(k);
    if (!(delta > 0.0)) throw std::invalid_argument("ball_around_mean: delta must be positive");
    return region::ball(spec.component(k).mean, delta / 2.0);
}

namespace detail {

// Measure of Ball(center, radius) intersected with optional per-axis caps
// [cap_lo, cap_hi], under a spherical Gaussian (mean, sigma).  One axis is
// integrated numerically; the cross sections recurse until d = 1.
struct AxisCaps {
    const double* lo = nullptr;  // may be null (no caps)
    const double* hi = nullptr;
};

inline double capped_ball_measure(const double* center, double radius, const double* mean,
                                  double sigma, int d, AxisCaps caps, double tol) {
    double a = center[0] - radius, b = center[0] + radius;
    if (caps.lo) {
        a = std::max(a, caps.lo[0]);
        b = std::min(b, caps.hi[0]);
    }
    if (!(a <= b) || radius < 0.0) return 0.0;
    if (d == 1) return normal_cdf(b, mean[0], sigma) - normal_cdf(a, mean[0], sigma);

    AxisCaps sub;
    if (caps.lo) {
        sub.lo = caps.lo + 1;
        sub.hi = caps.hi + 1;
    }
    const auto slice = [&](double x) {
        const double t = x - center[0];
        const double rem_sq = radius * radius - t * t;
        if (rem_sq <= 0.0) return 0.0;
        return normal_pdf(x, mean[0], sigma) *
               capped_ball_measure(center + 1, std::sqrt(rem_sq), mean + 1, sigma, d - 1, sub,
                                   tol * 0.01);
    };
    return integrate(slice, a, b, tol);
}

// Householder-style orthonormal basis whose first row is u.
inline std::vector<Vec> orthonormal_with_first(const Vec& u) {
    const int d = static_cast<int>(u.size());
    std::vector<Vec> basis(d, Vec(d, 0.0));
    basis[0] = u;
    int next = 1;
    for (int e = 0; e < d && next < d; ++e) {
        Vec v(d, 0.0);
        v[e] = 1.0;
        for (int r = 0; r < next; ++r) {
            double proj = 0.0;
            for (int j = 0; j < d; ++j) proj += v[j] * basis[r][j];
            for (int j = 0; j < d; ++j) v[j] -= proj * basis[r][j];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 1e-8) {
            for (double& x : v) x /= norm;
            basis[next++] = v;
        }
    }
    if (next != d) throw std::logic_error("orthonormal_with_first: basis construction failed");
    return basis;
}

// Ball measure with a slab constraint low <= x.u <= high (either side may be
// infinite) under a spherical component.  Rotates so the slab is axis 0.
inline double ball_slab_measure(const Vec& center, double radius, double slab_lo, double slab_hi,
                                const Vec& u, const Vec& mean, double sigma, double tol) {
    const int d = static_cast<int>(center.size());
    const auto basis = orthonormal_with_first(u);
    Vec rc(d, 0.0), rm(d, 0.0);
    for (int r = 0; r < d; ++r)
        for (int j = 0; j < d; ++j) {
            rc[r] += basis[r][j] * center[j];
            rm[r] += basis[r][j] * mean[j];
        }
    Vec cap_lo(d, -std::numeric_limits<double>::infinity());
    Vec cap_hi(d, std::numeric_limits<double>::infinity());
    cap_lo[0] = slab_lo;
    cap_hi[0] = slab_hi;
    AxisCaps caps{cap_lo.data(), cap_hi.data()};
    return capped_ball_measure(rc.data(), radius, rm.data(), sigma, d, caps, tol);
}

}  // namespace detail

MeasureResult measure(const MixtureSpec& spec, const Region& region, int k,
                      const MeasureOptions& opt);

namespace detail {

inline MeasureResult qmc_region_measure(const MixtureSpec& spec, const Region& region, int k,
                                        const MeasureOptions& opt) {
    const int d = spec.dimension();
    const Component& c = spec.component(k);
    QmcOptions qopt;
    qopt.total_points = opt.qmc_points;
    qopt.replicates = opt.qmc_replicates;
    qopt.seed = mix64(opt.qmc_seed, static_cast<uint64_t>(k));
    Vec x(d);
    thread_local Vec scratch;
    const QmcEstimate est = qmc_mean(d, qopt, [&](const double* u) {
        for (int j = 0; j < d; ++j) x[j] = c.mean[j] + c.stddev * normal_quantile(u[j]);
        return region.contains(x.data()) ? 1.0 : 0.0;
    });
    MeasureResult r;
    r.value = std::min(std::max(est.value, 0.0), 1.0);
    r.method = MeasureMethod::Qmc;
    r.error = est.std_error;
    return r;
}

inline MeasureResult ball_measure(const MixtureSpec& spec, const Vec& center, double radius,
                                  int k, const MeasureOptions& opt) {
    const int d = spec.dimension();
    const Component& c = spec.component(k);
    MeasureResult r;
    if (radius <= 0.0) {
        r.value = 0.0;
        return r;
    }
    if (d == 1) {
        r.value = normal_cdf(center[0] + radius, c.mean[0], c.stddev) -
                  normal_cdf(center[0] - radius, c.mean[0], c.stddev);
        return r;
    }
    if (d <= 3) {
        detail::AxisCaps caps;
        r.value = detail::capped_ball_measure(center.data(), radius, c.mean.data(), c.stddev, d,
                                              caps, opt.quad_tol);
        r.method = MeasureMethod::Quadrature;
        r.error = opt.quad_tol;
        return r;
    }
    // d >= 4: largest inscribed hypercube, a closed-form lower bound.
    const double half = radius / std::sqrt(static_cast<double>(d));
    double prod = 1.0;
    for (int j = 0; j < d; ++j)
        prod *= normal_cdf(center[j] + half, c.mean[j], c.stddev) -
                normal_cdf(center[j] - half, c.mean[j], c.stddev);
    r.value = prod;
    r.side = MeasureSide::LowerBound;
    return r;
}

inline MeasureResult box_measure(const Component& c, const Vec& lo, const Vec& hi) {
    MeasureResult r;
    double prod = 1.0;
    for (size_t j = 0; j < lo.size(); ++j)
        prod *= normal_cdf(hi[j], c.mean[j], c.stddev) - normal_cdf(lo[j], c.mean[j], c.stddev);
    r.value = prod;
    return r;
}

// Intersection special cases with exact or quadrature paths; falls through to
// QMC on the raw predicate.
inline MeasureResult intersection_measure(const MixtureSpec& spec, const Region& region, int k,
                                          const MeasureOptions& opt) {
    const Region& A = *region.child;
    const Region& B = *region.child2;
    if (region_contains(A, B)) return measure(spec, B, k, opt);
    if (region_contains(B, A)) return measure(spec, A, k, opt);
    if (region_disjoint(A, B)) return MeasureResult{};

    const Component& c = spec.component(k);
    auto try_pair = [&](const Region& p, const Region& q) -> std::optional<MeasureResult> {
        // Interval /\ Interval.
        if (p.kind == RegionKind::Interval && q.kind == RegionKind::Interval) {
            const double a = std::max(p.a, q.a), b = std::min(p.b, q.b);
            MeasureResult r;
            r.value = a <= b ? normal_cdf(b, c.mean[0], c.stddev) -
                                   normal_cdf(a, c.mean[0], c.stddev)
                             : 0.0;
            return r;
        }
        // Interval /\ Halfspace in 1D.
        if (p.kind == RegionKind::Interval && q.kind == RegionKind::Halfspace && q.dim == 1) {
            double a = p.a, b = p.b;
            if (q.normal[0] > 0)
                b = std::min(b, q.offset / q.normal[0]);
            else
                a = std::max(a, q.offset / q.normal[0]);
            MeasureResult r;
            r.value = a <= b ? normal_cdf(b, c.mean[0], c.stddev) -
                                   normal_cdf(a, c.mean[0], c.stddev)
                             : 0.0;
            return r;
        }
        // Box /\ Box.
        if (p.kind == RegionKind::Box && q.kind == RegionKind::Box) {
            Vec lo(p.dim), hi(p.dim);
            for (int j = 0; j < p.dim; ++j) {
                lo[j] = std::max(p.lo[j], q.lo[j]);
                hi[j] = std::min(p.hi[j], q.hi[j]);
                if (lo[j] > hi[j]) return MeasureResult{};
            }
            return box_measure(c, lo, hi);
        }
        // Ball /\ Halfspace.
        if (p.kind == RegionKind::Ball && q.kind == RegionKind::Halfspace && p.dim <= 3) {
            MeasureResult r;
            r.value = detail::ball_slab_measure(p.center, p.radius,
                                                -std::numeric_limits<double>::infinity(),
                                                q.offset, q.normal, c.mean, c.stddev,
                                                opt.quad_tol);
            r.method = p.dim == 1 ? MeasureMethod::ClosedForm : MeasureMethod::Quadrature;
            r.error = p.dim == 1 ? 0.0 : opt.quad_tol;
            return r;
        }
        // Ball /\ slab (boundary zone of a halfspace).
        if (p.kind == RegionKind::Ball && q.kind == RegionKind::BoundaryZone &&
            q.child->kind == RegionKind::Halfspace && p.dim <= 3) {
            MeasureResult r;
            r.value = detail::ball_slab_measure(p.center, p.radius, q.child->offset - q.delta,
                                                q.child->offset + q.delta, q.child->normal,
                                                c.mean, c.stddev, opt.quad_tol);
            r.method = MeasureMethod::Quadrature;
            r.error = opt.quad_tol;
            return r;
        }
        // Ball /\ Box (axis-aligned caps).
        if (p.kind == RegionKind::Ball && q.kind == RegionKind::Box && p.dim <= 3) {
            detail::AxisCaps caps{q.lo.data(), q.hi.data()};
            MeasureResult r;
            r.value = detail::capped_ball_measure(p.center.data(), p.radius, c.mean.data(),
                                                  c.stddev, p.dim, caps, opt.quad_tol);
            r.method = MeasureMethod::Quadrature;
            r.error = opt.quad_tol;
            return r;
        }
        // Ball /\ box ring (boundary zone of a box): big minus shrunk.
        if (p.kind == RegionKind::Ball && q.kind == RegionKind::BoundaryZone &&
            q.child->kind == RegionKind::Box && p.dim <= 3) {
            const Region& s = *q.child;
            Vec big_lo(s.dim), big_hi(s.dim), small_lo(s.dim), small_hi(s.dim);
            bool have_hole = true;
            for (int j = 0; j < s.dim; ++j) {
                big_lo[j] = s.lo[j] - q.delta;
                big_hi[j] = s.hi[j] + q.delta;
                small_lo[j] = s.lo[j] + q.delta;
                small_hi[j] = s.hi[j] - q.delta;
                if (small_lo[j] >= small_hi[j]) have_hole = false;
            }
            detail::AxisCaps big_caps{big_lo.data(), big_hi.data()};
            MeasureResult r;
            r.value = detail::capped_ball_measure(p.center.data(), p.radius, c.mean.data(),
                                                  c.stddev, p.dim, big_caps, opt.quad_tol);
            if (have_hole) {
                detail::AxisCaps small_caps{small_lo.data(), small_hi.data()};
                r.value -= detail::capped_ball_measure(p.center.data(), p.radius, c.mean.data(),
                                                       c.stddev, p.dim, small_caps, opt.quad_tol);
            }
            r.method = MeasureMethod::Quadrature;
            r.error = 2.0 * opt.quad_tol;
            return r;
        }
        return std::nullopt;
    };

    if (auto r = try_pair(A, B)) return *r;
    if (auto r = try_pair(B, A)) return *r;
    return qmc_region_measure(spec, region, k, opt);
}

inline MeasureResult boundary_zone_measure(const MixtureSpec& spec, const Region& zone, int k,
                                           const MeasureOptions& opt) {
    const Region& s = *zone.child;
    const double dl = zone.delta;
    const Component& c = spec.component(k);
    MeasureResult r;
    switch (s.kind) {
        case RegionKind::Halfspace: {
            double t = 0.0;
            for (int j = 0; j < s.dim; ++j) t += c.mean[j] * s.normal[j];
            r.value = normal_cdf(s.offset + dl, t, c.stddev) -
                      normal_cdf(s.offset - dl, t, c.stddev);
            return r;
        }
        case RegionKind::Interval: {
            // Two end zones, merged if they overlap.
            const double a1 = s.a - dl, b2 = s.b + dl;
            if (s.b - s.a <= 2.0 * dl) {
                r.value = normal_cdf(b2, c.mean[0], c.stddev) - normal_cdf(a1, c.mean[0], c.stddev);
            } else {
                r.value = (normal_cdf(s.a + dl, c.mean[0], c.stddev) -
                           normal_cdf(a1, c.mean[0], c.stddev)) +
                          (normal_cdf(b2, c.mean[0], c.stddev) -
                           normal_cdf(s.b - dl, c.mean[0], c.stddev));
            }
            return r;
        }
        case RegionKind::Ball: {
            const MeasureResult big = ball_measure(spec, s.center, s.radius + dl, k, opt);
            const MeasureResult small =
                ball_measure(spec, s.center, std::max(s.radius - dl, 0.0), k, opt);
            r.value = big.value - small.value;
            r.method = big.method;
            r.error = big.error + small.error;
            if (big.side != MeasureSide::Exact || small.side != MeasureSide::Exact) {
                // Difference of bounds is not itself a bound; fall back.
                return qmc_region_measure(spec, zone, k, opt);
            }
            return r;
        }
        case RegionKind::Box: {
            Vec big_lo(s.dim), big_hi(s.dim), small_lo(s.dim), small_hi(s.dim);
            bool have_hole = true;
            for (int j = 0; j < s.dim; ++j) {
                big_lo[j] = s.lo[j] - dl;
                big_hi[j] = s.hi[j] + dl;
                small_lo[j] = s.lo[j] + dl;
                small_hi[j] = s.hi[j] - dl;
                if (small_lo[j] >= small_hi[j]) have_hole = false;
            }
            r = box_measure(c, big_lo, big_hi);
            if (have_hole) r.value -= box_measure(c, small_lo, small_hi).value;
            return r;
        }
        default: {
            MeasureResult q = qmc_region_measure(spec, zone, k, opt);
            if (boundary_zone_is_outer_approx(zone)) q.side = MeasureSide::UpperBound;
            return q;
        }
    }
}

}  // namespace detail

// nu_k(region): the Gaussian measure of the region under component k.
inline MeasureResult measure(const MixtureSpec& spec, const Region& region, int k,
                             const MeasureOptions& opt = {}) {
    spec.check_component(k);
    if (region.dim != spec.dimension())
        throw DimensionMismatch("measure: region dimension != mixture dimension");
    const Component& c = spec.component(k);
    switch (region.kind) {
        case RegionKind::Interval: {
            MeasureResult r;
            r.value = normal_cdf(region.b, c.mean[0], c.stddev) -
                      normal_cdf(region.a, c.mean[0], c.stddev);
            return r;
        }
        case RegionKind::Halfspace: {
            double t = 0.0;
            for (int j = 0; j < region.dim; ++j) t += c.mean[j] * region.normal[j];
            MeasureResult r;
            r.value = normal_cdf((region.offset - t) / c.stddev);
            return r;
        }
        case RegionKind::Box:
            return detail::box_measure(c, region.lo, region.hi);
        case RegionKind::Ball:
            return detail::ball_measure(spec, region.center, region.radius, k, opt);
        case RegionKind::VoronoiCell:
            return detail::qmc_region_measure(spec, region, k, opt);
        case RegionKind::Complement: {
            MeasureResult r = measure(spec, *region.child, k, opt);
            r.value = 1.0 - r.value;
            if (r.side == MeasureSide::LowerBound)
                r.side = MeasureSide::UpperBound;
            else if (r.side == MeasureSide::UpperBound)
                r.side = MeasureSide::LowerBound;
            return r;
        }
        case RegionKind::Intersection:
            return detail::intersection_measure(spec, region, k, opt);
        case RegionKind::BoundaryZone:
            return detail::boundary_zone_measure(spec, region, k, opt);
    }
    throw UnsupportedRegion("measure: unhandled region kind");
}

// nu-bar(region) = sum_k r_k nu_k(region).
inline MeasureResult measure_mean(const MixtureSpec& spec, const Region& region,
                                  const MeasureOptions& opt = {}) {
    MeasureResult total;
    for (int k = 0; k < spec.num_components(); ++k) {
        const double rk = spec.component(k).ratio.to_double();
        const MeasureResult part = measure(spec, region, k, opt);
        total.value += rk * part.value;
        total.error += rk * part.error;
        if (static_cast<int>(part.method) > static_cast<int>(total.method))
            total.method = part.method;
        if (part.side != MeasureSide::Exact) total.side = part.side;
    }
    return total;
}

}  // namespace tangles
