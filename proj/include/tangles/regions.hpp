#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "tangles/errors.hpp"
#include "tangles/mixture.hpp"

namespace tangles {

// Symbolic Borel subsets of R^d.  All primitive regions are closed on their
// defining inequality; Complement of a closed region is open.  Values are
// immutable and shared.

class Region;
using RegionPtr = std::shared_ptr<const Region>;

inline double dist_sq(const double* x, const double* y, int d) {
    double q = 0.0;
    for (int j = 0; j < d; ++j) {
        const double t = x[j] - y[j];
        q += t * t;
    }
    return q;
}

enum class RegionKind {
    Halfspace,     // {x : x.u <= c}, |u| = 1
    Interval,      // [a,b], d = 1
    Ball,          // {x : |x - center| <= radius}
    Box,           // [lo,hi] componentwise
    VoronoiCell,   // {x : |x - site| <= |x - other| for all others}, ties in
    Complement,
    Intersection,
    BoundaryZone,  // B_delta[S] /\ B_delta[comp(S)] of the inner region
};

class Region {
public:
    RegionKind kind;
    int dim = 0;

    // Halfspace
    Vec normal;
    double offset = 0.0;
    // Interval
    double a = 0.0, b = 0.0;
    // Ball
    Vec center;
    double radius = 0.0;
    // Box
    Vec lo, hi;
    // VoronoiCell
    int site = -1;
    std::vector<Vec> sites;
    // Complement / Intersection / BoundaryZone
    RegionPtr child, child2;
    double delta = 0.0;

    // dist(x, S) and dist(x, comp(S)); `exact` is false where only a lower
    // bound is available (intersections and polyhedral cells seen from
    // outside).  Lower bounds are the safe direction for every use here: the
    // derived boundary zones can only grow.
    struct Dist {
        double in = 0.0;
        double out = 0.0;
        bool in_exact = true;
        bool out_exact = true;
    };

    bool contains(const double* x) const;
    Dist distances(const double* x) const;

    bool contains(const Vec& x) const {
        if (static_cast<int>(x.size()) != dim)
            throw DimensionMismatch("Region::contains: point dimension mismatch");
        return contains(x.data());
    }
};

namespace region {

inline RegionPtr halfspace(Vec u, double c) {
    double norm = 0.0;
    for (double v : u) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw std::invalid_argument("halfspace: zero normal");
    for (double& v : u) v /= norm;
    auto r = std::make_shared<Region>();
    r->kind = RegionKind::Halfspace;
    r->dim = static_cast<int>(u.size());
    r->normal = std::move(u);
    r->offset = c / norm;
    return r;
}

inline RegionPtr interval(double a, double b) {
    if (!(a <= b)) throw std::invalid_argument("interval: requires a <= b");
    auto r = std::make_shared<Region>();
    r->kind = RegionKind::Interval;
    r->dim = 1;
    r->a = a;
    r->b = b;
    return r;
}

inline RegionPtr ball(Vec center, double radius) {
    if (radius < 0.0) throw std::invalid_argument("ball: negative radius");
    auto r = std::make_shared<Region>();
    r->kind = RegionKind::Ball;
    r->dim = static_cast<int>(center.size());
    r->center = std::move(center);
    r->radius = radius;
    return r;
}

inline RegionPtr box(Vec lo, Vec hi) {
    if (lo.size() != hi.size()) throw DimensionMismatch("box: lo/hi size mismatch");
    for (size_t j = 0; j < lo.size(); ++j)
        if (!(lo[j] <= hi[j])) throw std::invalid_argument("box: requires lo <= hi");
    auto r = std::make_shared<Region>();
    r->kind = RegionKind::Box;
    r->dim = static_cast<int>(lo.size());
    r->lo = std::move(lo);
    r->hi = std::move(hi);
    return r;
}

inline RegionPtr voronoi_cell(int site, std::vector<Vec> sites) {
    if (site < 0 || site >= static_cast<int>(sites.size()))
        throw InvalidIndex("voronoi_cell: site index out of range");
    if (sites.size() < 2) throw std::invalid_argument("voronoi_cell: needs >= 2 sites");
    const size_t d = sites[0].size();
    for (const auto& s : sites)
        if (s.size() != d) throw DimensionMismatch("voronoi_cell: site dimension mismatch");
    auto r = std::make_shared<Region>();
    r->kind = RegionKind::VoronoiCell;
    r->dim = static_cast<int>(d);
    r->site = site;
    r->sites = std::move(sites);
    return r;
}

inline RegionPtr complement(RegionPtr s) {
    if (s->kind == RegionKind::Complement) return s->child;  // involution
    auto r = std::make_shared<Region>();
    r->kind = RegionKind::Complement;
    r->dim = s->dim;
    r->child = std::move(s);
    return r;
}

inline RegionPtr intersection(RegionPtr s, RegionPtr t) {
    if (s->dim != t->dim) throw DimensionMismatch("intersection: dimension mismatch");
    auto r = std::make_shared<Region>();
    r->kind = RegionKind::Intersection;
    r->dim = s->dim;
    r->child = std::move(s);
    r->child2 = std::move(t);
    return r;
}

}  // namespace region

// ---------------------------------------------------------------------------

inline bool Region::contains(const double* x) const {
    switch (kind) {
        case RegionKind::Halfspace: {
            double dot = 0.0;
            for (int j = 0; j < dim; ++j) dot += x[j] * normal[j];
            return dot <= offset;
        }
        case RegionKind::Interval:
            return x[0] >= a && x[0] <= b;
        case RegionKind::Ball: {
            double q = 0.0;
            for (int j = 0; j < dim; ++j) {
                const double t = x[j] - center[j];
                q += t * t;
            }
            return q <= radius * radius;
        }
        case RegionKind::Box:
            for (int j = 0; j < dim; ++j)
                if (x[j] < lo[j] || x[j] > hi[j]) return false;
            return true;
        case RegionKind::VoronoiCell: {
            double own = 0.0;
            for (int j = 0; j < dim; ++j) {
                const double t = x[j] - sites[site][j];
                own += t * t;
            }
            for (int k = 0; k < static_cast<int>(sites.size()); ++k) {
                if (k == site) continue;
                double other = 0.0;
                for (int j = 0; j < dim; ++j) {
                    const double t = x[j] - sites[k][j];
                    other += t * t;
                }
                if (own > other) return false;
            }
            return true;
        }
        case RegionKind::Complement:
            return !child->contains(x);
        case RegionKind::Intersection:
            return child->contains(x) && child2->contains(x);
        case RegionKind::BoundaryZone: {
            if (child->kind == RegionKind::Box) {
                // Per-axis offset ring: expanded box minus the open shrunk box.
                bool in_big = true, in_small_open = true;
                for (int j = 0; j < dim; ++j) {
                    if (x[j] < child->lo[j] - delta || x[j] > child->hi[j] + delta) in_big = false;
                    if (!(x[j] > child->lo[j] + delta && x[j] < child->hi[j] - delta))
                        in_small_open = false;
                }
                return in_big && !in_small_open;
            }
            const Dist d = child->distances(x);
            return d.in <= delta && d.out <= delta;
        }
    }
    return false;
}

inline Region::Dist Region::distances(const double* x) const {
    Dist r;
    switch (kind) {
        case RegionKind::Halfspace: {
            double dot = 0.0;
            for (int j = 0; j < dim; ++j) dot += x[j] * normal[j];
            const double s = dot - offset;
            r.in = std::max(s, 0.0);
            r.out = std::max(-s, 0.0);
            return r;
        }
        case RegionKind::Interval:
            r.in = std::max({a - x[0], x[0] - b, 0.0});
            r.out = (x[0] >= a && x[0] <= b) ? std::min(x[0] - a, b - x[0]) : 0.0;
            return r;
        case RegionKind::Ball: {
            double q = 0.0;
            for (int j = 0; j < dim; ++j) {
                const double t = x[j] - center[j];
                q += t * t;
            }
            const double t = std::sqrt(q);
            r.in = std::max(t - radius, 0.0);
            r.out = std::max(radius - t, 0.0);
            return r;
        }
        case RegionKind::Box: {
            double outside_sq = 0.0;
            double inside_gap = std::numeric_limits<double>::infinity();
            bool inside = true;
            for (int j = 0; j < dim; ++j) {
                const double excess = std::max(lo[j] - x[j], x[j] - hi[j]);
                if (excess > 0.0) {
                    inside = false;
                    outside_sq += excess * excess;
                } else {
                    inside_gap = std::min(inside_gap, std::min(x[j] - lo[j], hi[j] - x[j]));
                }
            }
            r.in = inside ? 0.0 : std::sqrt(outside_sq);
            r.out = inside ? inside_gap : 0.0;
            return r;
        }
        case RegionKind::VoronoiCell: {
            // Signed distance to each bisector halfspace; >= 0 inside.
            double min_s = std::numeric_limits<double>::infinity();
            double max_neg = 0.0;
            for (int k = 0; k < static_cast<int>(sites.size()); ++k) {
                if (k == site) continue;
                double gap = 0.0, dist_sites = 0.0;
                for (int j = 0; j < dim; ++j) {
                    const double tk = x[j] - sites[k][j];
                    const double ti = x[j] - sites[site][j];
                    gap += tk * tk - ti * ti;
                    const double ds = sites[k][j] - sites[site][j];
                    dist_sites += ds * ds;
                }
                const double s = gap / (2.0 * std::sqrt(dist_sites));
                min_s = std::min(min_s, s);
                max_neg = std::max(max_neg, -s);
            }
            r.out = std::max(min_s, 0.0);  // exact: distance to a union of halfspaces
            r.in = max_neg;                // lower bound outside a corner
            r.in_exact = (max_neg == 0.0) || sites.size() == 2;
            return r;
        }
        case RegionKind::Complement: {
            const Dist c = child->distances(x);
            r.in = c.out;
            r.out = c.in;
            r.in_exact = c.out_exact;
            r.out_exact = c.in_exact;
            return r;
        }
        case RegionKind::Intersection: {
            const Dist p = child->distances(x);
            const Dist q = child2->distances(x);
            r.in = std::max(p.in, q.in);
            r.in_exact = (r.in == 0.0) && p.in_exact && q.in_exact;
            r.out = std::min(p.out, q.out);
            r.out_exact = p.out_exact && q.out_exact;
            return r;
        }
        case RegionKind::BoundaryZone:
            throw UnsupportedRegion("distances: boundary zones are terminal regions");
    }
    return r;
}

// ---------------------------------------------------------------------------

// The only region whose points can carry delta-graph edges across the cut S:
// membership predicate dist(x,S) <= delta AND dist(x,comp(S)) <= delta.
// Closed forms exist for halfspaces (slab), intervals (two end zones), balls
// (annulus) and boxes (offset ring, matching the per-axis box algebra); for
// intersections and Voronoi cells the predicate uses lower-bound distances,
// which makes the zone a superset -- the sound direction for the cut bound.
inline RegionPtr boundary_zone(RegionPtr s, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("boundary_zone: delta must be positive");
    while (s->kind == RegionKind::Complement) s = s->child;  // zone(S) == zone(comp S)
    auto r = std::make_shared<Region>();
    r->kind = RegionKind::BoundaryZone;
    r->dim = s->dim;
    r->child = std::move(s);
    r->delta = delta;
    return r;
}

// True if the zone predicate of `zone` relies on lower-bound distances.
inline bool boundary_zone_is_outer_approx(const Region& zone) {
    if (zone.kind != RegionKind::BoundaryZone) return false;
    switch (zone.child->kind) {
        case RegionKind::Halfspace:
        case RegionKind::Interval:
        case RegionKind::Ball:
        case RegionKind::Box:
            return false;
        case RegionKind::VoronoiCell:
            return zone.child->sites.size() > 2;
        default:
            return true;
    }
}

// ---------------------------------------------------------------------------
// Exact containment proofs (inner subseteq outer).  Returns false when the
// pair cannot be decided exactly; callers must treat that as "unknown", never
// as a numeric guess.

inline bool region_equal(const Region& x, const Region& y) {
    if (x.kind != y.kind || x.dim != y.dim) return false;
    switch (x.kind) {
        case RegionKind::Halfspace:
            return x.normal == y.normal && x.offset == y.offset;
        case RegionKind::Interval:
            return x.a == y.a && x.b == y.b;
        case RegionKind::Ball:
            return x.center == y.center && x.radius == y.radius;
        case RegionKind::Box:
            return x.lo == y.lo && x.hi == y.hi;
        case RegionKind::VoronoiCell:
            return x.site == y.site && x.sites == y.sites;
        case RegionKind::Complement:
            return region_equal(*x.child, *y.child);
        case RegionKind::Intersection:
            return region_equal(*x.child, *y.child) && region_equal(*x.child2, *y.child2);
        case RegionKind::BoundaryZone:
            return x.delta == y.delta && region_equal(*x.child, *y.child);
    }
    return false;
}

inline bool region_contains(const Region& outer, const Region& inner) {
    if (region_equal(outer, inner)) return true;
    // Decompose the outer side first: inner in A /\ B iff inner in both.
    if (outer.kind == RegionKind::Intersection)
        return region_contains(*outer.child, inner) && region_contains(*outer.child2, inner);
    // A /\ B in outer if either factor already is (sufficient).
    if (inner.kind == RegionKind::Intersection)
        return region_contains(outer, *inner.child) || region_contains(outer, *inner.child2);

    auto dot = [](const Vec& u, const Vec& v) {
        double s = 0.0;
        for (size_t j = 0; j < u.size(); ++j) s += u[j] * v[j];
        return s;
    };

    switch (outer.kind) {
        case RegionKind::Halfspace: {
            if (inner.kind == RegionKind::Ball)
                return dot(outer.normal, inner.center) + inner.radius <= outer.offset;
            if (inner.kind == RegionKind::Interval && outer.dim == 1)
                return std::max(inner.a * outer.normal[0], inner.b * outer.normal[0]) <=
                       outer.offset;
            if (inner.kind == RegionKind::Box) {
                double m = 0.0;
                for (int j = 0; j < outer.dim; ++j)
                    m += std::max(inner.lo[j] * outer.normal[j], inner.hi[j] * outer.normal[j]);
                return m <= outer.offset;
            }
            return false;
        }
        case RegionKind::Interval:
            if (inner.kind == RegionKind::Interval)
                return outer.a <= inner.a && inner.b <= outer.b;
            if (inner.kind == RegionKind::Ball)
                return outer.a <= inner.center[0] - inner.radius &&
                       inner.center[0] + inner.radius <= outer.b;
            return false;
        case RegionKind::Ball: {
            if (inner.kind == RegionKind::Ball) {
                double q = 0.0;
                for (int j = 0; j < outer.dim; ++j) {
                    const double t = inner.center[j] - outer.center[j];
                    q += t * t;
                }
                return std::sqrt(q) + inner.radius <= outer.radius;
            }
            if (inner.kind == RegionKind::Box) {
                double q = 0.0;
                for (int j = 0; j < outer.dim; ++j) {
                    const double t = std::max(std::abs(inner.lo[j] - outer.center[j]),
                                              std::abs(inner.hi[j] - outer.center[j]));
                    q += t * t;
                }
                return std::sqrt(q) <= outer.radius;
            }
            return false;
        }
        case RegionKind::Box:
            if (inner.kind == RegionKind::Box) {
                for (int j = 0; j < outer.dim; ++j)
                    if (inner.lo[j] < outer.lo[j] || inner.hi[j] > outer.hi[j]) return false;
                return true;
            }
            if (inner.kind == RegionKind::Ball) {
                for (int j = 0; j < outer.dim; ++j)
                    if (inner.center[j] - inner.radius < outer.lo[j] ||
                        inner.center[j] + inner.radius > outer.hi[j])
                        return false;
                return true;
            }
            return false;
        case RegionKind::VoronoiCell: {
            // Cell is an intersection of bisector halfspaces; test each.
            if (inner.kind != RegionKind::Ball) return false;
            for (int k = 0; k < static_cast<int>(outer.sites.size()); ++k) {
                if (k == outer.site) continue;
                double gap = 0.0, dist_sites = 0.0;
                for (int j = 0; j < outer.dim; ++j) {
                    const double tk = inner.center[j] - outer.sites[k][j];
                    const double ti = inner.center[j] - outer.sites[outer.site][j];
                    gap += tk * tk - ti * ti;
                    const double ds = outer.sites[k][j] - outer.sites[outer.site][j];
                    dist_sites += ds * ds;
                }
                if (gap / (2.0 * std::sqrt(dist_sites)) < inner.radius) return false;
            }
            return true;
        }
        case RegionKind::Complement: {
            // comp(C) contains inner iff inner and C are provably disjoint;
            // only the ball/box/interval combinations are needed.
            const Region& c = *outer.child;
            auto disjoint_1d = [](double a1, double b1, double a2, double b2) {
                return b1 < a2 || b2 < a1;
            };
            if (c.kind == RegionKind::Interval && inner.kind == RegionKind::Interval)
                return disjoint_1d(c.a, c.b, inner.a, inner.b);
            if (c.kind == RegionKind::Ball && inner.kind == RegionKind::Ball) {
                double q = 0.0;
                for (int j = 0; j < c.dim; ++j) {
                    const double t = inner.center[j] - c.center[j];
                    q += t * t;
                }
                return std::sqrt(q) > c.radius + inner.radius;
            }
            if (c.kind == RegionKind::Box && inner.kind == RegionKind::Box) {
                for (int j = 0; j < c.dim; ++j)
                    if (disjoint_1d(c.lo[j], c.hi[j], inner.lo[j], inner.hi[j])) return true;
                return false;
            }
            if (c.kind == RegionKind::Box && inner.kind == RegionKind::Ball) {
                // Ball disjoint from box: distance from center to box > radius.
                double q = 0.0;
                for (int j = 0; j < c.dim; ++j) {
                    const double excess =
                        std::max({c.lo[j] - inner.center[j], inner.center[j] - c.hi[j], 0.0});
                    q += excess * excess;
                }
                return std::sqrt(q) > inner.radius;
            }
            return false;
        }
        default:
            return false;
    }
}

// Provably empty intersection of the two regions (false = unknown).
inline bool region_disjoint(const Region& x, const Region& y) {
    auto compl_wrap = [](const Region& r) {
        auto c = std::make_shared<Region>();
        c->kind = RegionKind::Complement;
        c->dim = r.dim;
        c->child = std::make_shared<Region>(r);
        return c;
    };
    // x and y disjoint iff comp(x) contains y.
    if (x.kind == RegionKind::BoundaryZone && y.kind == RegionKind::Ball) {
        // Ball misses the zone if it stays strictly inside the deflated
        // region or strictly outside the inflated one.
        const Region& s = *x.child;
        const double dl = x.delta;
        if (s.kind == RegionKind::Halfspace) {
            const double pos = [&] {
                double dotv = 0.0;
                for (int j = 0; j < s.dim; ++j) dotv += y.center[j] * s.normal[j];
                return dotv - s.offset;
            }();
            return std::abs(pos) > dl + y.radius;
        }
        if (s.kind == RegionKind::Interval) {
            const double c0 = y.center[0], r0 = y.radius;
            const bool misses_a = (c0 + r0 < s.a - dl) || (c0 - r0 > s.a + dl);
            const bool misses_b = (c0 + r0 < s.b - dl) || (c0 - r0 > s.b + dl);
            return misses_a && misses_b;
        }
        if (s.kind == RegionKind::Box) {
            // Inside the open shrunk box, or outside the expanded box.
            bool inside_small = true;
            for (int j = 0; j < s.dim; ++j)
                if (!(y.center[j] - y.radius > s.lo[j] + dl &&
                      y.center[j] + y.radius < s.hi[j] - dl))
                    inside_small = false;
            if (inside_small) return true;
            for (int j = 0; j < s.dim; ++j)
                if (y.center[j] + y.radius < s.lo[j] - dl || y.center[j] - y.radius > s.hi[j] + dl)
                    return true;
            return false;
        }
        return false;
    }
    if (y.kind == RegionKind::BoundaryZone) return region_disjoint(y, x);
    return region_contains(*compl_wrap(x), y);
}

}  // namespace tangles
