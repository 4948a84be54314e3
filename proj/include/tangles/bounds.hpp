#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "tangles/cut_energy.hpp"
#include "tangles/measure.hpp"

namespace tangles {

// Best known constant in the quantitative CLT error term.
inline constexpr double kBerryEsseenC = 0.5591;
inline constexpr double kTwoSqrt2 = 2.0 * std::numbers::sqrt2;

struct PreconditionCheck {
    std::string name;
    bool ok = false;
    double slack = 0.0;  // lhs - rhs of the inequality
};

struct BoundReport {
    std::vector<PreconditionCheck> preconditions;
    double hoeffding_branch = -std::numeric_limits<double>::infinity();
    double berry_esseen_branch = -std::numeric_limits<double>::infinity();
    double size_correction = 0.0;  // probability mass lost to |V_B| < 2
    double combined_raw = 0.0;     // max(branches) - size_correction, unclamped
    double combined = 0.0;         // clamped to [0,1]
    double order_floor = 0.0;
    double parameter = 0.0;        // delta or Delta that produced this report
    long long n = 0;
};

struct BoundOptions {
    MeasureOptions measure;
    CutEnergyOptions cut;
    double order_floor_epsilon = 0.1;
};

// ---------------------------------------------------------------------------

namespace detail {

inline double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// (1 + sum_k n_k nu_k/(1-nu_k)) * prod_k (1-nu_k)^{n_k}; the complement of
// the |V_A| >= 2 probability.
inline double size_correction_term(const std::vector<double>& nus,
                                   const std::vector<long long>& counts) {
    double factor = 1.0;
    double log_prod = 0.0;
    for (size_t k = 0; k < nus.size(); ++k) {
        if (nus[k] >= 1.0)
            throw TangleError("size correction: nu_k = 1 makes the formula singular");
        factor += static_cast<double>(counts[k]) * nus[k] / (1.0 - nus[k]);
        log_prod += static_cast<double>(counts[k]) * std::log1p(-nus[k]);
    }
    return factor * std::exp(log_prod);
}

}  // namespace detail

// Pr(|V_A| >= 2) for the labeled data model.
inline double size_at_least_two(const MixtureSpec& spec, const HiddenLabeling& labeling,
                                const Region& region, const MeasureOptions& opt = {}) {
    std::vector<double> nus;
    for (int k = 0; k < spec.num_components(); ++k)
        nus.push_back(measure(spec, region, k, opt).value);
    return 1.0 - detail::size_correction_term(nus, labeling.counts());
}

// ---------------------------------------------------------------------------

struct Moments {
    double e_size = 0.0;      // E|V_A|
    double var_size = 0.0;    // Var|V_A|
    double e_size_sq = 0.0;   // E|V_A|^2
    double e_kappa = 0.0;     // E kappa(V_S)
};

inline Moments moment_formulas(const MixtureSpec& spec, const HiddenLabeling& labeling,
                               const Region& region, const WeightModel& model, const Region& cut,
                               const BoundOptions& opt = {}) {
    Moments m;
    const double n = static_cast<double>(labeling.n());
    double mean_nu = 0.0, var = 0.0;
    for (int k = 0; k < spec.num_components(); ++k) {
        const double nu = measure(spec, region, k, opt.measure).value;
        const double rk = spec.component(k).ratio.to_double();
        mean_nu += rk * nu;
        var += rk * nu * (1.0 - nu);
    }
    m.e_size = n * mean_nu;
    m.var_size = n * var;
    m.e_size_sq = m.e_size * m.e_size + m.var_size;
    const double total = cut_energy(spec, cut, model, opt.cut).value;
    const double same = cut_energy_same_component(spec, cut, model, opt.cut).value;
    m.e_kappa = n * n * total - n * same;
    return m;
}

// ---------------------------------------------------------------------------

struct LargeNConditions {
    PreconditionCheck majority;  // nu(B /\ S) > 1/2 nu(B)
    PreconditionCheck order;     // tangle order beats the expected cut
    bool both() const { return majority.ok && order.ok; }
};

namespace detail {

inline PreconditionCheck majority_condition(const MixtureSpec& spec, const Region& ball,
                                            const Region& s, const MeasureOptions& opt) {
    const MeasureResult nub = measure_mean(spec, ball, opt);
    PreconditionCheck c;
    c.name = "nu(B/\\S) > nu(B)/2";
    if (region_contains(s, ball)) {
        c.slack = 0.5 * nub.value;
        c.ok = nub.value > 0.0;
        return c;
    }
    if (nub.side != MeasureSide::Exact)
        throw UnsupportedSetting(
            "majority condition: ball measure is only bounded and B is not contained in S");
    const MeasureResult cap =
        measure_mean(spec, *region::intersection(std::make_shared<Region>(ball),
                                                 std::make_shared<Region>(s)),
                     opt);
    c.slack = cap.value - 0.5 * nub.value;
    c.ok = c.slack > 0.0;
    return c;
}

}  // namespace detail

// Conditions for the delta-graph tangle at component k (ball diameter
// delta) to exist and capture the cut S asymptotically almost surely.
inline LargeNConditions conditions_large_n_delta(const MixtureSpec& spec, int k, double delta,
                                                 const Region& s, const BoundOptions& opt = {}) {
    const RegionPtr ball = ball_around_mean(spec, k, delta);
    LargeNConditions out;
    out.majority = detail::majority_condition(spec, *ball, s, opt.measure);
    const double nub = measure_mean(spec, *ball, opt.measure).value;
    const double energy = cut_energy(spec, s, WeightModel::delta(delta), opt.cut).value;
    out.order.name = "(2/9) nu(B)^2 > cut energy";
    out.order.slack = 2.0 / 9.0 * nub * nub - energy;
    out.order.ok = out.order.slack > 0.0;
    return out;
}

// Kernel-graph analogue of the a.a.s. conditions: common sigma required,
// ball diameter Delta, kernel bandwidth sigma.
inline LargeNConditions conditions_large_n_weight(const MixtureSpec& spec, int k, double width,
                                                  const Region& s, const BoundOptions& opt = {}) {
    if (!spec.equal_stddevs())
        throw UnsupportedSetting("conditions_large_n_weight: requires equal sigmas");
    const double sigma = spec.component(0).stddev;
    const RegionPtr ball = ball_around_mean(spec, k, width);
    LargeNConditions out;
    out.majority = detail::majority_condition(spec, *ball, s, opt.measure);
    const double nub = measure_mean(spec, *ball, opt.measure).value;
    const double energy = cut_energy(spec, s, WeightModel::kernel(sigma), opt.cut).value;
    const double damp = std::exp(-width * width / (2.0 * sigma * sigma));
    out.order.name = "(2/9) e^{-D^2/2s^2} nu(B)^2 > cut energy";
    out.order.slack = 2.0 / 9.0 * damp * nub * nub - energy;
    out.order.ok = out.order.slack > 0.0;
    return out;
}

// ---------------------------------------------------------------------------

// (1-eps) * n^2 * (2/9) * nu(B)^2: the order the induced tangle reaches
// with the same probability as the existence bound.
inline double order_floor(const MixtureSpec& spec, int k, double delta, long long n, double eps,
                          const MeasureOptions& opt = {}) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("order_floor: eps must be in [0,1]");
    const double nub = measure_mean(spec, *ball_around_mean(spec, k, delta), opt).value;
    return (1.0 - eps) * static_cast<double>(n) * static_cast<double>(n) * (2.0 / 9.0) * nub *
           nub;
}

// ---------------------------------------------------------------------------

// Exponential-rate lower bound for the delta graph: Hoeffding and
// Berry-Esseen branches on Y_i = 3*1_A(X_i) - 2sqrt(2)*1_B(X_i), minus the
// small-clique correction.
inline BoundReport bound_small_n_delta(const MixtureSpec& spec, const HiddenLabeling& labeling,
                                       int k, double delta, const Region& s,
                                       const BoundOptions& opt = {}) {
    const RegionPtr ball = ball_around_mean(spec, k, delta);
    const RegionPtr zone = boundary_zone(std::make_shared<Region>(s), delta);
    BoundReport report;
    report.parameter = delta;
    report.n = labeling.n();

    if (!region_contains(s, *ball))
        throw PreconditionFailed("B subseteq S (exact containment not established)", -1.0);

    const int m = spec.num_components();
    std::vector<double> nu_a(m), nu_b(m), nu_ab(m);
    for (int j = 0; j < m; ++j) {
        nu_a[j] = measure(spec, *zone, j, opt.measure).value;
        nu_b[j] = measure(spec, *ball, j, opt.measure).value;
        if (region_disjoint(*zone, *ball)) {
            nu_ab[j] = 0.0;
        } else {
            nu_ab[j] = measure(spec, *region::intersection(zone, ball), j, opt.measure).value;
        }
    }
    double mean_a = 0.0, mean_b = 0.0;
    for (int j = 0; j < m; ++j) {
        const double rj = spec.component(j).ratio.to_double();
        mean_a += rj * nu_a[j];
        mean_b += rj * nu_b[j];
    }

    PreconditionCheck pre;
    pre.name = "2sqrt(2) nu(B) > 3 nu(A)";
    pre.slack = kTwoSqrt2 * mean_b - 3.0 * mean_a;
    pre.ok = pre.slack > 0.0;
    report.preconditions.push_back(pre);
    if (!pre.ok) throw PreconditionFailed(pre.name, pre.slack);

    const double n = static_cast<double>(labeling.n());
    const double gap = 3.0 * mean_a - kTwoSqrt2 * mean_b;  // negative
    report.hoeffding_branch =
        1.0 - std::exp(-n * 2.0 * gap * gap / ((kTwoSqrt2 + 3.0) * (kTwoSqrt2 + 3.0)));

    // Berry-Esseen branch from the four-atom distribution of Y.
    double sum_e = 0.0, sum_var = 0.0, sum_rho = 0.0;
    for (int j = 0; j < m; ++j) {
        const double nk = static_cast<double>(labeling.counts()[j]);
        const double ey = 3.0 * nu_a[j] - kTwoSqrt2 * nu_b[j];
        const double ey2 = 9.0 * nu_a[j] + 8.0 * nu_b[j] - 12.0 * std::numbers::sqrt2 * nu_ab[j];
        const double var = std::max(ey2 - ey * ey, 0.0);
        const double atom_vals[4] = {0.0, 3.0, -kTwoSqrt2, 3.0 - kTwoSqrt2};
        const double atom_mass[4] = {1.0 - nu_a[j] - nu_b[j] + nu_ab[j], nu_a[j] - nu_ab[j],
                                     nu_b[j] - nu_ab[j], nu_ab[j]};
        double rho = 0.0;
        for (int t = 0; t < 4; ++t)
            rho += std::max(atom_mass[t], 0.0) * std::pow(std::abs(atom_vals[t] - ey), 3.0);
        sum_e += nk * ey;
        sum_var += nk * var;
        sum_rho += nk * rho;
    }
    if (sum_var > 0.0) {
        report.berry_esseen_branch = normal_cdf(-sum_e / std::sqrt(sum_var)) -
                                     kBerryEsseenC * sum_rho / std::pow(sum_var, 1.5);
    }

    report.size_correction = detail::size_correction_term(nu_b, labeling.counts());
    report.combined_raw =
        std::max(report.hoeffding_branch, report.berry_esseen_branch) - report.size_correction;
    report.combined = detail::clamp01(report.combined_raw);
    report.order_floor =
        order_floor(spec, k, delta, labeling.n(), opt.order_floor_epsilon, opt.measure);
    return report;
}

// ---------------------------------------------------------------------------

enum class CutSide { LowerHalfline, UpperHalfline };  // S = (-inf,c] or (c,inf)

// Hoeffding-only lower bound for the kernel graph in 1D with a threshold
// cut; I = [mu_k - D/2, mu_k + D/2] must lie inside S.
inline BoundReport bound_small_n_weight(const MixtureSpec& spec, const HiddenLabeling& labeling,
                                        int k, double width, double cut_point, CutSide side,
                                        const BoundOptions& opt = {}) {
    if (spec.dimension() != 1)
        throw UnsupportedSetting("bound_small_n_weight: requires d = 1");
    if (!spec.equal_stddevs())
        throw UnsupportedSetting("bound_small_n_weight: requires equal sigmas");
    spec.check_component(k);
    const double sigma = spec.component(0).stddev;
    const double mu = spec.component(k).mean[0];
    const double lo = mu - width / 2.0, hi = mu + width / 2.0;

    BoundReport report;
    report.parameter = width;
    report.n = labeling.n();

    const bool inside =
        side == CutSide::LowerHalfline ? (hi <= cut_point) : (lo > cut_point);
    if (!inside)
        throw PreconditionFailed("I subseteq S",
                                 side == CutSide::LowerHalfline ? cut_point - hi : lo - cut_point);

    const RegionPtr interval = region::interval(lo, hi);
    const int m = spec.num_components();
    std::vector<double> nu_i(m);
    double mean_i = 0.0, rhs = 0.0;
    for (int j = 0; j < m; ++j) {
        nu_i[j] = measure(spec, *interval, j, opt.measure).value;
        const double rj = spec.component(j).ratio.to_double();
        mean_i += rj * nu_i[j];
        const double dc = spec.component(j).mean[0] - cut_point;
        rhs += rj / kTwoSqrt2 * std::exp(-dc * dc / (4.0 * sigma * sigma));
    }
    const double damp = std::exp(-width * width / (4.0 * sigma * sigma));
    const double lhs = std::numbers::sqrt2 / 3.0 * damp * mean_i;

    PreconditionCheck pre;
    pre.name = "sqrt(2)/3 e^{-D^2/4s^2} nu(I) > sum_k r_k/(2sqrt2) e^{-(mu_k-c)^2/4s^2}";
    pre.slack = lhs - rhs;
    pre.ok = pre.slack > 0.0;
    report.preconditions.push_back(pre);
    if (!pre.ok) throw PreconditionFailed(pre.name, pre.slack);

    const double n = static_cast<double>(labeling.n());
    const double span = 0.5 + std::numbers::sqrt2 / 3.0 * damp;
    report.hoeffding_branch = 1.0 - std::exp(-n * 2.0 * pre.slack * pre.slack / (span * span));
    report.size_correction = detail::size_correction_term(nu_i, labeling.counts());
    report.combined_raw = report.hoeffding_branch - report.size_correction;
    report.combined = detail::clamp01(report.combined_raw);
    return report;
}

// ---------------------------------------------------------------------------

// Global minimizer of the mean density on [a,b]: 1024-point scan, then
// golden-section refinement to 1e-10.
inline double argmin_mean_density_1d(const MixtureSpec& spec, double a, double b) {
    if (spec.dimension() != 1) throw UnsupportedSetting("argmin_mean_density_1d: requires d = 1");
    if (!(a < b)) throw std::invalid_argument("argmin_mean_density_1d: requires a < b");
    constexpr int kScan = 1024;
    double best_x = a, best_f = mean_density_1d(spec, a);
    for (int i = 1; i <= kScan; ++i) {
        const double x = a + (b - a) * i / kScan;
        const double f = mean_density_1d(spec, x);
        if (f < best_f) {
            best_f = f;
            best_x = x;
        }
    }
    double lo = std::max(a, best_x - (b - a) / kScan);
    double hi = std::min(b, best_x + (b - a) / kScan);
    constexpr double kGolden = 0.6180339887498949;
    while (hi - lo > 1e-10) {
        const double c1 = hi - kGolden * (hi - lo);
        const double c2 = lo + kGolden * (hi - lo);
        if (mean_density_1d(spec, c1) < mean_density_1d(spec, c2))
            hi = c2;
        else
            lo = c1;
    }
    return 0.5 * (lo + hi);
}

enum class SeparabilityCondition { TwoThirds, RootTwoThirds };

// Smallest mean distance lambda at which the chosen density condition holds
// for the 1D two-component family (ratio r, stddev ratio alpha):
// coeff * min(fbar(0), fbar(lambda)) > fbar(argmin).
inline double min_separable_lambda_1d(Rational r, double alpha, SeparabilityCondition cond) {
    if (!(r.positive() && r < Rational(1)))
        throw std::invalid_argument("min_separable_lambda_1d: r must be in (0,1)");
    if (!(alpha > 0.0)) throw std::invalid_argument("min_separable_lambda_1d: alpha > 0");
    const double coeff =
        cond == SeparabilityCondition::TwoThirds ? 2.0 / 3.0 : std::numbers::sqrt2 / 3.0;
    const auto condition_gap = [&](double lambda) {
        const MixtureSpec spec = two_gaussians_1d(lambda, r, alpha);
        const double c = argmin_mean_density_1d(spec, 0.0, lambda);
        const double ends = std::min(mean_density_1d(spec, 0.0), mean_density_1d(spec, lambda));
        return coeff * ends - mean_density_1d(spec, c);
    };

    const double hi_limit = 20.0 * std::max(1.0, alpha);
    double lo = 1e-3, hi = 0.0;
    for (double x = 0.25; x <= hi_limit; x += 0.25) {
        if (condition_gap(x) > 0.0) {
            hi = x;
            break;
        }
        lo = x;
    }
    if (hi == 0.0)
        throw NotFound("min_separable_lambda_1d: condition never satisfied on (0, 20 sigma]");
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        (condition_gap(mid) > 0.0 ? hi : lo) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {  // Newton polish on the smooth gap
        const double h = 1e-6;
        const double g = condition_gap(x);
        const double dg = (condition_gap(x + h) - condition_gap(x - h)) / (2.0 * h);
        if (dg == 0.0) break;
        const double next = x - g / dg;
        if (next > lo - 0.1 && next < hi + 0.1) x = next;
    }
    return x;
}

// ---------------------------------------------------------------------------

struct OptimizedBound {
    double best_parameter = 0.0;
    BoundReport report;
};

namespace detail {

inline OptimizedBound optimize_over_grid(const std::vector<double>& grid,
                                         const std::function<BoundReport(double)>& eval) {
    if (grid.empty()) throw std::invalid_argument("optimize_radius: empty grid");
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    double best_score = -std::numeric_limits<double>::infinity();
    size_t best_idx = 0;
    BoundReport best_report;
    const auto score_at = [&](double p) -> std::pair<double, BoundReport> {
        try {
            BoundReport r = eval(p);
            return {r.combined_raw, r};
        } catch (const PreconditionFailed&) {
            return {-std::numeric_limits<double>::infinity(), BoundReport{}};
        } catch (const UnsupportedSetting&) {
            return {-std::numeric_limits<double>::infinity(), BoundReport{}};
        }
    };
    for (size_t i = 0; i < sorted.size(); ++i) {
        const auto [sc, rep] = score_at(sorted[i]);
        if (sc > best_score) {
            best_score = sc;
            best_idx = i;
            best_report = rep;
        }
    }
    if (!std::isfinite(best_score))
        throw NotFound("optimize_radius: no feasible parameter in the grid");

    // One golden-section refinement pass between the neighbors of the best
    // grid point.
    double lo = best_idx > 0 ? sorted[best_idx - 1] : sorted[best_idx];
    double hi = best_idx + 1 < sorted.size() ? sorted[best_idx + 1] : sorted[best_idx];
    constexpr double kGolden = 0.6180339887498949;
    for (int it = 0; it < 40 && hi - lo > 1e-6; ++it) {
        const double c1 = hi - kGolden * (hi - lo);
        const double c2 = lo + kGolden * (hi - lo);
        if (score_at(c1).first >= score_at(c2).first)
            hi = c2;
        else
            lo = c1;
    }
    const double mid = 0.5 * (lo + hi);
    const auto [sc, rep] = score_at(mid);
    OptimizedBound out;
    if (sc >= best_score) {
        out.best_parameter = mid;
        out.report = rep;
    } else {
        out.best_parameter = sorted[best_idx];
        out.report = best_report;
    }
    return out;
}

}  // namespace detail

// Maximize bound_small_n_delta over a delta grid.
inline OptimizedBound optimize_radius(const MixtureSpec& spec, const HiddenLabeling& labeling,
                                      int k, const Region& s, const std::vector<double>& grid,
                                      const BoundOptions& opt = {}) {
    return detail::optimize_over_grid(grid, [&](double delta) {
        return bound_small_n_delta(spec, labeling, k, delta, s, opt);
    });
}

// Maximize bound_small_n_weight over a Delta grid.
inline OptimizedBound optimize_radius(const MixtureSpec& spec, const HiddenLabeling& labeling,
                                      int k, double cut_point, CutSide side,
                                      const std::vector<double>& grid,
                                      const BoundOptions& opt = {}) {
    return detail::optimize_over_grid(grid, [&](double width) {
        return bound_small_n_weight(spec, labeling, k, width, cut_point, side, opt);
    });
}

// ---------------------------------------------------------------------------

// Region assignment for unordered component pairs with the complement
// convention S_{k2,k1} = comp(S_{k1,k2}).
class CutAssignment {
public:
    explicit CutAssignment(int num_components) : m_(num_components) {}

    void set(int k1, int k2, RegionPtr s) {
        check(k1, k2);
        if (k1 < k2)
            cuts_[{k1, k2}] = std::move(s);
        else
            cuts_[{k2, k1}] = region::complement(std::move(s));
    }

    // S_{k1,k2}: the side of the separation oriented towards k1's tangle.
    RegionPtr get(int k1, int k2) const {
        check(k1, k2);
        const auto it = cuts_.find(k1 < k2 ? std::pair{k1, k2} : std::pair{k2, k1});
        if (it == cuts_.end()) throw NotFound("CutAssignment: missing pair");
        return k1 < k2 ? it->second : region::complement(it->second);
    }

    int num_components() const { return m_; }
    bool complete() const {
        return static_cast<int>(cuts_.size()) == m_ * (m_ - 1) / 2;
    }

private:
    void check(int k1, int k2) const {
        if (k1 == k2 || k1 < 0 || k2 < 0 || k1 >= m_ || k2 >= m_)
            throw InvalidIndex("CutAssignment: bad component pair");
    }
    int m_;
    std::map<std::pair<int, int>, RegionPtr> cuts_;
};

// Union bound over the per-event reports: 1 - sum(1 - bound_e), clamped.
inline double incomparability_bound(const std::vector<BoundReport>& events) {
    if (events.empty()) throw std::invalid_argument("incomparability_bound: no events");
    double deficit = 0.0;
    for (const auto& r : events) deficit += 1.0 - r.combined;
    return detail::clamp01(1.0 - deficit);
}

}  // namespace tangles
