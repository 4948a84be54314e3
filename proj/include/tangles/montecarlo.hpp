#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tangles/bounds.hpp"
#include "tangles/graph.hpp"
#include "tangles/parallel.hpp"

namespace tangles {

// Empirical layer: repeated sampling of datasets, direct evaluation of the
// clique-tangle membership inequalities, and validation of the moment
// formulas and the per-trial kappa bounds.

struct TrialOutcome {
    long long trial = 0;
    bool clique_nonempty = false;  // |V_B| >= 2
    bool majority = false;         // |V_B /\ V_S| > |V_B \ V_S|
    bool order_ok = false;         // kappa(V_S) < (2/9) w_{V_B} |V_B|^2
    bool success = false;
};

struct EstimateReport {
    long long trials = 0;
    long long successes = 0;
    double estimate = 0.0;
    double std_error = 0.0;  // binomial
    double wilson_lo = 0.0;  // 99% Wilson interval
    double wilson_hi = 1.0;
    uint64_t seed = 0;
};

struct SimulationOptions {
    int threads = 1;
    bool check_cut_bounds = true;  // hard per-trial asserts, zero tolerance
    bool record_outcomes = false;
    std::vector<TrialOutcome>* outcomes = nullptr;
};

namespace detail {

inline constexpr double kWilsonZ99 = 2.5758293035489004;  // Phi^{-1}(0.995)

inline EstimateReport finish_report(long long trials, long long successes, uint64_t seed) {
    EstimateReport r;
    r.trials = trials;
    r.successes = successes;
    r.seed = seed;
    r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(trials));
    const double z = kWilsonZ99, nn = static_cast<double>(trials), p = r.estimate;
    const double denom = 1.0 + z * z / nn;
    const double center = (p + z * z / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
    r.wilson_lo = std::max(0.0, center - half);
    r.wilson_hi = std::min(1.0, center + half);
    return r;
}

// Per-dataset evaluation of one clique/cut event.  For delta graphs the cut
// value is summed over boundary-zone points only (every crossing edge has
// both endpoints there); for kernel graphs all straddling pairs contribute.
class EventEvaluator {
public:
    EventEvaluator(const MixtureSpec& spec, const WeightModel& model, int k, RegionPtr s)
        : model_(model),
          s_(std::move(s)),
          ball_(ball_around_mean(spec, k, model.parameter)),
          is_delta_(model.kind == WeightModel::Kind::DeltaNeighborhood) {
        if (is_delta_) zone_ = boundary_zone(s_, model.parameter);
    }

    TrialOutcome evaluate(const Dataset& ds, bool check_bounds) const {
        const int d = ds.d;
        const int n = static_cast<int>(ds.n);
        long long in_ball = 0, in_ball_and_s = 0;
        std::vector<int> ball_idx;
        std::vector<int> zone_s, zone_not_s;   // delta model
        std::vector<int> side_s, side_not_s;   // kernel model
        for (int i = 0; i < n; ++i) {
            const double* x = ds.point(i);
            const bool in_s = s_->contains(x);
            if (ball_->contains(x)) {
                ++in_ball;
                if (in_s) ++in_ball_and_s;
                if (!is_delta_) ball_idx.push_back(i);
            }
            if (is_delta_) {
                if (zone_->contains(x)) (in_s ? zone_s : zone_not_s).push_back(i);
            } else {
                (in_s ? side_s : side_not_s).push_back(i);
            }
        }

        double kappa = 0.0;
        double w_vb = 1.0;
        if (is_delta_) {
            const double d2 = model_.parameter * model_.parameter;
            for (int i : zone_s)
                for (int j : zone_not_s)
                    if (dist_sq(ds.point(i), ds.point(j), d) <= d2) kappa += 1.0;
            if (check_bounds) {
                const double za = static_cast<double>(zone_s.size() + zone_not_s.size());
                if (!(kappa <= 0.25 * za * za))
                    throw TangleError("kappa bound violated on a delta-graph trial: kappa = " +
                                      std::to_string(kappa) + ", |V_A| = " + std::to_string(za));
            }
        } else {
            for (int i : side_s)
                for (int j : side_not_s)
                    kappa += model_.weight_sq(dist_sq(ds.point(i), ds.point(j), d));
            // Exact minimum pairwise weight inside the ball, not the
            // analytic e^{-D^2/2s^2} floor used by the bounds: the
            // simulation measures the true event.
            double max_d2 = 0.0;
            for (size_t a = 0; a < ball_idx.size(); ++a)
                for (size_t b = a + 1; b < ball_idx.size(); ++b)
                    max_d2 = std::max(
                        max_d2, dist_sq(ds.point(ball_idx[a]), ds.point(ball_idx[b]), d));
            w_vb = ball_idx.size() >= 2 ? model_.weight_sq(max_d2) : 1.0;
            if (check_bounds && d == 1) {
                if (const auto cut = threshold_cut()) {
                    const double sigma = model_.parameter;
                    double total = 0.0;
                    for (int i = 0; i < n; ++i) {
                        const double t = ds.point(i)[0] - *cut;
                        total += std::exp(-t * t / (2.0 * sigma * sigma));
                    }
                    if (!(kappa <= 0.25 * total * total))
                        throw TangleError(
                            "kappa bound violated on a kernel-graph trial: kappa = " +
                            std::to_string(kappa) + ", bound = " +
                            std::to_string(0.25 * total * total));
                }
            }
        }

        TrialOutcome out;
        out.clique_nonempty = in_ball >= 2;
        out.majority = in_ball_and_s > in_ball - in_ball_and_s;
        const double nb = static_cast<double>(in_ball);
        out.order_ok = kappa < 2.0 / 9.0 * w_vb * nb * nb;
        out.success = out.clique_nonempty && out.majority && out.order_ok;
        return out;
    }

private:
    std::optional<double> threshold_cut() const {
        if (auto t = detail::as_threshold_1d(*s_)) return t->c;
        return std::nullopt;
    }

    WeightModel model_;
    RegionPtr s_;
    RegionPtr ball_;
    RegionPtr zone_;
    bool is_delta_;
};

inline uint64_t trial_seed(uint64_t master, long long trial) {
    return mix64(master, 0x747269616cULL, static_cast<uint64_t>(trial));
}

}  // namespace detail

// Pr over datasets that T(V_B) is a nonempty clique tangle containing V_S:
// per trial, sample, evaluate the three inequalities, count successes.
inline EstimateReport estimate_event_probability(const MixtureSpec& spec,
                                                 const HiddenLabeling& labeling,
                                                 const WeightModel& model, int k,
                                                 const RegionPtr& s, long long trials,
                                                 uint64_t seed,
                                                 const SimulationOptions& opt = {}) {
    if (trials < 1) throw std::invalid_argument("estimate_event_probability: trials >= 1");
    if (trials * labeling.n() > (int64_t{1} << 40))
        throw TangleError("estimate_event_probability: trials * n exceeds the sampling budget");
    compatible_counts(spec, labeling.n());
    const detail::EventEvaluator ev(spec, model, k, s);
    std::vector<char> success(static_cast<size_t>(trials), 0);
    std::vector<TrialOutcome> outcomes;
    if (opt.record_outcomes && opt.outcomes) outcomes.resize(static_cast<size_t>(trials));
    parallel_for(0, trials, opt.threads, [&](int64_t t) {
        const Dataset ds = sample_dataset(spec, labeling, detail::trial_seed(seed, t));
        TrialOutcome o = ev.evaluate(ds, opt.check_cut_bounds);
        o.trial = t;
        success[static_cast<size_t>(t)] = o.success ? 1 : 0;
        if (opt.record_outcomes && opt.outcomes) outcomes[static_cast<size_t>(t)] = o;
    });
    if (opt.record_outcomes && opt.outcomes) *opt.outcomes = std::move(outcomes);
    long long count = 0;
    for (char c : success) count += c;
    return detail::finish_report(trials, count, seed);
}

// Pr that all pairwise orientation events hold simultaneously: for every
// unordered pair, tangle k1 must capture S_{k1,k2} and tangle k2 its
// complement on the same dataset.
inline EstimateReport estimate_incomparability(const MixtureSpec& spec,
                                               const HiddenLabeling& labeling,
                                               const WeightModel& model,
                                               const CutAssignment& cuts, long long trials,
                                               uint64_t seed, const SimulationOptions& opt = {}) {
    if (!cuts.complete())
        throw NotFound("estimate_incomparability: cut assignment incomplete");
    const int m = spec.num_components();
    std::vector<detail::EventEvaluator> evs;
    for (int k1 = 0; k1 < m; ++k1)
        for (int k2 = 0; k2 < m; ++k2)
            if (k1 != k2) evs.emplace_back(spec, model, k1, cuts.get(k1, k2));
    std::vector<char> success(static_cast<size_t>(trials), 0);
    parallel_for(0, trials, opt.threads, [&](int64_t t) {
        const Dataset ds = sample_dataset(spec, labeling, detail::trial_seed(seed, t));
        bool all = true;
        for (const auto& ev : evs) {
            if (!ev.evaluate(ds, opt.check_cut_bounds).success) {
                all = false;
                break;
            }
        }
        success[static_cast<size_t>(t)] = all ? 1 : 0;
    });
    long long count = 0;
    for (char c : success) count += c;
    return detail::finish_report(trials, count, seed);
}

// ---------------------------------------------------------------------------

struct MomentCheckRow {
    std::string name;
    double empirical = 0.0;
    double expected = 0.0;
    double z = 0.0;
};

struct MomentsCheck {
    std::vector<MomentCheckRow> rows;
    double var_size_sq = 0.0;  // empirical Var(|V_A|^2), for the growth check
    double var_kappa = 0.0;    // empirical Var(kappa(V_S))
    double max_abs_z() const {
        double m = 0.0;
        for (const auto& r : rows) m = std::max(m, std::abs(r.z));
        return m;
    }
};

// Empirical mean/variance of |V_A|, |V_A|^2 and kappa(V_S) across trials,
// next to the closed-form moments, with z-scores.
inline MomentsCheck empirical_moments_check(const MixtureSpec& spec,
                                            const HiddenLabeling& labeling, const Region& region,
                                            const RegionPtr& cut, const WeightModel& model,
                                            long long trials, uint64_t seed,
                                            const SimulationOptions& opt = {}) {
    compatible_counts(spec, labeling.n());
    const Moments formulas = moment_formulas(spec, labeling, region, model, *cut);

    const auto regp = std::make_shared<Region>(region);
    const double d2 = model.parameter * model.parameter;
    const bool is_delta = model.kind == WeightModel::Kind::DeltaNeighborhood;
    const RegionPtr zone = is_delta ? boundary_zone(cut, model.parameter) : nullptr;

    std::vector<double> sizes(static_cast<size_t>(trials));
    std::vector<double> kappas(static_cast<size_t>(trials));
    std::vector<char> ge2(static_cast<size_t>(trials));
    parallel_for(0, trials, opt.threads, [&](int64_t t) {
        const Dataset ds = sample_dataset(spec, labeling, detail::trial_seed(seed, t));
        long long count = 0;
        std::vector<int> zone_s, zone_not_s, side_s, side_not_s;
        for (long long i = 0; i < ds.n; ++i) {
            const double* x = ds.point(i);
            if (regp->contains(x)) ++count;
            const bool in_s = cut->contains(x);
            if (is_delta) {
                if (zone->contains(x)) (in_s ? zone_s : zone_not_s).push_back(static_cast<int>(i));
            } else {
                (in_s ? side_s : side_not_s).push_back(static_cast<int>(i));
            }
        }
        double kappa = 0.0;
        if (is_delta) {
            for (int i : zone_s)
                for (int j : zone_not_s)
                    if (dist_sq(ds.point(i), ds.point(j), ds.d) <= d2) kappa += 1.0;
        } else {
            for (int i : side_s)
                for (int j : side_not_s)
                    kappa += model.weight_sq(dist_sq(ds.point(i), ds.point(j), ds.d));
        }
        sizes[static_cast<size_t>(t)] = static_cast<double>(count);
        kappas[static_cast<size_t>(t)] = kappa;
        ge2[static_cast<size_t>(t)] = count >= 2 ? 1 : 0;
    });

    const double tn = static_cast<double>(trials);
    const auto mean_of = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / tn;
    };
    const auto central_moment = [&](const std::vector<double>& v, double mu, int p) {
        double s = 0.0;
        for (double x : v) s += std::pow(x - mu, p);
        return s / tn;
    };

    MomentsCheck out;
    const double mean_size = mean_of(sizes);
    const double var_size = central_moment(sizes, mean_size, 2) * tn / (tn - 1.0);
    const double m4 = central_moment(sizes, mean_size, 4);

    out.rows.push_back({"E|V_A|", mean_size, formulas.e_size,
                        (mean_size - formulas.e_size) / std::sqrt(formulas.var_size / tn)});
    const double se_var = std::sqrt(std::max(m4 - var_size * var_size, 1e-300) / tn);
    out.rows.push_back({"Var|V_A|", var_size, formulas.var_size,
                        (var_size - formulas.var_size) / se_var});

    std::vector<double> sq(sizes.size());
    for (size_t i = 0; i < sizes.size(); ++i) sq[i] = sizes[i] * sizes[i];
    const double mean_sq = mean_of(sq);
    const double var_sq = central_moment(sq, mean_sq, 2) * tn / (tn - 1.0);
    out.rows.push_back({"E|V_A|^2", mean_sq, formulas.e_size_sq,
                        (mean_sq - formulas.e_size_sq) / std::sqrt(std::max(var_sq, 1e-300) / tn)});
    out.var_size_sq = var_sq;

    const double mean_kappa = mean_of(kappas);
    const double var_kappa = central_moment(kappas, mean_kappa, 2) * tn / (tn - 1.0);
    out.rows.push_back({"E kappa(V_S)", mean_kappa, formulas.e_kappa,
                        (mean_kappa - formulas.e_kappa) /
                            std::sqrt(std::max(var_kappa, 1e-300) / tn)});
    out.var_kappa = var_kappa;

    double freq = 0.0;
    for (char c : ge2) freq += c;
    freq /= tn;
    try {
        const double p2 = size_at_least_two(spec, labeling, region);
        const double se2 = std::sqrt(std::max(p2 * (1.0 - p2), 1e-300) / tn);
        out.rows.push_back({"Pr(|V_A|>=2)", freq, p2, (freq - p2) / se2});
    } catch (const TangleError&) {
        // nu_k = 1 makes the closed form singular; the row is skipped.
    }
    return out;
}

}  // namespace tangles
