#pragma once

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tangles/csv.hpp"
#include "tangles/montecarlo.hpp"
#include "tangles/svg.hpp"
#include "tangles/tangle_oracle.hpp"

namespace tangles::cli {

using nlohmann::json;

// Exit codes of the experiment runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitNumerics = 4;
inline constexpr int kExitOracle = 5;

struct SchemaError : std::runtime_error {
    std::string path;
    SchemaError(const std::string& path_, const std::string& message)
        : std::runtime_error(path_ + ": " + message), path(path_) {}
};

struct RunOptions {
    std::string out_dir = ".";
    int threads = 1;
    bool verbose = false;
};

// ---------------------------------------------------------------------------
// JSON field access with path-carrying errors.

namespace detail {

inline const json& require_field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(path + "." + key, "missing required field");
    return j.at(key);
}

inline double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

inline long long as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<long long>();
}

inline std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

inline Vec as_vector(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a non-empty array");
    Vec v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

}  // namespace detail

// Ratios are exact: "p/q" strings, integers, or [p, q] pairs.  Floating
// point values are rejected so the compatibility test stays exact.
inline Rational ratio_from_json(const json& j, const std::string& path) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw SchemaError(path, "cannot parse ratio '" + s + "'");
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
        return Rational(j[0].get<long long>(), j[1].get<long long>());
    throw SchemaError(path, "ratio must be \"p/q\", an integer, or [p, q]");
}

inline MixtureSpec mixture_from_json(const json& j, const std::string& path) {
    const int d = static_cast<int>(
        detail::as_integer(detail::require_field(j, "dimension", path), path + ".dimension"));
    const json& comps = detail::require_field(j, "components", path);
    if (!comps.is_array() || comps.empty())
        throw SchemaError(path + ".components", "expected a non-empty array");
    std::vector<Component> components;
    for (size_t i = 0; i < comps.size(); ++i) {
        const std::string cp = path + ".components[" + std::to_string(i) + "]";
        Component c;
        c.ratio = ratio_from_json(detail::require_field(comps[i], "ratio", cp), cp + ".ratio");
        c.mean = detail::as_vector(detail::require_field(comps[i], "mean", cp), cp + ".mean");
        c.stddev = detail::as_number(detail::require_field(comps[i], "stddev", cp), cp + ".stddev");
        components.push_back(std::move(c));
    }
    try {
        return MixtureSpec(d, std::move(components));
    } catch (const std::exception& e) {
        throw SchemaError(path, e.what());
    }
}

inline RegionPtr region_from_json(const json& j, int dim, const std::string& path) {
    const std::string shape =
        detail::as_string(detail::require_field(j, "shape", path), path + ".shape");
    try {
        if (shape == "halfspace")
            return region::halfspace(
                detail::as_vector(detail::require_field(j, "normal", path), path + ".normal"),
                detail::as_number(detail::require_field(j, "offset", path), path + ".offset"));
        if (shape == "interval")
            return region::interval(
                detail::as_number(detail::require_field(j, "a", path), path + ".a"),
                detail::as_number(detail::require_field(j, "b", path), path + ".b"));
        if (shape == "ball")
            return region::ball(
                detail::as_vector(detail::require_field(j, "center", path), path + ".center"),
                detail::as_number(detail::require_field(j, "radius", path), path + ".radius"));
        if (shape == "box")
            return region::box(
                detail::as_vector(detail::require_field(j, "lo", path), path + ".lo"),
                detail::as_vector(detail::require_field(j, "hi", path), path + ".hi"));
        if (shape == "voronoi") {
            const json& sites_j = detail::require_field(j, "sites", path);
            if (!sites_j.is_array() || sites_j.size() < 2)
                throw SchemaError(path + ".sites", "expected >= 2 sites");
            std::vector<Vec> sites;
            for (size_t i = 0; i < sites_j.size(); ++i)
                sites.push_back(detail::as_vector(sites_j[i], path + ".sites[" + std::to_string(i) + "]"));
            return region::voronoi_cell(
                static_cast<int>(detail::as_integer(detail::require_field(j, "site", path),
                                                    path + ".site")),
                std::move(sites));
        }
        if (shape == "complement")
            return region::complement(
                region_from_json(detail::require_field(j, "of", path), dim, path + ".of"));
        if (shape == "intersection") {
            const json& parts = detail::require_field(j, "of", path);
            if (!parts.is_array() || parts.size() != 2)
                throw SchemaError(path + ".of", "expected exactly two regions");
            return region::intersection(region_from_json(parts[0], dim, path + ".of[0]"),
                                        region_from_json(parts[1], dim, path + ".of[1]"));
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(path, e.what());
    }
    throw SchemaError(path + ".shape", "unknown shape '" + shape + "'");
}

inline json mixture_to_json(const MixtureSpec& spec) {
    json components = json::array();
    for (const auto& c : spec.components())
        components.push_back({{"ratio", c.ratio.str()}, {"mean", c.mean}, {"stddev", c.stddev}});
    return {{"dimension", spec.dimension()}, {"components", components}};
}

inline json region_to_json(const Region& r) {
    switch (r.kind) {
        case RegionKind::Halfspace:
            return {{"shape", "halfspace"}, {"normal", r.normal}, {"offset", r.offset}};
        case RegionKind::Interval:
            return {{"shape", "interval"}, {"a", r.a}, {"b", r.b}};
        case RegionKind::Ball:
            return {{"shape", "ball"}, {"center", r.center}, {"radius", r.radius}};
        case RegionKind::Box:
            return {{"shape", "box"}, {"lo", r.lo}, {"hi", r.hi}};
        case RegionKind::VoronoiCell:
            return {{"shape", "voronoi"}, {"site", r.site}, {"sites", r.sites}};
        case RegionKind::Complement:
            return {{"shape", "complement"}, {"of", region_to_json(*r.child)}};
        case RegionKind::Intersection:
            return {{"shape", "intersection"},
                    {"of", json::array({region_to_json(*r.child), region_to_json(*r.child2)})}};
        case RegionKind::BoundaryZone:
            throw UnsupportedRegion("region_to_json: boundary zones are derived regions");
    }
    throw UnsupportedRegion("region_to_json: unhandled kind");
}

// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> grid_from_json(const json& j, const std::string& path) {
    if (j.is_array()) {
        std::vector<double> values;
        for (size_t i = 0; i < j.size(); ++i)
            values.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
        if (values.empty()) throw SchemaError(path, "grid must be non-empty");
        return values;
    }
    if (j.is_object()) {
        const double from = as_number(require_field(j, "from", path), path + ".from");
        const double to = as_number(require_field(j, "to", path), path + ".to");
        const long long steps = as_integer(require_field(j, "steps", path), path + ".steps");
        if (steps < 1 || to < from) throw SchemaError(path, "need steps >= 1 and to >= from");
        std::vector<double> values;
        for (long long i = 0; i <= steps; ++i)
            values.push_back(from + (to - from) * static_cast<double>(i) /
                                        static_cast<double>(std::max<long long>(steps, 1)));
        return values;
    }
    throw SchemaError(path, "expected an array of values or {from,to,steps}");
}

inline std::vector<long long> n_list_from_json(const json& j, const std::string& path) {
    std::vector<long long> ns;
    if (j.is_number_integer()) {
        ns.push_back(j.get<long long>());
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i)
            ns.push_back(as_integer(j[i], path + "[" + std::to_string(i) + "]"));
    } else {
        throw SchemaError(path, "expected an integer or an array of integers");
    }
    if (ns.empty()) throw SchemaError(path, "need at least one n");
    for (long long n : ns)
        if (n < 1) throw SchemaError(path, "n must be >= 1");
    return ns;
}

inline std::string cell(double v) { return CsvWriter::format(v); }

struct Outputs {
    std::string csv_path;
    std::string svg_path;
};

inline Outputs output_paths(const RunOptions& run, const json& config,
                            const std::string& fallback_stem) {
    std::string stem = fallback_stem;
    if (config.contains("output")) stem = as_string(config.at("output"), "output");
    std::filesystem::create_directories(run.out_dir);
    const std::string base = (std::filesystem::path(run.out_dir) / stem).string();
    return {base + ".csv", base + ".svg"};
}

inline uint64_t seed_from_config(const json& config, bool required) {
    if (config.contains("seed")) {
        const json& s = config.at("seed");
        if (!s.is_number_integer() || s.get<long long>() < 0)
            throw SchemaError("seed", "expected a nonnegative integer");
        return static_cast<uint64_t>(s.get<long long>());
    }
    if (required) throw SchemaError("seed", "missing required field (stochastic command)");
    return 0x5eedULL;
}

inline void stamp(CsvWriter& csv, const json& config, uint64_t seed) {
    csv.comment("config-hash=" + hash_hex(config_hash(config.dump())) +
                " seed=" + std::to_string(seed));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Shared evaluation helpers.

namespace detail {

struct BoundRow {
    long long n = 0;
    double parameter = 0.0;
    bool feasible = false;
    double pre_slack = 0.0;
    BoundReport report;
};

inline std::vector<std::string> bound_columns() {
    return {"n",
            "parameter",
            "feasible",
            "precondition_slack",
            "hoeffding_branch",
            "berry_esseen_branch",
            "size_correction",
            "combined",
            "order_floor"};
}

inline std::vector<std::string> bound_cells(const BoundRow& row) {
    if (!row.feasible)
        return {std::to_string(row.n), cell(row.parameter), "0", cell(row.pre_slack),
                "",  "",  "",  "", ""};
    const BoundReport& r = row.report;
    return {std::to_string(row.n), cell(row.parameter),        "1",
            cell(row.pre_slack),   cell(r.hoeffding_branch),   cell(r.berry_esseen_branch),
            cell(r.size_correction), cell(r.combined),         cell(r.order_floor)};
}

// Optimize the model parameter for one (spec, n) cell; infeasible cells are
// reported, not fatal.
inline BoundRow best_bound_row(const MixtureSpec& spec, const HiddenLabeling& labeling, int k,
                               const WeightModel& model_kind, const RegionPtr& cut,
                               const std::vector<double>& grid, const BoundOptions& opt) {
    BoundRow row;
    row.n = labeling.n();
    try {
        OptimizedBound best;
        if (model_kind.kind == WeightModel::Kind::DeltaNeighborhood) {
            best = optimize_radius(spec, labeling, k, *cut, grid, opt);
        } else {
            const auto t = tangles::detail::as_threshold_1d(*cut);
            if (!t)
                throw UnsupportedSetting("kernel bounds require a 1d threshold cut");
            best = optimize_radius(spec, labeling, k, t->c,
                                   t->upper_side ? CutSide::UpperHalfline
                                                 : CutSide::LowerHalfline,
                                   grid, opt);
        }
        row.feasible = true;
        row.parameter = best.best_parameter;
        row.report = best.report;
        row.pre_slack = best.report.preconditions.empty()
                            ? 0.0
                            : best.report.preconditions.front().slack;
    } catch (const NotFound&) {
        row.feasible = false;
    }
    return row;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Threshold searches.

// Smallest lambda such that the kernel-graph a.a.s. conditions hold in the
// 1D base case, either at a fixed interval width or at the optimal one.
inline double min_weight_lambda(std::optional<double> fixed_width) {
    const auto feasible = [&](double lambda) {
        const MixtureSpec spec = two_gaussians_1d(lambda);
        const auto s = region::halfspace({1.0}, lambda / 2.0);
        const double energy = cut_energy(spec, *s, WeightModel::kernel(1.0)).value;
        const auto slack = [&](double width) {
            const double nub = measure_mean(spec, *ball_around_mean(spec, 0, width)).value;
            return 2.0 / 9.0 * std::exp(-width * width / 2.0) * nub * nub - energy;
        };
        if (fixed_width) return slack(*fixed_width) > 0.0;
        double best = -1.0;
        double best_w = 0.0;
        for (double w = 0.1; w <= 4.0; w += 0.1) {
            const double v = slack(w);
            if (v > best) {
                best = v;
                best_w = w;
            }
        }
        constexpr double kGolden = 0.6180339887498949;
        double lo = std::max(0.02, best_w - 0.1), hi = best_w + 0.1;
        for (int it = 0; it < 30; ++it) {
            const double c1 = hi - kGolden * (hi - lo), c2 = lo + kGolden * (hi - lo);
            if (slack(c1) >= slack(c2))
                hi = c2;
            else
                lo = c1;
        }
        return std::max(best, slack(0.5 * (lo + hi))) > 0.0;
    };
    double lo = 2.5, hi = 8.0;
    if (feasible(lo)) return lo;
    if (!feasible(hi)) throw NotFound("kernel threshold: no separable lambda below 8");
    while (hi - lo > 5e-4) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Smallest lambda for the delta-graph a.a.s. conditions in the d-dimensional
// base case; for d >= 2 the ball mass uses the inscribed-hypercube lower
// bound.
inline double min_delta_lambda_dimension(int d) {
    const auto feasible = [&](double lambda) {
        const MixtureSpec spec = d == 1 ? two_gaussians_1d(lambda) : two_gaussians(d, lambda);
        Vec u(d, 0.0);
        u[0] = 1.0;
        const auto s = region::halfspace(u, lambda / 2.0);
        const auto slack = [&](double delta) {
            if (delta >= lambda) return -1.0;  // ball would poke through the cut
            double nub;
            if (d >= 2) {
                const double half = delta / 2.0 / std::sqrt(static_cast<double>(d));
                const double axis = normal_cdf(half) - normal_cdf(-half);
                const double near = std::pow(axis, d);
                const double far = std::pow(axis, d - 1) *
                                   (normal_cdf(half, lambda, 1.0) - normal_cdf(-half, lambda, 1.0));
                nub = 0.5 * near + 0.5 * far;
            } else {
                nub = measure_mean(spec, *ball_around_mean(spec, 0, delta)).value;
            }
            const double energy = cut_energy(spec, *s, WeightModel::delta(delta)).value;
            return 2.0 / 9.0 * nub * nub - energy;
        };
        for (double delta = 0.1; delta <= std::min(lambda * 0.98, 3.2); delta += 0.1)
            if (slack(delta) > 0.0) return true;
        return false;
    };
    double lo = 1.5, hi = 16.0;
    if (feasible(lo)) return lo;
    if (!feasible(hi)) throw NotFound("dimension threshold: no separable lambda below 16");
    while (hi - lo > 2e-3) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Smallest lambda for the Voronoi-cell cut on the equilateral three-Gaussian
// mixture (delta graph, a.a.s. conditions).  One shared QMC pair set per
// lambda provides the whole delta profile of the cut energy.
inline double min_voronoi_lambda(int64_t qmc_points, uint64_t seed) {
    std::vector<double> deltas;
    for (double dl = 0.2; dl <= 2.61; dl += 0.1) deltas.push_back(dl);
    const auto feasible = [&](double lambda) {
        const MixtureSpec spec = equilateral_triangle(lambda);
        const std::vector<Vec> sites = {spec.component(0).mean, spec.component(1).mean,
                                        spec.component(2).mean};
        const auto cell = region::voronoi_cell(0, sites);
        CutEnergyOptions opt;
        opt.qmc_points = qmc_points;
        opt.qmc_seed = mix64(seed, 0x766f72ULL);
        const auto profile = cut_energy_profile(spec, *cell, deltas, opt);
        for (size_t i = 0; i < deltas.size(); ++i) {
            if (deltas[i] >= lambda) continue;  // keep the ball inside its cell
            const double nub = measure_mean(spec, *ball_around_mean(spec, 0, deltas[i])).value;
            if (2.0 / 9.0 * nub * nub - profile[i].value > 0.0) return true;
        }
        return false;
    };
    double lo = 3.0, hi = 6.0;
    if (!feasible(hi)) throw NotFound("voronoi threshold: no separable lambda below 6");
    while (hi - lo > 0.02) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// threshold command

inline int run_threshold(const json& config, const RunOptions& run) {
    const std::string method = detail::as_string(
        detail::require_field(config, "method", "config"), "config.method");
    const auto paths = detail::output_paths(run, config, "threshold");
    const uint64_t seed = detail::seed_from_config(config, false);

    if (method == "limit-1d") {
        const std::string cond_name =
            config.contains("condition")
                ? detail::as_string(config.at("condition"), "config.condition")
                : "both";
        if (cond_name != "two-thirds" && cond_name != "root-two-thirds" && cond_name != "both")
            throw SchemaError("config.condition", "expected two-thirds, root-two-thirds or both");
        const std::string vary =
            config.contains("vary") ? detail::as_string(config.at("vary"), "config.vary") : "r";
        if (vary != "r" && vary != "alpha")
            throw SchemaError("config.vary", "expected r or alpha");
        std::vector<double> values;
        std::vector<Rational> r_values;
        if (vary == "r") {
            const json& vj = detail::require_field(config, "values", "config");
            if (!vj.is_array() || vj.empty())
                throw SchemaError("config.values", "expected a non-empty array");
            for (size_t i = 0; i < vj.size(); ++i) {
                r_values.push_back(
                    ratio_from_json(vj[i], "config.values[" + std::to_string(i) + "]"));
                values.push_back(r_values.back().to_double());
            }
        } else {
            values = detail::grid_from_json(detail::require_field(config, "values", "config"),
                                            "config.values");
        }
        const double alpha = config.contains("alpha")
                                 ? detail::as_number(config.at("alpha"), "config.alpha")
                                 : 1.0;
        const Rational r_fixed =
            config.contains("r") ? ratio_from_json(config.at("r"), "config.r") : Rational(1, 2);

        CsvWriter csv({vary, "lambda_two_thirds", "lambda_root_two_thirds"});
        detail::stamp(csv, config, seed);
        SvgPlot plot("minimal separable mean distance", vary, "lambda*");
        SvgPlot::Series s1{"2/3 condition", {}, {}}, s2{"sqrt(2)/3 condition", {}, {}};
        for (size_t i = 0; i < values.size(); ++i) {
            const Rational r = vary == "r" ? r_values[i] : r_fixed;
            const double a = vary == "alpha" ? values[i] : alpha;
            std::string c1 = "", c2 = "";
            if (cond_name != "root-two-thirds") {
                const double v = min_separable_lambda_1d(r, a, SeparabilityCondition::TwoThirds);
                c1 = detail::cell(v);
                s1.x.push_back(values[i]);
                s1.y.push_back(v);
            }
            if (cond_name != "two-thirds") {
                const double v =
                    min_separable_lambda_1d(r, a, SeparabilityCondition::RootTwoThirds);
                c2 = detail::cell(v);
                s2.x.push_back(values[i]);
                s2.y.push_back(v);
            }
            csv.row({detail::cell(values[i]), c1, c2});
        }
        if (!s1.x.empty()) plot.add_series(s1);
        if (!s2.x.empty()) plot.add_series(s2);
        csv.write(paths.csv_path);
        plot.write(paths.svg_path);
        return kExitOk;
    }

    if (method == "weight-1d") {
        std::vector<double> widths;
        if (config.contains("widths"))
            widths = detail::grid_from_json(config.at("widths"), "config.widths");
        CsvWriter csv({"width", "lambda_star"});
        detail::stamp(csv, config, seed);
        if (widths.empty()) {
            csv.row({"optimal", detail::cell(min_weight_lambda(std::nullopt))});
        } else {
            SvgPlot plot("smallest separable lambda, kernel graph", "width", "lambda*");
            SvgPlot::Series s{"lambda*", {}, {}};
            for (double w : widths) {
                const double star = min_weight_lambda(w);
                csv.row({detail::cell(w), detail::cell(star)});
                s.x.push_back(w);
                s.y.push_back(star);
            }
            plot.add_series(s);
            plot.write(paths.svg_path);
        }
        csv.write(paths.csv_path);
        return kExitOk;
    }

    if (method == "delta-dimension") {
        std::vector<long long> dims = detail::n_list_from_json(
            detail::require_field(config, "dimensions", "config"), "config.dimensions");
        CsvWriter csv({"dimension", "lambda_star"});
        detail::stamp(csv, config, seed);
        SvgPlot plot("smallest separable lambda vs dimension", "dimension", "lambda*");
        SvgPlot::Series s{"hypercube approximation", {}, {}};
        for (long long d : dims) {
            const double star = min_delta_lambda_dimension(static_cast<int>(d));
            csv.row({std::to_string(d), detail::cell(star)});
            s.x.push_back(static_cast<double>(d));
            s.y.push_back(star);
        }
        plot.add_series(s);
        csv.write(paths.csv_path);
        plot.write(paths.svg_path);
        return kExitOk;
    }

    if (method == "voronoi-2d") {
        int64_t points = 1 << 22;
        if (config.contains("qmc_points"))
            points = detail::as_integer(config.at("qmc_points"), "config.qmc_points");
        const double star = min_voronoi_lambda(points, seed);
        CsvWriter csv({"lambda_star", "qmc_points"});
        detail::stamp(csv, config, seed);
        csv.row({detail::cell(star), std::to_string(points)});
        csv.write(paths.csv_path);
        return kExitOk;
    }

    throw SchemaError("config.method", "unknown method '" + method + "'");
}

// ---------------------------------------------------------------------------
// bound and simulate commands

namespace detail {

struct CommonProblem {
    MixtureSpec spec;
    RegionPtr cut;
    WeightModel model_kind{WeightModel::Kind::DeltaNeighborhood, 1.0};
    std::vector<double> grid;
    int component = 0;
    std::vector<long long> ns;
    BoundOptions bound_opt;
};

inline CommonProblem problem_from_config(const json& config) {
    CommonProblem p{mixture_from_json(require_field(config, "mixture", "config"),
                                      "config.mixture"),
                    nullptr,
                    WeightModel::delta(1.0),
                    {},
                    0,
                    {},
                    {}};
    p.cut = region_from_json(require_field(config, "cut", "config"), p.spec.dimension(),
                             "config.cut");
    if (p.cut->dim != p.spec.dimension())
        throw SchemaError("config.cut", "cut dimension does not match the mixture");

    const json& model = require_field(config, "model", "config");
    const std::string kind =
        as_string(require_field(model, "kind", "config.model"), "config.model.kind");
    if (kind != "delta" && kind != "kernel")
        throw SchemaError("config.model.kind", "expected delta or kernel");
    const bool is_delta = kind == "delta";
    if (model.contains("parameter")) {
        const double param = as_number(model.at("parameter"), "config.model.parameter");
        if (!(param > 0.0)) throw SchemaError("config.model.parameter", "must be positive");
        p.grid = {param};
        p.model_kind = is_delta ? WeightModel::delta(param) : WeightModel::kernel(param);
    } else if (model.contains("grid")) {
        p.grid = grid_from_json(model.at("grid"), "config.model.grid");
        for (double g : p.grid)
            if (!(g > 0.0)) throw SchemaError("config.model.grid", "grid values must be positive");
        p.model_kind = is_delta ? WeightModel::delta(p.grid.front())
                                : WeightModel::kernel(p.grid.front());
    } else {
        throw SchemaError("config.model", "needs parameter or grid");
    }
    if (config.contains("component")) {
        p.component = static_cast<int>(as_integer(config.at("component"), "config.component"));
        if (p.component < 0 || p.component >= p.spec.num_components())
            throw SchemaError("config.component", "component index out of range");
    }
    p.ns = n_list_from_json(require_field(config, "n", "config"), "config.n");
    for (long long n : p.ns) {
        try {
            compatible_counts(p.spec, n);
        } catch (const IncompatibleError& e) {
            throw SchemaError("config.n", e.what());
        }
    }
    if (config.contains("epsilon")) {
        const double eps = as_number(config.at("epsilon"), "config.epsilon");
        if (!(eps >= 0.0 && eps <= 1.0)) throw SchemaError("config.epsilon", "must be in [0,1]");
        p.bound_opt.order_floor_epsilon = eps;
    }
    return p;
}

}  // namespace detail

inline int run_bound(const json& config, const RunOptions& run) {
    const detail::CommonProblem p = detail::problem_from_config(config);
    const uint64_t seed = detail::seed_from_config(config, false);
    const auto paths = detail::output_paths(run, config, "bound");
    CsvWriter csv(detail::bound_columns());
    detail::stamp(csv, config, seed);
    SvgPlot plot("probability lower bound", "n", "combined bound");
    SvgPlot::Series series{"combined", {}, {}};
    bool any_feasible = false;
    for (long long n : p.ns) {
        const auto labeling = HiddenLabeling::blocks(p.spec, n);
        const detail::BoundRow row = detail::best_bound_row(
            p.spec, labeling, p.component, p.model_kind, p.cut, p.grid, p.bound_opt);
        csv.row(detail::bound_cells(row));
        if (row.feasible) {
            any_feasible = true;
            series.x.push_back(static_cast<double>(n));
            series.y.push_back(row.report.combined);
        }
    }
    plot.add_series(series);
    csv.write(paths.csv_path);
    plot.write(paths.svg_path);
    return any_feasible ? kExitOk : kExitInfeasible;
}

inline int run_simulate(const json& config, const RunOptions& run) {
    const detail::CommonProblem p = detail::problem_from_config(config);
    const uint64_t seed = detail::seed_from_config(config, true);
    const json& trials_j = detail::require_field(config, "trials", "config");
    const long long trials = detail::as_integer(trials_j, "config.trials");
    if (trials < 1) throw SchemaError("config.trials", "must be >= 1");

    const auto paths = detail::output_paths(run, config, "simulate");
    auto columns = detail::bound_columns();
    for (const char* extra : {"estimate", "wilson_lo", "wilson_hi", "trials"})
        columns.push_back(extra);
    CsvWriter csv(columns);
    detail::stamp(csv, config, seed);

    std::ofstream trial_log;
    if (run.verbose) {
        trial_log.open((std::filesystem::path(run.out_dir) /
                        (std::filesystem::path(paths.csv_path).stem().string() + "_trials.log"))
                           .string());
    }

    SvgPlot plot("bound vs empirical estimate", "n", "probability");
    SvgPlot::Series bound_series{"combined bound", {}, {}};
    SvgPlot::Series est_series{"empirical estimate", {}, {}};
    bool any_feasible = false;
    for (long long n : p.ns) {
        const auto labeling = HiddenLabeling::blocks(p.spec, n);
        detail::BoundRow row = detail::best_bound_row(p.spec, labeling, p.component,
                                                      p.model_kind, p.cut, p.grid, p.bound_opt);
        const double parameter = row.feasible ? row.parameter : p.grid.front();
        const WeightModel model = p.model_kind.kind == WeightModel::Kind::DeltaNeighborhood
                                      ? WeightModel::delta(parameter)
                                      : WeightModel::kernel(parameter);
        SimulationOptions sopt;
        sopt.threads = run.threads;
        std::vector<TrialOutcome> outcomes;
        if (run.verbose) {
            sopt.record_outcomes = true;
            sopt.outcomes = &outcomes;
        }
        const EstimateReport est = estimate_event_probability(
            p.spec, labeling, model, p.component, p.cut, trials, mix64(seed, n), sopt);
        auto cells = detail::bound_cells(row);
        if (!row.feasible) cells[1] = detail::cell(parameter);
        cells.push_back(detail::cell(est.estimate));
        cells.push_back(detail::cell(est.wilson_lo));
        cells.push_back(detail::cell(est.wilson_hi));
        cells.push_back(std::to_string(est.trials));
        csv.row(cells);
        if (run.verbose && trial_log) {
            for (const auto& o : outcomes)
                trial_log << "n=" << n << " trial=" << o.trial
                          << " clique=" << o.clique_nonempty << " majority=" << o.majority
                          << " order=" << o.order_ok << " success=" << o.success << "\n";
        }
        est_series.x.push_back(static_cast<double>(n));
        est_series.y.push_back(est.estimate);
        if (row.feasible) {
            any_feasible = true;
            bound_series.x.push_back(static_cast<double>(n));
            bound_series.y.push_back(row.report.combined);
        }
    }
    plot.add_series(bound_series);
    plot.add_series(est_series);
    csv.write(paths.csv_path);
    plot.write(paths.svg_path);
    return any_feasible ? kExitOk : kExitInfeasible;
}

// ---------------------------------------------------------------------------
// verify command: the built-in oracle suite.

inline int run_verify(const RunOptions& run, std::ostream& os) {
    int failures = 0;
    const auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
        os << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) os << " (" << detail << ")";
        os << "\n";
        if (!ok) ++failures;
    };

    // Planted cliques induce tangles (exhaustive axiom check).
    {
        RngStream stream(20240101);
        int bad = 0;
        for (int rep = 0; rep < 200; ++rep) {
            const int n = 5 + static_cast<int>(stream.next_uniform() * 5);
            const int wsize = 2 + static_cast<int>(stream.next_uniform() * (n - 2));
            WeightedGraph g = WeightedGraph::sparse(n);
            std::vector<int> w(wsize);
            for (int i = 0; i < wsize; ++i) w[i] = i;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const bool in_clique = i < wsize && j < wsize;
                    const double u = stream.next_uniform();
                    if (in_clique)
                        g.add_edge(i, j, 0.2 + 0.8 * u);
                    else if (u < 0.35)
                        g.add_edge(i, j, 0.05 + 0.95 * stream.next_uniform());
                }
            g.finalize();
            const TangleFamily fam = materialize_clique_tangle(g, w);
            if (!verify_tangle_axioms(g, fam).pass) ++bad;
        }
        report("clique-tangle axioms on 200 random graphs", bad == 0,
               std::to_string(bad) + " violations");
    }

    // Per-trial cut bounds on random datasets.
    {
        RngStream stream(20240202);
        int bad = 0;
        const int instances = 20000;
        for (int rep = 0; rep < instances; ++rep) {
            const int d = stream.next_uniform() < 0.5 ? 1 : 2;
            const double lambda = 2.0 + 6.0 * stream.next_uniform();
            const MixtureSpec spec =
                d == 1 ? two_gaussians_1d(lambda) : two_gaussians(d, lambda);
            const long long n = 8 + 2 * static_cast<long long>(stream.next_uniform() * 12);
            const auto labeling = HiddenLabeling::blocks(spec, n);
            const Dataset ds = sample_dataset(spec, labeling, stream.next_bits());
            Vec u(d, 0.0);
            u[0] = 1.0;
            const auto s = region::halfspace(u, lambda * (stream.next_uniform() - 0.2));
            const double delta = 0.2 + 1.6 * stream.next_uniform();
            const auto zone = boundary_zone(s, delta);
            double kappa = 0.0;
            long long in_zone = 0;
            for (long long i = 0; i < n; ++i) {
                if (zone->contains(ds.point(i))) ++in_zone;
                if (!s->contains(ds.point(i))) continue;
                for (long long j = 0; j < n; ++j)
                    if (!s->contains(ds.point(j)) &&
                        dist_sq(ds.point(i), ds.point(j), d) <= delta * delta)
                        kappa += 1.0;
            }
            if (kappa > 0.25 * static_cast<double>(in_zone) * static_cast<double>(in_zone))
                ++bad;
            if (d == 1) {
                const double c = lambda * (stream.next_uniform() - 0.2);
                double kernel_kappa = 0.0, total = 0.0;
                for (long long i = 0; i < n; ++i) {
                    const double xi = ds.point(i)[0];
                    total += std::exp(-0.5 * (xi - c) * (xi - c));
                    if (xi > c) continue;
                    for (long long j = 0; j < n; ++j) {
                        const double xj = ds.point(j)[0];
                        if (xj > c)
                            kernel_kappa += std::exp(-0.5 * (xi - xj) * (xi - xj));
                    }
                }
                if (kernel_kappa > 0.25 * total * total) ++bad;
            }
        }
        report("cut bounds on 20000 random instances", bad == 0,
               std::to_string(bad) + " violations");
    }

    // Moment formulas against simulation.
    {
        const MixtureSpec spec = two_gaussians_1d(4.0, Rational(1, 4));
        const auto labeling = HiddenLabeling::blocks(spec, 200);
        const auto reg = region::interval(-0.5, 2.0);
        const auto cut = region::halfspace({1.0}, 1.2);
        SimulationOptions sopt;
        sopt.threads = run.threads;
        const MomentsCheck check = empirical_moments_check(
            spec, labeling, *reg, cut, WeightModel::delta(0.8), 20000, 909, sopt);
        report("moment formulas vs simulation", check.max_abs_z() < 4.0,
               "max |z| = " + CsvWriter::format(check.max_abs_z()));
    }

    // Incomparability is symmetric and witnessed.
    {
        WeightedGraph g = WeightedGraph::sparse(6);
        g.add_edge(0, 1, 1.0);
        g.add_edge(0, 2, 1.0);
        g.add_edge(1, 2, 1.0);
        g.add_edge(3, 4, 1.0);
        g.add_edge(3, 5, 1.0);
        g.add_edge(4, 5, 1.0);
        g.add_edge(2, 3, 0.1);
        g.finalize();
        const TangleFamily t1 = materialize_clique_tangle(g, {0, 1, 2});
        const TangleFamily t2 = materialize_clique_tangle(g, {3, 4, 5});
        const bool ok = incomparable(t1, t2).incomparable &&
                        incomparable(t2, t1).incomparable &&
                        !incomparable(t1, t1).incomparable;
        report("incomparability detection on the two-triangle graph", ok);
    }

    return failures == 0 ? kExitOk : kExitOracle;
}

// ---------------------------------------------------------------------------
// reproduce command: built-in figure presets.

namespace detail {

inline std::vector<double> linspace(double from, double to, int steps) {
    std::vector<double> v;
    for (int i = 0; i <= steps; ++i)
        v.push_back(from + (to - from) * static_cast<double>(i) / steps);
    return v;
}

inline std::vector<double> delta_grid(double lambda) {
    std::vector<double> grid;
    for (double d = 0.1; d <= std::min(2.2, 0.95 * lambda); d += 0.1) grid.push_back(d);
    return grid;
}

// One bound-vs-lambda panel for the 1D/2D/3D two-component base case.
inline void base_case_panel(const json& config, const RunOptions& run, int dim,
                            const std::vector<Rational>& ratios,
                            const std::vector<long long>& ns, double lambda_from,
                            double lambda_to, int lambda_steps, const std::string& stem,
                            const std::string& title) {
    const uint64_t seed = seed_from_config(config, false);
    auto columns = bound_columns();
    columns.insert(columns.begin(), "lambda");
    columns.insert(columns.begin() + 1, "r");
    CsvWriter csv(columns);
    stamp(csv, config, seed);
    SvgPlot plot(title, "lambda", "combined bound");
    std::map<std::string, SvgPlot::Series> series;

    for (const Rational& r : ratios)
        for (long long n : ns) {
            // n compatible with r: round to the nearest compatible value.
            long long nn = n;
            while (!(r.times_is_integral(nn))) ++nn;
            const auto key = "r=" + r.str() + " n=" + std::to_string(nn);
            for (double lambda : linspace(lambda_from, lambda_to, lambda_steps)) {
                const MixtureSpec spec =
                    dim == 1 ? two_gaussians_1d(lambda, r) : two_gaussians(dim, lambda);
                const auto labeling = HiddenLabeling::blocks(spec, nn);
                const double c =
                    dim == 1 && r != Rational(1, 2)
                        ? argmin_mean_density_1d(spec, 0.0, lambda)
                        : lambda / 2.0;
                Vec u(dim, 0.0);
                u[0] = 1.0;
                const auto cut = region::halfspace(u, c);
                BoundRow row = best_bound_row(spec, labeling, 0,
                                              WeightModel::delta(1.0), cut,
                                              delta_grid(lambda), BoundOptions{});
                auto cells = bound_cells(row);
                cells.insert(cells.begin(), cell(lambda));
                cells.insert(cells.begin() + 1, r.str());
                csv.row(cells);
                auto& s = series[key];
                s.label = key;
                s.x.push_back(lambda);
                s.y.push_back(row.feasible ? row.report.combined : 0.0);
            }
        }
    for (auto& [key, s] : series) plot.add_series(s);
    const auto paths = output_paths(run, config, stem);
    csv.write(paths.csv_path);
    plot.write(paths.svg_path);
}

}  // namespace detail

inline int reproduce_fig2a(const json& config, const RunOptions& run) {
    detail::base_case_panel(config, run, 1, {Rational(1, 2)}, {100, 400, 900, 2500}, 2.8, 6.0,
                            32, "fig2a", "delta graph bound, 1d base case");
    return kExitOk;
}

inline int reproduce_fig2b(const json& config, const RunOptions& run) {
    detail::base_case_panel(config, run, 1,
                            {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 10)},
                            {900}, 2.8, 6.0, 32, "fig2b", "delta graph bound, varying ratio");
    return kExitOk;
}

namespace detail {

inline int reproduce_threshold_sweep(const json& config, const RunOptions& run, bool vary_ratio,
                                     const std::string& stem) {
    const uint64_t seed = seed_from_config(config, false);
    CsvWriter csv({vary_ratio ? "r" : "alpha", "lambda_two_thirds", "lambda_root_two_thirds"});
    stamp(csv, config, seed);
    SvgPlot plot("minimal separable mean distance", vary_ratio ? "r" : "alpha", "lambda*");
    SvgPlot::Series s1{"2/3 condition", {}, {}}, s2{"sqrt(2)/3 condition", {}, {}};
    if (vary_ratio) {
        for (int k = 1; k <= 10; ++k) {
            const Rational r(k, 20);
            const double l1 = min_separable_lambda_1d(r, 1.0, SeparabilityCondition::TwoThirds);
            const double l2 =
                min_separable_lambda_1d(r, 1.0, SeparabilityCondition::RootTwoThirds);
            csv.row({cell(r.to_double()), cell(l1), cell(l2)});
            s1.x.push_back(r.to_double());
            s1.y.push_back(l1);
            s2.x.push_back(r.to_double());
            s2.y.push_back(l2);
        }
    } else {
        for (double alpha = 0.6; alpha <= 1.61; alpha += 0.1) {
            const double l1 =
                min_separable_lambda_1d(Rational(1, 2), alpha, SeparabilityCondition::TwoThirds);
            const double l2 = min_separable_lambda_1d(Rational(1, 2), alpha,
                                                      SeparabilityCondition::RootTwoThirds);
            csv.row({cell(alpha), cell(l1), cell(l2)});
            s1.x.push_back(alpha);
            s1.y.push_back(l1);
            s2.x.push_back(alpha);
            s2.y.push_back(l2);
        }
    }
    plot.add_series(s1);
    plot.add_series(s2);
    const auto paths = output_paths(run, config, stem);
    csv.write(paths.csv_path);
    plot.write(paths.svg_path);
    return kExitOk;
}

}  // namespace detail

inline int reproduce_fig2c(const json& config, const RunOptions& run) {
    return detail::reproduce_threshold_sweep(config, run, true, "fig2c");
}

inline int reproduce_fig2d(const json& config, const RunOptions& run) {
    return detail::reproduce_threshold_sweep(config, run, false, "fig2d");
}

inline int reproduce_fig4a(const json& config, const RunOptions& run) {
    detail::base_case_panel(config, run, 2, {Rational(1, 2)}, {900, 2500, 10000}, 4.5, 8.0, 14,
                            "fig4a", "delta graph bound, 2d base case");
    return kExitOk;
}

inline int reproduce_fig4b(const json& config, const RunOptions& run) {
    detail::base_case_panel(config, run, 3, {Rational(1, 2)}, {2500, 10000}, 5.0, 9.0, 16,
                            "fig4b", "delta graph bound, 3d base case");
    return kExitOk;
}

inline int reproduce_fig4c(const json& config, const RunOptions& run) {
    const uint64_t seed = detail::seed_from_config(config, false);
    CsvWriter csv({"dimension", "lambda_star"});
    detail::stamp(csv, config, seed);
    SvgPlot plot("smallest separable lambda vs dimension", "dimension", "lambda*");
    SvgPlot::Series s{"hypercube approximation", {}, {}};
    for (int d = 1; d <= 8; ++d) {
        const double star = min_delta_lambda_dimension(d);
        csv.row({std::to_string(d), detail::cell(star)});
        s.x.push_back(d);
        s.y.push_back(star);
    }
    plot.add_series(s);
    const auto paths = detail::output_paths(run, config, "fig4c");
    csv.write(paths.csv_path);
    plot.write(paths.svg_path);
    return kExitOk;
}

// Equilateral three-Gaussian mixture with a square cut around one mean; the
// square half-width and the ball diameter are optimized jointly.
inline int reproduce_fig4d(const json& config, const RunOptions& run) {
    const uint64_t seed = detail::seed_from_config(config, false);
    CsvWriter csv({"lambda", "n", "delta", "half_width", "feasible", "hoeffding_branch",
                   "berry_esseen_branch", "size_correction", "combined"});
    detail::stamp(csv, config, seed);
    SvgPlot plot("delta graph bound, square cut on the triangle mixture", "lambda",
                 "combined bound");
    std::map<std::string, SvgPlot::Series> series;
    for (long long n : {900LL, 2502LL}) {
        for (double lambda = 4.5; lambda <= 8.01; lambda += 0.25) {
            const MixtureSpec spec = equilateral_triangle(lambda);
            long long nn = n;
            while (nn % 3 != 0) ++nn;
            const auto labeling = HiddenLabeling::blocks(spec, nn);
            double best_combined = -1.0;
            double best_delta = 0.0, best_h = 0.0;
            BoundReport best_report;
            for (double delta = 0.2; delta <= 2.01; delta += 0.2) {
                for (double h = delta / 2.0 + 0.1; h <= 3.51; h += 0.2) {
                    const auto square = region::box({-h, -h}, {h, h});
                    try {
                        const BoundReport r =
                            bound_small_n_delta(spec, labeling, 0, delta, *square);
                        if (r.combined_raw > best_combined) {
                            best_combined = r.combined_raw;
                            best_delta = delta;
                            best_h = h;
                            best_report = r;
                        }
                    } catch (const PreconditionFailed&) {
                    }
                }
            }
            const auto key = "n=" + std::to_string(nn);
            auto& s = series[key];
            s.label = key;
            s.x.push_back(lambda);
            if (best_combined < 0.0) {
                csv.row({detail::cell(lambda), std::to_string(nn), "", "", "0", "", "", "", ""});
                s.y.push_back(0.0);
            } else {
                csv.row({detail::cell(lambda), std::to_string(nn), detail::cell(best_delta),
                         detail::cell(best_h), "1", detail::cell(best_report.hoeffding_branch),
                         detail::cell(best_report.berry_esseen_branch),
                         detail::cell(best_report.size_correction),
                         detail::cell(best_report.combined)});
                s.y.push_back(best_report.combined);
            }
        }
    }
    for (auto& [key, s] : series) plot.add_series(s);
    const auto paths = detail::output_paths(run, config, "fig4d");
    csv.write(paths.csv_path);
    plot.write(paths.svg_path);
    return kExitOk;
}

inline int reproduce_fig5a(const json& config, const RunOptions& run) {
    const uint64_t seed = detail::seed_from_config(config, false);
    CsvWriter csv({"width", "lambda_star"});
    detail::stamp(csv, config, seed);
    SvgPlot plot("smallest separable lambda, kernel graph", "width", "lambda*");
    SvgPlot::Series s{"lambda*", {}, {}};
    for (double width = 0.3; width <= 3.01; width += 0.1) {
        try {
            const double star = min_weight_lambda(width);
            csv.row({detail::cell(width), detail::cell(star)});
            s.x.push_back(width);
            s.y.push_back(star);
        } catch (const NotFound&) {
            csv.row({detail::cell(width), ""});
        }
    }
    plot.add_series(s);
    const auto paths = detail::output_paths(run, config, "fig5a");
    csv.write(paths.csv_path);
    plot.write(paths.svg_path);
    return kExitOk;
}

inline int reproduce_fig5b(const json& config, const RunOptions& run) {
    const uint64_t seed = detail::seed_from_config(config, false);
    auto columns = detail::bound_columns();
    columns.insert(columns.begin(), "lambda");
    CsvWriter csv(columns);
    detail::stamp(csv, config, seed);
    SvgPlot plot("kernel graph bound, 1d base case", "lambda", "combined bound");
    std::map<std::string, SvgPlot::Series> series;
    std::vector<double> widths;
    for (double w = 0.2; w <= 3.0; w += 0.1) widths.push_back(w);
    for (long long n : {400LL, 900LL, 2500LL}) {
        for (double lambda = 4.3; lambda <= 8.01; lambda += 0.25) {
            const MixtureSpec spec = two_gaussians_1d(lambda);
            const auto labeling = HiddenLabeling::blocks(spec, n % 2 == 0 ? n : n + 1);
            detail::BoundRow row;
            row.n = labeling.n();
            try {
                const OptimizedBound best = optimize_radius(
                    spec, labeling, 0, lambda / 2.0, CutSide::LowerHalfline, widths);
                row.feasible = true;
                row.parameter = best.best_parameter;
                row.report = best.report;
                row.pre_slack = best.report.preconditions.empty()
                                    ? 0.0
                                    : best.report.preconditions.front().slack;
            } catch (const NotFound&) {
            }
            auto cells = detail::bound_cells(row);
            cells.insert(cells.begin(), detail::cell(lambda));
            csv.row(cells);
            const auto key = "n=" + std::to_string(labeling.n());
            auto& s = series[key];
            s.label = key;
            s.x.push_back(lambda);
            s.y.push_back(row.feasible ? row.report.combined : 0.0);
        }
    }
    for (auto& [key, s] : series) plot.add_series(s);
    const auto paths = detail::output_paths(run, config, "fig5b");
    csv.write(paths.csv_path);
    plot.write(paths.svg_path);
    return kExitOk;
}

inline const std::set<std::string>& known_figures() {
    static const std::set<std::string> ids = {"fig2a", "fig2b", "fig2c", "fig2d", "fig4a",
                                              "fig4b", "fig4c", "fig4d", "fig5a", "fig5b"};
    return ids;
}

inline int run_reproduce(const json& config, const RunOptions& run) {
    const std::string figure = detail::as_string(
        detail::require_field(config, "figure", "config"), "config.figure");
    if (!known_figures().count(figure))
        throw SchemaError("config.figure", "unknown figure id '" + figure + "'");
    if (figure == "fig2a") return reproduce_fig2a(config, run);
    if (figure == "fig2b") return reproduce_fig2b(config, run);
    if (figure == "fig2c") return reproduce_fig2c(config, run);
    if (figure == "fig2d") return reproduce_fig2d(config, run);
    if (figure == "fig4a") return reproduce_fig4a(config, run);
    if (figure == "fig4b") return reproduce_fig4b(config, run);
    if (figure == "fig4c") return reproduce_fig4c(config, run);
    if (figure == "fig4d") return reproduce_fig4d(config, run);
    if (figure == "fig5a") return reproduce_fig5a(config, run);
    return reproduce_fig5b(config, run);
}

// ---------------------------------------------------------------------------

inline int execute(const json& config, const RunOptions& run, std::ostream& os) {
    const std::string command = detail::as_string(
        detail::require_field(config, "command", "config"), "config.command");
    if (command == "threshold") return run_threshold(config, run);
    if (command == "bound") return run_bound(config, run);
    if (command == "simulate") return run_simulate(config, run);
    if (command == "verify") return run_verify(run, os);
    if (command == "reproduce") return run_reproduce(config, run);
    throw SchemaError("config.command",
                      "expected threshold, bound, simulate, verify or reproduce");
}

}  // namespace tangles::cli
