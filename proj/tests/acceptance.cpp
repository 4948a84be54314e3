// Acceptance suite: one test case per criterion, one PASS/FAIL line each.
// Run via `ctest -R acceptance` or directly with `./acceptance`.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

#include "tangles/experiment.hpp"
#include "tangles/montecarlo.hpp"
#include "tangles/tangle_oracle.hpp"

using namespace tangles;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, bool pass, const std::string& details, double seconds) {
    std::printf("[criterion %d] %s: %s (%.1fs)\n", criterion, pass ? "PASS" : "FAIL",
                details.c_str(), seconds);
    std::fflush(stdout);
}

}  // namespace

TEST_CASE("criterion 1: 1d separability thresholds") {
    Stopwatch clock;
    const double two_thirds =
        min_separable_lambda_1d(Rational(1, 2), 1.0, SeparabilityCondition::TwoThirds);
    const double t1 = clock.seconds();
    Stopwatch clock2;
    const double root =
        min_separable_lambda_1d(Rational(1, 2), 1.0, SeparabilityCondition::RootTwoThirds);
    const double t2 = clock2.seconds();

    const bool pass = std::abs(two_thirds - 2.948) <= 0.005 && std::abs(root - 3.397) <= 0.005 &&
                      t1 < 1.0 && t2 < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "lambda*(2/3)=%.4f (target 2.948+-0.005), lambda*(sqrt2/3)=%.4f "
                  "(target 3.397+-0.005)",
                  two_thirds, root);
    report(1, pass, buf, t1 + t2);
    REQUIRE(std::abs(two_thirds - 2.948) <= 0.005);
    REQUIRE(std::abs(root - 3.397) <= 0.005);
    REQUIRE(t1 < 1.0);
    REQUIRE(t2 < 1.0);
}

TEST_CASE("criterion 2: kernel-graph threshold at the optimal width") {
    Stopwatch clock;
    const double star = cli::min_weight_lambda(std::nullopt);
    const double t = clock.seconds();
    const bool pass = std::abs(star - 4.27) <= 0.03 && t < 30.0;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "lambda*=%.4f (target 4.27+-0.03)", star);
    report(2, pass, buf, t);
    REQUIRE(std::abs(star - 4.27) <= 0.03);
    REQUIRE(t < 30.0);
}

namespace {

// Same search as min_voronoi_lambda but with the cut integral multiplied by
// an arbitrary factor; used purely as a diagnostic below.
double voronoi_lambda_scaled(double energy_scale, int64_t qmc_points, uint64_t seed) {
    std::vector<double> deltas;
    for (double dl = 0.2; dl <= 2.61; dl += 0.1) deltas.push_back(dl);
    const auto feasible = [&](double lambda) {
        const MixtureSpec spec = equilateral_triangle(lambda);
        const auto cell = region::voronoi_cell(
            0, {spec.component(0).mean, spec.component(1).mean, spec.component(2).mean});
        CutEnergyOptions opt;
        opt.qmc_points = qmc_points;
        opt.qmc_seed = mix64(seed, 0x766f72ULL);
        const auto profile = cut_energy_profile(spec, *cell, deltas, opt);
        for (size_t i = 0; i < deltas.size(); ++i) {
            if (deltas[i] >= lambda) continue;
            const double nub = measure_mean(spec, *ball_around_mean(spec, 0, deltas[i])).value;
            if (2.0 / 9.0 * nub * nub - energy_scale * profile[i].value > 0.0) return true;
        }
        return false;
    };
    double lo = 3.0, hi = 6.0;
    while (hi - lo > 0.02) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("criterion 3: 2d three-gaussian voronoi threshold") {
    Stopwatch clock;
    const double star = cli::min_voronoi_lambda(int64_t{1} << 22, 0xacc3ULL);
    const double t = clock.seconds();
    const bool pass = std::abs(star - 4.1) <= 0.1 && t < 300.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "lambda*=%.3f (target 4.1+-0.1; exact ordered-pair cut integral)", star);
    report(3, pass, buf, t);
    if (!pass) {
        // Diagnostic: the target is reproduced when the cut integral is
        // halved, i.e. when crossing pairs are counted unordered.
        const double halved = voronoi_lambda_scaled(0.5, int64_t{1} << 20, 0xacc3ULL);
        std::printf("    note: with the cut integral halved the search gives lambda*=%.3f\n",
                    halved);
    }
    REQUIRE(std::abs(star - 4.1) <= 0.1);
    REQUIRE(t < 300.0);
}

TEST_CASE("criterion 4: soundness of the bounds against simulation") {
    Stopwatch clock;
    bool all_sound = true;
    int feasible_configs = 0, vacuous_configs = 0;
    std::vector<double> grid;
    for (double d = 0.2; d <= 2.2; d += 0.2) grid.push_back(d);

    for (int dim : {1, 2}) {
        for (double lambda : {4.0, 5.0, 6.0}) {
            for (long long n : {400LL, 900LL}) {
                const MixtureSpec spec =
                    dim == 1 ? two_gaussians_1d(lambda) : two_gaussians(dim, lambda);
                const auto labeling = HiddenLabeling::blocks(spec, n);
                Vec u(dim, 0.0);
                u[0] = 1.0;
                const auto cut = region::halfspace(u, lambda / 2.0);
                double combined = 0.0, parameter = 0.0;
                bool feasible = true;
                try {
                    const OptimizedBound best = optimize_radius(spec, labeling, 0, *cut, grid);
                    combined = best.report.combined;
                    parameter = best.best_parameter;
                } catch (const NotFound&) {
                    feasible = false;
                }
                if (!feasible) {
                    ++vacuous_configs;
                    continue;
                }
                ++feasible_configs;
                const EstimateReport est = estimate_event_probability(
                    spec, labeling, WeightModel::delta(parameter), 0, cut, 10000,
                    mix64(0xacce97, dim, static_cast<uint64_t>(lambda * 8),
                          static_cast<uint64_t>(n)));
                const bool sound = combined <= est.estimate + 3.0 * est.std_error;
                if (!sound) all_sound = false;
                std::printf("    d=%d lambda=%g n=%lld delta=%.3f bound=%.5f estimate=%.5f "
                            "se=%.5f %s\n",
                            dim, lambda, n, parameter, combined, est.estimate, est.std_error,
                            sound ? "ok" : "VIOLATION");
            }
        }
    }
    const double t = clock.seconds();
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d feasible configs sound, %d vacuous (grid of 12)",
                  feasible_configs, vacuous_configs);
    const bool pass = all_sound && t < 1200.0;
    report(4, pass, buf, t);
    REQUIRE(all_sound);
    REQUIRE(feasible_configs + vacuous_configs == 12);
    REQUIRE(feasible_configs >= 6);
    REQUIRE(t < 1200.0);
}

TEST_CASE("criterion 5: planted-clique tangle oracle") {
    Stopwatch clock;
    RngStream stream(0xacc5);
    int violations = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 5 + static_cast<int>(stream.next_uniform() * 5);  // 5..9
        const int wsize = 2 + static_cast<int>(stream.next_uniform() * (n - 2));
        WeightedGraph g = WeightedGraph::sparse(n);
        std::vector<int> w(wsize);
        for (int i = 0; i < wsize; ++i) w[i] = i;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const bool in_clique = i < wsize && j < wsize;
                const double uu = stream.next_uniform();
                if (in_clique)
                    g.add_edge(i, j, 0.2 + 0.8 * uu);
                else if (uu < 0.4)
                    g.add_edge(i, j, 0.05 + 0.95 * stream.next_uniform());
            }
        g.finalize();
        const TangleFamily fam = materialize_clique_tangle(g, w);
        if (!verify_tangle_axioms(g, fam).pass) ++violations;
    }
    const double t = clock.seconds();
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%d/200 graphs with axiom violations", violations);
    report(5, violations == 0 && t < 60.0, buf, t);
    REQUIRE(violations == 0);
    REQUIRE(t < 60.0);
}

TEST_CASE("criterion 6: cut bounds on 1e5 random instances") {
    Stopwatch clock;
    RngStream stream(0xacc6);
    int violations = 0;
    const int delta_instances = 60000, kernel_instances = 40000;

    for (int rep = 0; rep < delta_instances; ++rep) {
        const int d = stream.next_uniform() < 0.5 ? 1 : 2;
        const double lambda = 2.0 + 6.0 * stream.next_uniform();
        const MixtureSpec spec = d == 1 ? two_gaussians_1d(lambda) : two_gaussians(d, lambda);
        const long long n = 8 + 2 * static_cast<long long>(stream.next_uniform() * 16);
        const auto labeling = HiddenLabeling::blocks(spec, n);
        const Dataset ds = sample_dataset(spec, labeling, stream.next_bits());
        RegionPtr s;
        if (d == 1 || stream.next_uniform() < 0.5) {
            Vec u(d, 0.0);
            if (d == 2) {
                const double ang = 2.0 * std::numbers::pi * stream.next_uniform();
                u = {std::cos(ang), std::sin(ang)};
            } else {
                u[0] = stream.next_uniform() < 0.5 ? 1.0 : -1.0;
            }
            s = region::halfspace(u, lambda * (stream.next_uniform() - 0.2));
        } else {
            Vec lo(d), hi(d);
            for (int j = 0; j < d; ++j) {
                lo[j] = -1.5 + 3.0 * stream.next_uniform();
                hi[j] = lo[j] + 0.5 + 3.0 * stream.next_uniform();
            }
            s = region::box(lo, hi);
        }
        const double delta = 0.2 + 1.8 * stream.next_uniform();
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
            ++violations;
    }

    for (int rep = 0; rep < kernel_instances; ++rep) {
        const double lambda = 2.0 + 6.0 * stream.next_uniform();
        const double sigma = 0.5 + 1.5 * stream.next_uniform();
        const MixtureSpec spec = two_gaussians_1d(lambda, Rational(1, 2), 1.0, sigma);
        const long long n = 8 + 2 * static_cast<long long>(stream.next_uniform() * 16);
        const auto labeling = HiddenLabeling::blocks(spec, n);
        const Dataset ds = sample_dataset(spec, labeling, stream.next_bits());
        const double c = lambda * (stream.next_uniform() - 0.2);
        double kappa = 0.0, total = 0.0;
        for (long long i = 0; i < n; ++i) {
            const double xi = ds.point(i)[0];
            total += std::exp(-(xi - c) * (xi - c) / (2.0 * sigma * sigma));
            if (xi > c) continue;
            for (long long j = 0; j < n; ++j) {
                const double xj = ds.point(j)[0];
                if (xj > c)
                    kappa += std::exp(-(xi - xj) * (xi - xj) / (2.0 * sigma * sigma));
            }
        }
        if (kappa > 0.25 * total * total) ++violations;
    }
    const double t = clock.seconds();
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%d violations in %d instances", violations,
                  delta_instances + kernel_instances);
    report(6, violations == 0 && t < 120.0, buf, t);
    REQUIRE(violations == 0);
    REQUIRE(t < 120.0);
}

TEST_CASE("criterion 7: moment formulas and cubic variance growth") {
    Stopwatch clock;
    const MixtureSpec spec = two_gaussians_1d(4.0, Rational(1, 4));
    const auto labeling = HiddenLabeling::blocks(spec, 248);
    const auto reg = region::interval(-0.5, 2.0);
    const auto cut = region::halfspace({1.0}, 1.2);
    const MomentsCheck check = empirical_moments_check(spec, labeling, *reg, cut,
                                                       WeightModel::delta(0.8), 100000, 0xacc7);
    double z1 = 0.0, z2 = 0.0, z7 = 0.0;
    for (const auto& row : check.rows) {
        if (row.name == "E|V_A|") z1 = row.z;
        if (row.name == "Var|V_A|") z2 = row.z;
        if (row.name == "Pr(|V_A|>=2)") z7 = row.z;
    }

    std::vector<double> ns = {250, 500, 1000, 2000};
    std::vector<double> var_sq, var_kappa;
    for (double n : ns) {
        const auto lab = HiddenLabeling::blocks(two_gaussians_1d(4.0),
                                                static_cast<long long>(n));
        const MomentsCheck c2 = empirical_moments_check(
            two_gaussians_1d(4.0), lab, *region::interval(0.0, 3.0),
            region::halfspace({1.0}, 2.0), WeightModel::delta(1.0), 4000, 0xacc7b);
        var_sq.push_back(c2.var_size_sq);
        var_kappa.push_back(c2.var_kappa);
    }
    const auto slope = [&](const std::vector<double>& ys) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < ns.size(); ++i) {
            const double x = std::log(ns[i]), y = std::log(ys[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double k = static_cast<double>(ns.size());
        return (k * sxy - sx * sy) / (k * sxx - sx * sx);
    };
    const double s_sq = slope(var_sq), s_kappa = slope(var_kappa);
    const double t = clock.seconds();

    const bool pass = std::abs(z1) < 4.0 && std::abs(z2) < 4.0 && std::abs(z7) < 4.0 &&
                      s_sq <= 3.2 && s_kappa <= 3.2 && t < 300.0;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "z(E|V_A|)=%.2f z(Var|V_A|)=%.2f z(Pr>=2)=%.2f, growth slopes %.2f / %.2f "
                  "(<= 3.2)",
                  z1, z2, z7, s_sq, s_kappa);
    report(7, pass, buf, t);
    REQUIRE(std::abs(z1) < 4.0);
    REQUIRE(std::abs(z2) < 4.0);
    REQUIRE(std::abs(z7) < 4.0);
    REQUIRE(s_sq <= 3.2);
    REQUIRE(s_kappa <= 3.2);
    REQUIRE(t < 300.0);
}

TEST_CASE("criterion 8: hoeffding/berry-esseen crossover") {
    Stopwatch clock;
    const MixtureSpec spec = two_gaussians_1d(5.0);
    const auto s = region::halfspace({1.0}, 2.5);
    std::vector<double> grid;
    for (double d = 0.2; d <= 2.2; d += 0.1) grid.push_back(d);
    const OptimizedBound small =
        optimize_radius(spec, HiddenLabeling::blocks(spec, 100), 0, *s, grid);
    const OptimizedBound large =
        optimize_radius(spec, HiddenLabeling::blocks(spec, 10000), 0, *s, grid);
    const double t = clock.seconds();
    const bool pass = small.report.berry_esseen_branch > small.report.hoeffding_branch &&
                      large.report.hoeffding_branch > large.report.berry_esseen_branch &&
                      t < 10.0;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "n=100: BE %.4f > H %.4f; n=10000: H %.6f > BE %.6f",
                  small.report.berry_esseen_branch, small.report.hoeffding_branch,
                  large.report.hoeffding_branch, large.report.berry_esseen_branch);
    report(8, pass, buf, t);
    REQUIRE(small.report.berry_esseen_branch > small.report.hoeffding_branch);
    REQUIRE(large.report.hoeffding_branch > large.report.berry_esseen_branch);
    REQUIRE(t < 10.0);
}

TEST_CASE("criterion 9: quadrature sanity") {
    Stopwatch clock;
    RngStream stream(0xacc9);
    double max_err = 0.0;
    // Halfspace and box measures against directly coded Phi expressions.
    for (int rep = 0; rep < 200; ++rep) {
        const int d = 1 + static_cast<int>(stream.next_uniform() * 3);
        Vec mean(d), u(d);
        double norm = 0.0;
        for (int j = 0; j < d; ++j) {
            mean[j] = -2.0 + 4.0 * stream.next_uniform();
            u[j] = -1.0 + 2.0 * stream.next_uniform();
            norm += u[j] * u[j];
        }
        if (norm < 1e-3) continue;
        norm = std::sqrt(norm);
        const double sigma = 0.5 + 1.5 * stream.next_uniform();
        const MixtureSpec spec(d, {{Rational(1), mean, sigma}});
        const double offset = -2.0 + 4.0 * stream.next_uniform();
        const auto hs = region::halfspace(u, offset);
        double proj = 0.0;
        for (int j = 0; j < d; ++j) proj += mean[j] * u[j] / norm;
        const double expect_hs = normal_cdf((offset / norm - proj) / sigma);
        max_err = std::max(max_err, std::abs(measure(spec, *hs, 0).value - expect_hs));

        Vec lo(d), hi(d);
        double expect_box = 1.0;
        for (int j = 0; j < d; ++j) {
            lo[j] = mean[j] - 2.0 * stream.next_uniform() - 0.1;
            hi[j] = mean[j] + 2.0 * stream.next_uniform() + 0.1;
            expect_box *= normal_cdf((hi[j] - mean[j]) / sigma) -
                          normal_cdf((lo[j] - mean[j]) / sigma);
        }
        const auto box = region::box(lo, hi);
        max_err = std::max(max_err, std::abs(measure(spec, *box, 0).value - expect_box));
    }

    // 2d ball quadrature against QMC.
    bool balls_ok = true;
    MeasureOptions opt;
    opt.qmc_points = 1 << 19;
    for (int rep = 0; rep < 8; ++rep) {
        const MixtureSpec spec(2, {{Rational(1),
                                    {stream.next_uniform() * 2.0, stream.next_uniform() * 2.0},
                                    0.6 + stream.next_uniform()}});
        const auto ball = region::ball({stream.next_uniform() * 3.0 - 1.0,
                                        stream.next_uniform() * 3.0 - 1.0},
                                       0.3 + 1.5 * stream.next_uniform());
        const double quad = measure(spec, *ball, 0).value;
        const MeasureResult qmc = tangles::detail::qmc_region_measure(spec, *ball, 0, opt);
        if (std::abs(quad - qmc.value) >= 4.0 * qmc.error + 1e-6) balls_ok = false;
    }
    const double t = clock.seconds();
    const bool pass = max_err < 1e-10 && balls_ok && t < 30.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "max closed-form deviation %.2e (< 1e-10), 2d balls within 4 SE of QMC: %s",
                  max_err, balls_ok ? "yes" : "no");
    report(9, pass, buf, t);
    REQUIRE(max_err < 1e-10);
    REQUIRE(balls_ok);
    REQUIRE(t < 30.0);
}
