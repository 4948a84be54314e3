#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "tangles/cut_energy.hpp"

using namespace tangles;

namespace {

// Independent pairwise Monte Carlo oracle: average of w * 1_S(x) * 1_{Sbar}(y)
// over i.i.d. pairs from fbar x fbar, drawn with the standard library RNG.
struct PairOracle {
    double value;
    double std_error;
};

PairOracle pair_oracle(const MixtureSpec& spec, const Region& s, const WeightModel& w,
                       long long pairs, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int d = spec.dimension();
    std::vector<double> cum;
    double acc = 0.0;
    for (const auto& c : spec.components()) {
        acc += c.ratio.to_double();
        cum.push_back(acc);
    }
    const auto draw = [&](Vec& x) {
        const double u = unif(gen);
        int k = 0;
        while (k + 1 < spec.num_components() && u >= cum[k]) ++k;
        const auto& c = spec.component(k);
        for (int j = 0; j < d; ++j) x[j] = c.mean[j] + c.stddev * gauss(gen);
    };
    Vec x(d), y(d);
    double sum = 0.0, sum_sq = 0.0;
    for (long long i = 0; i < pairs; ++i) {
        draw(x);
        draw(y);
        double v = 0.0;
        if (s.contains(x.data()) && !s.contains(y.data()))
            v = w.weight_sq(dist_sq(x.data(), y.data(), d));
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(pairs);
    const double var = sum_sq / static_cast<double>(pairs) - mean * mean;
    return {mean, std::sqrt(var / static_cast<double>(pairs))};
}

}  // namespace

TEST_CASE("1d delta cut energy matches the pairwise mc oracle and a frozen value") {
    const MixtureSpec spec = two_gaussians_1d(6.0);
    const auto s = region::halfspace({1.0}, 3.0);
    const WeightModel w = WeightModel::delta(1.0);
    const CutEnergyResult r = cut_energy(spec, *s, w);
    // Frozen from a 50-digit quadrature of the same integral.
    REQUIRE(r.value == Catch::Approx(2.6428961592983392e-05).epsilon(1e-8));

    const PairOracle oracle = pair_oracle(spec, *s, w, 10000000, 17);
    REQUIRE(std::abs(r.value - oracle.value) < 3.0 * oracle.std_error);
}

TEST_CASE("cut energy is symmetric under complementation and vanishes with delta") {
    const MixtureSpec spec = two_gaussians_1d(4.0, Rational(1, 4), 1.3);
    const auto s = region::halfspace({1.0}, 1.7);
    const WeightModel w = WeightModel::delta(0.8);
    const double direct = cut_energy(spec, *s, w).value;
    const double flipped = cut_energy(spec, *region::complement(s), w).value;
    REQUIRE(direct == Catch::Approx(flipped).epsilon(1e-8));

    double prev = direct;
    for (double delta : {0.4, 0.1, 0.02}) {
        const double v = cut_energy(spec, *s, WeightModel::delta(delta)).value;
        REQUIRE(v < prev);
        prev = v;
    }
    REQUIRE(prev < 1e-4);
}

TEST_CASE("1d interval cuts and kernel cuts agree with the mc oracle") {
    const MixtureSpec spec = two_gaussians_1d(5.0, Rational(1, 2), 1.0);

    const auto iv = region::interval(-1.0, 2.5);
    const WeightModel wd = WeightModel::delta(0.9);
    const CutEnergyResult ri = cut_energy(spec, *iv, wd);
    const PairOracle oi = pair_oracle(spec, *iv, wd, 4000000, 23);
    REQUIRE(std::abs(ri.value - oi.value) < 3.0 * oi.std_error + 1e-9);

    const auto hs = region::halfspace({1.0}, 2.5);
    const WeightModel wk = WeightModel::kernel(1.0);
    const CutEnergyResult rk = cut_energy(spec, *hs, wk);
    const PairOracle ok = pair_oracle(spec, *hs, wk, 4000000, 29);
    REQUIRE(std::abs(rk.value - ok.value) < 3.0 * ok.std_error + 1e-9);

    // Upper-side threshold mirrors the lower side on the mirrored mixture.
    const CutEnergyResult up = cut_energy(spec, *region::complement(hs), wk);
    REQUIRE(up.value == Catch::Approx(rk.value).epsilon(1e-8));
}

TEST_CASE("aligned-means chi reduction matches qmc pair sampling in 2d and 3d") {
    for (int d : {2, 3}) {
        const MixtureSpec spec = two_gaussians(d, 4.0);
        Vec u(d, 0.0);
        u[0] = 1.0;
        const auto s = region::halfspace(u, 2.0);
        const WeightModel w = WeightModel::delta(1.2);
        const CutEnergyResult reduced = cut_energy(spec, *s, w);
        REQUIRE(reduced.method == MeasureMethod::Quadrature);

        CutEnergyOptions opt;
        opt.qmc_points = 1 << 20;
        CutEnergyResult sampled;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const CutEnergyResult part = detail::qmc_pair(spec, a, b, *s, w, opt);
                sampled.value += 0.25 * part.value;
                sampled.error += 0.25 * part.error;
            }
        REQUIRE(std::abs(reduced.value - sampled.value) < 4.0 * sampled.error + 1e-7);
    }
}

TEST_CASE("voronoi cut energy: qmc profile is consistent across granularities") {
    const MixtureSpec spec = equilateral_triangle(4.5);
    const auto cell = region::voronoi_cell(0, {spec.component(0).mean, spec.component(1).mean,
                                               spec.component(2).mean});
    CutEnergyOptions opt;
    opt.qmc_points = 1 << 18;
    const std::vector<double> deltas = {0.6, 1.0, 1.6};
    const auto profile = cut_energy_profile(spec, *cell, deltas, opt);
    REQUIRE(profile.size() == 3);
    // Monotone in delta.
    REQUIRE(profile[0].value < profile[1].value);
    REQUIRE(profile[1].value < profile[2].value);
    // Single evaluations agree within errors.
    for (size_t i = 0; i < deltas.size(); ++i) {
        const CutEnergyResult single =
            cut_energy(spec, *cell, WeightModel::delta(deltas[i]), opt);
        REQUIRE(std::abs(single.value - profile[i].value) <
                4.0 * (single.error + profile[i].error) + 1e-6);
    }
}

TEST_CASE("same-component cut energy feeds the kappa expectation correction") {
    const MixtureSpec spec = two_gaussians_1d(4.0);
    const auto s = region::halfspace({1.0}, 2.0);
    const WeightModel w = WeightModel::delta(1.0);
    const double total = cut_energy(spec, *s, w).value;
    const double same = cut_energy_same_component(spec, *s, w).value;
    const double p00 = cut_energy_pair(spec, 0, 0, *s, w).value;
    const double p01 = cut_energy_pair(spec, 0, 1, *s, w).value;
    const double p10 = cut_energy_pair(spec, 1, 0, *s, w).value;
    const double p11 = cut_energy_pair(spec, 1, 1, *s, w).value;
    REQUIRE(total == Catch::Approx(0.25 * (p00 + p01 + p10 + p11)).epsilon(1e-10));
    REQUIRE(same == Catch::Approx(0.5 * (p00 + p11)).epsilon(1e-10));
    REQUIRE(same > 0.0);
}
