#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tangles/mixture.hpp"
#include "tangles/quadrature.hpp"
#include "tangles/regions.hpp"

using namespace tangles;

TEST_CASE("compatible_counts is an exact integrality test") {
    const MixtureSpec halves(1, {{Rational(1, 2), {0.0}, 1.0}, {Rational(1, 2), {5.0}, 1.0}});
    REQUIRE(compatible_counts(halves, 10) == std::vector<long long>{5, 5});

    const MixtureSpec thirds(1, {{Rational(1, 3), {0.0}, 1.0}, {Rational(2, 3), {5.0}, 1.0}});
    REQUIRE_THROWS_AS(compatible_counts(thirds, 10), IncompatibleError);
    REQUIRE(compatible_counts(thirds, 9) == std::vector<long long>{3, 6});

    // Succeeds exactly when n is divisible by the lcm of the reduced
    // denominators.
    const MixtureSpec mixed(1, {{Rational(1, 4), {0.0}, 1.0},
                                {Rational(1, 6), {1.0}, 1.0},
                                {Rational(7, 12), {2.0}, 1.0}});
    for (long long n = 1; n <= 60; ++n) {
        const bool expect = n % 12 == 0;
        if (expect)
            REQUIRE_NOTHROW(compatible_counts(mixed, n));
        else
            REQUIRE_THROWS_AS(compatible_counts(mixed, n), IncompatibleError);
    }
}

TEST_CASE("mixture spec validation") {
    REQUIRE_THROWS(MixtureSpec(1, {{Rational(1, 2), {0.0}, 1.0}}));           // sum != 1
    REQUIRE_THROWS(MixtureSpec(2, {{Rational(1), {0.0}, 1.0}}));              // mean length
    REQUIRE_THROWS(MixtureSpec(1, {{Rational(1), {0.0}, 0.0}}));              // sigma
    REQUIRE_THROWS(MixtureSpec(1, {{Rational(3, 2), {0.0}, 1.0},
                                   {Rational(-1, 2), {1.0}, 1.0}}));          // negative ratio
}

TEST_CASE("sample_dataset is deterministic in the seed") {
    const MixtureSpec spec = two_gaussians_1d(4.0);
    const auto labeling = HiddenLabeling::blocks(spec, 64);
    const Dataset a = sample_dataset(spec, labeling, 1234);
    const Dataset b = sample_dataset(spec, labeling, 1234);
    REQUIRE(a.values == b.values);
    const Dataset c = sample_dataset(spec, labeling, 1235);
    REQUIRE(a.values != c.values);
}

TEST_CASE("degenerate variance pins every column to its component mean") {
    const MixtureSpec spec(2, {{Rational(1, 2), {0.0, 1.0}, 1e-12},
                               {Rational(1, 2), {3.0, -2.0}, 1e-12}});
    const auto labeling = HiddenLabeling::blocks(spec, 20);
    const Dataset ds = sample_dataset(spec, labeling, 99);
    for (long long i = 0; i < ds.n; ++i) {
        const auto& mean = spec.component(labeling.label(i)).mean;
        for (int j = 0; j < ds.d; ++j)
            REQUIRE(std::abs(ds.point(i)[j] - mean[j]) < 1e-6);
    }
}

TEST_CASE("law of large numbers on a single standard component") {
    const MixtureSpec spec(1, {{Rational(1), {0.0}, 1.0}});
    const long long n = 100000;
    const auto labeling = HiddenLabeling::blocks(spec, n);
    const Dataset ds = sample_dataset(spec, labeling, 2024);
    double sum = 0.0, sum_sq = 0.0;
    for (long long i = 0; i < n; ++i) {
        sum += ds.point(i)[0];
        sum_sq += ds.point(i)[0] * ds.point(i)[0];
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    REQUIRE(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    REQUIRE(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("density evaluation: component and mean modes") {
    const MixtureSpec std1(1, {{Rational(1), {0.0}, 1.0}});
    // 1/sqrt(2 pi), frozen from a 50-digit evaluation.
    REQUIRE(density_at(std1, Vec{0.0}, 0) == Catch::Approx(0.3989422804014327).margin(1e-15));

    const double lambda = 3.7;
    const MixtureSpec sym = two_gaussians_1d(lambda);
    REQUIRE(mean_density_1d(sym, 0.0) ==
            Catch::Approx(mean_density_1d(sym, lambda)).epsilon(1e-14));

    // fbar(x) = sum_k r_k f_k(x) at arbitrary points.
    const MixtureSpec mix(2, {{Rational(1, 4), {0.0, 0.0}, 1.0},
                              {Rational(3, 4), {2.0, -1.0}, 0.5}});
    for (const Vec x : {Vec{0.3, 0.4}, Vec{-1.0, 2.0}, Vec{2.0, -1.0}}) {
        const double direct = mean_density_at(mix, x);
        const double sum = 0.25 * density_at(mix, x, 0) + 0.75 * density_at(mix, x, 1);
        REQUIRE(direct == Catch::Approx(sum).epsilon(1e-14));
        REQUIRE(direct > 0.0);
    }
    REQUIRE_THROWS_AS(density_at(mix, Vec{0.0, 0.0}, 2), InvalidIndex);
    REQUIRE_THROWS_AS(density_at(mix, Vec{0.0}, 0), DimensionMismatch);
}

TEST_CASE("each 1d component density integrates to 1 by quadrature") {
    const MixtureSpec spec = two_gaussians_1d(5.0, Rational(1, 3), 1.7);
    for (int k = 0; k < spec.num_components(); ++k) {
        const double mu = spec.component(k).mean[0];
        const double s = spec.component(k).stddev;
        const double total = integrate(
            [&](double x) { return density_at(spec, &x, k); }, mu - 14.0 * s, mu + 14.0 * s,
            1e-10);
        REQUIRE(total == Catch::Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("empirical frequency of a halfspace event matches its measure") {
    const MixtureSpec spec = two_gaussians_1d(3.0, Rational(1, 4));
    const long long n = 100000;
    const auto labeling = HiddenLabeling::blocks(spec, n);
    const Dataset ds = sample_dataset(spec, labeling, 555);
    const auto s = region::halfspace({1.0}, 1.2);
    long long count = 0;
    for (long long i = 0; i < n; ++i)
        if (s->contains(ds.point(i))) ++count;
    const double freq = static_cast<double>(count) / n;
    const double nu = 0.25 * normal_cdf(1.2, 0.0, 1.0) + 0.75 * normal_cdf(1.2, 3.0, 1.0);
    const double se = std::sqrt(nu * (1.0 - nu) / n);
    REQUIRE(std::abs(freq - nu) < 4.0 * se);
}
