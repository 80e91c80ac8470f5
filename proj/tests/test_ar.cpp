#include <algorithm>
#include <cmath>
#include <vector>

#include "ar_simulator.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "numerics.hpp"

using namespace nvpoa;

TEST_CASE("series generation is deterministic and seed-sensitive") {
    ArConfig cfg;
    cfg.n_samples = 5000;
    cfg.burn_in = 500;
    std::vector<double> a = generate_series(cfg);
    std::vector<double> b = generate_series(cfg);
    CHECK(a.size() == 5000);
    CHECK(a == b);
    cfg.seed = 999;
    std::vector<double> c = generate_series(cfg);
    CHECK(a != c);
    for (double x : a) CHECK(x > 0.0);
}

TEST_CASE("beta = 0 gives i.i.d. chi-square(1) noise") {
    ArConfig cfg;
    cfg.beta = 0.0;
    cfg.sigma2 = 1.0;
    cfg.n_samples = 200000;
    cfg.burn_in = 1000;
    std::vector<double> xs = generate_series(cfg);
    SeriesStats st = series_stats(xs);
    double n = double(st.n);
    CHECK(std::abs(st.mean - 1.0) <= 3.0 * std::sqrt(2.0 / n));
    // Var(chi2_1) = 2; fourth central moment 60 drives the variance-of-variance
    CHECK(std::abs(st.variance - 2.0) <= 5.0 * std::sqrt(56.0 / n));
    CHECK(st.min >= 0.0);
    CHECK(st.median < st.mean); // strongly right-skewed
}

TEST_CASE("correlated series approaches the stationary moments") {
    ArConfig cfg;
    cfg.n_samples = 300000;
    cfg.burn_in = 5000;
    std::vector<double> xs = generate_series(cfg);
    SeriesStats st = series_stats(xs);
    double mean_t = cfg.sigma2 / (1.0 - cfg.beta);
    double var_t = 2.0 * cfg.sigma2 * cfg.sigma2 / (1.0 - cfg.beta * cfg.beta);
    // autocorrelation inflates the effective standard error by (1+beta)/(1-beta)
    double se_mean = std::sqrt(var_t * (1.0 + cfg.beta) / (1.0 - cfg.beta) / double(st.n));
    CHECK(std::abs(st.mean - mean_t) <= 5.0 * se_mean);
    CHECK(std::abs(st.variance - var_t) <= 0.1 * var_t);
}

TEST_CASE("series stats on hand-built data") {
    SeriesStats even = series_stats({4.0, 1.0, 3.0, 2.0});
    CHECK(even.n == 4);
    CHECK(even.mean == doctest::Approx(2.5));
    CHECK(even.variance == doctest::Approx(5.0 / 3.0).epsilon(1e-13));
    CHECK(even.min == 1.0);
    CHECK(even.max == 4.0);
    CHECK(even.median == doctest::Approx(2.5));
    SeriesStats odd = series_stats({5.0, 1.0, 3.0});
    CHECK(odd.median == 3.0);
}

TEST_CASE("log-normal samples select the quadratic log-density") {
    // log f of a log-normal is a degree-2 polynomial in log xi: the fit must
    // recover the curvature -1/(2 s^2) and pick degree 2 by LOO.
    const double s = 0.5;
    SplitMix64 rng(424242);
    std::vector<double> xs;
    xs.reserve(60000);
    for (int i = 0; i < 60000; ++i) xs.push_back(std::exp(s * standard_normal(rng)));

    ArConfig cfg;
    cfg.n_bins = 64;
    cfg.fit_degrees = {2, 3, 4};
    DensityFit fit = fit_log_density(xs, cfg);
    CHECK(fit.chosen_degree == 2);
    REQUIRE(fit.coefficients.size() == 3);
    CHECK(fit.coefficients[2] == doctest::Approx(-1.0 / (2.0 * s * s)).epsilon(0.08));
    CHECK(fit.coefficients[1] == doctest::Approx(-1.0).epsilon(0.15));
    CHECK(fit.candidates.size() == 3);
    for (const CandidateFit& c : fit.candidates)
        CHECK(c.loo_cv_error >= fit.loo_cv_error - 1e-15);
}

TEST_CASE("fit structure invariants") {
    ArConfig cfg;
    cfg.n_samples = 50000;
    cfg.burn_in = 2000;
    cfg.n_bins = 96;
    std::vector<double> xs = generate_series(cfg);
    DensityFit fit = fit_log_density(xs, cfg);

    REQUIRE(fit.bin_edges.size() == cfg.n_bins + 1);
    REQUIRE(fit.bin_centers.size() == cfg.n_bins);
    REQUIRE(fit.bin_counts.size() == cfg.n_bins);
    REQUIRE(fit.log_density.size() == cfg.n_bins);
    REQUIRE(fit.fitted_log_density.size() == cfg.n_bins);

    CHECK(fit.bin_edges.front() == *std::min_element(xs.begin(), xs.end()));
    CHECK(fit.bin_edges.back() == *std::max_element(xs.begin(), xs.end()));
    std::size_t total = 0;
    for (std::size_t i = 0; i < cfg.n_bins; ++i) {
        CHECK(fit.bin_edges[i] < fit.bin_edges[i + 1]);
        CHECK(fit.bin_centers[i] ==
              doctest::Approx(std::sqrt(fit.bin_edges[i] * fit.bin_edges[i + 1])).epsilon(1e-10));
        total += fit.bin_counts[i];
        if (fit.bin_counts[i] == 0) CHECK(std::isnan(fit.log_density[i]));
        else CHECK(std::isfinite(fit.log_density[i]));
        CHECK(std::isfinite(fit.fitted_log_density[i]));
    }
    CHECK(total == xs.size());
    CHECK(fit.normalization > 0.0);
    CHECK(fit.xi_min == fit.bin_edges.front());
    CHECK(fit.xi_max == fit.bin_edges.back());

    // identical input, identical fit
    DensityFit again = fit_log_density(xs, cfg);
    CHECK(again.coefficients == fit.coefficients);
    CHECK(again.chosen_degree == fit.chosen_degree);
}

TEST_CASE("fit rejects unusable inputs") {
    ArConfig cfg;
    std::vector<double> few(500, 1.0);
    CHECK_THROWS_AS(fit_log_density(few, cfg), Error);

    std::vector<double> constant(20000, 3.0);
    CHECK_THROWS_AS(fit_log_density(constant, cfg), Error); // degenerate range

    ArConfig small_bins = cfg;
    small_bins.n_bins = 8; // below 2*(max degree + 1) = 14
    std::vector<double> ok = generate_series(ArConfig{0.5, 1.0, 20000, 500, 1, 64, {2, 3}});
    CHECK_THROWS_AS(fit_log_density(ok, small_bins), Error);

    ArConfig no_degrees = cfg;
    no_degrees.fit_degrees = {};
    CHECK_THROWS_AS(fit_log_density(ok, no_degrees), Error);

    std::vector<double> with_zero = ok;
    with_zero[0] = 0.0;
    CHECK_THROWS_AS(fit_log_density(with_zero, cfg), Error);

    ArConfig bad = cfg;
    bad.beta = 1.0;
    CHECK_THROWS_AS(generate_series(bad), Error);
    bad.beta = 0.5;
    bad.sigma2 = 0.0;
    CHECK_THROWS_AS(generate_series(bad), Error);
}

TEST_CASE("empirical model built from the fit is a coherent demand model") {
    ArConfig cfg;
    cfg.n_samples = 120000;
    cfg.burn_in = 2000;
    cfg.n_bins = 96;
    std::vector<double> xs = generate_series(cfg);
    SeriesStats st = series_stats(xs);
    DensityFit fit = fit_log_density(xs, cfg);
    auto model = build_empirical_model(fit);

    CHECK(model->survival(fit.xi_min) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(model->survival(fit.xi_max) == doctest::Approx(0.0).epsilon(1e-9));
    double mid = std::sqrt(fit.xi_min * fit.xi_max);
    double sv = model->survival(mid);
    CHECK(sv > 0.0);
    CHECK(sv < 1.0);

    // density integrates to one after normalization
    double mass = adaptive_simpson(
        [&](double u) { return model->density(std::exp(u)) * std::exp(u); },
        std::log(fit.xi_min), std::log(fit.xi_max), 1e-10);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));

    // the model median tracks the sample median (binning + fit error only)
    double model_median = model->inverse_survival(0.5);
    CHECK(model_median == doctest::Approx(st.median).epsilon(0.05));
}
