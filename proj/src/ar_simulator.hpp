#pragma once
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "demand_models.hpp"

namespace nvpoa {

struct ArConfig {
    double beta = 0.9;      // damping, must lie in [0,1)
    double sigma2 = 100.0;  // noise intensity, must be positive
    std::size_t n_samples = 1'000'000;
    std::size_t burn_in = 10'000;
    std::uint64_t seed = 12345;
    std::size_t n_bins = 128;
    std::vector<int> fit_degrees = {2, 3, 4, 5, 6};
};

// xi_{T+1} = beta xi_T + sigma2 Z^2 with Z standard normal, started at the
// stationary mean sigma2/(1-beta); the first burn_in draws are discarded.
// Deterministic given the seed.
std::vector<double> generate_series(const ArConfig& config);

struct SeriesStats {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased, n-1 denominator
    double min = 0.0;
    double max = 0.0;
    double median = 0.0;
};

SeriesStats series_stats(const std::vector<double>& samples);

struct CandidateFit {
    int degree = 0;
    double loo_cv_error = 0.0;
};

struct DensityFit {
    std::vector<double> coefficients; // log f as an ascending polynomial in log xi
    int chosen_degree = 0;
    double loo_cv_error = 0.0;
    std::vector<double> bin_edges;   // n_bins + 1 log-spaced edges over [min, max]
    std::vector<double> bin_centers; // geometric midpoints
    std::vector<std::size_t> bin_counts;
    std::vector<double> log_density;        // log(count/(N width)); NaN for empty bins
    std::vector<double> fitted_log_density; // chosen polynomial at every center
    std::vector<CandidateFit> candidates;   // LOO CV error per attempted degree
    double normalization = 1.0; // integral of exp(poly) over [xi_min, xi_max]
    double xi_min = 0.0;
    double xi_max = 0.0;
};

// Log-spaced histogram over [min, max] of the samples, then a least-squares fit of
// log(count density) against log(bin center) over the nonempty bins. The degree is
// picked from config.fit_degrees by minimum closed-form leave-one-out CV error,
// ties resolved toward the lower degree.
DensityFit fit_log_density(const std::vector<double>& samples, const ArConfig& config);

std::shared_ptr<EmpiricalDemand> build_empirical_model(const DensityFit& fit);

} // namespace nvpoa
