#include "ar_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "numerics.hpp"

namespace nvpoa {

namespace {

void require_valid(const ArConfig& c) {
    if (!(c.beta >= 0.0) || !(c.beta < 1.0))
        fail(Errc::invalid_argument, "ar: beta must lie in [0,1)");
    if (!(c.sigma2 > 0.0)) fail(Errc::invalid_argument, "ar: sigma2 must be positive");
}

} // namespace

std::vector<double> generate_series(const ArConfig& config) {
    require_valid(config);
    std::vector<double> out;
    out.reserve(config.n_samples);
    SplitMix64 rng{config.seed};
    double xi = config.sigma2 / (1.0 - config.beta); // stationary mean
    std::size_t total = config.burn_in + config.n_samples;
    for (std::size_t i = 0; i < total; ++i) {
        double z = standard_normal(rng);
        xi = config.beta * xi + config.sigma2 * z * z;
        if (i >= config.burn_in) out.push_back(xi);
    }
    return out;
}

SeriesStats series_stats(const std::vector<double>& samples) {
    if (samples.empty()) fail(Errc::invalid_argument, "series_stats: no samples");
    SeriesStats st;
    st.n = samples.size();
    double sum = 0.0;
    st.min = samples.front();
    st.max = samples.front();
    for (double x : samples) {
        sum += x;
        st.min = std::min(st.min, x);
        st.max = std::max(st.max, x);
    }
    st.mean = sum / static_cast<double>(st.n);
    double ss = 0.0;
    for (double x : samples) {
        double d = x - st.mean;
        ss += d * d;
    }
    st.variance = st.n > 1 ? ss / static_cast<double>(st.n - 1) : 0.0;
    std::vector<double> sorted = samples;
    std::size_t mid = st.n / 2;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
    st.median = sorted[mid];
    if (st.n % 2 == 0) {
        double lo = *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid));
        st.median = 0.5 * (lo + st.median);
    }
    return st;
}

DensityFit fit_log_density(const std::vector<double>& samples, const ArConfig& config) {
    require_valid(config);
    if (samples.empty()) fail(Errc::invalid_argument, "fit_log_density: no samples");
    if (samples.size() < 10'000)
        fail(Errc::insufficient_data, "fit_log_density: needs at least 1e4 samples");
    if (config.fit_degrees.empty())
        fail(Errc::invalid_argument, "fit_log_density: no candidate degrees");
    int max_degree = *std::max_element(config.fit_degrees.begin(), config.fit_degrees.end());
    if (max_degree < 1) fail(Errc::invalid_argument, "fit_log_density: degrees must be >= 1");
    if (config.n_bins < 2 * static_cast<std::size_t>(max_degree + 1))
        fail(Errc::invalid_argument, "fit_log_density: needs n_bins >= 2(max degree + 1)");

    DensityFit fit;
    fit.xi_min = *std::min_element(samples.begin(), samples.end());
    fit.xi_max = *std::max_element(samples.begin(), samples.end());
    if (!(fit.xi_min > 0.0)) fail(Errc::invalid_argument, "fit_log_density: samples must be positive");
    if (!(fit.xi_max > fit.xi_min))
        fail(Errc::insufficient_data, "fit_log_density: degenerate sample range");

    std::size_t nb = config.n_bins;
    double lo = std::log(fit.xi_min);
    double hi = std::log(fit.xi_max);
    fit.bin_edges.resize(nb + 1);
    for (std::size_t i = 0; i <= nb; ++i)
        fit.bin_edges[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(nb));
    fit.bin_edges.front() = fit.xi_min;
    fit.bin_edges.back() = fit.xi_max;
    fit.bin_centers.resize(nb);
    for (std::size_t i = 0; i < nb; ++i)
        fit.bin_centers[i] = std::sqrt(fit.bin_edges[i] * fit.bin_edges[i + 1]);

    fit.bin_counts.assign(nb, 0);
    double scale = static_cast<double>(nb) / (hi - lo);
    for (double x : samples) {
        auto idx = static_cast<std::ptrdiff_t>((std::log(x) - lo) * scale);
        idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(nb) - 1);
        ++fit.bin_counts[static_cast<std::size_t>(idx)];
    }

    double n_total = static_cast<double>(samples.size());
    fit.log_density.assign(nb, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < nb; ++i) {
        if (fit.bin_counts[i] == 0) continue;
        double width = fit.bin_edges[i + 1] - fit.bin_edges[i];
        fit.log_density[i] = std::log(static_cast<double>(fit.bin_counts[i]) / (n_total * width));
        xs.push_back(std::log(fit.bin_centers[i]));
        ys.push_back(fit.log_density[i]);
    }
    if (static_cast<double>(nb - xs.size()) > 0.5 * static_cast<double>(nb))
        fail(Errc::empty_bins, "fit_log_density: more than half of the bins are empty");

    std::vector<int> degrees = config.fit_degrees;
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    bool have_best = false;
    PolyFit best;
    for (int d : degrees) {
        if (xs.size() < static_cast<std::size_t>(d) + 2) continue;
        PolyFit pf = polyfit(xs, ys, d);
        fit.candidates.push_back({d, pf.loo_cv_error});
        if (!have_best || pf.loo_cv_error < best.loo_cv_error) {
            best = pf;
            fit.chosen_degree = d;
            have_best = true;
        }
    }
    if (!have_best) fail(Errc::insufficient_data, "fit_log_density: no candidate degree is fittable");

    fit.coefficients = best.coeffs;
    fit.loo_cv_error = best.loo_cv_error;
    fit.fitted_log_density.resize(nb);
    for (std::size_t i = 0; i < nb; ++i)
        fit.fitted_log_density[i] = polyval(fit.coefficients, std::log(fit.bin_centers[i]));

    // normalization in u = log xi: integral of exp(p(u) + u) du
    auto integrand = [&fit](double u) { return std::exp(polyval(fit.coefficients, u) + u); };
    fit.normalization = adaptive_simpson(integrand, lo, hi, 1e-9);
    if (!std::isfinite(fit.normalization) || !(fit.normalization > 0.0))
        fail(Errc::non_normalizable, "fit_log_density: fitted density does not normalize");
    return fit;
}

std::shared_ptr<EmpiricalDemand> build_empirical_model(const DensityFit& fit) {
    return std::make_shared<EmpiricalDemand>(fit.coefficients, fit.xi_min, fit.xi_max);
}

} // namespace nvpoa
