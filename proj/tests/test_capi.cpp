// Exercises the shared library strictly through the C header, the way an
// external binding would: status codes, out-parameters, handle lifecycles.
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "nvpoa.h"

namespace {

struct Model {
    nvpoa_model* h = nullptr;
    ~Model() { nvpoa_model_free(h); }
};

struct Series {
    nvpoa_series* h = nullptr;
    ~Series() { nvpoa_series_free(h); }
};

struct Fit {
    nvpoa_fit* h = nullptr;
    ~Fit() { nvpoa_fit_free(h); }
};

} // namespace

TEST_CASE("status names are stable identifiers") {
    CHECK(std::string(nvpoa_status_name(NVPOA_OK)) == "Ok");
    CHECK(std::string(nvpoa_status_name(NVPOA_INVALID_ARGUMENT)) == "InvalidArgument");
    CHECK(std::string(nvpoa_status_name(NVPOA_OUT_OF_RANGE)) == "OutOfRange");
    CHECK(std::string(nvpoa_status_name(NVPOA_INADMISSIBLE_RATIO)) == "InadmissibleRatio");
    CHECK(std::string(nvpoa_status_name(NVPOA_DEGENERATE_SCENARIO)) == "DegenerateScenario");
    CHECK(std::string(nvpoa_status_name(NVPOA_SURVIVAL_UNDERFLOW)) == "SurvivalUnderflow");
    CHECK(std::string(nvpoa_status_name(99)) == "Unknown");
    CHECK(std::string(nvpoa_status_name(-1)) == "Unknown");
}

TEST_CASE("uniform lifecycle: solve and report match the closed form") {
    Model m;
    REQUIRE(nvpoa_model_uniform(1.0, &m.h) == NVPOA_OK);
    CHECK(std::string(nvpoa_model_name(m.h)) == "uniform");

    double qc = 0.0;
    REQUIRE(nvpoa_solve_centralized(m.h, 0.5, &qc) == NVPOA_OK);
    CHECK(qc == doctest::Approx(0.5).epsilon(1e-12));

    nvpoa_equilibrium eq;
    REQUIRE(nvpoa_solve(m.h, 0.5, NVPOA_CONFIG_PUSH_MANUFACTURER, NVPOA_METHOD_BISECTION, &eq) ==
            NVPOA_OK);
    CHECK(eq.q_d == doctest::Approx(0.25).epsilon(1e-11));
    CHECK(eq.w_over_p == doctest::Approx(0.75).epsilon(1e-11));
    CHECK(eq.boundary == 0);

    nvpoa_report rep;
    REQUIRE(nvpoa_poa_report(m.h, 0.5, NVPOA_CONFIG_PUSH_MANUFACTURER, &rep) == NVPOA_OK);
    CHECK(rep.poa == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
    CHECK(rep.k == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(rep.s == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.alpha == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(rep.prev_upper == doctest::Approx(1.875).epsilon(1e-10));
    CHECK(rep.improved_upper == doctest::Approx(1.6433047338568976).epsilon(1e-10));
    CHECK(rep.lower == doctest::Approx(1.1306537807242223).epsilon(1e-9));
    CHECK(rep.branch == NVPOA_BRANCH_ALPHA_SMALL);
    CHECK(rep.valid == 1);
    CHECK(rep.equilibrium.q_d == doctest::Approx(0.25).epsilon(1e-11));
}

TEST_CASE("failures set the status code and the thread-local message") {
    nvpoa_model* out = nullptr;
    CHECK(nvpoa_model_uniform(-1.0, &out) == NVPOA_INVALID_ARGUMENT);
    CHECK(out == nullptr);
    CHECK(std::strlen(nvpoa_last_error()) > 0);

    CHECK(nvpoa_model_uniform(1.0, nullptr) == NVPOA_INVALID_ARGUMENT);

    Model m;
    REQUIRE(nvpoa_model_uniform(1.0, &m.h) == NVPOA_OK);
    double v = 0.0;
    CHECK(nvpoa_order_fn(nullptr, 0.5, &v) == NVPOA_INVALID_ARGUMENT);
    CHECK(nvpoa_order_fn(m.h, 0.5, nullptr) == NVPOA_INVALID_ARGUMENT);

    nvpoa_equilibrium eq;
    CHECK(nvpoa_solve(m.h, 0.5, 7, NVPOA_METHOD_BISECTION, &eq) == NVPOA_INVALID_ARGUMENT);
    CHECK(nvpoa_solve(m.h, 0.5, NVPOA_CONFIG_PUSH_MANUFACTURER, 5, &eq) == NVPOA_INVALID_ARGUMENT);
    CHECK(nvpoa_solve(m.h, 1.5, NVPOA_CONFIG_PUSH_MANUFACTURER, NVPOA_METHOD_BISECTION, &eq) ==
          NVPOA_INADMISSIBLE_RATIO);

    nvpoa_report rep;
    CHECK(nvpoa_poa_report(m.h, 1.0 - 1e-7, NVPOA_CONFIG_PUSH_MANUFACTURER, &rep) ==
          NVPOA_DEGENERATE_SCENARIO);

    CHECK(nvpoa_prev_upper_push(1.0, &v) == NVPOA_OUT_OF_RANGE);
}

TEST_CASE("bound entry points pass values through unchanged") {
    double value = 0.0;
    int branch = -1;
    REQUIRE(nvpoa_improved_upper_push(1.0 / 3.0, 2.0, &value, &branch) == NVPOA_OK);
    CHECK(value == doctest::Approx(1.6433047338568976).epsilon(1e-12));
    CHECK(branch == NVPOA_BRANCH_ALPHA_SMALL);

    REQUIRE(nvpoa_improved_upper_push(1.0 / 3.0, 5.0, &value, &branch) == NVPOA_OK);
    CHECK(branch == NVPOA_BRANCH_ALPHA_LARGE);
    double prev = 0.0;
    REQUIRE(nvpoa_prev_upper_push(1.0 / 3.0, &prev) == NVPOA_OK);
    CHECK(value == doctest::Approx(prev).epsilon(1e-14));
    CHECK(prev == doctest::Approx(1.875).epsilon(1e-13));

    REQUIRE(nvpoa_improved_upper_pull(0.5, 100.0, &value, &branch) == NVPOA_OK);
    CHECK(value == doctest::Approx(1.875).epsilon(1e-13));

    double full = 0.0, truncated = 0.0;
    REQUIRE(nvpoa_lower_bound_push(1.0 / 3.0, 1.0, 0.5, &full) == NVPOA_OK);
    REQUIRE(nvpoa_lower_bound_push_alpha(1.0 / 3.0, 1.0, 0.5, 50.0, &truncated) == NVPOA_OK);
    CHECK(truncated == doctest::Approx(full).epsilon(1e-12));

    double raw = 0.0;
    REQUIRE(nvpoa_lower_bound_push_raw(0.5, 0.5, 0.9, &raw) == NVPOA_OK);
    CHECK(raw == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    double clamped = 0.0;
    REQUIRE(nvpoa_lower_bound_push(0.5, 0.5, 0.9, &clamped) == NVPOA_OK);
    CHECK(clamped == 1.0);
}

TEST_CASE("empirical model round-trips through the C constructor") {
    // log f(xi) = -log xi on [1, e] is the reciprocal density 1/xi, survival
    // (log ximax - log xi) after normalization.
    const double e1 = std::exp(1.0);
    const double coeffs[2] = {0.0, -1.0};
    Model m;
    REQUIRE(nvpoa_model_empirical(coeffs, 2, 1.0, e1, &m.h) == NVPOA_OK);
    CHECK(std::string(nvpoa_model_name(m.h)) == "empirical");

    double v = 0.0;
    REQUIRE(nvpoa_marginal_at_zero(m.h, &v) == NVPOA_OK);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(nvpoa_marginal(m.h, std::sqrt(e1), &v) == NVPOA_OK);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-6));
    REQUIRE(nvpoa_inverse_marginal(m.h, 0.5, &v) == NVPOA_OK);
    CHECK(v == doctest::Approx(std::sqrt(e1)).epsilon(1e-6));

    CHECK(nvpoa_model_empirical(nullptr, 0, 1.0, e1, &m.h) == NVPOA_INVALID_ARGUMENT);
}

TEST_CASE("monotone failure rate probe flags the uniform crossing") {
    Model m;
    REQUIRE(nvpoa_model_uniform(1.0, &m.h) == NVPOA_OK);
    nvpoa_igfr_report rep;
    REQUIRE(nvpoa_check_igfr(m.h, 0.05, 0.95, 0, &rep) == NVPOA_OK);
    CHECK(rep.is_nondecreasing == 1);
    CHECK(rep.max_violation == 0.0);
    CHECK(rep.has_g_above_one == 1);
    // g(Q) = Q/(1-Q) crosses 1 at Q = 1/2
    CHECK(rep.g_above_one_lo == doctest::Approx(0.5).epsilon(0.02));
    CHECK(rep.g_above_one_hi == doctest::Approx(0.95).epsilon(0.01));
}

TEST_CASE("point mass demand degenerates to one outcome in every configuration") {
    Model m;
    REQUIRE(nvpoa_model_pointmass(2.0, &m.h) == NVPOA_OK);
    const int configs[4] = {NVPOA_CONFIG_PUSH_MANUFACTURER, NVPOA_CONFIG_PUSH_RETAILER,
                            NVPOA_CONFIG_PULL_MANUFACTURER, NVPOA_CONFIG_PULL_RETAILER};
    for (int cfg : configs) {
        nvpoa_equilibrium eq;
        REQUIRE(nvpoa_solve(m.h, 0.4, cfg, NVPOA_METHOD_BISECTION, &eq) == NVPOA_OK);
        CHECK(eq.q_d == doctest::Approx(2.0).epsilon(1e-12));
        double poa = 0.0;
        REQUIRE(nvpoa_price_of_anarchy(m.h, 0.4, cfg, &poa) == NVPOA_OK);
        CHECK(poa == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("two-echelon serial chain reduces to the bilateral game") {
    Model m;
    REQUIRE(nvpoa_model_halfnormal(1.0, &m.h) == NVPOA_OK);
    nvpoa_equilibrium eq;
    REQUIRE(nvpoa_solve(m.h, 0.3, NVPOA_CONFIG_PUSH_MANUFACTURER, NVPOA_METHOD_BISECTION, &eq) ==
            NVPOA_OK);
    nvpoa_n_serial ns;
    REQUIRE(nvpoa_solve_n_serial(m.h, 0.3, 2, NVPOA_CONFIG_PUSH_MANUFACTURER, &ns) == NVPOA_OK);
    CHECK(ns.q_d == doctest::Approx(eq.q_d).epsilon(1e-6));
    CHECK(ns.inequality_holds == 1);

    CHECK(nvpoa_solve_n_serial(m.h, 0.3, 1, NVPOA_CONFIG_PUSH_MANUFACTURER, &ns) ==
          NVPOA_INVALID_ARGUMENT);
    CHECK(nvpoa_solve_n_serial(m.h, 0.3, 3, NVPOA_CONFIG_PUSH_RETAILER, &ns) ==
          NVPOA_INVALID_ARGUMENT);
}

TEST_CASE("series and fit handles expose the generation pipeline") {
    Series s;
    REQUIRE(nvpoa_ar_generate(0.5, 1.0, 20000, 100, 7, &s.h) == NVPOA_OK);
    REQUIRE(nvpoa_series_size(s.h) == 20000);
    const double* data = nvpoa_series_data(s.h);
    REQUIRE(data != nullptr);

    nvpoa_series_stats st;
    REQUIRE(nvpoa_series_summary(s.h, &st) == NVPOA_OK);
    CHECK(st.n == 20000);
    CHECK(st.min > 0.0);
    CHECK(st.min <= st.median);
    CHECK(st.median <= st.max);
    // stationary mean sigma2/(1-beta) = 2
    CHECK(st.mean == doctest::Approx(2.0).epsilon(0.05));

    const int degrees[2] = {2, 3};
    Fit f;
    REQUIRE(nvpoa_ar_fit(s.h, 64, degrees, 2, &f.h) == NVPOA_OK);
    int deg = nvpoa_fit_chosen_degree(f.h);
    CHECK((deg == 2 || deg == 3));
    CHECK(nvpoa_fit_n_coeffs(f.h) == size_t(deg) + 1);
    CHECK(nvpoa_fit_loo_cv_error(f.h) >= 0.0);
    CHECK(nvpoa_fit_normalization(f.h) > 0.0);
    REQUIRE(nvpoa_fit_n_bins(f.h) == 64);
    const double* edges = nvpoa_fit_bin_edges(f.h);
    const size_t* counts = nvpoa_fit_bin_counts(f.h);
    REQUIRE(edges != nullptr);
    REQUIRE(counts != nullptr);
    CHECK(edges[0] == doctest::Approx(nvpoa_fit_xi_min(f.h)));
    CHECK(edges[64] == doctest::Approx(nvpoa_fit_xi_max(f.h)));
    size_t total = 0;
    for (size_t i = 0; i < 64; ++i) total += counts[i];
    CHECK(total == 20000);
    REQUIRE(nvpoa_fit_n_candidates(f.h) == 2);
    CHECK(nvpoa_fit_candidate_degree(f.h, 0) == 2);
    CHECK(nvpoa_fit_candidate_degree(f.h, 1) == 3);
    CHECK(nvpoa_fit_candidate_loo(f.h, 0) >= 0.0);

    Model em;
    REQUIRE(nvpoa_fit_build_model(f.h, &em.h) == NVPOA_OK);
    double v = 0.0;
    REQUIRE(nvpoa_marginal_at_zero(em.h, &v) == NVPOA_OK);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    // too few samples for a fit
    Series tiny;
    REQUIRE(nvpoa_ar_generate(0.5, 1.0, 500, 10, 7, &tiny.h) == NVPOA_OK);
    nvpoa_fit* bad = nullptr;
    CHECK(nvpoa_ar_fit(tiny.h, 64, degrees, 2, &bad) == NVPOA_INSUFFICIENT_DATA);
    CHECK(bad == nullptr);

    CHECK(nvpoa_ar_generate(1.5, 1.0, 1000, 10, 7, &tiny.h) == NVPOA_INVALID_ARGUMENT);
}

TEST_CASE("validation suites run clean and the fault hook trips them") {
    nvpoa_check* results = nullptr;
    size_t n = 0;
    REQUIRE(nvpoa_validate_run("all", NVPOA_FAULT_NONE, &results, &n) == NVPOA_OK);
    REQUIRE(n > 0);
    size_t failures = 0;
    for (size_t i = 0; i < n; ++i) {
        REQUIRE(results[i].suite != nullptr);
        REQUIRE(results[i].name != nullptr);
        REQUIRE(results[i].detail != nullptr);
        if (!results[i].passed) ++failures;
    }
    CHECK(failures == 0);
    nvpoa_validate_results_free(results, n);

    results = nullptr;
    n = 0;
    REQUIRE(nvpoa_validate_run("invariants", NVPOA_FAULT_UNCLAMPED_LOWER, &results, &n) ==
            NVPOA_OK);
    size_t tripped = 0;
    for (size_t i = 0; i < n; ++i)
        if (!results[i].passed) ++tripped;
    CHECK(tripped > 0);
    nvpoa_validate_results_free(results, n);

    CHECK(nvpoa_validate_run("nope", NVPOA_FAULT_NONE, &results, &n) == NVPOA_INVALID_ARGUMENT);
    CHECK(nvpoa_validate_run(nullptr, NVPOA_FAULT_NONE, &results, &n) == NVPOA_INVALID_ARGUMENT);
}
