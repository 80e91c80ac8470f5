#include "nvpoa.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "ar_simulator.hpp"
#include "demand_models.hpp"
#include "errors.hpp"
#include "generalized_model.hpp"
#include "poa_bounds.hpp"
#include "solver.hpp"
#include "validate.hpp"

struct nvpoa_model {
    std::shared_ptr<const nvpoa::GeneralizedModel> ptr;
};

struct nvpoa_series {
    std::vector<double> data;
};

struct nvpoa_fit {
    nvpoa::DensityFit fit;
};

namespace {

thread_local std::string t_last_error;

template <typename F>
int wrap(F&& body) noexcept {
    try {
        body();
        t_last_error.clear();
        return NVPOA_OK;
    } catch (const nvpoa::Error& e) {
        t_last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return NVPOA_INTERNAL;
    } catch (...) {
        t_last_error = "unknown error";
        return NVPOA_INTERNAL;
    }
}

void require(bool ok, const char* message) {
    if (!ok) nvpoa::fail(nvpoa::Errc::invalid_argument, message);
}

nvpoa::Config to_config(int config) {
    require(config >= 0 && config <= 3, "config must be one of the NVPOA_CONFIG_* values");
    return static_cast<nvpoa::Config>(config);
}

nvpoa::Method to_method(int method) {
    require(method == 0 || method == 1, "method must be one of the NVPOA_METHOD_* values");
    return static_cast<nvpoa::Method>(method);
}

nvpoa_equilibrium to_c(const nvpoa::EquilibriumResult& eq) {
    nvpoa_equilibrium out;
    out.q_c = eq.q_c;
    out.q_d = eq.q_d;
    out.w_over_p = eq.w_over_p;
    out.profit_c = eq.profit_c;
    out.profit_d = eq.profit_d;
    out.alpha = eq.alpha;
    out.k = eq.k;
    out.s = eq.s;
    out.l_d = eq.l_d;
    out.l_c = eq.l_c;
    out.residual = eq.residual;
    out.iterations = eq.iterations;
    out.boundary = eq.boundary ? 1 : 0;
    return out;
}

int make_model(nvpoa_model** out, std::shared_ptr<const nvpoa::GeneralizedModel> (*build)(double, double),
               double a, double b) {
    return wrap([&] {
        require(out != nullptr, "null output handle");
        *out = new nvpoa_model{build(a, b)};
    });
}

char* dup_string(const std::string& s) {
    char* p = new char[s.size() + 1];
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

} // namespace

extern "C" {

const char* nvpoa_last_error(void) { return t_last_error.c_str(); }

const char* nvpoa_status_name(int status) {
    if (status < 0 || status > 14) return "Unknown";
    return nvpoa::errc_name(static_cast<nvpoa::Errc>(status));
}

int nvpoa_model_uniform(double upper, nvpoa_model** out) {
    return make_model(
        out,
        +[](double u, double) -> std::shared_ptr<const nvpoa::GeneralizedModel> {
            return std::make_shared<nvpoa::NewsvendorModel>(std::make_shared<nvpoa::UniformDemand>(u));
        },
        upper, 0.0);
}

int nvpoa_model_halfnormal(double sigma, nvpoa_model** out) {
    return make_model(
        out,
        +[](double s, double) -> std::shared_ptr<const nvpoa::GeneralizedModel> {
            return std::make_shared<nvpoa::NewsvendorModel>(
                std::make_shared<nvpoa::HalfNormalDemand>(s));
        },
        sigma, 0.0);
}

int nvpoa_model_pointmass(double atom, nvpoa_model** out) {
    return make_model(
        out,
        +[](double a, double) -> std::shared_ptr<const nvpoa::GeneralizedModel> {
            return std::make_shared<nvpoa::NewsvendorModel>(std::make_shared<nvpoa::PointMassDemand>(a));
        },
        atom, 0.0);
}

int nvpoa_model_tanh(nvpoa_model** out) {
    return wrap([&] {
        require(out != nullptr, "null output handle");
        *out = new nvpoa_model{std::make_shared<nvpoa::TanhModel>()};
    });
}

int nvpoa_model_piecewise_log(double knee, double tail_slope, nvpoa_model** out) {
    return make_model(
        out,
        +[](double k, double v) -> std::shared_ptr<const nvpoa::GeneralizedModel> {
            return std::make_shared<nvpoa::PiecewiseLogModel>(k, v);
        },
        knee, tail_slope);
}

int nvpoa_model_empirical(const double* log_poly_coeffs, size_t n_coeffs, double xi_min,
                          double xi_max, nvpoa_model** out) {
    return wrap([&] {
        require(out != nullptr, "null output handle");
        require(log_poly_coeffs != nullptr && n_coeffs > 0, "null coefficient array");
        std::vector<double> coeffs(log_poly_coeffs, log_poly_coeffs + n_coeffs);
        *out = new nvpoa_model{std::make_shared<nvpoa::NewsvendorModel>(
            std::make_shared<nvpoa::EmpiricalDemand>(coeffs, xi_min, xi_max))};
    });
}

void nvpoa_model_free(nvpoa_model* m) { delete m; }

const char* nvpoa_model_name(const nvpoa_model* m) {
    return m != nullptr && m->ptr ? m->ptr->name() : "";
}

int nvpoa_order_fn(const nvpoa_model* m, double q, double* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        *out = m->ptr->order_fn(q);
    });
}

int nvpoa_marginal(const nvpoa_model* m, double q, double* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        *out = m->ptr->marginal(q);
    });
}

int nvpoa_marginal_at_zero(const nvpoa_model* m, double* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        *out = m->ptr->marginal_at_zero();
    });
}

int nvpoa_gfr(const nvpoa_model* m, double q, double* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        *out = nvpoa::gen_gfr(*m->ptr, q);
    });
}

int nvpoa_lfr(const nvpoa_model* m, double q, double* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        *out = nvpoa::gen_lfr(*m->ptr, q);
    });
}

int nvpoa_inverse_marginal(const nvpoa_model* m, double y, double* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        *out = m->ptr->inverse_marginal(y);
    });
}

int nvpoa_expected_profit(const nvpoa_model* m, double r, double q, double* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        *out = nvpoa::expected_profit(*m->ptr, r, q);
    });
}

int nvpoa_check_igfr(const nvpoa_model* m, double q_lo, double q_hi, int grid_points,
                     nvpoa_igfr_report* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        nvpoa::IgfrReport rep =
            nvpoa::check_igfr(*m->ptr, q_lo, q_hi, grid_points > 0 ? grid_points : 128);
        out->is_nondecreasing = rep.is_nondecreasing ? 1 : 0;
        out->max_violation = rep.max_violation;
        out->has_g_above_one = rep.has_g_above_one ? 1 : 0;
        out->g_above_one_lo = rep.g_above_one_lo;
        out->g_above_one_hi = rep.g_above_one_hi;
    });
}

int nvpoa_solve_centralized(const nvpoa_model* m, double r, double* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        *out = nvpoa::solve_centralized(*m->ptr, r);
    });
}

int nvpoa_solve(const nvpoa_model* m, double r, int config, int method, nvpoa_equilibrium* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        *out = to_c(nvpoa::solve(*m->ptr, r, to_config(config), to_method(method)));
    });
}

int nvpoa_solve_n_serial(const nvpoa_model* m, double r, int echelons, int config,
                         nvpoa_n_serial* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        nvpoa::NSerialResult res = nvpoa::solve_n_serial(*m->ptr, r, echelons, to_config(config));
        out->q_d = res.q_d;
        out->residual = res.residual;
        out->iterations = res.iterations;
        out->inequality_holds = res.inequality_holds ? 1 : 0;
    });
}

int nvpoa_price_of_anarchy(const nvpoa_model* m, double r, int config, double* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        *out = nvpoa::price_of_anarchy(*m->ptr, r, to_config(config));
    });
}

int nvpoa_poa_report(const nvpoa_model* m, double r, int config, nvpoa_report* out) {
    return wrap([&] {
        require(m != nullptr && out != nullptr, "null argument");
        nvpoa::PoaReport rep = nvpoa::poa_report(*m->ptr, r, to_config(config));
        out->poa = rep.poa;
        out->prev_upper = rep.prev_upper;
        out->improved_upper = rep.improved_upper;
        out->lower = rep.lower;
        out->lower_raw = rep.lower_raw;
        out->branch = static_cast<int>(rep.branch);
        out->valid = rep.valid ? 1 : 0;
        out->k = rep.k;
        out->s = rep.s;
        out->l_d = rep.l_d;
        out->l_c = rep.l_c;
        out->alpha = rep.alpha;
        out->r_tilde = rep.r_tilde;
        out->equilibrium = to_c(rep.equilibrium);
    });
}

int nvpoa_prev_upper_push(double k, double* out) {
    return wrap([&] {
        require(out != nullptr, "null argument");
        *out = nvpoa::prev_upper_push(k);
    });
}

int nvpoa_prev_upper_pull(double l, double* out) {
    return wrap([&] {
        require(out != nullptr, "null argument");
        *out = nvpoa::prev_upper_pull(l);
    });
}

int nvpoa_improved_upper_push(double k, double alpha, double* value_out, int* branch_out) {
    return wrap([&] {
        require(value_out != nullptr, "null argument");
        auto [v, b] = nvpoa::improved_upper_push(k, alpha);
        *value_out = v;
        if (branch_out != nullptr) *branch_out = static_cast<int>(b);
    });
}

int nvpoa_improved_upper_pull(double l, double alpha, double* value_out, int* branch_out) {
    return wrap([&] {
        require(value_out != nullptr, "null argument");
        auto [v, b] = nvpoa::improved_upper_pull(l, alpha);
        *value_out = v;
        if (branch_out != nullptr) *branch_out = static_cast<int>(b);
    });
}

int nvpoa_lower_bound_push(double k, double s, double r_tilde, double* out) {
    return wrap([&] {
        require(out != nullptr, "null argument");
        *out = nvpoa::lower_bound_push(k, s, r_tilde);
    });
}

int nvpoa_lower_bound_push_alpha(double k, double s, double r_tilde, double alpha, double* out) {
    return wrap([&] {
        require(out != nullptr, "null argument");
        *out = nvpoa::lower_bound_push_alpha(k, s, r_tilde, alpha);
    });
}

int nvpoa_lower_bound_push_raw(double k, double s, double r_tilde, double* out) {
    return wrap([&] {
        require(out != nullptr, "null argument");
        *out = nvpoa::lower_bound_push_raw(k, s, r_tilde);
    });
}

int nvpoa_lower_bound_push_printed(double k, double s, double r_tilde, double* out) {
    return wrap([&] {
        require(out != nullptr, "null argument");
        *out = nvpoa::lower_bound_push_printed(k, s, r_tilde);
    });
}

int nvpoa_lower_bound_pull(double l, double t, double r_tilde, double* out) {
    return wrap([&] {
        require(out != nullptr, "null argument");
        *out = nvpoa::lower_bound_pull(l, t, r_tilde);
    });
}

int nvpoa_integral_tail_bounds(const nvpoa_model* m, double q_d, double q_c, double k, double s,
                               double* lower_out, double* upper_out) {
    return wrap([&] {
        require(m != nullptr && lower_out != nullptr && upper_out != nullptr, "null argument");
        auto [lo, hi] = nvpoa::integral_tail_bounds(*m->ptr, q_d, q_c, k, s);
        *lower_out = lo;
        *upper_out = hi;
    });
}

int nvpoa_integral_head_bounds(const nvpoa_model* m, double q_d, double k, double* lower_out,
                               double* upper_out) {
    return wrap([&] {
        require(m != nullptr && lower_out != nullptr && upper_out != nullptr, "null argument");
        auto [lo, hi] = nvpoa::integral_head_bounds(*m->ptr, q_d, k);
        *lower_out = lo;
        *upper_out = hi;
    });
}

int nvpoa_ar_generate(double beta, double sigma2, size_t n_samples, size_t burn_in, uint64_t seed,
                      nvpoa_series** out) {
    return wrap([&] {
        require(out != nullptr, "null output handle");
        nvpoa::ArConfig cfg;
        cfg.beta = beta;
        cfg.sigma2 = sigma2;
        cfg.n_samples = n_samples;
        cfg.burn_in = burn_in;
        cfg.seed = seed;
        *out = new nvpoa_series{nvpoa::generate_series(cfg)};
    });
}

void nvpoa_series_free(nvpoa_series* s) { delete s; }

size_t nvpoa_series_size(const nvpoa_series* s) { return s != nullptr ? s->data.size() : 0; }

const double* nvpoa_series_data(const nvpoa_series* s) {
    return s != nullptr ? s->data.data() : nullptr;
}

int nvpoa_series_summary(const nvpoa_series* s, nvpoa_series_stats* out) {
    return wrap([&] {
        require(s != nullptr && out != nullptr, "null argument");
        nvpoa::SeriesStats st = nvpoa::series_stats(s->data);
        out->n = st.n;
        out->mean = st.mean;
        out->variance = st.variance;
        out->min = st.min;
        out->max = st.max;
        out->median = st.median;
    });
}

int nvpoa_ar_fit(const nvpoa_series* s, size_t n_bins, const int* degrees, size_t n_degrees,
                 nvpoa_fit** out) {
    return wrap([&] {
        require(s != nullptr && out != nullptr, "null argument");
        nvpoa::ArConfig cfg;
        if (n_bins > 0) cfg.n_bins = n_bins;
        if (degrees != nullptr && n_degrees > 0)
            cfg.fit_degrees.assign(degrees, degrees + n_degrees);
        *out = new nvpoa_fit{nvpoa::fit_log_density(s->data, cfg)};
    });
}

void nvpoa_fit_free(nvpoa_fit* f) { delete f; }

size_t nvpoa_fit_n_coeffs(const nvpoa_fit* f) {
    return f != nullptr ? f->fit.coefficients.size() : 0;
}

const double* nvpoa_fit_coeffs(const nvpoa_fit* f) {
    return f != nullptr ? f->fit.coefficients.data() : nullptr;
}

int nvpoa_fit_chosen_degree(const nvpoa_fit* f) { return f != nullptr ? f->fit.chosen_degree : 0; }

double nvpoa_fit_loo_cv_error(const nvpoa_fit* f) {
    return f != nullptr ? f->fit.loo_cv_error : 0.0;
}

double nvpoa_fit_normalization(const nvpoa_fit* f) {
    return f != nullptr ? f->fit.normalization : 0.0;
}

double nvpoa_fit_xi_min(const nvpoa_fit* f) { return f != nullptr ? f->fit.xi_min : 0.0; }

double nvpoa_fit_xi_max(const nvpoa_fit* f) { return f != nullptr ? f->fit.xi_max : 0.0; }

size_t nvpoa_fit_n_bins(const nvpoa_fit* f) { return f != nullptr ? f->fit.bin_counts.size() : 0; }

const double* nvpoa_fit_bin_edges(const nvpoa_fit* f) {
    return f != nullptr ? f->fit.bin_edges.data() : nullptr;
}

const double* nvpoa_fit_bin_centers(const nvpoa_fit* f) {
    return f != nullptr ? f->fit.bin_centers.data() : nullptr;
}

const size_t* nvpoa_fit_bin_counts(const nvpoa_fit* f) {
    return f != nullptr ? f->fit.bin_counts.data() : nullptr;
}

const double* nvpoa_fit_log_density(const nvpoa_fit* f) {
    return f != nullptr ? f->fit.log_density.data() : nullptr;
}

const double* nvpoa_fit_fitted_log_density(const nvpoa_fit* f) {
    return f != nullptr ? f->fit.fitted_log_density.data() : nullptr;
}

size_t nvpoa_fit_n_candidates(const nvpoa_fit* f) {
    return f != nullptr ? f->fit.candidates.size() : 0;
}

int nvpoa_fit_candidate_degree(const nvpoa_fit* f, size_t i) {
    return f != nullptr && i < f->fit.candidates.size() ? f->fit.candidates[i].degree : 0;
}

double nvpoa_fit_candidate_loo(const nvpoa_fit* f, size_t i) {
    return f != nullptr && i < f->fit.candidates.size() ? f->fit.candidates[i].loo_cv_error : 0.0;
}

int nvpoa_fit_build_model(const nvpoa_fit* f, nvpoa_model** out) {
    return wrap([&] {
        require(f != nullptr && out != nullptr, "null argument");
        *out = new nvpoa_model{
            std::make_shared<nvpoa::NewsvendorModel>(nvpoa::build_empirical_model(f->fit))};
    });
}

int nvpoa_validate_run(const char* suite, int fault, nvpoa_check** results_out, size_t* n_out) {
    return wrap([&] {
        require(suite != nullptr && results_out != nullptr && n_out != nullptr, "null argument");
        require(fault == NVPOA_FAULT_NONE || fault == NVPOA_FAULT_UNCLAMPED_LOWER,
                "fault must be one of the NVPOA_FAULT_* values");
        std::vector<nvpoa::CheckResult> results =
            nvpoa::run_validation(suite, static_cast<nvpoa::Fault>(fault));
        auto* arr = new nvpoa_check[results.size()];
        for (size_t i = 0; i < results.size(); ++i) {
            arr[i].suite = dup_string(results[i].suite);
            arr[i].name = dup_string(results[i].name);
            arr[i].passed = results[i].passed ? 1 : 0;
            arr[i].detail = dup_string(results[i].detail);
        }
        *results_out = arr;
        *n_out = results.size();
    });
}

void nvpoa_validate_results_free(nvpoa_check* results, size_t n) {
    if (results == nullptr) return;
    for (size_t i = 0; i < n; ++i) {
        delete[] results[i].suite;
        delete[] results[i].name;
        delete[] results[i].detail;
    }
    delete[] results;
}

} // extern "C"
