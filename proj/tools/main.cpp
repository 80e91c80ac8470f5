// nvpoa command-line front end. Talks to the library exclusively through the C
// API in nvpoa.h and emits deterministic CSV: fixed 12-significant-digit
// scientific notation, mandatory header row, one row per requested step even
// when a solve fails (the error column carries the status name).
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nvpoa.h"

namespace {

std::string csv(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

const char* branch_label(int branch) {
    return branch == NVPOA_BRANCH_ALPHA_LARGE ? "alpha_large" : "alpha_small";
}

[[noreturn]] void die_usage(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(2);
}

void check_status(int status, const std::string& context) {
    if (status != NVPOA_OK)
        die_usage(context + ": " + nvpoa_status_name(status) + " (" + nvpoa_last_error() + ")");
}

struct ModelHandle {
    nvpoa_model* m = nullptr;
    ModelHandle() = default;
    ModelHandle(const ModelHandle&) = delete;
    ModelHandle& operator=(const ModelHandle&) = delete;
    ~ModelHandle() { nvpoa_model_free(m); }
};

struct SeriesHandle {
    nvpoa_series* s = nullptr;
    ~SeriesHandle() { nvpoa_series_free(s); }
};

struct FitHandle {
    nvpoa_fit* f = nullptr;
    ~FitHandle() { nvpoa_fit_free(f); }
};

struct ModelFlags {
    std::string model = "uniform";
    double upper = 1.0;
    double sigma = 1.0;
    double knee = 1.0;
    double tail_slope = 0.1;
};

void add_model_flags(CLI::App* cmd, ModelFlags& mf) {
    cmd->add_option("--model", mf.model,
                    "uniform|halfnormal|tanh|piecewise|empirical:<fit-file>")
        ->capture_default_str();
    cmd->add_option("--upper", mf.upper, "upper end of the uniform demand support")
        ->capture_default_str();
    cmd->add_option("--sigma", mf.sigma, "half-normal scale")->capture_default_str();
    cmd->add_option("--knee", mf.knee, "piecewise model kink location")->capture_default_str();
    cmd->add_option("--tail-slope", mf.tail_slope, "piecewise model tail slope")
        ->capture_default_str();
}

void build_model(const ModelFlags& mf, ModelHandle& h) {
    int status;
    if (mf.model == "uniform") {
        status = nvpoa_model_uniform(mf.upper, &h.m);
    } else if (mf.model == "halfnormal") {
        status = nvpoa_model_halfnormal(mf.sigma, &h.m);
    } else if (mf.model == "tanh") {
        status = nvpoa_model_tanh(&h.m);
    } else if (mf.model == "piecewise") {
        status = nvpoa_model_piecewise_log(mf.knee, mf.tail_slope, &h.m);
    } else if (mf.model.rfind("empirical:", 0) == 0) {
        std::string path = mf.model.substr(10);
        std::ifstream in(path);
        if (!in) die_usage("cannot open fit file " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            die_usage("cannot parse fit file " + path + ": " + e.what());
        }
        std::vector<double> coeffs;
        double xi_min, xi_max;
        try {
            coeffs = j.at("coefficients").get<std::vector<double>>();
            xi_min = j.at("xi_min").get<double>();
            xi_max = j.at("xi_max").get<double>();
        } catch (const std::exception& e) {
            die_usage("fit file " + path + " is missing fields: " + e.what());
        }
        status = nvpoa_model_empirical(coeffs.data(), coeffs.size(), xi_min, xi_max, &h.m);
    } else {
        die_usage("unknown model " + mf.model);
    }
    check_status(status, "building model " + mf.model);
}

int config_from_name(const std::string& name, bool allow_centralized) {
    if (allow_centralized && name == "centralized") return -1;
    if (name == "push_manufacturer") return NVPOA_CONFIG_PUSH_MANUFACTURER;
    if (name == "push_retailer") return NVPOA_CONFIG_PUSH_RETAILER;
    if (name == "pull_manufacturer") return NVPOA_CONFIG_PULL_MANUFACTURER;
    if (name == "pull_retailer") return NVPOA_CONFIG_PULL_RETAILER;
    die_usage("unknown config " + name);
}

struct OutFile {
    std::ofstream file;
    std::ostream* stream = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary);
        if (!file) die_usage("cannot open output file " + path);
        stream = &file;
    }
    std::ostream& out() { return *stream; }
};

// ---- sweep ----------------------------------------------------------------

struct SweepFlags {
    ModelFlags model;
    std::string config = "push_manufacturer";
    std::string method = "bisection";
    double r_min = 0.05;
    double r_max = 0.95;
    int steps = 19;
    std::string out_path;
};

void write_sweep(std::ostream& os, nvpoa_model* model, int config, int method, double r_min,
                 double r_max, int steps) {
    os << "r,Qc,Qd,w_ratio,profit_c,profit_d,poa,prev_upper,improved_upper,lower,branch,valid,"
          "error\n";
    for (int i = 0; i < steps; ++i) {
        double r = steps == 1 ? r_min : r_min + (r_max - r_min) * i / (steps - 1);
        nvpoa_report rep;
        int status = nvpoa_poa_report(model, r, config, &rep);
        if (status == NVPOA_OK) {
            os << csv(r) << ',' << csv(rep.equilibrium.q_c) << ',' << csv(rep.equilibrium.q_d)
               << ',' << csv(rep.equilibrium.w_over_p) << ',' << csv(rep.equilibrium.profit_c)
               << ',' << csv(rep.equilibrium.profit_d) << ',' << csv(rep.poa) << ','
               << csv(rep.prev_upper) << ',' << csv(rep.improved_upper) << ',' << csv(rep.lower)
               << ',' << branch_label(rep.branch) << ',' << rep.valid << ",\n";
        } else {
            double nan = std::nan("");
            os << csv(r);
            for (int c = 0; c < 9; ++c) os << ',' << csv(nan);
            os << ",,0," << nvpoa_status_name(status) << "\n";
        }
    }
}

int run_sweep(const SweepFlags& f) {
    ModelHandle model;
    build_model(f.model, model);
    int config = config_from_name(f.config, false);
    int method = NVPOA_METHOD_BISECTION;
    if (f.method == "fixed_point") method = NVPOA_METHOD_FIXED_POINT;
    else if (f.method != "bisection") die_usage("unknown method " + f.method);
    if (f.steps < 2) die_usage("sweep needs --steps >= 2");
    double x0;
    check_status(nvpoa_marginal_at_zero(model.m, &x0), "marginal at zero");
    if (!(0.0 < f.r_min && f.r_min < f.r_max && f.r_max < x0))
        die_usage("sweep needs 0 < r-min < r-max < X(0)");
    OutFile of;
    of.open(f.out_path);
    write_sweep(of.out(), model.m, config, method, f.r_min, f.r_max, f.steps);
    return 0;
}

// ---- bounds ---------------------------------------------------------------

struct BoundsFlags {
    double k = 0.01;
    double s = 1.0 - 1e-9;
    double survival_at_qd = -1.0;
    double r = -1.0;
    double alpha_min = -1.0;
    double alpha_max = -1.0;
    int steps = 50;
    std::string out_path;
};

int run_bounds(const BoundsFlags& f, bool have_survival, bool have_r) {
    if (have_survival == have_r)
        die_usage("bounds needs exactly one of --survival-at-qd and --r");
    if (!(f.k > 0.0 && f.k < 1.0)) die_usage("bounds needs 0 < k < 1");
    if (!(f.s >= f.k)) die_usage("bounds needs s >= k");
    if (f.steps < 2) die_usage("bounds needs --steps >= 2");
    // In the push equilibrium X(Q_d) = r/(1-k), so F̄(Q_d) determines r̃ = r/X(0)
    // as (1-k)·F̄(Q_d) under the normalization X(0) = 1.
    double r_tilde = have_r ? f.r : (1.0 - f.k) * f.survival_at_qd;
    if (!(r_tilde > 0.0 && r_tilde < 1.0)) die_usage("resolved r_tilde must lie in (0,1)");
    double alpha_lo = f.alpha_min;
    double alpha_hi = f.alpha_max;
    if (alpha_lo < 0.0) alpha_lo = std::exp(-std::log1p(-f.k) / f.s);
    if (alpha_hi < 0.0) alpha_hi = std::exp(-std::log1p(-f.k) / f.k);
    if (!(alpha_lo >= 1.0 && alpha_hi > alpha_lo))
        die_usage("bounds needs 1 <= alpha-min < alpha-max");
    OutFile of;
    of.open(f.out_path);
    std::ostream& os = of.out();
    os << "alpha,improved_upper,lower\n";
    for (int i = 0; i < f.steps; ++i) {
        double alpha = alpha_lo + (alpha_hi - alpha_lo) * i / (f.steps - 1);
        double improved, lower;
        int branch;
        check_status(nvpoa_improved_upper_push(f.k, alpha, &improved, &branch), "improved bound");
        check_status(nvpoa_lower_bound_push_alpha(f.k, f.s, r_tilde, alpha, &lower), "lower bound");
        os << csv(alpha) << ',' << csv(improved) << ',' << csv(lower) << "\n";
    }
    return 0;
}

// ---- geometry ---------------------------------------------------------------

struct GeometryFlags {
    ModelFlags model;
    std::string config = "centralized";
    double r = 0.5;
    double q_max = -1.0;
    int steps = 200;
    std::string out_path;
};

int run_geometry(const GeometryFlags& f) {
    ModelHandle model;
    build_model(f.model, model);
    int config = config_from_name(f.config, true);
    if (f.steps < 2) die_usage("geometry needs --steps >= 2");
    double q_c;
    check_status(nvpoa_solve_centralized(model.m, f.r, &q_c), "centralized solve");
    double m_at_qc;
    check_status(nvpoa_order_fn(model.m, q_c, &m_at_qc), "order function");
    double central_intercept = m_at_qc - f.r * q_c;

    bool decentralized = config >= 0;
    nvpoa_equilibrium eq{};
    double follower_slope = std::nan(""), follower_intercept = std::nan("");
    double chain_profit_d = std::nan("");
    if (decentralized) {
        check_status(nvpoa_solve(model.m, f.r, config, NVPOA_METHOD_BISECTION, &eq),
                     "decentralized solve");
        double m_at_qd;
        check_status(nvpoa_order_fn(model.m, eq.q_d, &m_at_qd), "order function");
        check_status(nvpoa_marginal(model.m, eq.q_d, &follower_slope), "marginal");
        follower_intercept = m_at_qd - follower_slope * eq.q_d;
        chain_profit_d = m_at_qd - f.r * eq.q_d;
    }
    double q_max = f.q_max;
    if (q_max <= 0.0) q_max = 2.0 * q_c;

    OutFile of;
    of.open(f.out_path);
    std::ostream& os = of.out();
    os << "# model=" << nvpoa_model_name(model.m) << " config=" << f.config << " r=" << csv(f.r)
       << "\n";
    os << "# Qc=" << csv(q_c) << " central_slope=" << csv(f.r)
       << " central_intercept=" << csv(central_intercept) << "\n";
    if (decentralized)
        os << "# Qd=" << csv(eq.q_d) << " follower_slope=" << csv(follower_slope)
           << " follower_intercept=" << csv(follower_intercept)
           << " chain_profit_at_Qd=" << csv(chain_profit_d) << "\n";
    os << "Q,M,y_central,y_follower\n";
    for (int i = 0; i < f.steps; ++i) {
        double q = q_max * i / (f.steps - 1);
        double m_q;
        check_status(nvpoa_order_fn(model.m, q, &m_q), "order function");
        double y1 = f.r * q + central_intercept;
        double y2 = decentralized ? follower_slope * q + follower_intercept : std::nan("");
        os << csv(q) << ',' << csv(m_q) << ',' << csv(y1) << ',' << csv(y2) << "\n";
    }
    return 0;
}

// ---- ar ---------------------------------------------------------------------

struct ArFlags {
    double beta = 0.9;
    double sigma2 = 100.0;
    std::uint64_t n = 1000000;
    std::uint64_t burn_in = 10000;
    std::uint64_t seed = 12345;
    std::uint64_t bins = 128;
    std::vector<int> degrees = {2, 3, 4, 5, 6};
    std::string config = "push_manufacturer";
    double r_min = 0.1;
    double r_max = 0.9;
    int steps = 17;
    std::string out_prefix;
};

int run_ar(const ArFlags& f) {
    if (f.out_prefix.empty()) die_usage("ar needs --out-prefix");
    int config = config_from_name(f.config, false);
    if (f.steps < 2) die_usage("ar needs --steps >= 2");

    SeriesHandle series;
    check_status(nvpoa_ar_generate(f.beta, f.sigma2, f.n, f.burn_in, f.seed, &series.s),
                 "series generation");
    nvpoa_series_stats st;
    check_status(nvpoa_series_summary(series.s, &st), "series summary");

    {
        std::ofstream os(f.out_prefix + "_summary.csv", std::ios::binary);
        if (!os) die_usage("cannot open " + f.out_prefix + "_summary.csv");
        os << "n,mean,variance,min,max,median\n";
        os << st.n << ',' << csv(st.mean) << ',' << csv(st.variance) << ',' << csv(st.min) << ','
           << csv(st.max) << ',' << csv(st.median) << "\n";
    }

    FitHandle fit;
    check_status(nvpoa_ar_fit(series.s, f.bins, f.degrees.data(), f.degrees.size(), &fit.f),
                 "density fit");

    {
        std::ofstream os(f.out_prefix + "_hist.csv", std::ios::binary);
        if (!os) die_usage("cannot open " + f.out_prefix + "_hist.csv");
        os << "bin_center,count,log_density,fitted_log_density\n";
        size_t nb = nvpoa_fit_n_bins(fit.f);
        const double* centers = nvpoa_fit_bin_centers(fit.f);
        const size_t* counts = nvpoa_fit_bin_counts(fit.f);
        const double* logd = nvpoa_fit_log_density(fit.f);
        const double* fitted = nvpoa_fit_fitted_log_density(fit.f);
        for (size_t i = 0; i < nb; ++i)
            os << csv(centers[i]) << ',' << counts[i] << ',' << csv(logd[i]) << ','
               << csv(fitted[i]) << "\n";
    }

    {
        nlohmann::json j;
        j["model"] = "empirical";
        j["coefficients"] = std::vector<double>(
            nvpoa_fit_coeffs(fit.f), nvpoa_fit_coeffs(fit.f) + nvpoa_fit_n_coeffs(fit.f));
        j["xi_min"] = nvpoa_fit_xi_min(fit.f);
        j["xi_max"] = nvpoa_fit_xi_max(fit.f);
        j["chosen_degree"] = nvpoa_fit_chosen_degree(fit.f);
        j["loo_cv_error"] = nvpoa_fit_loo_cv_error(fit.f);
        j["normalization"] = nvpoa_fit_normalization(fit.f);
        std::ofstream os(f.out_prefix + "_fit.json", std::ios::binary);
        if (!os) die_usage("cannot open " + f.out_prefix + "_fit.json");
        os << j.dump(2) << "\n";
    }

    ModelHandle model;
    check_status(nvpoa_fit_build_model(fit.f, &model.m), "empirical model");
    {
        std::ofstream os(f.out_prefix + "_sweep.csv", std::ios::binary);
        if (!os) die_usage("cannot open " + f.out_prefix + "_sweep.csv");
        write_sweep(os, model.m, config, NVPOA_METHOD_BISECTION, f.r_min, f.r_max, f.steps);
    }
    return 0;
}

// ---- validate -----------------------------------------------------------------

struct ValidateFlags {
    std::string suite = "all";
    std::string fault = "none";
    std::string out_path;
};

int run_validate(const ValidateFlags& f) {
    int fault = NVPOA_FAULT_NONE;
    if (f.fault == "unclamped-lower") fault = NVPOA_FAULT_UNCLAMPED_LOWER;
    else if (f.fault != "none") die_usage("unknown fault " + f.fault);
    nvpoa_check* results = nullptr;
    size_t n = 0;
    check_status(nvpoa_validate_run(f.suite.c_str(), fault, &results, &n), "validation");
    size_t failures = 0;
    for (size_t i = 0; i < n; ++i) {
        const nvpoa_check& c = results[i];
        if (!c.passed) ++failures;
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.suite << "/" << c.name << ": "
                  << c.detail << "\n";
    }
    std::cout << (failures == 0 ? "all " : "FAILURES: ") << (failures == 0 ? n : failures)
              << (failures == 0 ? " checks passed" : " checks failed") << "\n";
    if (!f.out_path.empty()) {
        std::ofstream os(f.out_path, std::ios::binary);
        if (!os) die_usage("cannot open " + f.out_path);
        os << "suite,name,passed,detail\n";
        for (size_t i = 0; i < n; ++i)
            os << results[i].suite << ',' << results[i].name << ',' << results[i].passed << ','
               << csv_quote(results[i].detail) << "\n";
    }
    nvpoa_validate_results_free(results, n);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"newsvendor supply-chain price-of-anarchy toolkit"};
    app.require_subcommand(1);

    SweepFlags sweep;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "equilibria, PoA and bounds over a cost-ratio grid (CSV)");
    add_model_flags(sweep_cmd, sweep.model);
    sweep_cmd->add_option("--config", sweep.config, "game configuration")->capture_default_str();
    sweep_cmd->add_option("--method", sweep.method, "bisection|fixed_point")
        ->capture_default_str();
    sweep_cmd->add_option("--r-min", sweep.r_min, "lowest cost ratio")->capture_default_str();
    sweep_cmd->add_option("--r-max", sweep.r_max, "highest cost ratio")->capture_default_str();
    sweep_cmd->add_option("--steps", sweep.steps, "number of rows")->capture_default_str();
    sweep_cmd->add_option("--out", sweep.out_path, "output CSV path (default stdout)");

    BoundsFlags bounds;
    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "improved upper and lower PoA bounds over alpha (CSV)");
    bounds_cmd->add_option("--k", bounds.k, "failure rate g at Q_d")->capture_default_str();
    bounds_cmd->add_option("--s", bounds.s, "failure rate g at Q_c")->capture_default_str();
    CLI::Option* opt_surv = bounds_cmd->add_option("--survival-at-qd", bounds.survival_at_qd,
                                                   "survival at Q_d; resolves r_tilde");
    CLI::Option* opt_r = bounds_cmd->add_option("--r", bounds.r, "cost ratio; r_tilde directly");
    bounds_cmd->add_option("--alpha-min", bounds.alpha_min,
                           "lowest alpha (default (1-k)^{-1/s})");
    bounds_cmd->add_option("--alpha-max", bounds.alpha_max,
                           "highest alpha (default (1-k)^{-1/k})");
    bounds_cmd->add_option("--steps", bounds.steps, "number of rows")->capture_default_str();
    bounds_cmd->add_option("--out", bounds.out_path, "output CSV path (default stdout)");

    GeometryFlags geometry;
    CLI::App* geometry_cmd = app.add_subcommand(
        "geometry", "order curve with supporting lines for plotting (CSV)");
    add_model_flags(geometry_cmd, geometry.model);
    geometry_cmd->add_option("--config", geometry.config, "centralized or a game configuration")
        ->capture_default_str();
    geometry_cmd->add_option("--r", geometry.r, "cost ratio")->capture_default_str();
    geometry_cmd->add_option("--q-max", geometry.q_max, "right end of the Q grid (default 2 Qc)");
    geometry_cmd->add_option("--steps", geometry.steps, "number of rows")->capture_default_str();
    geometry_cmd->add_option("--out", geometry.out_path, "output CSV path (default stdout)");

    ArFlags ar;
    CLI::App* ar_cmd = app.add_subcommand(
        "ar", "correlated-demand pipeline: series, fit, and sweep over the fitted model");
    ar_cmd->add_option("--beta", ar.beta, "autoregression damping")->capture_default_str();
    ar_cmd->add_option("--sigma2", ar.sigma2, "noise intensity")->capture_default_str();
    ar_cmd->add_option("--n", ar.n, "sample count")->capture_default_str();
    ar_cmd->add_option("--burn-in", ar.burn_in, "discarded leading samples")
        ->capture_default_str();
    ar_cmd->add_option("--seed", ar.seed, "generator seed")->capture_default_str();
    ar_cmd->add_option("--bins", ar.bins, "histogram bins")->capture_default_str();
    ar_cmd->add_option("--degrees", ar.degrees, "candidate polynomial degrees")
        ->delimiter(',')
        ->capture_default_str();
    ar_cmd->add_option("--config", ar.config, "game configuration for the sweep")
        ->capture_default_str();
    ar_cmd->add_option("--r-min", ar.r_min, "lowest cost ratio for the sweep")
        ->capture_default_str();
    ar_cmd->add_option("--r-max", ar.r_max, "highest cost ratio for the sweep")
        ->capture_default_str();
    ar_cmd->add_option("--steps", ar.steps, "sweep rows")->capture_default_str();
    ar_cmd->add_option("--out-prefix", ar.out_prefix,
                       "prefix for _summary.csv, _hist.csv, _fit.json, _sweep.csv")
        ->required();

    ValidateFlags validate;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "run the invariant and oracle suites");
    validate_cmd->add_option("--suite", validate.suite, "invariants|oracle|all")
        ->capture_default_str();
    validate_cmd->add_option("--fault", validate.fault, "none|unclamped-lower")
        ->capture_default_str();
    validate_cmd->add_option("--out", validate.out_path, "also write results as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*sweep_cmd) return run_sweep(sweep);
    if (*bounds_cmd) return run_bounds(bounds, opt_surv->count() > 0, opt_r->count() > 0);
    if (*geometry_cmd) return run_geometry(geometry);
    if (*ar_cmd) return run_ar(ar);
    if (*validate_cmd) return run_validate(validate);
    return 2;
}
