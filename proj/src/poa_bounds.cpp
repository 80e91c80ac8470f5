#include "poa_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace nvpoa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kE = 2.718281828459045235360287;

// (1-k)^e in log space; by convention 1 for k = 0 (every use is a k -> 0 limit of 1).
double pow_1mk(double k, double e) {
    if (k <= 0.0) return 1.0;
    return std::exp(e * std::log1p(-k));
}

// alpha threshold (1-k)^{-1/k}; k -> 0 limit is e, reached through the series
// exp(1 + k/2 + k^2/3 + k^3/4 + ...).
double threshold_alpha(double k) {
    if (k < 1e-6) return kE * std::exp(k * (0.5 + k * (1.0 / 3.0 + k * 0.25)));
    return std::exp(-std::log1p(-k) / k);
}

// int_1^u t^{-s} dt = (u^{1-s} - 1)/(1-s); the s -> 1 limit is log u.
double power_integral(double u, double s) {
    if (std::abs(1.0 - s) < 1e-6) {
        double L = std::log(u);
        return L + (1.0 - s) * L * L * 0.5;
    }
    return (std::pow(u, 1.0 - s) - 1.0) / (1.0 - s);
}

// int_1^alpha max(u^{-t}, 1-k) du in closed form, valid when the crossover
// (1-k)^{-1/t} lies left of alpha: (1-k)alpha + (t(1-k)^{1-1/t} - 1)/(1-t).
double tail_envelope_norm(double k, double alpha, double t) {
    double second;
    if (std::abs(1.0 - t) < 1e-6) {
        double c = std::log1p(-k);
        second = -(1.0 + c) - c * c * (t - 1.0) * 0.5;
    } else {
        second = (t * pow_1mk(k, 1.0 - 1.0 / t) - 1.0) / (1.0 - t);
    }
    return (1.0 - k) * alpha + second;
}

// M(Q_d)/(Q_d X_d) <= (1 - k x^{1/k-1})/(1-k), x = X(Q_d)/X(0): the k-power envelope
// capped at X(0). Finite for every k >= 0 including k >= 1 (k = 1 limit: 1 - log x).
double head_upper_norm(double k, double x) {
    if (k < 1e-12) return 1.0;
    double c = std::log(x);
    if (std::abs(1.0 - k) < 1e-6) return 1.0 - c - c * c * (1.0 - k) / (2.0 * k);
    return (1.0 - k * std::pow(x, 1.0 / k - 1.0)) / (1.0 - k);
}

// Lower bound on 1 + T/H' assembled from the sandwich: T >= Q_d X_d int_1^{u_cut}
// (u^{-s} - rho) du with u_cut = min(rho^{-1/s}, alpha), H' <= Q_d X_d
// (head_upper - rho). rho = r/X(Q_d) is the equilibrium price ratio: 1-k for push,
// (1+l)^{-1} for pull, and whatever the corner dictates otherwise.
double sandwich_lower_raw(double k, double s, double rho, double r_tilde, double alpha) {
    double u_star = std::pow(rho, s > 0.0 ? -1.0 / s : -std::numeric_limits<double>::infinity());
    double u_cut = std::min(u_star, alpha);
    if (!(u_cut >= 1.0)) u_cut = 1.0;
    double t_low = power_integral(u_cut, s) - rho * (u_cut - 1.0);
    if (!(t_low > 0.0)) return 1.0; // empty tail: the bound degenerates to PoA >= 1
    double h_high = head_upper_norm(k, r_tilde / rho) - rho;
    if (h_high == 0.0) return -std::numeric_limits<double>::infinity();
    return 1.0 + t_low / h_high;
}

double prev_upper_core(double k) {
    if (k < 1e-6) return kE * std::exp(k * (0.5 + k * (1.0 / 3.0 + k * 0.25))) - 1.0 / (1.0 - k);
    return std::exp(-std::log1p(-k) / k) - 1.0 / (1.0 - k);
}

std::pair<double, Branch> improved_upper_core(double k, double alpha) {
    if (alpha < 1.0) alpha = 1.0;
    if (alpha >= threshold_alpha(k)) return {prev_upper_core(k), Branch::alpha_large};
    double v;
    if (k < 1e-6) {
        double a = std::log(alpha);
        v = alpha * (2.0 - a) - 1.0 + k * (alpha * (a * a * 0.5 - a + 1.0) - 1.0);
    } else {
        double omk = 1.0 - k;
        v = (std::pow(alpha, omk) - omk * omk * alpha) / (k * omk) - 1.0 / omk;
    }
    return {v, Branch::alpha_small};
}

void require_k_open01(double k, const char* where) {
    if (!(k > 0.0) || !(k < 1.0) || !std::isfinite(k))
        fail(Errc::out_of_range, std::string(where) + ": failure rate must lie in (0,1)");
}

} // namespace

const char* branch_name(Branch b) {
    return b == Branch::alpha_small ? "alpha_small" : "alpha_large";
}

double price_of_anarchy(const GeneralizedModel& m, double r, Config config) {
    EquilibriumResult eq = solve(m, r, config);
    if (!(eq.profit_d > 1e-12))
        fail(Errc::degenerate_scenario, "decentralized profit at the degeneracy floor");
    return eq.profit_c / eq.profit_d;
}

double prev_upper_push(double k) {
    require_k_open01(k, "prev_upper_push");
    return prev_upper_core(k);
}

double prev_upper_pull(double l) {
    if (!(l > 0.0) || !std::isfinite(l)) fail(Errc::out_of_range, "prev_upper_pull: l must be positive");
    return prev_upper_core(l / (1.0 + l)); // exact: (1+l)^{1+1/l} - (1+l)
}

std::pair<double, Branch> improved_upper_push(double k, double alpha) {
    require_k_open01(k, "improved_upper_push");
    if (!(alpha >= 1.0 - 1e-12)) fail(Errc::out_of_range, "improved_upper_push: alpha must be >= 1");
    return improved_upper_core(k, alpha);
}

std::pair<double, Branch> improved_upper_pull(double l, double alpha) {
    if (!(l > 0.0) || !std::isfinite(l)) fail(Errc::out_of_range, "improved_upper_pull: l must be positive");
    if (!(alpha >= 1.0 - 1e-12)) fail(Errc::out_of_range, "improved_upper_pull: alpha must be >= 1");
    return improved_upper_core(l / (1.0 + l), alpha);
}

namespace {

void require_lower_args(double k, double s, double r_tilde, const char* where) {
    require_k_open01(k, where);
    if (1.0 - k < 1e-9) fail(Errc::singular_parameter, std::string(where) + ": k too close to 1");
    if (!(s >= k - 1e-12)) fail(Errc::out_of_range, std::string(where) + ": needs s >= k");
    if (!(r_tilde > 0.0) || !(r_tilde < 1.0))
        fail(Errc::out_of_range, std::string(where) + ": r_tilde must lie in (0,1)");
}

} // namespace

double lower_bound_push(double k, double s, double r_tilde) {
    require_lower_args(k, s, r_tilde, "lower_bound_push");
    double raw = sandwich_lower_raw(k, s, 1.0 - k, r_tilde,
                                    std::numeric_limits<double>::infinity());
    return std::max(1.0, raw);
}

double lower_bound_push_alpha(double k, double s, double r_tilde, double alpha) {
    require_lower_args(k, s, r_tilde, "lower_bound_push_alpha");
    if (!(alpha >= 1.0 - 1e-12))
        fail(Errc::out_of_range, "lower_bound_push_alpha: alpha must be >= 1");
    double raw = sandwich_lower_raw(k, s, 1.0 - k, r_tilde, std::max(alpha, 1.0));
    return std::max(1.0, raw);
}

double lower_bound_push_raw(double k, double s, double r_tilde) {
    require_lower_args(k, s, r_tilde, "lower_bound_push_raw");
    return sandwich_lower_raw(k, s, 1.0 - k, r_tilde,
                              std::numeric_limits<double>::infinity());
}

double lower_bound_push_printed(double k, double s, double r_tilde) {
    require_k_open01(k, "lower_bound_push_printed");
    if (1.0 - k < 1e-9) fail(Errc::singular_parameter, "lower_bound_push_printed: k too close to 1");
    if (!(s >= k - 1e-12)) fail(Errc::out_of_range, "lower_bound_push_printed: needs s >= k");
    if (!(r_tilde > 0.0) || !(r_tilde < 1.0))
        fail(Errc::out_of_range, "lower_bound_push_printed: r_tilde must lie in (0,1)");
    double first; // s((1-k)^{1-1/s} - 1)/(1-s), s -> 1 limit -log(1-k)
    if (std::abs(1.0 - s) < 1e-6) {
        double c = std::log1p(-k);
        first = -c - c * c * (s - 1.0) * 0.5;
    } else {
        first = s * (pow_1mk(k, 1.0 - 1.0 / s) - 1.0) / (1.0 - s);
    }
    double head_term = k * std::pow(r_tilde, 1.0 / k - 1.0) * pow_1mk(k, 1.0 - 1.0 / k);
    double num = first - (head_term - k) / (1.0 - k);
    double den = k + (k - head_term) / (1.0 - k);
    double v = num / den;
    if (!std::isfinite(v)) return 1.0;
    return std::max(1.0, v);
}

double lower_bound_pull(double l, double t, double r_tilde) {
    if (!(l > 0.0) || !std::isfinite(l)) fail(Errc::out_of_range, "lower_bound_pull: l must be positive");
    if (!(t >= l - 1e-12)) fail(Errc::out_of_range, "lower_bound_pull: needs t >= l");
    if (!(r_tilde > 0.0) || !(r_tilde < 1.0))
        fail(Errc::out_of_range, "lower_bound_pull: r_tilde must lie in (0,1)");
    double expo = (std::log(r_tilde) + std::log1p(l)) / l;
    if (expo > 300.0) return 1.0; // r^{1/l}(1+l)^{1/l} overflows; the ratio tends to 1
    double p = std::exp(expo);
    double num = t * std::exp(std::log1p(l) / t) - t + l - l * p;
    double den = 1.0 / (1.0 + l) + l - l * p;
    double v = num / den;
    if (!std::isfinite(v)) return 1.0;
    return std::max(1.0, v);
}

std::pair<double, double> integral_tail_bounds(const GeneralizedModel& m, double q_d, double q_c,
                                               double k, double s) {
    if (!(q_d >= 0.0) || !(q_c >= q_d)) fail(Errc::out_of_range, "tail bounds need 0 <= Q_d <= Q_c");
    if (q_d == q_c) return {0.0, 0.0};
    if (!(k >= 0.0) || !(k < 1.0)) fail(Errc::out_of_range, "tail bounds need k in [0,1)");
    if (!(s >= k - 1e-12)) fail(Errc::out_of_range, "tail bounds need s >= k");
    double alpha = q_c / q_d;
    double alpha_min = s > 0.0 ? std::exp(-std::log1p(-k) / s) : 1.0;
    if (alpha < alpha_min * (1.0 - 1e-12))
        fail(Errc::out_of_range, "tail bounds need alpha >= (1-k)^{-1/s}");
    double scale = q_d * m.marginal(q_d);
    double lower = scale * tail_envelope_norm(k, alpha, s);
    double upper;
    if (alpha <= threshold_alpha(k))
        upper = scale * power_integral(alpha, k);
    else
        upper = scale * tail_envelope_norm(k, alpha, k);
    return {lower, upper};
}

std::pair<double, double> integral_head_bounds(const GeneralizedModel& m, double q_d, double k) {
    if (!(q_d > 0.0)) fail(Errc::out_of_range, "head bounds need Q_d > 0");
    if (!(k >= 0.0) || !(k < 1.0)) fail(Errc::out_of_range, "head bounds need k in [0,1)");
    double scale = q_d * m.marginal(q_d);
    double x = m.marginal(q_d) / m.marginal_at_zero();
    return {scale, scale * head_upper_norm(k, x)};
}

PoaReport poa_report(const GeneralizedModel& m, double r, Config config) {
    EquilibriumResult eq = solve(m, r, config);
    if (!(eq.profit_d > 1e-12))
        fail(Errc::degenerate_scenario, "decentralized profit at the degeneracy floor");

    PoaReport rep;
    rep.equilibrium = eq;
    rep.poa = eq.profit_c / eq.profit_d;
    rep.k = eq.k;
    rep.s = eq.s;
    rep.l_d = eq.l_d;
    rep.l_c = eq.l_c;
    rep.alpha = eq.alpha;
    rep.r_tilde = r / m.marginal_at_zero();

    bool push_family = config == Config::push_manufacturer || config == Config::push_retailer;
    double k_bound = push_family ? eq.k : eq.l_d / (1.0 + eq.l_d);

    rep.prev_upper = kNaN;
    rep.improved_upper = kNaN;
    rep.lower = kNaN;
    rep.lower_raw = kNaN;
    if (std::isfinite(k_bound) && std::isfinite(rep.alpha) && k_bound >= 0.0 && k_bound < 1.0) {
        rep.prev_upper = prev_upper_core(k_bound);
        auto [iu, br] = improved_upper_core(k_bound, rep.alpha);
        rep.improved_upper = iu;
        rep.branch = br;
    }
    if (std::isfinite(eq.k) && std::isfinite(eq.s)) {
        double rho = r / m.marginal(eq.q_d);
        rep.lower_raw = sandwich_lower_raw(eq.k, eq.s, rho, rep.r_tilde, rep.alpha);
        rep.lower = std::max(1.0, rep.lower_raw);
    }
    rep.valid = rep.lower <= rep.poa + 1e-6 && rep.poa <= rep.improved_upper + 1e-6 &&
                rep.improved_upper <= rep.prev_upper + 1e-6;
    return rep;
}

} // namespace nvpoa
