#include "generalized_model.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "numerics.hpp"

namespace nvpoa {

double GeneralizedModel::marginal_derivative(double Q) const {
    if (!(Q >= 0.0)) fail(Errc::out_of_range, "marginal_derivative needs Q >= 0");
    double h = std::max(1e-6, 1e-6 * Q);
    double kink = kink_point();
    if (std::isfinite(kink) && Q - h <= kink && kink <= Q + h)
        fail(Errc::non_differentiable_point, "finite-difference stencil crosses the kink");
    if (Q - h < 0.0) return (marginal(Q + h) - marginal(Q)) / h;
    return (marginal(Q + h) - marginal(Q - h)) / (2.0 * h);
}

double GeneralizedModel::inverse_marginal(double y) const {
    double x0 = marginal_at_zero();
    if (!(y > marginal_lower_limit()) || !(y <= x0))
        fail(Errc::out_of_range, "inverse_marginal level outside (inf X, X(0)]");
    if (marginal(0.0) <= y) return 0.0;
    double hi = 1.0;
    int guard = 0;
    while (marginal(hi) > y) {
        hi *= 2.0;
        if (++guard > 1200) fail(Errc::bracket_failure, "no upper bracket for inverse marginal");
    }
    auto f = [&](double q) { return marginal(q) - y; };
    RootResult r = bisect(f, 0.0, hi, marginal(0.0) - y, marginal(hi) - y,
                          std::max(1e-10, 4.0 * std::numeric_limits<double>::epsilon() * hi));
    return r.x;
}

// ---- newsvendor wrapper ----

NewsvendorModel::NewsvendorModel(std::shared_ptr<const DemandModel> demand)
    : demand_(std::move(demand)) {
    if (!demand_) fail(Errc::invalid_argument, "newsvendor model needs a demand model");
}

double NewsvendorModel::order_fn(double Q) const { return demand_->cumulative_order(Q); }
double NewsvendorModel::marginal(double Q) const { return demand_->survival(Q); }
double NewsvendorModel::marginal_derivative(double Q) const { return -demand_->density(Q); }
double NewsvendorModel::inverse_marginal(double y) const { return demand_->inverse_survival(y); }
const char* NewsvendorModel::name() const { return demand_->name(); }

// ---- tanh ----

double TanhModel::inverse_marginal(double y) const {
    if (!(y > 0.0) || !(y <= 1.0)) fail(Errc::out_of_range, "inverse_marginal level outside (0,1]");
    return std::atanh(std::sqrt(1.0 - y));
}

// ---- piecewise log ----

PiecewiseLogModel::PiecewiseLogModel(double knee, double tail_slope)
    : knee_(knee), tail_slope_(tail_slope) {
    if (!(knee > 0.0) || !std::isfinite(knee))
        fail(Errc::invalid_argument, "piecewise-log model needs a positive finite knee");
    if (!(tail_slope > 0.0) || !(tail_slope < 1.0 / (1.0 + knee)))
        fail(Errc::invalid_argument, "tail slope must lie in (0, 1/(1+knee)) so X drops at the knee");
}

double PiecewiseLogModel::order_fn(double Q) const {
    if (!(Q >= 0.0)) fail(Errc::out_of_range, "order_fn needs Q >= 0");
    if (Q <= knee_) return std::log1p(Q);
    return std::log1p(knee_) + tail_slope_ * (Q - knee_);
}

double PiecewiseLogModel::marginal(double Q) const {
    if (!(Q >= 0.0)) fail(Errc::out_of_range, "marginal needs Q >= 0");
    // left value at the knee: X(Q_v) = 1/(1+Q_v), the larger one-sided slope
    if (Q <= knee_) return 1.0 / (1.0 + Q);
    return tail_slope_;
}

double PiecewiseLogModel::marginal_derivative(double Q) const {
    if (!(Q >= 0.0)) fail(Errc::out_of_range, "marginal_derivative needs Q >= 0");
    if (std::abs(Q - knee_) <= 1e-9 * std::max(1.0, knee_))
        fail(Errc::non_differentiable_point, "X is not differentiable at the knee");
    if (Q < knee_) return -1.0 / ((1.0 + Q) * (1.0 + Q));
    return 0.0;
}

double PiecewiseLogModel::inverse_marginal(double y) const {
    double left_at_knee = 1.0 / (1.0 + knee_);
    if (!(y > tail_slope_) || !(y > 0.0) || !(y <= 1.0))
        fail(Errc::out_of_range, "inverse_marginal level outside (tail slope, X(0)]");
    if (y >= left_at_knee) return 1.0 / y - 1.0;
    return knee_; // y inside the jump gap: the supporting line touches at the knee
}

// ---- failure-rate functionals ----

double gen_gfr(const GeneralizedModel& m, double Q) {
    if (!(Q >= 0.0)) fail(Errc::out_of_range, "gen_gfr needs Q >= 0");
    if (Q == 0.0) return 0.0;
    double x = m.marginal(Q);
    if (x <= kSurvivalFloor) fail(Errc::survival_underflow, "marginal below floor in gen_gfr");
    return -Q * m.marginal_derivative(Q) / x;
}

double gen_lfr(const GeneralizedModel& m, double Q) {
    if (!(Q >= 0.0)) fail(Errc::out_of_range, "gen_lfr needs Q >= 0");
    if (Q == 0.0) return 0.0;
    double x = m.marginal(Q);
    if (x <= kSurvivalFloor) fail(Errc::survival_underflow, "marginal below floor in gen_lfr");
    return -m.marginal_derivative(Q) * m.order_fn(Q) / (x * x);
}

IgfrReport check_igfr(const GeneralizedModel& m, double q_lo, double q_hi, int grid_points) {
    if (!(q_lo > 0.0) || !(q_hi > q_lo)) fail(Errc::out_of_range, "check_igfr needs 0 < q_lo < q_hi");
    if (grid_points < 2) fail(Errc::invalid_argument, "check_igfr needs at least 2 grid points");
    IgfrReport rep;
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 0; i < grid_points; ++i) {
        double q = q_lo + (q_hi - q_lo) * i / (grid_points - 1);
        double g;
        try {
            g = gen_gfr(m, q);
        } catch (const Error&) {
            continue; // kink or underflow: skip the point
        }
        if (g > 1.0) {
            if (!rep.has_g_above_one) rep.g_above_one_lo = q;
            rep.has_g_above_one = true;
            rep.g_above_one_hi = q;
        }
        if (have_prev && g < prev) {
            double drop = prev - g;
            if (drop > rep.max_violation) rep.max_violation = drop;
            if (drop > 1e-9) rep.is_nondecreasing = false;
        }
        prev = g;
        have_prev = true;
    }
    return rep;
}

} // namespace nvpoa
