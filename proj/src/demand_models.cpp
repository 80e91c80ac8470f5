#include "demand_models.hpp"
#include "errors.hpp"
#include "numerics.hpp"

#include <algorithm>
#include <cmath>

namespace nvpoa {

namespace {

void require_nonnegative_xi(double xi) {
    if (!(xi >= 0.0)) fail(Errc::out_of_range, "demand coordinate must be nonnegative");
}

void require_survival_level(double y) {
    if (!(y > 0.0 && y <= 1.0)) fail(Errc::out_of_range, "survival level must lie in (0,1]");
}

} // namespace

double DemandModel::inverse_survival(double y) const {
    require_survival_level(y);
    if (survival(0.0) <= y) {
        // survival(0)=1 by contract; equality at y=1 inverts to the left edge of the
        // region where survival stays at 1 (0 for models with mass near the origin).
        if (y < 1.0) fail(Errc::internal, "survival(0) < 1 violates the model contract");
    }
    double hi = support_upper();
    if (!std::isfinite(hi)) {
        hi = 1.0;
        int guard = 0;
        while (survival(hi) >= y) {
            hi *= 2.0;
            if (++guard > 1200) fail(Errc::bracket_failure, "no upper bracket for inverse survival");
        }
    }
    if (survival(hi) >= y) return hi;
    auto f = [&](double q) { return survival(q) - y; };
    RootResult r = bisect(f, 0.0, hi, survival(0.0) - y, survival(hi) - y,
                          std::max(1e-10, 4.0 * std::numeric_limits<double>::epsilon() * hi));
    return r.x;
}

double DemandModel::cumulative_order(double Q) const {
    require_nonnegative_xi(Q);
    if (Q == 0.0) return 0.0;
    return adaptive_simpson([this](double t) { return survival(t); }, 0.0, Q, 1e-9);
}

// ---- uniform on [0, upper] ----

UniformDemand::UniformDemand(double upper) : upper_(upper) {
    if (!(upper > 0.0) || !std::isfinite(upper))
        fail(Errc::invalid_argument, "uniform demand needs a positive finite upper end");
}

double UniformDemand::survival(double xi) const {
    require_nonnegative_xi(xi);
    if (xi >= upper_) return 0.0;
    return 1.0 - xi / upper_;
}

double UniformDemand::density(double xi) const {
    require_nonnegative_xi(xi);
    return xi <= upper_ ? 1.0 / upper_ : 0.0;
}

double UniformDemand::inverse_survival(double y) const {
    require_survival_level(y);
    return upper_ * (1.0 - y);
}

double UniformDemand::cumulative_order(double Q) const {
    require_nonnegative_xi(Q);
    double q = std::min(Q, upper_);
    return q - q * q / (2.0 * upper_);
}

// ---- half-normal with scale sigma ----

HalfNormalDemand::HalfNormalDemand(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        fail(Errc::invalid_argument, "half-normal demand needs a positive finite scale");
}

double HalfNormalDemand::survival(double xi) const {
    require_nonnegative_xi(xi);
    return std::erfc(xi / (sigma_ * std::sqrt(2.0)));
}

double HalfNormalDemand::density(double xi) const {
    require_nonnegative_xi(xi);
    static const double c = std::sqrt(2.0 / 3.14159265358979323846);
    return c / sigma_ * std::exp(-xi * xi / (2.0 * sigma_ * sigma_));
}

double HalfNormalDemand::cumulative_order(double Q) const {
    require_nonnegative_xi(Q);
    static const double c = std::sqrt(2.0 / 3.14159265358979323846);
    return Q * std::erfc(Q / (sigma_ * std::sqrt(2.0))) +
           sigma_ * c * (1.0 - std::exp(-Q * Q / (2.0 * sigma_ * sigma_)));
}

// ---- point mass ----

PointMassDemand::PointMassDemand(double atom) : atom_(atom) {
    if (!(atom > 0.0) || !std::isfinite(atom))
        fail(Errc::invalid_argument, "point-mass demand needs a positive finite atom");
}

double PointMassDemand::survival(double xi) const {
    require_nonnegative_xi(xi);
    return xi <= atom_ ? 1.0 : 0.0;
}

double PointMassDemand::density(double xi) const {
    require_nonnegative_xi(xi);
    return 0.0;
}

double PointMassDemand::inverse_survival(double y) const {
    require_survival_level(y);
    return atom_;
}

double PointMassDemand::cumulative_order(double Q) const {
    require_nonnegative_xi(Q);
    return std::min(Q, atom_);
}

// ---- empirical (log-polynomial density) ----

EmpiricalDemand::EmpiricalDemand(std::vector<double> log_poly_coeffs, double xi_min, double xi_max,
                                 int table_knots)
    : coeffs_(std::move(log_poly_coeffs)), xi_min_(xi_min), xi_max_(xi_max) {
    if (coeffs_.empty()) fail(Errc::invalid_argument, "empirical demand needs coefficients");
    if (!(xi_min > 0.0) || !(xi_max > xi_min) || !std::isfinite(xi_max))
        fail(Errc::invalid_argument, "empirical demand needs 0 < xi_min < xi_max < inf");
    if (table_knots < 512) table_knots = 512;

    const int n = table_knots;
    knots_.resize(n);
    double llo = std::log(xi_min_), lhi = std::log(xi_max_);
    for (int i = 0; i < n; ++i)
        knots_[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    knots_.front() = xi_min_;
    knots_.back() = xi_max_;

    // cumulative unnormalized mass over knot intervals, integrated in u = log ξ
    cum_mass_.assign(n, 0.0);
    auto integrand_u = [this](double u) { return unnormalized_density(std::exp(u)) * std::exp(u); };
    for (int i = 1; i < n; ++i) {
        double a = std::log(knots_[i - 1]), b = std::log(knots_[i]);
        cum_mass_[i] = cum_mass_[i - 1] + adaptive_simpson(integrand_u, a, b, 1e-10);
    }
    normalization_ = cum_mass_.back();
    if (!(normalization_ > 0.0) || !std::isfinite(normalization_))
        fail(Errc::non_normalizable, "empirical density does not integrate to a positive value");

    // cumulative expected sales: ∫ survival over knot intervals (survival is cheap here:
    // knot mass + local quadrature, all already consistent with the density)
    cum_sales_.assign(n, 0.0);
    for (int i = 1; i < n; ++i) {
        double v = adaptive_simpson([this](double t) { return survival(t); }, knots_[i - 1],
                                    knots_[i], 1e-10);
        cum_sales_[i] = cum_sales_[i - 1] + v;
    }
}

double EmpiricalDemand::unnormalized_density(double xi) const {
    return std::exp(polyval(coeffs_, std::log(xi)));
}

double EmpiricalDemand::mass_below(double xi) const {
    if (xi <= xi_min_) return 0.0;
    if (xi >= xi_max_) return 1.0;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), xi);
    size_t k = static_cast<size_t>(it - knots_.begin()) - 1;
    auto integrand_u = [this](double u) { return unnormalized_density(std::exp(u)) * std::exp(u); };
    double local = adaptive_simpson(integrand_u, std::log(knots_[k]), std::log(xi), 1e-10);
    return std::min(1.0, (cum_mass_[k] + local) / normalization_);
}

double EmpiricalDemand::survival(double xi) const {
    require_nonnegative_xi(xi);
    return 1.0 - mass_below(xi);
}

double EmpiricalDemand::density(double xi) const {
    require_nonnegative_xi(xi);
    if (xi < xi_min_ || xi > xi_max_) return 0.0;
    return unnormalized_density(xi) / normalization_;
}

double EmpiricalDemand::inverse_survival(double y) const {
    require_survival_level(y);
    if (y >= 1.0) return xi_min_;
    // knot CDF values bracket the target; refine inside one interval
    double target_mass = (1.0 - y) * normalization_;
    auto it = std::upper_bound(cum_mass_.begin(), cum_mass_.end(), target_mass);
    size_t k = std::min(static_cast<size_t>(it - cum_mass_.begin()),
                        cum_mass_.size() - 1);
    double lo = knots_[k - 1], hi = knots_[k];
    auto f = [&](double q) { return survival(q) - y; };
    RootResult r = bisect(f, lo, hi, survival(lo) - y, survival(hi) - y,
                          std::max(1e-10, 4.0 * std::numeric_limits<double>::epsilon() * hi));
    return r.x;
}

double EmpiricalDemand::cumulative_order(double Q) const {
    require_nonnegative_xi(Q);
    if (Q <= xi_min_) return Q;               // survival is 1 below the support
    double q = std::min(Q, xi_max_);
    auto it = std::upper_bound(knots_.begin(), knots_.end(), q);
    size_t k = static_cast<size_t>(it - knots_.begin()) - 1;
    k = std::min(k, knots_.size() - 2);
    double local = adaptive_simpson([this](double t) { return survival(t); }, knots_[k], q, 1e-10);
    return xi_min_ + cum_sales_[k] + local;   // survival beyond xi_max_ is 0: no further growth
}

// ---- failure-rate functionals ----

double gfr(const DemandModel& m, double Q) {
    if (!(Q > 0.0)) fail(Errc::out_of_range, "generalized failure rate needs Q > 0");
    double s = m.survival(Q);
    if (s <= kSurvivalFloor) fail(Errc::survival_underflow, "survival below floor in gfr");
    return Q * m.density(Q) / s;
}

double lfr(const DemandModel& m, double Q) {
    if (!(Q > 0.0)) fail(Errc::out_of_range, "lfr needs Q > 0");
    double s = m.survival(Q);
    if (s <= kSurvivalFloor) fail(Errc::survival_underflow, "survival below floor in lfr");
    return m.density(Q) * m.cumulative_order(Q) / (s * s);
}

IgfrReport check_igfr(const DemandModel& m, double q_lo, double q_hi, int grid_points) {
    if (!(q_lo > 0.0) || !(q_hi > q_lo)) fail(Errc::out_of_range, "check_igfr needs 0 < q_lo < q_hi");
    if (grid_points < 2) fail(Errc::invalid_argument, "check_igfr needs at least 2 grid points");
    IgfrReport rep;
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 0; i < grid_points; ++i) {
        double q = q_lo + (q_hi - q_lo) * i / (grid_points - 1);
        double g;
        try {
            g = gfr(m, q);
        } catch (const Error&) {
            continue; // survival underflow near the right end: skip the point
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
