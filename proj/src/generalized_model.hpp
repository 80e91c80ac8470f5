#pragma once
#include <cmath>
#include <limits>
#include <memory>

#include "demand_models.hpp"

namespace nvpoa {

// Concave order function M(Q) with nonincreasing marginal X(Q) = M'(Q), M(0) = 0.
// The newsvendor case is M = expected sales, X = survival; other instances model
// any diminishing-returns stock benefit. Immutable, thread-safe.
class GeneralizedModel {
public:
    virtual ~GeneralizedModel() = default;

    virtual double order_fn(double Q) const = 0;   // M(Q)
    virtual double marginal(double Q) const = 0;   // X(Q)
    virtual double marginal_at_zero() const = 0;   // X(0)

    // X'(Q). Default: central finite difference with step h = max(1e-6, 1e-6*Q)
    // (one-sided at the left edge). Overridden with the analytic form where known.
    virtual double marginal_derivative(double Q) const;

    // inf X over Q >= 0; the cost ratio must exceed this for a finite optimum.
    virtual double marginal_lower_limit() const { return 0.0; }

    // Location where X is non-differentiable (NaN when the model is smooth).
    virtual double kink_point() const { return std::numeric_limits<double>::quiet_NaN(); }

    // Smallest Q with X(Q) <= y for y in (marginal_lower_limit, X(0)]. Default:
    // bracket expansion + bisection (abs tol 1e-10); at a downward jump of X this
    // converges to the jump location, which is the supporting-line optimum.
    virtual double inverse_marginal(double y) const;

    virtual const char* name() const = 0;
};

// The original newsvendor problem as a GeneralizedModel: X = survival, M = expected
// sales, X' = -density.
class NewsvendorModel final : public GeneralizedModel {
public:
    explicit NewsvendorModel(std::shared_ptr<const DemandModel> demand);
    double order_fn(double Q) const override;
    double marginal(double Q) const override;
    double marginal_at_zero() const override { return 1.0; }
    double marginal_derivative(double Q) const override;
    double inverse_marginal(double y) const override;
    const char* name() const override;

    const DemandModel& demand() const { return *demand_; }

private:
    std::shared_ptr<const DemandModel> demand_;
};

// M(Q) = tanh(Q): saturating order benefit with X = 1 - tanh^2, g = 2Q tanh Q,
// l = 2 sinh^2 Q in closed form.
class TanhModel final : public GeneralizedModel {
public:
    double order_fn(double Q) const override { return std::tanh(Q); }
    double marginal(double Q) const override {
        double t = std::tanh(Q);
        return 1.0 - t * t;
    }
    double marginal_at_zero() const override { return 1.0; }
    double marginal_derivative(double Q) const override {
        double t = std::tanh(Q);
        return -2.0 * t * (1.0 - t * t);
    }
    double inverse_marginal(double y) const override;
    const char* name() const override { return "tanh"; }
};

// M(Q) = log(1+Q) up to the knee Q_v, then linear with slope v < 1/(1+Q_v).
// X drops from 1/(1+Q_v) to v at the knee: the first-order condition has no
// solution for cost ratios inside that gap, yet the supporting-line optimum
// exists at Q_v. Built to exercise exactly that failure mode.
class PiecewiseLogModel final : public GeneralizedModel {
public:
    PiecewiseLogModel(double knee, double tail_slope);
    double order_fn(double Q) const override;
    double marginal(double Q) const override;
    double marginal_at_zero() const override { return 1.0; }
    double marginal_derivative(double Q) const override;
    double marginal_lower_limit() const override { return tail_slope_; }
    double kink_point() const override { return knee_; }
    double inverse_marginal(double y) const override;
    const char* name() const override { return "piecewise_log"; }

    double knee() const { return knee_; }
    double tail_slope() const { return tail_slope_; }

private:
    double knee_;
    double tail_slope_;
};

// Generalized failure rate g(Q) = -Q X'(Q)/X(Q); equals Q f/F̄ in the newsvendor case.
double gen_gfr(const GeneralizedModel& m, double Q);

// l(Q) = -X'(Q) M(Q)/X(Q)^2; equals f ∫F̄ / F̄² in the newsvendor case.
double gen_lfr(const GeneralizedModel& m, double Q);

// Grid probe of g over [q_lo, q_hi], same report semantics as the demand-model
// version; points where g is undefined (kink, underflow) are skipped.
IgfrReport check_igfr(const GeneralizedModel& m, double q_lo, double q_hi,
                      int grid_points = 128);

} // namespace nvpoa
