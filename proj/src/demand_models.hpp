#pragma once
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace nvpoa {

// Survival floor below which the failure-rate functionals are considered undefined.
inline constexpr double kSurvivalFloor = 1e-14;

// Nonnegative demand with survival F̄(ξ) = P(demand > ξ), F̄(0) = 1.
// Implementations are immutable after construction and safe to share across threads.
class DemandModel {
public:
    virtual ~DemandModel() = default;

    virtual double survival(double xi) const = 0;
    virtual double density(double xi) const = 0;

    // Largest ξ with survival(ξ) >= y, for y in (0,1]. Default: geometric bracket
    // expansion + bisection to an absolute tolerance of 1e-10 in ξ.
    virtual double inverse_survival(double y) const;

    // Supremum of the support (+inf when unbounded).
    virtual double support_upper() const { return std::numeric_limits<double>::infinity(); }

    // ∫_0^Q F̄(ξ) dξ: the expected-sales curve. Default: adaptive Simpson, rel tol 1e-9.
    virtual double cumulative_order(double Q) const;

    virtual const char* name() const = 0;
};

class UniformDemand final : public DemandModel {
public:
    explicit UniformDemand(double upper);
    double survival(double xi) const override;
    double density(double xi) const override;
    double inverse_survival(double y) const override;
    double support_upper() const override { return upper_; }
    double cumulative_order(double Q) const override;
    const char* name() const override { return "uniform"; }

private:
    double upper_;
};

class HalfNormalDemand final : public DemandModel {
public:
    explicit HalfNormalDemand(double sigma);
    double survival(double xi) const override;
    double density(double xi) const override;
    double cumulative_order(double Q) const override;
    const char* name() const override { return "halfnormal"; }

private:
    double sigma_;
};

// Degenerate demand concentrated at a single point; the fixed-order case.
// density() is 0 away from the atom (and at it: the atom carries no density).
class PointMassDemand final : public DemandModel {
public:
    explicit PointMassDemand(double atom);
    double survival(double xi) const override;
    double density(double xi) const override;
    double inverse_survival(double y) const override;
    double support_upper() const override { return atom_; }
    double cumulative_order(double Q) const override;
    const char* name() const override { return "pointmass"; }

private:
    double atom_;
};

// Density exp(polynomial(log ξ))/Z on [xi_min, xi_max]. Survival and the expected-sales
// curve come from cumulative quadrature cached on a log-spaced knot table, so density,
// survival and cumulative_order stay mutually consistent to quadrature accuracy.
class EmpiricalDemand final : public DemandModel {
public:
    EmpiricalDemand(std::vector<double> log_poly_coeffs, double xi_min, double xi_max,
                    int table_knots = 1024);
    double survival(double xi) const override;
    double density(double xi) const override;
    double inverse_survival(double y) const override;
    double support_upper() const override { return xi_max_; }
    double cumulative_order(double Q) const override;
    const char* name() const override { return "empirical"; }

    double normalization() const { return normalization_; }
    double xi_min() const { return xi_min_; }
    double xi_max() const { return xi_max_; }
    const std::vector<double>& log_poly_coeffs() const { return coeffs_; }

private:
    double unnormalized_density(double xi) const;
    double mass_below(double xi) const;   // ∫_{xi_min}^{xi} f, normalized

    std::vector<double> coeffs_;
    double xi_min_, xi_max_;
    double normalization_;
    std::vector<double> knots_;       // log-spaced over [xi_min, xi_max]
    std::vector<double> cum_mass_;    // unnormalized CDF at knots
    std::vector<double> cum_sales_;   // ∫_{xi_min}^{knot} survival
};

// Generalized failure rate g(Q) = Q f(Q) / F̄(Q).
double gfr(const DemandModel& m, double Q);

// l(Q) = f(Q) ∫_0^Q F̄ / F̄²(Q); the elasticity-type companion of g (l >= g).
double lfr(const DemandModel& m, double Q);

struct IgfrReport {
    bool is_nondecreasing = true;
    double max_violation = 0.0;          // largest decrease of g between adjacent grid points
    bool has_g_above_one = false;
    double g_above_one_lo = 0.0;         // first grid point with g > 1
    double g_above_one_hi = 0.0;         // last grid point with g > 1
};

// Samples g on grid_points equally spaced points of [q_lo, q_hi].
IgfrReport check_igfr(const DemandModel& m, double q_lo, double q_hi, int grid_points = 128);

} // namespace nvpoa
