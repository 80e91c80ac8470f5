#pragma once
#include "generalized_model.hpp"
#include "numerics.hpp"

namespace nvpoa {

// Who holds the inventory (push: retailer, pull: manufacturer) and who leads the
// wholesale-price game. The two leader configurations are the nontrivial ones.
enum class Config {
    push_manufacturer = 0,
    push_retailer = 1,
    pull_manufacturer = 2,
    pull_retailer = 3,
};

enum class Method { bisection = 0, fixed_point = 1 };

const char* config_name(Config c);

struct EquilibriumResult {
    double q_c = 0.0;        // centralized optimum, X(q_c) = r
    double q_d = 0.0;        // decentralized equilibrium inventory
    double w_over_p = 0.0;   // wholesale price ratio
    double profit_c = 0.0;   // chain profit at q_c, units of p
    double profit_d = 0.0;   // chain profit at q_d, units of p
    double alpha = 1.0;      // q_c / q_d
    double k = 0.0;          // g(q_d); NaN when g is undefined there (kink corner)
    double s = 0.0;          // g(q_c)
    double l_d = 0.0;        // l(q_d)
    double l_c = 0.0;        // l(q_c)
    double residual = 0.0;   // defining-equation residual at q_d; NaN at a corner
    int iterations = 0;
    bool boundary = false;   // corner solution: the first-order condition has no interior root
};

// Chain expected profit -r*Q + M(Q), in units of the selling price.
double expected_profit(const GeneralizedModel& m, double r, double Q);

// Centralized optimum X(Q_c) = r; for a marginal with a jump gap containing r this
// is the supporting-line optimum at the jump.
double solve_centralized(const GeneralizedModel& m, double r);

// Manufacturer leads, retailer stocks: X(Q_d)(1 - g(Q_d)) = r, w = p X(Q_d).
EquilibriumResult solve_push_manufacturer(const GeneralizedModel& m, double r,
                                          Method method = Method::bisection);

// Retailer leads, retailer stocks: w = c and Q_d = Q_c.
EquilibriumResult solve_push_retailer(const GeneralizedModel& m, double r);

// Manufacturer leads, manufacturer stocks: w = p and Q_d = Q_c.
EquilibriumResult solve_pull_manufacturer(const GeneralizedModel& m, double r);

// Retailer leads, manufacturer stocks: X(Q_d)/(1 + l(Q_d)) = r, w = c/X(Q_d).
EquilibriumResult solve_pull_retailer(const GeneralizedModel& m, double r,
                                      Method method = Method::bisection);

EquilibriumResult solve(const GeneralizedModel& m, double r, Config config,
                        Method method = Method::bisection);

struct NSerialResult {
    double q_d = 0.0;
    double residual = 0.0;
    int iterations = 0;
    // Diagnostic: X(Q_d)(1-g(Q_d))^{N-1} >= r for push (X(Q_d)/(1+l(Q_d))^{N-1} >= r
    // for pull). The operator-equation root need not satisfy it; disagreement is
    // reported, not hidden.
    bool inequality_holds = true;
};

// N-echelon serial chain, every upstream stage a leader over the next. Solves the
// operator equation (1 + Q d/dQ)^{N-1} X = r (push) respectively
// (1 + (M/X) d/dQ)^{N-1} (1/X) = 1/r (pull). Needs N-1 derivatives of X; models
// with a kink are rejected. At N = 2 both reduce to the two-echelon solvers.
NSerialResult solve_n_serial(const GeneralizedModel& m, double r, int echelons, Config config);

struct BruteForceResult {
    double q = 0.0;
    double value = 0.0;
};

// Argmax of objective over a uniform grid on [0, q_max], then golden-section
// refinement on the bracketing cell. Exact ties keep the smallest-Q grid point.
BruteForceResult brute_force_optimum(const Fn1& objective, double q_max, int grid_points);

struct StackelbergOracle {
    double w_over_p = 0.0;
    double q_d = 0.0;
    double leader_profit = 0.0;
};

// Plays the wholesale-price game by exhaustive search: outer grid (plus golden
// refinement) over w/p, inner brute-force follower best response. Independent of
// the first-order-condition solvers; used to validate them.
StackelbergOracle stackelberg_grid_oracle(const GeneralizedModel& m, double r, Config config,
                                          int w_grid_points, int q_grid_points);

} // namespace nvpoa
