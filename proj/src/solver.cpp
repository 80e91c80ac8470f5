#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "errors.hpp"

namespace nvpoa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_admissible(const GeneralizedModel& m, double r) {
    if (!std::isfinite(r) || !(r > m.marginal_lower_limit()) || !(r < m.marginal_at_zero()))
        fail(Errc::inadmissible_ratio, "cost ratio must lie in (inf X, X(0))");
}

// Evaluates f, retreating to the left limit when the point sits exactly on a kink
// or on a jump of X to zero (support edge); X is left-continuous, so this is the
// supporting-line side.
double eval_left_of_jump(const Fn1& f, double q) {
    try {
        return f(q);
    } catch (const Error& e) {
        if (e.code() != Errc::non_differentiable_point && e.code() != Errc::survival_underflow)
            throw;
        double shift = 2e-9 * std::max(1.0, std::abs(q));
        return f(q - shift);
    }
}

// X(q) for reporting the wholesale ratio: at a corner on a jump to zero the
// economically meaningful value is the left limit.
double left_marginal(const GeneralizedModel& m, double q) {
    double x = m.marginal(q);
    if (x > kSurvivalFloor) return x;
    double shift = 2e-9 * std::max(1.0, std::abs(q));
    return m.marginal(std::max(0.0, q - shift));
}

struct FocSolve {
    double q_d = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool boundary = false;
};

// Root of phi on (0, q_c] by bisection. phi > 0 near 0 by admissibility; if phi
// stays positive up to q_c the equilibrium sits at the corner q_d = q_c (fixed
// order, or a leader pushed onto a marginal jump).
FocSolve foc_bisection(const Fn1& phi, double q_c) {
    auto f = [&](double q) { return eval_left_of_jump(phi, q); };
    double lo = 1e-12 * q_c;
    double flo = f(lo);
    if (!(flo > 0.0))
        fail(Errc::bracket_failure, "first-order residual not positive near Q = 0");
    double fhi = f(q_c);
    if (fhi >= 0.0) return {q_c, kNaN, 1, true};
    RootResult rr = bisect(f, lo, q_c, flo, fhi, 1e-12 * std::max(1.0, q_c));
    // landing on a jump (residual far from zero at the converged Q) is a corner too
    bool on_jump = std::abs(rr.fx) > 1e-6;
    return {rr.x, rr.fx, rr.iterations, on_jump};
}

// Damped fixed-point iteration q <- (1-l)q + l*X^{-1}(proposal(q)), l = 0.5, then a
// short bisection polish so the residual always meets the 1e-9 contract.
FocSolve foc_fixed_point(const GeneralizedModel& m, const Fn1& phi, const Fn1& proposal,
                         double q_c) {
    // Damped iteration q <- (1-l)q + l T(q). The map slope can be a large
    // negative number (pull at small r), so l adapts: growing displacement
    // halves it until the damped map contracts. Convergence is judged by the
    // undamped displacement |T(q) - q|, which vanishes only at a root.
    double lambda = 0.5;
    const int cap = 10000;
    double x0 = m.marginal_at_zero();
    double floor = m.marginal_lower_limit();
    double q = 0.5 * q_c;
    double prev_disp = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < cap; ++it) {
        double y = proposal(q);
        if (!std::isfinite(y) || !(y > floor)) y = floor + 1e-12 * (x0 - floor);
        if (!(y < x0)) y = x0 * (1.0 - 1e-12);
        double target = m.inverse_marginal(y);
        double disp = std::abs(target - q);
        if (disp <= 1e-10) break;
        if (disp >= prev_disp) lambda = std::max(0.5 * lambda, 1.0 / 4096.0);
        prev_disp = disp;
        q = (1.0 - lambda) * q + lambda * target;
    }
    if (it >= cap) fail(Errc::no_convergence, "fixed-point iteration hit the 1e4 cap");
    double res = phi(q);
    if (std::abs(res) > 1e-10) {
        // expand a bracket around the fixed point and polish
        double w = std::max(1e-8, 1e-8 * q_c);
        double a = q, b = q, fa = res, fb = res;
        int guard = 0;
        while (fa * fb > 0.0 && guard < 80) {
            w *= 2.0;
            a = std::max(1e-12 * q_c, q - w);
            b = std::min(q_c, q + w);
            fa = phi(a);
            fb = phi(b);
            ++guard;
        }
        if (fa * fb <= 0.0) {
            RootResult rr = bisect(phi, a, b, fa, fb, 1e-12 * std::max(1.0, q_c));
            q = rr.x;
            res = rr.fx;
            it += rr.iterations;
        }
    }
    return {q, res, it + 1, false};
}

double quiet_gfr(const GeneralizedModel& m, double q) {
    try {
        return gen_gfr(m, q);
    } catch (const Error&) {
        return kNaN;
    }
}

double quiet_lfr(const GeneralizedModel& m, double q) {
    try {
        return gen_lfr(m, q);
    } catch (const Error&) {
        return kNaN;
    }
}

EquilibriumResult assemble(const GeneralizedModel& m, double r, double q_c, const FocSolve& fs,
                           double w_over_p) {
    EquilibriumResult eq;
    eq.q_c = q_c;
    eq.q_d = fs.q_d;
    eq.w_over_p = w_over_p;
    eq.profit_c = expected_profit(m, r, q_c);
    eq.profit_d = expected_profit(m, r, fs.q_d);
    eq.alpha = q_c / fs.q_d;
    eq.k = quiet_gfr(m, fs.q_d);
    eq.s = quiet_gfr(m, q_c);
    eq.l_d = quiet_lfr(m, fs.q_d);
    eq.l_c = quiet_lfr(m, q_c);
    eq.residual = fs.residual;
    eq.iterations = fs.iterations;
    eq.boundary = fs.boundary;
    return eq;
}

EquilibriumResult solve_at_centralized(const GeneralizedModel& m, double r, double w_over_p) {
    double q_c = solve_centralized(m, r);
    FocSolve fs{q_c, 0.0, 0, false};
    return assemble(m, r, q_c, fs, w_over_p);
}

} // namespace

const char* config_name(Config c) {
    switch (c) {
    case Config::push_manufacturer: return "push_manufacturer";
    case Config::push_retailer: return "push_retailer";
    case Config::pull_manufacturer: return "pull_manufacturer";
    case Config::pull_retailer: return "pull_retailer";
    }
    return "unknown";
}

double expected_profit(const GeneralizedModel& m, double r, double Q) {
    if (!(Q >= 0.0)) fail(Errc::out_of_range, "expected_profit needs Q >= 0");
    return -r * Q + m.order_fn(Q);
}

double solve_centralized(const GeneralizedModel& m, double r) {
    require_admissible(m, r);
    return m.inverse_marginal(r);
}

EquilibriumResult solve_push_manufacturer(const GeneralizedModel& m, double r, Method method) {
    require_admissible(m, r);
    double q_c = solve_centralized(m, r);
    auto phi = [&](double q) { return m.marginal(q) * (1.0 - gen_gfr(m, q)) - r; };
    FocSolve fs;
    if (method == Method::bisection) {
        fs = foc_bisection(phi, q_c);
    } else {
        auto proposal = [&](double q) { return r + gen_gfr(m, q) * m.marginal(q); };
        fs = foc_fixed_point(m, phi, proposal, q_c);
    }
    return assemble(m, r, q_c, fs, left_marginal(m, fs.q_d));
}

EquilibriumResult solve_push_retailer(const GeneralizedModel& m, double r) {
    return solve_at_centralized(m, r, r); // retailer leads itself: w = c, stocks q_c
}

EquilibriumResult solve_pull_manufacturer(const GeneralizedModel& m, double r) {
    return solve_at_centralized(m, r, 1.0); // w = p, manufacturer stocks q_c
}

EquilibriumResult solve_pull_retailer(const GeneralizedModel& m, double r, Method method) {
    require_admissible(m, r);
    double q_c = solve_centralized(m, r);
    auto phi = [&](double q) { return m.marginal(q) / (1.0 + gen_lfr(m, q)) - r; };
    FocSolve fs;
    if (method == Method::bisection) {
        fs = foc_bisection(phi, q_c);
    } else {
        auto proposal = [&](double q) {
            double inv = 1.0 / r - gen_lfr(m, q) / m.marginal(q);
            if (!(inv > 0.0)) return r; // transient overshoot: aim back at q_c
            return 1.0 / inv;
        };
        fs = foc_fixed_point(m, phi, proposal, q_c);
    }
    return assemble(m, r, q_c, fs, r / left_marginal(m, fs.q_d));
}

EquilibriumResult solve(const GeneralizedModel& m, double r, Config config, Method method) {
    switch (config) {
    case Config::push_manufacturer: return solve_push_manufacturer(m, r, method);
    case Config::push_retailer: return solve_push_retailer(m, r);
    case Config::pull_manufacturer: return solve_pull_manufacturer(m, r);
    case Config::pull_retailer: return solve_pull_retailer(m, r, method);
    }
    fail(Errc::invalid_argument, "unknown configuration");
}

NSerialResult solve_n_serial(const GeneralizedModel& m, double r, int echelons, Config config) {
    if (echelons < 2) fail(Errc::invalid_argument, "serial chain needs at least 2 echelons");
    if (config != Config::push_manufacturer && config != Config::pull_retailer)
        fail(Errc::invalid_argument, "serial chain is defined for the leader configurations");
    if (std::isfinite(m.kink_point()))
        fail(Errc::derivative_unavailable, "serial-chain operator needs a smooth marginal");
    require_admissible(m, r);
    double q_c = solve_centralized(m, r);
    const int n_ops = echelons - 1;

    Fn1 phi;
    if (config == Config::push_manufacturer) {
        // (1 + Q d/dQ)^{n} X = sum_m c_m Q^m X^(m) with c'_m = (1+m) c_m + c_{m-1}
        std::vector<double> c{1.0};
        for (int j = 0; j < n_ops; ++j) {
            std::vector<double> next(c.size() + 1, 0.0);
            for (size_t mdx = 0; mdx < c.size(); ++mdx) {
                next[mdx] += (1.0 + double(mdx)) * c[mdx];
                next[mdx + 1] += c[mdx];
            }
            c = std::move(next);
        }
        // X^(m) by analytic first derivative, nested central differences above that
        std::function<double(int, double)> dX = [&](int ord, double q) -> double {
            if (ord == 0) return m.marginal(q);
            if (ord == 1) return m.marginal_derivative(q);
            double h = 1e-4 * std::max(1.0, q);
            if (q - h < 0.0) return (dX(ord - 1, q + h) - dX(ord - 1, q)) / h;
            return (dX(ord - 1, q + h) - dX(ord - 1, q - h)) / (2.0 * h);
        };
        phi = [&m, c, dX, r](double q) {
            double acc = 0.0;
            double qm = 1.0;
            for (size_t mdx = 0; mdx < c.size(); ++mdx) {
                acc += c[mdx] * qm * dX(int(mdx), q);
                qm *= q;
            }
            return acc - r;
        };
    } else {
        // nested application of 1 + (M/X) d/dQ to 1/X; the innermost derivative is
        // analytic, outer levels use central differences
        std::function<double(int, double)> level = [&](int j, double q) -> double {
            if (j == 0) return 1.0 / m.marginal(q);
            double x = m.marginal(q);
            double deriv;
            if (j == 1) {
                deriv = -m.marginal_derivative(q) / (x * x);
            } else {
                double h = 1e-4 * std::max(1.0, q);
                if (q - h < 0.0)
                    deriv = (level(j - 1, q + h) - level(j - 1, q)) / h;
                else
                    deriv = (level(j - 1, q + h) - level(j - 1, q - h)) / (2.0 * h);
            }
            return level(j - 1, q) + m.order_fn(q) / x * deriv;
        };
        phi = [level, n_ops, r](double q) { return 1.0 / r - level(n_ops, q); };
        // 1/r - f rather than f - 1/r keeps the sign convention: positive near 0
        // (f(0+) = 1/X(0) < 1/r), negative past the root.
    }

    FocSolve fs = foc_bisection(phi, q_c);
    NSerialResult out;
    out.q_d = fs.q_d;
    out.residual = fs.residual;
    out.iterations = fs.iterations;
    double lhs;
    if (config == Config::push_manufacturer)
        lhs = m.marginal(fs.q_d) * std::pow(1.0 - quiet_gfr(m, fs.q_d), double(n_ops));
    else
        lhs = m.marginal(fs.q_d) / std::pow(1.0 + quiet_lfr(m, fs.q_d), double(n_ops));
    out.inequality_holds = lhs >= r - 1e-9;
    return out;
}

BruteForceResult brute_force_optimum(const Fn1& objective, double q_max, int grid_points) {
    if (grid_points < 2) fail(Errc::invalid_argument, "grid needs at least 2 points");
    if (!(q_max > 0.0) || !std::isfinite(q_max))
        fail(Errc::invalid_argument, "grid needs a positive finite upper end");
    double step = q_max / double(grid_points - 1);
    int best_i = 0;
    double best_v = objective(0.0);
    for (int i = 1; i < grid_points; ++i) {
        double v = objective(step * i);
        if (v > best_v) { // strict: ties keep the smaller Q
            best_v = v;
            best_i = i;
        }
    }
    double lo = step * std::max(0, best_i - 1);
    double hi = step * std::min(grid_points - 1, best_i + 1);
    GoldenResult g = golden_max(objective, lo, hi, 1e-10 * std::max(1.0, q_max));
    if (g.value > best_v) return {g.x, g.value};
    return {step * best_i, best_v};
}

StackelbergOracle stackelberg_grid_oracle(const GeneralizedModel& m, double r, Config config,
                                          int w_grid_points, int q_grid_points) {
    if (config != Config::push_manufacturer && config != Config::pull_retailer)
        fail(Errc::invalid_argument, "the wholesale-price game has a leader only in the leader configurations");
    if (w_grid_points < 3) fail(Errc::invalid_argument, "need at least 3 wholesale grid points");
    require_admissible(m, r);
    double q_c = solve_centralized(m, r);
    double x0 = m.marginal_at_zero();

    double w_lo, w_hi;
    Fn1 leader_profit;
    if (config == Config::push_manufacturer) {
        w_lo = r;
        w_hi = x0;
        leader_profit = [&, q_c](double w) {
            BruteForceResult follower =
                brute_force_optimum([&](double q) { return -w * q + m.order_fn(q); }, q_c,
                                    q_grid_points);
            return (w - r) * follower.q;
        };
    } else {
        w_lo = r / x0;
        w_hi = 1.0;
        leader_profit = [&, q_c](double w) {
            BruteForceResult follower =
                brute_force_optimum([&](double q) { return -r * q + w * m.order_fn(q); }, q_c,
                                    q_grid_points);
            return (1.0 - w) * m.order_fn(follower.q);
        };
    }

    // open interval: the leader's profit vanishes at both ends
    int n = w_grid_points;
    auto w_at = [&](int i) { return w_lo + (w_hi - w_lo) * double(i) / double(n); };
    int best_i = 1;
    double best_v = leader_profit(w_at(1));
    for (int i = 2; i < n; ++i) {
        double v = leader_profit(w_at(i));
        if (v > best_v) {
            best_v = v;
            best_i = i;
        }
    }
    GoldenResult g = golden_max(leader_profit, w_at(std::max(1, best_i - 1)),
                                w_at(std::min(n - 1, best_i + 1)), 1e-7);
    double w_star = g.value > best_v ? g.x : w_at(best_i);

    StackelbergOracle out;
    out.w_over_p = w_star;
    out.leader_profit = std::max(g.value, best_v);
    if (config == Config::push_manufacturer) {
        out.q_d = brute_force_optimum([&](double q) { return -w_star * q + m.order_fn(q); }, q_c,
                                      q_grid_points)
                      .q;
    } else {
        out.q_d = brute_force_optimum([&](double q) { return -r * q + w_star * m.order_fn(q); },
                                      q_c, q_grid_points)
                      .q;
    }
    return out;
}

} // namespace nvpoa
