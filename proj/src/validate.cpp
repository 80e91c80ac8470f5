#include "validate.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include "demand_models.hpp"
#include "errors.hpp"
#include "generalized_model.hpp"
#include "numerics.hpp"
#include "poa_bounds.hpp"
#include "solver.hpp"

namespace nvpoa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

struct ModelEntry {
    std::string name;
    std::shared_ptr<const GeneralizedModel> model;
    double q_lo;
    double q_hi;   // upper end of the probed inventory range
    double q_grid; // brute-force domain for the centralized objective
};

std::vector<ModelEntry> builtin_models() {
    std::vector<ModelEntry> v;
    v.push_back({"uniform",
                 std::make_shared<NewsvendorModel>(std::make_shared<UniformDemand>(1.0)), 0.01,
                 0.99, 1.0});
    v.push_back({"halfnormal",
                 std::make_shared<NewsvendorModel>(std::make_shared<HalfNormalDemand>(1.0)),
                 0.01, 3.0, 4.0});
    v.push_back({"tanh", std::make_shared<TanhModel>(), 0.01, 3.0, 4.0});
    return v;
}

std::vector<double> r_grid() {
    std::vector<double> rs;
    for (int i = 1; i <= 19; ++i) rs.push_back(0.05 * i);
    return rs;
}

template <typename F>
void guarded(std::vector<CheckResult>& out, const char* suite, const char* name, F&& body) {
    CheckResult cr;
    cr.suite = suite;
    cr.name = name;
    cr.passed = true;
    try {
        body(cr);
    } catch (const std::exception& e) {
        cr.passed = false;
        cr.detail = std::string("unexpected error: ") + e.what();
    }
    out.push_back(std::move(cr));
}

void check_poa_ge_one(std::vector<CheckResult>& out) {
    guarded(out, "invariants", "poa_ge_one", [](CheckResult& cr) {
        double worst = kInf;
        std::string at;
        for (const auto& me : builtin_models())
            for (Config cfg : {Config::push_manufacturer, Config::push_retailer,
                               Config::pull_manufacturer, Config::pull_retailer})
                for (double r : r_grid()) {
                    double poa = price_of_anarchy(*me.model, r, cfg);
                    if (poa < worst) {
                        worst = poa;
                        at = me.name + ", " + config_name(cfg) + ", r=" + fmt(r);
                    }
                }
        cr.passed = worst >= 1.0 - 1e-12;
        cr.detail = "min PoA " + fmt(worst) + " at " + at;
    });
}

void check_config_orderings(std::vector<CheckResult>& out) {
    guarded(out, "invariants", "pull_inventory_at_least_push", [](CheckResult& cr) {
        double worst = kInf;
        std::string at;
        for (const auto& me : builtin_models())
            for (double r : r_grid()) {
                double dq = solve(*me.model, r, Config::pull_retailer).q_d -
                            solve(*me.model, r, Config::push_manufacturer).q_d;
                if (dq < worst) {
                    worst = dq;
                    at = me.name + ", r=" + fmt(r);
                }
            }
        cr.passed = worst >= -1e-9;
        cr.detail = "min (Qd_pull - Qd_push) " + fmt(worst) + " at " + at;
    });
    guarded(out, "invariants", "push_poa_at_least_pull", [](CheckResult& cr) {
        double worst = kInf;
        std::string at;
        for (const auto& me : builtin_models())
            for (double r : r_grid()) {
                EquilibriumResult push = solve(*me.model, r, Config::push_manufacturer);
                EquilibriumResult pull = solve(*me.model, r, Config::pull_retailer);
                double dp = push.profit_c / push.profit_d - pull.profit_c / pull.profit_d;
                if (dp < worst) {
                    worst = dp;
                    at = me.name + ", r=" + fmt(r);
                }
            }
        cr.passed = worst >= -1e-9;
        cr.detail = "min (PoA_push - PoA_pull) " + fmt(worst) + " at " + at;
    });
}

void check_failure_rates(std::vector<CheckResult>& out) {
    guarded(out, "invariants", "l_at_least_g", [](CheckResult& cr) {
        double worst = kInf;
        std::string at;
        for (const auto& me : builtin_models())
            for (int i = 0; i <= 97; ++i) {
                double q = me.q_lo + (me.q_hi - me.q_lo) * i / 97.0;
                double margin = gen_lfr(*me.model, q) - gen_gfr(*me.model, q);
                if (margin < worst) {
                    worst = margin;
                    at = me.name + ", Q=" + fmt(q);
                }
            }
        cr.passed = worst >= -1e-9;
        cr.detail = "min (l - g) " + fmt(worst) + " at " + at;
    });
    guarded(out, "invariants", "l_nondecreasing_under_igfr", [](CheckResult& cr) {
        double worst = kInf;
        std::string at;
        for (const auto& me : builtin_models()) {
            double prev_g = -kInf, prev_l = -kInf;
            bool igfr = true;
            for (int i = 0; i <= 97; ++i) {
                double q = me.q_lo + (me.q_hi - me.q_lo) * i / 97.0;
                double g = gen_gfr(*me.model, q);
                if (g < prev_g - 1e-9) igfr = false; // precondition, not this check
                prev_g = g;
                double l = gen_lfr(*me.model, q);
                if (igfr && l - prev_l < worst && i > 0) {
                    worst = l - prev_l;
                    at = me.name + ", Q=" + fmt(q);
                }
                prev_l = l;
            }
        }
        cr.passed = worst >= -1e-9;
        cr.detail = "min l increment " + fmt(worst) + " at " + at;
    });
}

void check_youngs(std::vector<CheckResult>& out) {
    guarded(out, "invariants", "youngs_sandwich", [](CheckResult& cr) {
        std::vector<std::pair<std::string, std::shared_ptr<DemandModel>>> dms = {
            {"uniform", std::make_shared<UniformDemand>(1.0)},
            {"halfnormal", std::make_shared<HalfNormalDemand>(1.0)},
        };
        SplitMix64 rng{20};
        double worst_left = kInf, worst_right = kInf, worst_eq = 0.0;
        std::string at;
        for (auto& [name, dm] : dms) {
            double q_hi = name == "uniform" ? 0.98 : 2.5;
            for (int i = 0; i < 20; ++i) {
                double q = 0.02 + (q_hi - 0.02) * rng.uniform();
                double phi = 0.02 + 0.96 * rng.uniform();
                double co = dm->cumulative_order(q);
                auto inv = [&dm](double y) { return dm->inverse_survival(y); };
                double right = q * phi + adaptive_simpson(inv, phi, 1.0, 1e-9);
                worst_left = std::min(worst_left, co - q * dm->survival(q));
                double margin = right - co;
                if (margin < worst_right) {
                    worst_right = margin;
                    at = name + ", Q=" + fmt(q) + ", phi=" + fmt(phi);
                }
                // equality on the right iff phi = survival(Q)
                double phi_star = dm->survival(q);
                double right_star = q * phi_star + adaptive_simpson(inv, phi_star, 1.0, 1e-9);
                worst_eq = std::max(worst_eq, std::abs(right_star - co));
            }
        }
        cr.passed = worst_left >= -1e-9 && worst_right >= -1e-9 && worst_eq <= 1e-7;
        cr.detail = "min left margin " + fmt(worst_left) + ", min right margin " +
                    fmt(worst_right) + " at " + at + ", max equality gap " + fmt(worst_eq);
    });
}

void check_order_concavity(std::vector<CheckResult>& out) {
    guarded(out, "invariants", "order_fn_concavity", [](CheckResult& cr) {
        SplitMix64 rng{21};
        double worst = kInf;
        std::string at;
        for (const auto& me : builtin_models())
            for (int i = 0; i < 100; ++i) {
                double qa = me.q_hi * rng.uniform();
                double qb = me.q_hi * rng.uniform();
                double lam = rng.uniform();
                double mix = me.model->order_fn(lam * qa + (1.0 - lam) * qb);
                double chord = lam * me.model->order_fn(qa) + (1.0 - lam) * me.model->order_fn(qb);
                if (mix - chord < worst) {
                    worst = mix - chord;
                    at = me.name + ", Q=" + fmt(qa) + ", Q'=" + fmt(qb) + ", lambda=" + fmt(lam);
                }
            }
        cr.passed = worst >= -1e-9;
        cr.detail = "min concavity margin " + fmt(worst) + " at " + at;
    });
}

void check_lower_clamp(std::vector<CheckResult>& out, Fault fault) {
    guarded(out, "invariants", "lower_bound_clamped_at_one", [fault](CheckResult& cr) {
        double worst = kInf;
        std::string at;
        for (double k : {0.1, 0.3, 0.5, 0.7})
            for (double s : {0.3, 0.5, 0.7, 0.9, 1.0 - 1e-9}) {
                if (s < k) continue;
                for (double rt : {0.1, 0.5, 0.9}) {
                    double v = fault == Fault::unclamped_lower ? lower_bound_push_raw(k, s, rt)
                                                               : lower_bound_push(k, s, rt);
                    if (v < worst) {
                        worst = v;
                        at = "k=" + fmt(k) + ", s=" + fmt(s) + ", r_tilde=" + fmt(rt);
                    }
                }
            }
        cr.passed = worst >= 1.0;
        cr.detail = cr.passed ? "min reported lower bound " + fmt(worst) + " at " + at
                              : "lower bound " + fmt(worst) + " below 1 at " + at +
                                    ": PoA >= 1 clamp invariant violated";
    });
}

void check_improved_shape(std::vector<CheckResult>& out) {
    guarded(out, "invariants", "improved_upper_alpha_shape", [](CheckResult& cr) {
        double worst_mono = kInf, worst_tight = 0.0, worst_cont = 0.0;
        std::string at;
        for (double k : {0.01, 0.2, 1.0 / 3.0, 0.6}) {
            double prev = prev_upper_push(k);
            double thr = std::exp(-std::log1p(-k) / k);
            worst_tight = std::max(worst_tight, std::abs(improved_upper_push(k, 1.0).first - 1.0));
            double last = -kInf;
            for (int i = 0; i <= 40; ++i) {
                double a = 1.0 + (thr - 1.0) * i / 40.0;
                double v = improved_upper_push(k, a).first;
                if (i > 0 && v - last < worst_mono) {
                    worst_mono = v - last;
                    at = "k=" + fmt(k) + ", alpha=" + fmt(a);
                }
                last = v;
            }
            worst_cont = std::max(
                worst_cont, std::abs(improved_upper_push(k, thr * (1.0 - 1e-10)).first - prev));
            auto [above, br] = improved_upper_push(k, thr * (1.0 + 1e-12));
            if (above != prev || br != Branch::alpha_large) worst_cont = kInf;
        }
        cr.passed = worst_mono >= -1e-12 && worst_tight <= 1e-12 && worst_cont <= 1e-6;
        cr.detail = "min alpha increment " + fmt(worst_mono) + " at " + at + ", |value(1)-1| " +
                    fmt(worst_tight) + ", threshold gap " + fmt(worst_cont);
    });
}

void check_duality(std::vector<CheckResult>& out) {
    guarded(out, "invariants", "pull_substitution_duality", [](CheckResult& cr) {
        double worst = 0.0;
        std::string at;
        for (double l : {0.1, 0.5, 1.0, 2.0, 5.0}) {
            double k = l / (1.0 + l);
            double direct_prev = std::pow(1.0 + l, 1.0 + 1.0 / l) - (1.0 + l);
            double d1 = std::abs(prev_upper_pull(l) - direct_prev) / direct_prev;
            if (d1 > worst) {
                worst = d1;
                at = "prev, l=" + fmt(l);
            }
            double thr = std::exp(-std::log1p(-k) / k);
            for (double a : {1.2, thr, 10.0}) {
                double direct =
                    a >= thr ? std::exp(-std::log1p(-k) / k) - 1.0 / (1.0 - k)
                             : (std::pow(a, 1.0 - k) - (1.0 - k) * (1.0 - k) * a) /
                                       (k * (1.0 - k)) -
                                   1.0 / (1.0 - k);
                double d2 = std::abs(improved_upper_pull(l, a).first - direct) / direct;
                if (d2 > worst) {
                    worst = d2;
                    at = "improved, l=" + fmt(l) + ", alpha=" + fmt(a);
                }
            }
        }
        cr.passed = worst <= 1e-9;
        cr.detail = "max relative substitution gap " + fmt(worst) + " at " + at;
    });
}

void check_bound_sandwich(std::vector<CheckResult>& out) {
    guarded(out, "invariants", "bound_sandwich_reports", [](CheckResult& cr) {
        int invalid = 0;
        std::string at;
        bool strict_all = true;
        std::string strict_at;
        for (const auto& me : builtin_models())
            for (Config cfg : {Config::push_manufacturer, Config::pull_retailer}) {
                bool strict_here = false;
                for (double r : r_grid()) {
                    PoaReport rep = poa_report(*me.model, r, cfg);
                    if (!rep.valid) {
                        ++invalid;
                        at = me.name + std::string(", ") + config_name(cfg) + ", r=" + fmt(r);
                    }
                    if (rep.improved_upper < rep.prev_upper - 1e-6) strict_here = true;
                }
                if (!strict_here) {
                    strict_all = false;
                    strict_at = me.name + std::string(", ") + config_name(cfg);
                }
            }
        cr.passed = invalid == 0 && strict_all;
        cr.detail = invalid > 0 ? "sandwich violated " + std::to_string(invalid) +
                                      " times, last at " + at
                    : !strict_all ? "improved bound never strict on " + strict_at
                                  : "all reports valid; improved bound strict somewhere on "
                                    "every model/config";
    });
}

void check_centralized_oracle(std::vector<CheckResult>& out) {
    guarded(out, "oracle", "centralized_vs_grid", [](CheckResult& cr) {
        double worst = 0.0;
        std::string at;
        for (const auto& me : builtin_models())
            for (double r : {0.3, 0.5, 0.7}) {
                const GeneralizedModel& m = *me.model;
                double qc = solve_centralized(m, r);
                auto objective = [&m, r](double q) { return expected_profit(m, r, q); };
                BruteForceResult bf = brute_force_optimum(objective, me.q_grid, 10000);
                double d = std::abs(bf.q - qc);
                if (d > worst) {
                    worst = d;
                    at = me.name + ", r=" + fmt(r);
                }
            }
        cr.passed = worst <= 1e-6;
        cr.detail = "max |Q_c - grid argmax| " + fmt(worst) + " at " + at;
    });
}

void check_leader_oracle(std::vector<CheckResult>& out) {
    guarded(out, "oracle", "leader_foc_vs_grid", [](CheckResult& cr) {
        double worst = 0.0;
        std::string at;
        for (const auto& me : builtin_models())
            for (double r : {0.3, 0.5, 0.7}) {
                const GeneralizedModel& m = *me.model;
                EquilibriumResult push = solve(m, r, Config::push_manufacturer);
                auto push_leader = [&m, r](double q) { return (m.marginal(q) - r) * q; };
                double d = std::abs(brute_force_optimum(push_leader, push.q_c, 10000).q - push.q_d);
                if (d > worst) {
                    worst = d;
                    at = me.name + ", push, r=" + fmt(r);
                }
                EquilibriumResult pull = solve(m, r, Config::pull_retailer);
                auto pull_leader = [&m, r](double q) {
                    return (1.0 - r / m.marginal(q)) * m.order_fn(q);
                };
                d = std::abs(brute_force_optimum(pull_leader, pull.q_c, 10000).q - pull.q_d);
                if (d > worst) {
                    worst = d;
                    at = me.name + ", pull, r=" + fmt(r);
                }
            }
        cr.passed = worst <= 1e-6;
        cr.detail = "max |Q_d - grid argmax| " + fmt(worst) + " at " + at;
    });
}

void check_stackelberg_oracle(std::vector<CheckResult>& out) {
    guarded(out, "oracle", "stackelberg_wholesale_price", [](CheckResult& cr) {
        double worst = 0.0;
        std::string at;
        std::vector<ModelEntry> models = builtin_models();
        for (const auto& me : {models[0], models[1]}) {
            const GeneralizedModel& m = *me.model;
            EquilibriumResult push = solve(m, 0.5, Config::push_manufacturer);
            double w = stackelberg_grid_oracle(m, 0.5, Config::push_manufacturer, 800, 2000).w_over_p;
            double d = std::abs(w - m.marginal(push.q_d));
            if (d > worst) {
                worst = d;
                at = me.name + ", push";
            }
            EquilibriumResult pull = solve(m, 0.5, Config::pull_retailer);
            w = stackelberg_grid_oracle(m, 0.5, Config::pull_retailer, 800, 2000).w_over_p;
            d = std::abs(w - 0.5 / m.marginal(pull.q_d));
            if (d > worst) {
                worst = d;
                at = me.name + ", pull";
            }
        }
        cr.passed = worst <= 1e-3;
        cr.detail = "max wholesale-price gap " + fmt(worst) + " at " + at;
    });
}

void check_closed_forms(std::vector<CheckResult>& out) {
    guarded(out, "oracle", "uniform_closed_forms", [](CheckResult& cr) {
        auto uni = std::make_shared<UniformDemand>(1.0);
        NewsvendorModel m(uni);
        double worst = 0.0;
        std::string at;
        for (double r : r_grid()) {
            EquilibriumResult eq = solve(m, r, Config::push_manufacturer);
            double dq = std::abs(eq.q_d - (1.0 - r) / 2.0);
            double dp = std::abs(eq.profit_c / eq.profit_d - 4.0 / 3.0);
            if (dq > worst) {
                worst = dq;
                at = "Qd, r=" + fmt(r);
            }
            if (dp > worst) {
                worst = dp;
                at = "PoA, r=" + fmt(r);
            }
        }
        for (int i = 1; i <= 9; ++i) {
            double q = 0.1 * i;
            double dg = std::abs(gfr(*uni, q) - q / (1.0 - q));
            double dl = std::abs(lfr(*uni, q) - (q - q * q / 2.0) / ((1.0 - q) * (1.0 - q)));
            if (dg > worst) {
                worst = dg;
                at = "g, Q=" + fmt(q);
            }
            if (dl > worst) {
                worst = dl;
                at = "l, Q=" + fmt(q);
            }
        }
        cr.passed = worst <= 1e-10;
        cr.detail = "max closed-form gap " + fmt(worst) + " at " + at;
    });
    guarded(out, "oracle", "tanh_closed_forms", [](CheckResult& cr) {
        TanhModel m;
        double worst = 0.0;
        std::string at;
        for (int i = 1; i <= 10; ++i) {
            double q = 0.25 * i;
            double sh = std::sinh(q);
            double dg = std::abs(gen_gfr(m, q) - 2.0 * q * std::tanh(q));
            double dl = std::abs(gen_lfr(m, q) - 2.0 * sh * sh);
            if (dg > worst) {
                worst = dg;
                at = "g, Q=" + fmt(q);
            }
            if (dl > worst) {
                worst = dl;
                at = "l, Q=" + fmt(q);
            }
        }
        cr.passed = worst <= 1e-10;
        cr.detail = "max closed-form gap " + fmt(worst) + " at " + at;
    });
}

void check_pointmass(std::vector<CheckResult>& out) {
    guarded(out, "oracle", "pointmass_corner", [](CheckResult& cr) {
        NewsvendorModel m(std::make_shared<PointMassDemand>(2.0));
        double worst = 0.0;
        std::string at;
        for (Config cfg : {Config::push_manufacturer, Config::push_retailer,
                           Config::pull_manufacturer, Config::pull_retailer}) {
            EquilibriumResult eq = solve(m, 0.4, cfg);
            double dq = std::abs(eq.q_d - 2.0);
            double dp = std::abs(eq.profit_c / eq.profit_d - 1.0);
            if (dq > worst) {
                worst = dq;
                at = std::string("Qd, ") + config_name(cfg);
            }
            if (dp > worst) {
                worst = dp;
                at = std::string("PoA, ") + config_name(cfg);
            }
        }
        cr.passed = worst <= 1e-12;
        cr.detail = "max corner gap " + fmt(worst) + " at " + at;
    });
}

struct FrozenCase {
    std::string name;
    double actual;
    double expected;
    double tol;
};

void check_frozen_constants(std::vector<CheckResult>& out) {
    guarded(out, "oracle", "frozen_constants", [](CheckResult& cr) {
        HalfNormalDemand hn(1.0);
        NewsvendorModel mhn(std::make_shared<HalfNormalDemand>(1.0));
        NewsvendorModel muni(std::make_shared<UniformDemand>(1.0));
        TanhModel mtanh;
        PiecewiseLogModel mpw(1.0, 0.1);

        EquilibriumResult hn_push = solve(mhn, 0.5, Config::push_manufacturer);
        EquilibriumResult hn_pull = solve(mhn, 0.5, Config::pull_retailer);
        EquilibriumResult uni_pull5 = solve(muni, 0.5, Config::pull_retailer);
        EquilibriumResult uni_pull3 = solve(muni, 0.3, Config::pull_retailer);
        EquilibriumResult t_push3 = solve(mtanh, 0.3, Config::push_manufacturer);
        EquilibriumResult t_pull3 = solve(mtanh, 0.3, Config::pull_retailer);
        EquilibriumResult t_push5 = solve(mtanh, 0.5, Config::push_manufacturer);
        EquilibriumResult t_pull5 = solve(mtanh, 0.5, Config::pull_retailer);
        EquilibriumResult pw_push = solve(mpw, 0.3, Config::push_manufacturer);

        std::vector<FrozenCase> cases = {
            {"halfnormal survival(1)", hn.survival(1.0), 0.3173105078629141, 1e-12},
            {"halfnormal density(1)", hn.density(1.0), 0.4839414490382867, 1e-12},
            {"halfnormal g(1)", gfr(hn, 1.0), 1.5251352761609812, 1e-12},
            {"halfnormal M(1)", hn.cumulative_order(1.0), 0.63125361962749276, 1e-12},
            {"halfnormal l(1)", lfr(hn, 1.0), 3.0340853505996261, 1e-11},
            {"halfnormal median", hn.inverse_survival(0.5), 0.67448975019608174, 1e-9},
            {"halfnormal push Qd(0.5)", hn_push.q_d, 0.32444782587542338, 1e-9},
            {"halfnormal push w(0.5)", hn_push.w_over_p, 0.74559901645138459, 1e-9},
            {"halfnormal pull Qd(0.5)", hn_pull.q_d, 0.35719192181132186, 1e-9},
            {"halfnormal profit_c(0.5)", hn_push.profit_c, 0.16233141543465149, 1e-9},
            {"halfnormal push profit_d(0.5)", hn_push.profit_d, 0.12059324720627467, 1e-9},
            {"halfnormal push PoA(0.5)", hn_push.profit_c / hn_push.profit_d,
             1.3461070100963755, 1e-8},
            {"uniform pull Qd(0.5)", uni_pull5.q_d, 0.27472991492796535, 1e-9},
            {"uniform pull Qd(0.3)", uni_pull3.q_d, 0.41367324882272181, 1e-9},
            {"uniform pull PoA(0.5)", uni_pull5.profit_c / uni_pull5.profit_d,
             1.2546838050845989, 1e-8},
            {"tanh g(1)", gen_gfr(mtanh, 1.0), 1.5231883119115298, 1e-12},
            {"tanh l(1)", gen_lfr(mtanh, 1.0), 2.7621956910836315, 1e-12},
            {"tanh profit_c(0.75)", expected_profit(mtanh, 0.75, solve_centralized(mtanh, 0.75)),
             0.088020391749458866, 1e-10},
            {"tanh Qc(0.3)", t_push3.q_c, 1.2099351213359459, 1e-9},
            {"tanh push Qd(0.3)", t_push3.q_d, 0.57174385135148348, 1e-9},
            {"tanh pull Qd(0.3)", t_pull3.q_d, 0.69446670962965565, 1e-9},
            {"tanh push PoA(0.3)", t_push3.profit_c / t_push3.profit_d, 1.3725238790190185, 1e-8},
            {"tanh pull PoA(0.3)", t_pull3.profit_c / t_pull3.profit_d, 1.2068149899063273, 1e-8},
            {"tanh Qc(0.5)", t_push5.q_c, 0.88137358701954303, 1e-9},
            {"tanh push Qd(0.5)", t_push5.q_d, 0.45570035100610607, 1e-9},
            {"tanh pull Qd(0.5)", t_pull5.q_d, 0.50777937689445666, 1e-9},
            {"tanh push PoA(0.5)", t_push5.profit_c / t_push5.profit_d, 1.3406584819875102, 1e-8},
            {"tanh pull PoA(0.5)", t_pull5.profit_c / t_pull5.profit_d, 1.2430740571423521, 1e-8},
            {"piecewise push Qd(0.3)", pw_push.q_d, 0.82574185835055371, 1e-9},
            {"improved_upper(1/3, 2)", improved_upper_push(1.0 / 3.0, 2.0).first,
             1.6433047338568976, 1e-12},
            {"lower_bound(1/3, 1, 0.5)", lower_bound_push(1.0 / 3.0, 1.0, 0.5),
             1.1306537807242223, 1e-10},
            {"lower_bound printed twin", lower_bound_push_printed(1.0 / 3.0, 1.0, 0.5),
             1.1306537807242223, 1e-10},
            {"prev_upper(1e-9)", prev_upper_push(1e-9), 1.7182818288181861, 1e-12},
        };
        double worst = 0.0;
        std::string at;
        for (const auto& c : cases) {
            double d = std::abs(c.actual - c.expected) / c.tol;
            if (d > worst) {
                worst = d;
                at = c.name + ": got " + fmt(c.actual) + ", want " + fmt(c.expected);
            }
        }
        cr.passed = worst <= 1.0;
        cr.detail = "worst deviation " + fmt(worst) + " tolerances at " + at;
    });
}

} // namespace

std::vector<CheckResult> run_invariant_suite(Fault fault) {
    std::vector<CheckResult> out;
    check_poa_ge_one(out);
    check_config_orderings(out);
    check_failure_rates(out);
    check_youngs(out);
    check_order_concavity(out);
    check_lower_clamp(out, fault);
    check_improved_shape(out);
    check_duality(out);
    check_bound_sandwich(out);
    return out;
}

std::vector<CheckResult> run_oracle_suite() {
    std::vector<CheckResult> out;
    check_centralized_oracle(out);
    check_leader_oracle(out);
    check_stackelberg_oracle(out);
    check_closed_forms(out);
    check_pointmass(out);
    check_frozen_constants(out);
    return out;
}

std::vector<CheckResult> run_validation(const std::string& suite, Fault fault) {
    if (suite == "invariants") return run_invariant_suite(fault);
    if (suite == "oracle") return run_oracle_suite();
    if (suite == "all") {
        std::vector<CheckResult> out = run_invariant_suite(fault);
        std::vector<CheckResult> o2 = run_oracle_suite();
        out.insert(out.end(), o2.begin(), o2.end());
        return out;
    }
    fail(Errc::invalid_argument, "unknown validation suite: " + suite);
}

} // namespace nvpoa
