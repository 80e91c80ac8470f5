#include <cmath>
#include <memory>

#include "doctest.h"
#include "errors.hpp"
#include "numerics.hpp"
#include "poa_bounds.hpp"

using namespace nvpoa;

namespace {

std::shared_ptr<GeneralizedModel> uniform_model() {
    return std::make_shared<NewsvendorModel>(std::make_shared<UniformDemand>(1.0));
}

std::shared_ptr<GeneralizedModel> halfnormal_model() {
    return std::make_shared<NewsvendorModel>(std::make_shared<HalfNormalDemand>(1.0));
}

} // namespace

TEST_CASE("exact price of anarchy against frozen values") {
    auto u = uniform_model();
    for (int i = 1; i <= 19; ++i) {
        double r = 0.05 * i;
        CHECK(price_of_anarchy(*u, r, Config::push_manufacturer) ==
              doctest::Approx(4.0 / 3.0).epsilon(1e-10));
    }
    CHECK(price_of_anarchy(*u, 0.5, Config::pull_retailer) ==
          doctest::Approx(1.2546838050845989).epsilon(1e-9));
    CHECK(price_of_anarchy(*u, 0.5, Config::push_retailer) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(price_of_anarchy(*u, 0.5, Config::pull_manufacturer) ==
          doctest::Approx(1.0).epsilon(1e-12));

    auto h = halfnormal_model();
    CHECK(price_of_anarchy(*h, 0.5, Config::push_manufacturer) ==
          doctest::Approx(1.3461070100963755).epsilon(1e-9));

    TanhModel t;
    CHECK(price_of_anarchy(t, 0.3, Config::push_manufacturer) ==
          doctest::Approx(1.3725238790190185).epsilon(1e-9));
    CHECK(price_of_anarchy(t, 0.3, Config::pull_retailer) ==
          doctest::Approx(1.2068149899063273).epsilon(1e-9));
    CHECK(price_of_anarchy(t, 0.5, Config::push_manufacturer) ==
          doctest::Approx(1.3406584819875102).epsilon(1e-9));
    CHECK(price_of_anarchy(t, 0.5, Config::pull_retailer) ==
          doctest::Approx(1.2430740571423521).epsilon(1e-9));

    // vanishing margin: the equilibrium profit underflows to a degenerate scenario
    CHECK_THROWS_AS(price_of_anarchy(*u, 1.0 - 1e-7, Config::push_manufacturer), Error);
}

TEST_CASE("previous-work bounds and the push/pull substitution") {
    CHECK(prev_upper_push(0.5) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(prev_upper_push(1e-9) == doctest::Approx(1.7182818288181861).epsilon(1e-10));
    CHECK(prev_upper_push(1e-9) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-8));
    CHECK(prev_upper_pull(1.0) == doctest::Approx(2.0).epsilon(1e-13));

    // continuity across the small-k series switch at 1e-6
    CHECK(prev_upper_push(0.9999e-6) == doctest::Approx(prev_upper_push(1.0001e-6)).epsilon(1e-10));

    // pull(l) = push(l/(1+l)) exactly
    for (double l : {0.1, 0.5, 1.0, 2.0, 5.0})
        CHECK(prev_upper_pull(l) == doctest::Approx(prev_upper_push(l / (1.0 + l))).epsilon(1e-13));

    CHECK_THROWS_AS(prev_upper_push(1.0), Error);
    CHECK_THROWS_AS(prev_upper_push(0.0), Error); // open domain; the limit is e - 1
    CHECK_THROWS_AS(prev_upper_push(-0.1), Error);
    CHECK_THROWS_AS(prev_upper_pull(-0.5), Error);
}

TEST_CASE("improved upper bound: shape, threshold, frozen value") {
    auto [v1, b1] = improved_upper_push(1.0 / 3.0, 1.0);
    CHECK(v1 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(b1 == Branch::alpha_small);

    auto [v2, b2] = improved_upper_push(1.0 / 3.0, 2.0);
    CHECK(v2 == doctest::Approx(1.6433047338568976).epsilon(1e-12));
    CHECK(b2 == Branch::alpha_small);

    // above the threshold (3.375 up to rounding) the bound equals the
    // previous-work value; the literal sits within ulps of the internal
    // threshold, so probe strictly either side instead of at it
    double thr = std::pow(1.0 - 1.0 / 3.0, -3.0); // 3.375
    auto [v3, b3] = improved_upper_push(1.0 / 3.0, thr * (1.0 + 1e-9));
    CHECK(b3 == Branch::alpha_large);
    CHECK(v3 == doctest::Approx(prev_upper_push(1.0 / 3.0)).epsilon(1e-14));
    auto [v4, b4] = improved_upper_push(1.0 / 3.0, 10.0);
    CHECK(v4 == v3);
    CHECK(b4 == Branch::alpha_large);

    // continuity just below the threshold, monotone in alpha
    auto [v5, b5] = improved_upper_push(1.0 / 3.0, thr * (1.0 - 1e-9));
    CHECK(b5 == Branch::alpha_small);
    CHECK(v5 == doctest::Approx(v3).epsilon(1e-7));
    double prev_v = 0.0;
    for (int i = 0; i <= 40; ++i) {
        double alpha = 1.0 + (thr - 1.0) * i / 40.0;
        double v = improved_upper_push(1.0 / 3.0, alpha).first;
        CHECK(v >= prev_v - 1e-12);
        prev_v = v;
    }

    // pull twin is the exact substitution k = l/(1+l); l = 1/2 maps to k = 1/3
    for (double alpha : {1.0, 1.5, 2.0, 3.0, 5.0}) {
        auto push = improved_upper_push(1.0 / 3.0, alpha);
        auto pull = improved_upper_pull(0.5, alpha);
        CHECK(pull.first == doctest::Approx(push.first).epsilon(1e-13));
        CHECK(pull.second == push.second);
    }
    CHECK(improved_upper_pull(0.5, 100.0).first == doctest::Approx(1.875).epsilon(1e-13));

    CHECK_THROWS_AS(improved_upper_push(1.0 / 3.0, 0.5), Error);
    CHECK_THROWS_AS(improved_upper_push(1.5, 2.0), Error);
}

TEST_CASE("push lower bound: frozen value, regression twin, clamp") {
    // uniform push at r = 0.5: k = 1/3, s = 1, r_tilde = 0.5
    double lb = lower_bound_push(1.0 / 3.0, 1.0, 0.5);
    CHECK(lb == doctest::Approx(1.1306537807242223).epsilon(1e-10));
    CHECK(lower_bound_push_printed(1.0 / 3.0, 1.0, 0.5) == doctest::Approx(lb).epsilon(1e-9));

    // the printed single-ratio form and the envelope derivation agree everywhere
    for (double k : {0.1, 0.3, 0.5}) {
        for (double s : {0.5, 0.8, 1.0}) {
            if (s < k) continue;
            for (double rt : {0.2, 0.5, 0.8}) {
                double a = lower_bound_push(k, s, rt);
                double b = lower_bound_push_printed(k, s, rt);
                CHECK(a == doctest::Approx(b).epsilon(1e-9));
            }
        }
    }

    // inconsistent parameters push the raw value below 1; the public bound clamps
    CHECK(lower_bound_push_raw(0.5, 0.5, 0.9) == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(lower_bound_push(0.5, 0.5, 0.9) == 1.0);

    // alpha-truncated variant: exactly 1 at alpha = 1 (empty tail), strictly
    // between for interior alpha, saturated at the full bound from
    // u* = (1-k)^{-1/s} onward (the positive part of the envelope ends there)
    double u_star = std::exp(-std::log1p(-1.0 / 3.0) / 1.0);
    CHECK(lower_bound_push_alpha(1.0 / 3.0, 1.0, 0.5, 1.0) == 1.0);
    CHECK(lower_bound_push_alpha(1.0 / 3.0, 1.0, 0.5, u_star) == doctest::Approx(lb).epsilon(1e-12));
    CHECK(lower_bound_push_alpha(1.0 / 3.0, 1.0, 0.5, 50.0) == doctest::Approx(lb).epsilon(1e-12));
    double mid = lower_bound_push_alpha(1.0 / 3.0, 1.0, 0.5, 0.5 * (1.0 + u_star));
    CHECK(mid > 1.0);
    CHECK(mid < lb);

    CHECK_THROWS_AS(lower_bound_push(0.0, 0.5, 0.5), Error);
    CHECK_THROWS_AS(lower_bound_push(0.5, 0.4, 0.5), Error); // s < k inconsistent
    CHECK_THROWS_AS(lower_bound_push(0.5, 0.7, 1.5), Error);
    CHECK_THROWS_AS(lower_bound_push(1.0 - 1e-12, 1.0, 0.5), Error); // k -> 1 singular

    // pull substitution form stays above 1 and matches its own clamp contract
    double plb = lower_bound_pull(1.5, 1.5, 0.5);
    CHECK(plb >= 1.0);
}

TEST_CASE("integral sandwich on the uniform tail and head") {
    auto u = uniform_model();
    const double q_d = 0.25, q_c = 0.5, k = 1.0 / 3.0, s = 1.0;
    auto [tail_lo, tail_hi] = integral_tail_bounds(*u, q_d, q_c, k, s);
    double tail_true = 0.15625; // int_{1/4}^{1/2} (1 - x) dx
    CHECK(tail_lo <= tail_true + 1e-12);
    CHECK(tail_hi >= tail_true - 1e-12);
    CHECK(tail_lo > 0.0);

    // quadrature cross-check of the true integral
    double quad = adaptive_simpson([&](double q) { return u->marginal(q); }, q_d, q_c);
    CHECK(quad == doctest::Approx(tail_true).epsilon(1e-10));

    auto [head_lo, head_hi] = integral_head_bounds(*u, q_d, k);
    CHECK(head_lo == doctest::Approx(0.1875).epsilon(1e-13)); // Q_d X(Q_d)
    double head_true = 0.21875;                               // M(1/4)
    CHECK(head_lo <= head_true + 1e-12);
    CHECK(head_hi >= head_true - 1e-12);
    CHECK(head_hi == doctest::Approx(0.228515625).epsilon(1e-12)); // closed form

    // degenerate tail: coincident endpoints give the empty sandwich
    auto [z_lo, z_hi] = integral_tail_bounds(*u, q_d, q_d, k, s);
    CHECK(z_lo == 0.0);
    CHECK(z_hi == 0.0);

    // alpha below the admissible minimum for the given (k, s) is rejected
    CHECK_THROWS_AS(integral_tail_bounds(*u, q_d, 0.26, k, s), Error);
    try {
        integral_tail_bounds(*u, q_d, 0.26, k, s);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::out_of_range);
    }

    CHECK_THROWS_AS(integral_head_bounds(*u, 0.0, k), Error);
}

TEST_CASE("half-normal sandwich brackets the true integrals") {
    auto h = halfnormal_model();
    EquilibriumResult eq = solve_push_manufacturer(*h, 0.5);
    double k = eq.k, s = eq.s;
    auto [tail_lo, tail_hi] = integral_tail_bounds(*h, eq.q_d, eq.q_c, k, s);
    double tail_true =
        adaptive_simpson([&](double q) { return h->marginal(q); }, eq.q_d, eq.q_c);
    CHECK(tail_lo <= tail_true + 1e-10);
    CHECK(tail_hi >= tail_true - 1e-10);

    auto [head_lo, head_hi] = integral_head_bounds(*h, eq.q_d, k);
    double head_true = h->order_fn(eq.q_d);
    CHECK(head_lo <= head_true + 1e-10);
    CHECK(head_hi >= head_true - 1e-10);
}

TEST_CASE("poa report ties the pieces together") {
    auto u = uniform_model();
    PoaReport rep = poa_report(*u, 0.5, Config::push_manufacturer);
    CHECK(rep.poa == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
    CHECK(rep.k == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(rep.s == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep.alpha == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rep.r_tilde == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.prev_upper == doctest::Approx(1.875).epsilon(1e-8));
    CHECK(rep.improved_upper == doctest::Approx(1.6433047338568976).epsilon(1e-8));
    CHECK(rep.lower == doctest::Approx(1.1306537807242223).epsilon(1e-8));
    CHECK(rep.branch == Branch::alpha_small);
    CHECK(rep.valid);
    CHECK(rep.lower <= rep.poa + 1e-9);
    CHECK(rep.poa <= rep.improved_upper + 1e-9);
    CHECK(rep.improved_upper <= rep.prev_upper + 1e-9);

    // pull report uses the substitution parameter and stays valid
    PoaReport pull = poa_report(*u, 0.5, Config::pull_retailer);
    CHECK(pull.valid);
    CHECK(pull.poa == doctest::Approx(1.2546838050845989).epsilon(1e-9));
    CHECK(pull.lower <= pull.poa + 1e-6);
    CHECK(pull.improved_upper <= pull.prev_upper + 1e-9);

    // trivial configuration: PoA = 1, lower = 1; the pull-side bound parameter
    // l/(1+l) < 1 keeps the uppers finite and the report valid
    PoaReport triv = poa_report(*u, 0.5, Config::pull_manufacturer);
    CHECK(triv.poa == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(triv.lower == 1.0);
    CHECK(triv.valid);
    CHECK(triv.improved_upper == doctest::Approx(1.0).epsilon(1e-9)); // alpha = 1

    // push-retailer at r = 0.5 has g(q_c) = 1: the push-family bound parameter is
    // out of range, so the uppers are reported as NaN and validity is withheld
    PoaReport pr = poa_report(*u, 0.5, Config::push_retailer);
    CHECK(pr.poa == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isnan(pr.prev_upper));
    CHECK_FALSE(pr.valid);
}
