#include <cmath>
#include <memory>

#include "demand_models.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "numerics.hpp"

using namespace nvpoa;

namespace {

// Composite Simpson with a fixed panel count: an oracle independent of the
// adaptive quadrature inside the library.
double simpson_fixed(const Fn1& f, double a, double b, int panels = 4096) {
    double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

} // namespace

TEST_CASE("uniform demand closed forms") {
    UniformDemand u(1.0);
    CHECK(u.survival(0.0) == 1.0);
    CHECK(u.survival(0.25) == doctest::Approx(0.75));
    CHECK(u.survival(2.0) == 0.0);
    CHECK(u.density(0.25) == doctest::Approx(1.0));
    CHECK(u.density(2.0) == 0.0);
    CHECK(u.cumulative_order(0.5) == doctest::Approx(0.375).epsilon(1e-13));
    CHECK(u.cumulative_order(2.0) == doctest::Approx(0.5).epsilon(1e-13)); // saturates at E[xi]
    CHECK(u.inverse_survival(0.3) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(u.support_upper() == 1.0);

    UniformDemand w(2.5);
    CHECK(w.survival(1.0) == doctest::Approx(0.6));
    CHECK(w.cumulative_order(1.0) == doctest::Approx(1.0 - 0.2).epsilon(1e-13));
    CHECK_THROWS_AS(UniformDemand(0.0), Error);
    CHECK_THROWS_AS(u.inverse_survival(0.0), Error);
    CHECK_THROWS_AS(u.inverse_survival(1.5), Error);
}

TEST_CASE("half-normal demand matches frozen constants") {
    HalfNormalDemand h(1.0);
    CHECK(h.survival(1.0) == doctest::Approx(0.3173105078629141).epsilon(1e-12));
    CHECK(h.density(1.0) == doctest::Approx(0.4839414490382867).epsilon(1e-12));
    CHECK(h.cumulative_order(1.0) == doctest::Approx(0.63125361962749276).epsilon(1e-10));
    CHECK(h.inverse_survival(0.5) == doctest::Approx(0.67448975019608174).epsilon(1e-9));
    CHECK(gfr(h, 1.0) == doctest::Approx(1.5251352761609812).epsilon(1e-11));
    CHECK(lfr(h, 1.0) == doctest::Approx(3.0340853505996261).epsilon(1e-10));

    // quadrature cross-check of the expected-sales curve
    double oracle = simpson_fixed([&](double x) { return h.survival(x); }, 0.0, 1.0);
    CHECK(h.cumulative_order(1.0) == doctest::Approx(oracle).epsilon(1e-9));

    // scale equivariance: sigma stretches both axes
    HalfNormalDemand h2(2.0);
    CHECK(h2.survival(2.0) == doctest::Approx(h.survival(1.0)).epsilon(1e-13));
    CHECK(h2.cumulative_order(2.0) == doctest::Approx(2.0 * h.cumulative_order(1.0)).epsilon(1e-9));
}

TEST_CASE("point mass demand is the fixed-order degenerate case") {
    PointMassDemand p(2.0);
    CHECK(p.survival(1.999) == 1.0);
    // survival is P(xi >= Q): left-continuous, still 1 at the atom itself
    CHECK(p.survival(2.0) == 1.0);
    CHECK(p.survival(2.0000001) == 0.0);
    CHECK(p.density(1.0) == 0.0);
    CHECK(p.cumulative_order(1.5) == doctest::Approx(1.5));
    CHECK(p.cumulative_order(3.0) == doctest::Approx(2.0));
    CHECK(p.inverse_survival(0.5) == 2.0);
    CHECK(p.inverse_survival(1.0) == 2.0);
    CHECK(p.support_upper() == 2.0);
}

TEST_CASE("empirical demand with density proportional to 1/xi on [1, e]") {
    // log f = -log xi, so Z = 1 and survival(xi) = 1 - log xi inside the support
    EmpiricalDemand e({0.0, -1.0}, 1.0, std::exp(1.0));
    CHECK(e.normalization() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(e.survival(0.5) == 1.0); // below the support, nothing has happened yet
    CHECK(e.survival(std::sqrt(std::exp(1.0))) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(e.survival(std::exp(1.0)) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(e.density(2.0) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(e.inverse_survival(0.5) == doctest::Approx(std::sqrt(std::exp(1.0))).epsilon(1e-6));
    CHECK(e.cumulative_order(std::exp(1.0)) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-6));
    CHECK(e.cumulative_order(1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(EmpiricalDemand({0.0, -1.0}, -1.0, 2.0), Error);
    CHECK_THROWS_AS(EmpiricalDemand({0.0, -1.0}, 2.0, 2.0), Error);
}

TEST_CASE("failure rate functionals against uniform closed forms") {
    UniformDemand u(1.0);
    for (int i = 1; i <= 9; ++i) {
        double q = 0.1 * i;
        if (q >= 1.0) break;
        CHECK(gfr(u, q) == doctest::Approx(q / (1.0 - q)).epsilon(1e-12));
        double l_expect = (q - q * q / 2.0) / ((1.0 - q) * (1.0 - q));
        CHECK(lfr(u, q) == doctest::Approx(l_expect).epsilon(1e-10));
        CHECK(lfr(u, q) >= gfr(u, q)); // Young's inequality consequence
    }
    CHECK_THROWS_AS(gfr(u, 1.0 - 1e-16), Error); // survival underflow at the edge
}

TEST_CASE("igfr grid probe") {
    UniformDemand u(1.0);
    IgfrReport narrow = check_igfr(u, 0.01, 0.49);
    CHECK(narrow.is_nondecreasing);
    CHECK_FALSE(narrow.has_g_above_one);

    IgfrReport wide = check_igfr(u, 0.01, 0.9, 256);
    CHECK(wide.is_nondecreasing);
    CHECK(wide.has_g_above_one);
    CHECK(wide.g_above_one_lo > 0.5 - 0.01);
    CHECK(wide.g_above_one_lo < 0.52);
    CHECK(wide.g_above_one_hi == doctest::Approx(0.9).epsilon(1e-12));

    HalfNormalDemand h(1.0);
    IgfrReport hn = check_igfr(h, 0.01, 3.0, 256);
    CHECK(hn.is_nondecreasing);
    CHECK(hn.has_g_above_one);
}
