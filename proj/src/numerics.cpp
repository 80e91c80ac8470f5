#include "numerics.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>

namespace nvpoa {

namespace {

double simpson_step(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const Fn1& f, double a, double fa, double b, double fb, double m,
                            double fm, double whole, double tol, double abs_floor, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_step(a, fa, m, fm, flm);
    double right = simpson_step(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    double half_tol = std::max(0.5 * tol, abs_floor);
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, half_tol, abs_floor, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, half_tol, abs_floor, depth - 1);
}

} // namespace

double adaptive_simpson(const Fn1& f, double a, double b, double rel_tol, double abs_floor,
                        int max_depth) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (b < a) { std::swap(a, b); sign = -1.0; }
    // Refine from a fixed 64-panel mesh rather than the single top panel: the
    // mesh both locates features the three top nodes would miss entirely and
    // anchors the relative tolerance to the integral's actual scale (a spike
    // unseen by the first estimate would otherwise set a near-zero tolerance
    // and the refinement tree degenerates).
    constexpr int kPanels = 64;
    double nodes[kPanels + 1], fnodes[kPanels + 1], mids[kPanels], fmids[kPanels];
    for (int i = 0; i <= kPanels; ++i) {
        nodes[i] = a + (b - a) * i / kPanels;
        fnodes[i] = f(nodes[i]);
    }
    double coarse = 0.0;
    double panels[kPanels];
    for (int i = 0; i < kPanels; ++i) {
        mids[i] = 0.5 * (nodes[i] + nodes[i + 1]);
        fmids[i] = f(mids[i]);
        panels[i] = simpson_step(nodes[i], fnodes[i], nodes[i + 1], fnodes[i + 1], fmids[i]);
        coarse += panels[i];
    }
    double tol = std::max(std::abs(coarse) * rel_tol, abs_floor);
    double panel_tol = std::max(tol / kPanels, abs_floor);
    double v = 0.0;
    for (int i = 0; i < kPanels; ++i)
        v += adaptive_simpson_rec(f, nodes[i], fnodes[i], nodes[i + 1], fnodes[i + 1], mids[i],
                                  fmids[i], panels[i], panel_tol, abs_floor, max_depth);
    if (!std::isfinite(v)) fail(Errc::non_normalizable, "quadrature did not yield a finite value");
    return sign * v;
}

RootResult bisect(const Fn1& f, double lo, double hi, double flo, double fhi, double xtol,
                  int max_iter) {
    if (lo > hi) { std::swap(lo, hi); std::swap(flo, fhi); }
    if (flo == 0.0) return {lo, 0.0, 0};
    if (fhi == 0.0) return {hi, 0.0, 0};
    if ((flo > 0.0) == (fhi > 0.0))
        fail(Errc::bracket_failure, "bisection endpoints do not bracket a sign change");
    RootResult r;
    for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= xtol || mid == lo || mid == hi) {
            r.x = mid;
            r.fx = f(mid);
            return r;
        }
        double fmid = f(mid);
        if (fmid == 0.0) { r.x = mid; r.fx = 0.0; return r; }
        if ((fmid > 0.0) == (flo > 0.0)) { lo = mid; flo = fmid; }
        else { hi = mid; fhi = fmid; }
    }
    r.x = 0.5 * (lo + hi);
    r.fx = f(r.x);
    return r;
}

GoldenResult golden_max(const Fn1& f, double lo, double hi, double xtol, int max_iter) {
    const double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        if (fc > fd) { b = d; d = c; fd = fc; c = b - invphi * (b - a); fc = f(c); }
        else { a = c; c = d; fc = fd; d = a + invphi * (b - a); fd = f(d); }
    }
    double x = 0.5 * (a + b);
    return {x, f(x)};
}

double standard_normal(SplitMix64& rng) {
    double u1 = rng.uniform();
    double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

double polyval(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

PolyFit polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
    const int n = static_cast<int>(x.size());
    const int m = degree + 1;
    if (degree < 0) fail(Errc::invalid_argument, "polyfit: negative degree");
    if (n < m + 1) fail(Errc::insufficient_data, "polyfit: need more points than coefficients");

    double xmin = *std::min_element(x.begin(), x.end());
    double xmax = *std::max_element(x.begin(), x.end());
    double mid = 0.5 * (xmin + xmax);
    double half = 0.5 * (xmax - xmin);
    if (half <= 0.0) fail(Errc::insufficient_data, "polyfit: degenerate abscissa range");

    // design matrix in the scaled basis t = (x-mid)/half, column-major
    std::vector<double> A(static_cast<size_t>(n) * m);
    for (int i = 0; i < n; ++i) {
        double t = (x[i] - mid) / half;
        double p = 1.0;
        for (int j = 0; j < m; ++j) { A[static_cast<size_t>(j) * n + i] = p; p *= t; }
    }

    // Householder QR; the diagonal of column j holds alpha, the subdiagonal holds the
    // reflector tail, v0s[j] the reflector head. Leverages are rebuilt from these below.
    std::vector<double> R(A);
    std::vector<double> beta(m, 0.0);
    std::vector<double> v0s(m, 0.0);
    std::vector<double> qty(y);
    for (int j = 0; j < m; ++j) {
        double* col = &R[static_cast<size_t>(j) * n];
        double norm = 0.0;
        for (int i = j; i < n; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        if (norm == 0.0) fail(Errc::internal, "polyfit: rank-deficient design matrix");
        double alpha = (col[j] > 0.0) ? -norm : norm;
        double v0 = col[j] - alpha;
        double vnorm2 = v0 * v0;
        for (int i = j + 1; i < n; ++i) vnorm2 += col[i] * col[i];
        col[j] = alpha;
        v0s[j] = v0;
        if (vnorm2 > 0.0) {
            beta[j] = 2.0 / vnorm2;
            for (int jj = j + 1; jj < m; ++jj) {
                double* c2 = &R[static_cast<size_t>(jj) * n];
                double dot = v0 * c2[j];
                for (int i = j + 1; i < n; ++i) dot += col[i] * c2[i];
                dot *= beta[j];
                c2[j] -= dot * v0;
                for (int i = j + 1; i < n; ++i) c2[i] -= dot * col[i];
            }
            double dot = v0 * qty[j];
            for (int i = j + 1; i < n; ++i) dot += col[i] * qty[i];
            dot *= beta[j];
            qty[j] -= dot * v0;
            for (int i = j + 1; i < n; ++i) qty[i] -= dot * col[i];
        }
    }

    // back-substitution for coefficients in scaled basis
    std::vector<double> cs(m);
    for (int i = m - 1; i >= 0; --i) {
        double s = qty[i];
        for (int j = i + 1; j < m; ++j) s -= R[static_cast<size_t>(j) * n + i] * cs[j];
        cs[i] = s / R[static_cast<size_t>(i) * n + i];
    }

    // leverages: h_i = sum_j Qthin[i][j]^2, built by applying reflectors to unit vectors e_j.
    std::vector<double> lev(n, 0.0);
    std::vector<double> work(n);
    for (int j = 0; j < m; ++j) {
        std::fill(work.begin(), work.end(), 0.0);
        work[j] = 1.0;
        for (int jj = j; jj >= 0; --jj) {
            const double* col = &R[static_cast<size_t>(jj) * n];
            double v0 = v0s[jj];
            if (beta[jj] == 0.0) continue;
            double dot = v0 * work[jj];
            for (int i = jj + 1; i < n; ++i) dot += col[i] * work[i];
            dot *= beta[jj];
            work[jj] -= dot * v0;
            for (int i = jj + 1; i < n; ++i) work[i] -= dot * col[i];
        }
        for (int i = 0; i < n; ++i) lev[i] += work[i] * work[i];
    }

    // residuals and closed-form leave-one-out error
    PolyFit out;
    std::vector<double> cs_eval(cs);
    double loo = 0.0, rss = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = (x[i] - mid) / half;
        double pred = polyval(cs_eval, t);
        double r = y[i] - pred;
        rss += r * r;
        double denom = 1.0 - lev[i];
        if (denom < 1e-12) denom = 1e-12;
        double e = r / denom;
        loo += e * e;
    }
    out.loo_cv_error = loo / n;
    out.rss = rss;

    // map scaled-basis coefficients to the raw basis: p(t(x)) with t = (x-mid)/half
    std::vector<double> raw(1, 0.0);
    std::vector<double> tpow(1, 1.0); // polynomial for t^j in raw basis, starts at 1
    auto mul_t = [&](std::vector<double> p) {
        // multiply polynomial p(x) by (x - mid)/half
        std::vector<double> q(p.size() + 1, 0.0);
        for (size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i] / half;
            q[i] -= p[i] * mid / half;
        }
        return q;
    };
    for (int j = 0; j < m; ++j) {
        if (raw.size() < tpow.size()) raw.resize(tpow.size(), 0.0);
        for (size_t i = 0; i < tpow.size(); ++i) raw[i] += cs[j] * tpow[i];
        tpow = mul_t(tpow);
    }
    raw.resize(m, 0.0);
    out.coeffs = std::move(raw);
    return out;
}

} // namespace nvpoa
