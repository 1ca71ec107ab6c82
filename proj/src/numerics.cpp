#include "thermoq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace thermoq {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    int unconverged_panels = 0;
    double failed_bound = 0.0; // accumulated |S2 - S1| / 15 over failed panels
};

// One adaptive step on [a, b] with midpoint m and the panel estimate
// `whole`. eps is the local absolute tolerance, halved per split.
double simpson_step(SimpsonState& st, double a, double m, double b, double fa, double fm,
                    double fb, double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0; // Richardson correction
    if (depth <= 0) {
        ++st.unconverged_panels;
        st.failed_bound += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    const double half_eps = 0.5 * eps;
    return simpson_step(st, a, lm, m, fa, flm, fm, left, half_eps, depth - 1) +
           simpson_step(st, m, rm, b, fm, frm, fb, right, half_eps, depth - 1);
}

double adaptive_panel(SimpsonState& st, double a, double b, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double fa = st.f(a);
    const double fm = st.f(m);
    const double fb = st.f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(st, a, m, b, fa, fm, fb, whole, eps, depth);
}

// Interior split at an irrational fraction: a periodic integrand whose zeros
// sit on the dyadic midpoint lattice would otherwise be accepted as zero.
constexpr double kGoldenSplit = 0.61803398874989484820;

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSettings& settings) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw DomainError("integration endpoints must be finite");
    if (!(settings.abs_tol > 0.0) || !(settings.rel_tol >= 0.0))
        throw DomainError("quadrature tolerances must be positive");
    if (settings.max_depth < 1)
        throw DomainError("quadrature max_depth must be at least 1");
    if (a == b)
        return 0.0;
    if (a > b)
        return -integrate(f, b, a, settings);

    const double m = 0.5 * (a + b);
    const double whole = (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
    const double eps = std::max(settings.abs_tol, settings.rel_tol * std::abs(whole));

    SimpsonState st{f};
    const double s = a + (b - a) * kGoldenSplit;
    double result;
    if (s <= a || s >= b)
        result = adaptive_panel(st, a, b, eps, settings.max_depth);
    else
        result = adaptive_panel(st, a, s, eps * kGoldenSplit, settings.max_depth) +
                 adaptive_panel(st, s, b, eps * (1.0 - kGoldenSplit), settings.max_depth);
    if (st.unconverged_panels > 0)
        throw QuadratureError("adaptive quadrature did not converge on " +
                                  std::to_string(st.unconverged_panels) + " panel(s)",
                              result, st.failed_bound);
    return result;
}

double integrate_real_line(const std::function<double(double)>& f, double length_scale,
                           const QuadratureSettings& settings) {
    if (!(length_scale > 0.0) || !std::isfinite(length_scale))
        throw DomainError("length scale must be positive and finite");
    if (!(settings.infinite_cutoff > 0.0))
        throw DomainError("infinite_cutoff must be positive");
    const double half_width = settings.infinite_cutoff * length_scale;
    // Fixed pre-panels about two length scales wide: a localized integrand
    // must put real samples into several of them, so the long tails cannot
    // trigger early acceptance of zero.
    const int panels = std::max(2, static_cast<int>(std::ceil(settings.infinite_cutoff)));
    QuadratureSettings local = settings;
    local.abs_tol = settings.abs_tol / static_cast<double>(panels);
    const double width = 2.0 * half_width / static_cast<double>(panels);
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = -half_width + width * static_cast<double>(i);
        const double hi = (i + 1 == panels) ? half_width : lo + width;
        total += integrate(f, lo, hi, local);
    }
    return total;
}

double find_root(const std::function<double(double)>& f, const Bracket& bracket, double tol) {
    if (!(tol >= 0.0))
        throw DomainError("root tolerance must be non-negative");
    double a = bracket.lo;
    double b = bracket.hi;
    if (!std::isfinite(a) || !std::isfinite(b) || a == b)
        throw BracketError("root bracket must be a finite non-degenerate interval");
    double fa = f(a);
    double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw BracketError("function not finite at bracket endpoints");
    if (fa == 0.0)
        return a;
    if (fb == 0.0)
        return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw BracketError("no sign change across the root bracket");

    // Brent: keep the root between b (best) and c; fall back to bisection
    // whenever interpolation would leave the bracket or stall.
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    constexpr int kMaxIter = 200;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < kMaxIter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0)
            return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic interpolation (secant when a == c).
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
                q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::abs(d) > tol1)
            b += d;
        else
            b += (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b; // bracket width shrinks every iteration; 200 is far beyond need
}

double hermite(int n, double y) {
    if (n < 0)
        throw IndexError("Hermite order must be non-negative");
    if (n > 50)
        throw IndexError("Hermite order above 50 is not supported");
    if (n == 0)
        return 1.0;
    double hk = 1.0;       // H_0
    double hk1 = 2.0 * y;  // H_1
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * y * hk1 - 2.0 * static_cast<double>(k) * hk;
        hk = hk1;
        hk1 = next;
    }
    return hk1;
}

double log_sum_exp(std::span<const double> v) {
    if (v.empty())
        throw DomainError("log_sum_exp of an empty set");
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m))
        return m; // all -inf (empty sum) or a +inf/NaN dominates
    double s = 0.0;
    for (double x : v)
        s += std::exp(x - m);
    return m + std::log(s);
}

} // namespace thermoq
