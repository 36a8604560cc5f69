#pragma once

// Test-only numeric oracles, independent of the implementation paths they
// check: p-values come from adaptive Simpson quadrature of the densities,
// not from erfc or the incomplete beta.

#include <cmath>
#include <functional>

namespace fpmine::test {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60);
}

// Survival of chi-square with 1 dof by integrating the normal tail:
//   p = 2*(1-Phi(sqrt(x))) = 2 e^{-x/2}/sqrt(2pi) * I,  I = ∫_0^∞ e^{-bu-u²/2} du
// with b = sqrt(x). The factored integrand is O(1), so tiny p stay accurate.
inline double oracle_chi2_sf_1df(double x) {
    if (x <= 0) return 1.0;
    double b = std::sqrt(x);
    auto g = [b](double u) { return std::exp(-b * u - 0.5 * u * u); };
    double integral = adaptive_simpson(g, 0.0, 60.0, 1e-14);
    return 2.0 * std::exp(-0.5 * x) / std::sqrt(2.0 * M_PI) * integral;
}

// Two-sided Student-t p-value by integrating the density tail with the
// substitution s = T + u/(1-u).
inline double oracle_t_two_sided_p(double t, double df) {
    double T = std::fabs(t);
    if (T == 0) return 1.0;
    double log_c = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                   0.5 * std::log(df * M_PI);
    auto h = [&](double u) {
        if (u >= 1.0) return 0.0;
        double s = T + u / (1.0 - u);
        double log_f = log_c - (df + 1.0) / 2.0 * std::log1p(s * s / df);
        return std::exp(log_f - 2.0 * std::log1p(-u));
    };
    double tail = adaptive_simpson(h, 0.0, 1.0 - 1e-12, 1e-15);
    return 2.0 * tail;
}

// Closed form for the t CDF at df=2: F(t) = 1/2 + t / (2*sqrt(2+t^2)).
inline double oracle_t_two_sided_p_df2(double t) {
    double T = std::fabs(t);
    double cdf = 0.5 + T / (2.0 * std::sqrt(2.0 + T * T));
    return 2.0 * (1.0 - cdf);
}

}  // namespace fpmine::test
