#include "fpmine/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fpmine {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

double erfc_cc(double x) {
    if (x < 0) return 2.0 - erfc_cc(-x);
    if (x == 0) return 1.0;
    if (x < 2.0) {
        // erf(x) = 2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1))
        double term = x;
        double sum = x;
        double x2 = x * x;
        for (int n = 1; n < 200; ++n) {
            term *= -x2 / n;
            double add = term / (2 * n + 1);
            sum += add;
            if (std::fabs(add) < std::fabs(sum) * 1e-18) break;
        }
        return 1.0 - 2.0 / kSqrtPi * sum;
    }
    // A&S 7.1.14: sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    // evaluated with the modified Lentz algorithm.
    const double tiny = 1e-300;
    double f = x;  // b0
    double C = f;
    double D = 0.0;
    for (int n = 1; n < 400; ++n) {
        double an = n / 2.0;
        double b = x;
        D = b + an * D;
        if (std::fabs(D) < tiny) D = tiny;
        C = b + an / C;
        if (std::fabs(C) < tiny) C = tiny;
        D = 1.0 / D;
        double delta = C * D;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return std::exp(-x * x) / (kSqrtPi * f);
}

namespace {

// Lentz continued fraction for the incomplete beta (used with x below the
// symmetry threshold).
double beta_cf(double a, double b, double x) {
    const double fpmin = 1e-300;
    const double eps = 3e-16;
    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    int m = 1;
    for (; m <= 1000; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    if (m > 1000) throw std::runtime_error("incomplete_beta: no convergence");
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double chi2_sf_1df(double x) {
    if (x <= 0) return 1.0;
    return erfc_cc(std::sqrt(x / 2.0));
}

double student_t_two_sided_p(double t, double df) {
    if (df <= 0) throw std::invalid_argument("student_t_two_sided_p: df must be positive");
    if (!std::isfinite(t)) return 0.0;
    return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

TestResult chi_square_2x2(const ContingencyTable2x2& t, bool yates) {
    TestResult r;
    r.df = 1;
    if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0) {
        r.valid = false;
        r.note = "negative cell";
        return r;
    }
    double r1 = t.a + t.b, r2 = t.c + t.d, c1 = t.a + t.c, c2 = t.b + t.d;
    if (r1 <= 0 || r2 <= 0 || c1 <= 0 || c2 <= 0) {
        r.valid = false;
        r.note = "degenerate margins";
        return r;
    }
    double n = t.n();
    double diff = t.a * t.d - t.b * t.c;
    if (yates) {
        double adj = std::fabs(diff) - n / 2.0;
        if (adj < 0) adj = 0;
        r.statistic = n * adj * adj / (r1 * r2 * c1 * c2);
        r.extras["correction_applied"] = 1.0;
    } else {
        r.statistic = n * diff * diff / (r1 * r2 * c1 * c2);
    }
    r.p_value = chi2_sf_1df(r.statistic);
    return r;
}

double odds_ratio(const ContingencyTable2x2& t, OddsCorrection correction) {
    if (t.a == 0 && t.b == 0 && t.c == 0 && t.d == 0)
        throw std::invalid_argument("odds_ratio: all-zero table");
    double a = t.a, b = t.b, c = t.c, d = t.d;
    if (correction == OddsCorrection::Haldane) {
        a += 0.5;
        b += 0.5;
        c += 0.5;
        d += 0.5;
        return (a * d) / (b * c);
    }
    double num = a * d, den = b * c;
    if (den == 0.0)
        return num == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                          : std::numeric_limits<double>::infinity();
    return num / den;
}

double pct_less_likely(double odds) { return (1.0 - odds) * 100.0; }

double geometric_mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("geometric_mean: empty input");
    double sum = 0.0;
    for (double x : xs) {
        if (!(x > 0.0)) throw std::invalid_argument("geometric_mean: non-positive input");
        sum += std::log(x);
    }
    return std::exp(sum / static_cast<double>(xs.size()));
}

TestResult point_biserial(const std::vector<double>& values, const std::vector<int>& groups) {
    TestResult r;
    if (values.size() != groups.size() || values.size() < 3) {
        r.valid = false;
        r.note = "need at least 3 paired observations";
        return r;
    }
    std::size_t n = values.size();
    double n1 = 0, n0 = 0, m1 = 0, m0 = 0, mean = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mean += values[i];
        if (groups[i]) {
            ++n1;
            m1 += values[i];
        } else {
            ++n0;
            m0 += values[i];
        }
    }
    if (n1 == 0 || n0 == 0) {
        r.valid = false;
        r.note = "single group";
        return r;
    }
    mean /= static_cast<double>(n);
    m1 /= n1;
    m0 /= n0;
    double ssq = 0;
    for (double v : values) ssq += (v - mean) * (v - mean);
    double sn = std::sqrt(ssq / static_cast<double>(n));  // population sd
    if (sn == 0.0) {
        r.valid = false;
        r.note = "zero variance";
        return r;
    }
    double p = n1 / static_cast<double>(n);
    double q = n0 / static_cast<double>(n);
    double rho = (m1 - m0) / sn * std::sqrt(p * q);
    r.statistic = rho;
    r.df = static_cast<double>(n - 2);
    double denom = 1.0 - rho * rho;
    if (denom <= 0) {
        r.p_value = 0.0;
        r.extras["t"] = std::numeric_limits<double>::infinity();
        return r;
    }
    double t = rho * std::sqrt(static_cast<double>(n - 2) / denom);
    r.extras["t"] = t;
    r.p_value = student_t_two_sided_p(t, r.df);
    return r;
}

}  // namespace fpmine
