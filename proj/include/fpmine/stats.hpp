#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fpmine {

// Cells of the (bugfix x removed) table:
//   a: bugfix with removal      b: bugfix without
//   c: non-bugfix with removal  d: non-bugfix without
struct ContingencyTable2x2 {
    double a = 0, b = 0, c = 0, d = 0;

    double n() const { return a + b + c + d; }
};

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double df = 0.0;
    bool valid = true;
    std::string note;
    std::map<std::string, double> extras;
};

// Complementary error function via power series (x < 2) and the Lentz
// continued fraction for the upper incomplete gamma (x >= 2). Relative error
// stays below 1e-13 over the chi-square range used here (arguments up to 10).
double erfc_cc(double x);

// Regularized incomplete beta I_x(a,b), Lentz continued fraction.
double incomplete_beta(double a, double b, double x);

// Survival function of chi-square with 1 dof: erfc(sqrt(x/2)).
double chi2_sf_1df(double x);

// Two-sided Student-t p-value: I_{df/(df+t^2)}(df/2, 1/2).
double student_t_two_sided_p(double t, double df);

// Pearson chi-square on a 2x2 table, 1 dof, optional Yates correction.
// Degenerate margins yield an invalid result.
TestResult chi_square_2x2(const ContingencyTable2x2& table, bool yates = false);

enum class OddsCorrection : std::uint8_t { None, Haldane };

// (a*d)/(b*c). Under None a zero in b or c gives +infinity (0 in a or d gives
// 0); Haldane adds 0.5 to every cell first. All-zero tables throw.
double odds_ratio(const ContingencyTable2x2& table, OddsCorrection correction = OddsCorrection::None);

// Percentage rendering of an odds ratio below 1: (1 - OR) * 100.
double pct_less_likely(double odds);

// exp(mean(ln x)); throws std::invalid_argument on empty or non-positive input.
double geometric_mean(const std::vector<double>& xs);

// Point-biserial correlation with population standard deviation and a
// two-sided t-test p-value (df = n - 2). statistic = r, extras["t"].
TestResult point_biserial(const std::vector<double>& values, const std::vector<int>& groups);

}  // namespace fpmine
