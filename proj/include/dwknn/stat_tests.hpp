#pragma once

#include <string>
#include <vector>

namespace dwknn {

enum class PairedTestKind { t_paired, wilcoxon_signed_rank };

struct PairedTestResult {
    PairedTestKind test = PairedTestKind::t_paired;
    double statistic = 0.0;
    double p_value = 1.0;
    int n = 0;             // pairs used (nonzero differences for Wilcoxon)
    double mean_diff = 0.0;
    bool degenerate = false;  // all differences identical / all zero; p is meaningless
};

/// Two-sided paired t-test: t = mean(d) / (sd(d)/sqrt(n)) with the sample
/// (n-1) standard deviation, p from the t distribution with n-1 degrees of
/// freedom. Identical differences are reported degenerate, not an error.
PairedTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

enum class WilcoxonMode { automatic, exact, normal_approx };

/// Two-sided Wilcoxon signed-rank test. Zero differences are dropped,
/// |d| ranked with mid-rank ties, W = min(W+, W-). The p-value is exact
/// (full enumeration of sign patterns) for m <= 12 and a tie-corrected,
/// continuity-corrected normal approximation beyond; `mode` can force
/// either path.
PairedTestResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b,
                                      WilcoxonMode mode = WilcoxonMode::automatic);

/// Regularized incomplete beta function I_x(a, b) via continued fraction.
double incomplete_beta(double a, double b, double x);

/// Two-sided p-value for a t statistic with df degrees of freedom.
double t_two_sided_p(double t, double df);

std::string to_string(PairedTestKind kind);

}  // namespace dwknn
