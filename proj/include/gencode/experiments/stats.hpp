#pragma once

#include <cstddef>
#include <span>

namespace gencode::experiments {

// Pearson correlation. Throws Error(Data, "LengthMismatch"),
// Error(Data, "TooFewPoints") for n < 3, Error(Data, "DegenerateVariance").
double pearson(std::span<const double> x, std::span<const double> y);

// Two-sided p-value of r under H0: rho = 0, via Student's t with n - 2 dof.
double pearson_p_value(double r, std::size_t n);

struct WilcoxonResult {
  double statistic = 0.0;  // min(W+, W-)
  double w_plus = 0.0;
  double w_minus = 0.0;
  double p_value = 1.0;    // two-sided
  std::size_t n = 0;       // pairs with a nonzero difference
  bool exact = false;
};

inline constexpr std::size_t kWilcoxonExactLimit = 12;

// Signed-rank test of a - b. Zero differences are dropped and tied |d| get
// average ranks. Exact null distribution for n <= kWilcoxonExactLimit,
// otherwise the normal approximation with tie correction.
// Throws Error(Data, "LengthMismatch"), Error(Data, "AllZeroDifferences") and
// Error(Data, "TooFewPairs") for 1..4 nonzero differences.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> xs);
// Sample standard deviation (n - 1); 0 for fewer than two values.
double sample_std(std::span<const double> xs);

}  // namespace gencode::experiments
