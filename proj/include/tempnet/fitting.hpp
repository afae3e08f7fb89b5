#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tempnet {

using XY = std::pair<double, double>;

struct PolyFit {
  std::vector<double> coefficients;  // ascending powers, original x scale
  double r_squared = 0.0;
};

// q(x) = a + b x + c x^2 + d x^3 + e x^4
struct QuarticFit {
  std::array<double, 5> coefficients{};
  double r_squared = 0.0;
};

// (a b + c x^d) / (b + x^d), b > 0, d > 0
struct MMFFit {
  double a = 0.0, b = 1.0, c = 0.0, d = 1.0;
  double r_squared = 0.0;
  bool converged = false;
};

// amplitude * exp(-rate * t)
struct ExponentialFit {
  double amplitude = 0.0;
  double rate = 0.0;
  double r_squared = 0.0;
  bool non_decaying = false;  // fitted rate is ~0 (or negative before clamping)
};

struct OlsFit {
  std::vector<double> coefficients;  // original feature scale
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct CvMetrics {
  double mae = 0.0;
  double mse = 0.0;
  double rmse = 0.0;  // mean of per-fold RMSEs
};

// Least squares on a [0,1]-rescaled abscissa solved by Householder QR;
// coefficients are mapped back to the original scale. Needs degree+1
// distinct x values (RankDeficient otherwise). R^2 = 1 when the data has
// zero variance and zero residual.
PolyFit fit_polynomial(std::span<const XY> points, unsigned degree);

QuarticFit fit_quartic(std::span<const XY> points);

// Damped Gauss-Newton (Levenberg-Marquardt) fit of the MMF model.
// Initialization: a = first y, c = last y, d = 2, b = median(x)^d; at most
// 200 iterations; non-convergence is reported via the flag, never thrown.
// Preconditions (InvalidParams): >= 8 points, x >= 0, y in [0, 1.5].
MMFFit fit_mmf(std::span<const XY> points);

// Two-stage exponential fit: log-linear least squares on the positive bins,
// then nonlinear refinement on the original scale over all bins.
ExponentialFit fit_exponential(std::span<const XY> bins);

// Sample Pearson correlation. Lengths must match and be >= 3
// (InvalidParams); either input constant -> ZeroVariance.
double pearson(std::span<const double> x, std::span<const double> y);

// Ordinary least squares with internal column standardization. rows may have
// zero columns (intercept-only model). Throws RankDeficient when the
// standardized design is rank-deficient (including constant columns).
OlsFit ols_regression(const std::vector<std::vector<double>>& rows,
                      std::span<const double> target);

double ols_predict(const OlsFit& fit, std::span<const double> row);

// k-fold cross validation of the OLS model with a seed-determined fold
// assignment; per-fold MAE/MSE/RMSE averaged across folds.
CvMetrics cross_validate(const std::vector<std::vector<double>>& rows,
                         std::span<const double> target, unsigned k, std::uint64_t seed);

// "model=<name> params=<csv> r2=<val> converged=<0|1>"
std::string fit_report_line(std::string_view model, std::span<const double> params,
                            double r_squared, bool converged);

}  // namespace tempnet
