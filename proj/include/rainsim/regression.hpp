#ifndef RAINSIM_REGRESSION_HPP
#define RAINSIM_REGRESSION_HPP

#include <span>
#include <string>
#include <vector>

#include "rainsim/core.hpp"

namespace rainsim {

/// Rank-deficient or otherwise unusable regression input.
struct DegenerateInputError : NumericalError {
  using NumericalError::NumericalError;
};

enum class FitModel { quadratic, loglog, rational };

std::string to_string(FitModel m);
FitModel parse_fit_model(const std::string& s);

struct RegressionFit {
  FitModel model = FitModel::quadratic;
  // quadratic: (c0, c1, c2) for y = c0 + c1 x + c2 x^2
  // loglog:    (a, b) for log y = a + b log x
  // rational:  (a, b) for y = a / (1 + b x)
  std::vector<double> coefficients;
  std::vector<double> std_errors;  // OLS models only
  std::vector<double> fitted;      // on the scale the model is fitted in
  std::vector<double> residuals;
  double rss = 0.0;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double residual_std_error = 0.0;
  std::size_t dof = 0;
  double f_statistic = 0.0;  // OLS models only
  double f_p_value = 0.0;
  double correlation = 0.0;  // between fitted and observed
  bool converged = true;
  int iterations = 0;
};

/// OLS for y ~ 1 + x + x^2. Needs >= 4 points with >= 3 distinct x.
RegressionFit fit_quadratic(std::span<const double> x, std::span<const double> y);

/// OLS for log y ~ a + b log x. Needs strictly positive data.
RegressionFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct RationalFitOptions {
  double relative_step_tol = 1e-10;
  int max_iterations = 200;
};

/// Least squares for y = a / (1 + b x) by Levenberg-damped Gauss-Newton.
/// A step is accepted only if it does not increase the residual sum of squares.
RegressionFit fit_rational(std::span<const double> x, std::span<const double> y, double a_init,
                           double b_init, const RationalFitOptions& opts = {});

/// Least-squares nonincreasing fit (pool adjacent violators).
std::vector<double> isotonic_nonincreasing(std::span<const double> y);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace rainsim

#endif  // RAINSIM_REGRESSION_HPP
