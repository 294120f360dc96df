#include "rainsim/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>

namespace rainsim {

namespace {

void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw DegenerateInputError("x and y lengths differ (" + std::to_string(x.size()) + " vs " +
                               std::to_string(y.size()) + ")");
}

double total_sum_of_squares(std::span<const double> y) {
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double tss = 0.0;
  for (double v : y) tss += (v - mean) * (v - mean);
  return tss;
}

// Goodness-of-fit fields shared by every model.
void fill_summary(RegressionFit& fit, std::span<const double> y, std::size_t n_params) {
  const std::size_t n = y.size();
  fit.rss = 0.0;
  for (double r : fit.residuals) fit.rss += r * r;
  const double tss = total_sum_of_squares(y);
  // a flat response is fitted perfectly by the intercept; R^2 = 1 by convention
  fit.r_squared = tss > 0.0 ? std::clamp(1.0 - fit.rss / tss, 0.0, 1.0) : 1.0;
  fit.dof = n - n_params;
  fit.residual_std_error = fit.dof > 0 ? std::sqrt(fit.rss / static_cast<double>(fit.dof)) : 0.0;
  fit.adj_r_squared =
      fit.dof > 0 ? 1.0 - (1.0 - fit.r_squared) * static_cast<double>(n - 1) / static_cast<double>(fit.dof)
                  : fit.r_squared;
  fit.correlation = pearson_correlation(fit.fitted, y);
}

RegressionFit ordinary_least_squares(const Eigen::MatrixXd& design, std::span<const double> y,
                                     FitModel model) {
  const auto n = design.rows();
  const auto p = design.cols();
  Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < p) throw DegenerateInputError("rank-deficient design matrix");
  const Eigen::VectorXd beta = qr.solve(yv);
  const Eigen::VectorXd fitted = design * beta;

  RegressionFit fit;
  fit.model = model;
  fit.coefficients.assign(beta.data(), beta.data() + p);
  fit.fitted.assign(fitted.data(), fitted.data() + n);
  fit.residuals.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) fit.residuals[static_cast<std::size_t>(i)] = yv(i) - fitted(i);
  fill_summary(fit, y, static_cast<std::size_t>(p));

  const double sigma2 = fit.dof > 0 ? fit.rss / static_cast<double>(fit.dof) : 0.0;
  const Eigen::MatrixXd cov = (design.transpose() * design).inverse() * sigma2;
  for (Eigen::Index j = 0; j < p; ++j) fit.std_errors.push_back(std::sqrt(std::max(0.0, cov(j, j))));

  const double tss = total_sum_of_squares(y);
  if (p > 1 && fit.dof > 0) {
    const double df1 = static_cast<double>(p - 1);
    const double df2 = static_cast<double>(fit.dof);
    if (fit.rss > 0.0) {
      fit.f_statistic = ((tss - fit.rss) / df1) / (fit.rss / df2);
      boost::math::fisher_f dist(df1, df2);
      fit.f_p_value = fit.f_statistic > 0.0 ? boost::math::cdf(boost::math::complement(dist, fit.f_statistic)) : 1.0;
    } else {
      fit.f_statistic = std::numeric_limits<double>::infinity();
      fit.f_p_value = 0.0;
    }
  }
  return fit;
}

}  // namespace

std::string to_string(FitModel m) {
  switch (m) {
    case FitModel::quadratic: return "quadratic";
    case FitModel::loglog: return "loglog";
    case FitModel::rational: return "rational";
  }
  return "?";
}

FitModel parse_fit_model(const std::string& s) {
  if (s == "quadratic") return FitModel::quadratic;
  if (s == "loglog") return FitModel::loglog;
  if (s == "rational") return FitModel::rational;
  throw ConfigError("unknown model '" + s + "' (quadratic|loglog|rational)");
}

RegressionFit fit_quadratic(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  if (x.size() < 4) throw DegenerateInputError("quadratic fit needs at least 4 points");
  if (std::set<double>(x.begin(), x.end()).size() < 3)
    throw DegenerateInputError("quadratic fit needs at least 3 distinct x values");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = xi;
    design(i, 2) = xi * xi;
  }
  return ordinary_least_squares(design, y, FitModel::quadratic);
}

RegressionFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  if (x.size() < 3) throw DegenerateInputError("log-log fit needs at least 3 points");
  std::vector<double> ly;
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!(x[k] > 0.0) || !(y[k] > 0.0))
      throw DegenerateInputError("log-log fit needs strictly positive data");
    design(i, 0) = 1.0;
    design(i, 1) = std::log(x[k]);
    ly.push_back(std::log(y[k]));
  }
  return ordinary_least_squares(design, ly, FitModel::loglog);
}

RegressionFit fit_rational(std::span<const double> x, std::span<const double> y, double a_init,
                           double b_init, const RationalFitOptions& opts) {
  require_same_length(x, y);
  if (x.size() < 3) throw DegenerateInputError("rational fit needs at least 3 points");
  const double x_max = *std::max_element(x.begin(), x.end());
  const double x_min = *std::min_element(x.begin(), x.end());

  auto admissible = [&](double b) { return 1.0 + b * x_max > 0.0 && 1.0 + b * x_min > 0.0; };
  if (!admissible(b_init))
    throw ConfigError("rational fit: 1 + b_init * x must stay positive over the data");

  const std::size_t n = x.size();
  auto rss_of = [&](double a, double b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - a / (1.0 + b * x[i]);
      s += r * r;
    }
    return s;
  };

  double a = a_init;
  double b = b_init;
  double rss = rss_of(a, b);
  double damping = 1e-3;
  bool converged = false;
  int iter = 0;
  for (; iter < opts.max_iterations && !converged; ++iter) {
    if (rss == 0.0) {
      converged = true;
      break;
    }
    // normal equations of the linearized problem
    double jaa = 0.0, jab = 0.0, jbb = 0.0, ga = 0.0, gb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double den = 1.0 + b * x[i];
      const double da = 1.0 / den;
      const double db = -a * x[i] / (den * den);
      const double r = y[i] - a / den;
      jaa += da * da;
      jab += da * db;
      jbb += db * db;
      ga += da * r;
      gb += db * r;
    }
    bool accepted = false;
    while (!accepted) {
      const double m00 = jaa * (1.0 + damping);
      const double m11 = jbb * (1.0 + damping);
      const double det = m00 * m11 - jab * jab;
      if (!(std::abs(det) > 0.0) || damping > 1e16) break;
      const double step_a = (m11 * ga - jab * gb) / det;
      const double step_b = (m00 * gb - jab * ga) / det;
      const double na = a + step_a;
      const double nb = b + step_b;
      const double new_rss = admissible(nb) ? rss_of(na, nb) : std::numeric_limits<double>::infinity();
      if (new_rss <= rss) {
        const double rel = std::hypot(step_a, step_b) / (std::hypot(a, b) + 1e-300);
        a = na;
        b = nb;
        rss = new_rss;
        damping = std::max(damping * 0.1, 1e-12);
        accepted = true;
        if (rel < opts.relative_step_tol) converged = true;
      } else {
        damping *= 10.0;
      }
    }
    if (!accepted) {
      // no descent direction left at machine precision: a stationary point
      converged = true;
      break;
    }
  }

  RegressionFit fit;
  fit.model = FitModel::rational;
  fit.coefficients = {a, b};
  for (std::size_t i = 0; i < n; ++i) {
    fit.fitted.push_back(a / (1.0 + b * x[i]));
    fit.residuals.push_back(y[i] - fit.fitted.back());
  }
  fill_summary(fit, y, 2);
  fit.converged = converged;
  fit.iterations = iter;
  return fit;
}

std::vector<double> isotonic_nonincreasing(std::span<const double> y) {
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  for (double v : y) {
    blocks.push_back({v, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
      blocks[blocks.size() - 2].sum += blocks.back().sum;
      blocks[blocks.size() - 2].count += blocks.back().count;
      blocks.pop_back();
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const auto& b : blocks) out.insert(out.end(), b.count, b.mean());
  return out;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) return 0.0;
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return saa == sbb ? 1.0 : 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace rainsim
