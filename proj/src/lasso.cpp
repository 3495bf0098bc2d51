#include "wsn/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wsn {

namespace {

double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

void check_shape(std::span<const double> rows, std::size_t n_cols, std::span<const double> y) {
  require(n_cols > 0 && !y.empty() && rows.size() == y.size() * n_cols, ErrorCode::kInvalidArgument,
          "design shape does not match target length");
}

}  // namespace

std::vector<double> standardize_columns(std::span<const double> rows, std::size_t n_cols) {
  const std::size_t m = rows.size() / n_cols;
  std::vector<double> z(rows.begin(), rows.end());
  for (std::size_t c = 0; c < n_cols; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < m; ++r) mean += z[r * n_cols + c];
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      z[r * n_cols + c] -= mean;
      var += z[r * n_cols + c] * z[r * n_cols + c];
    }
    var /= static_cast<double>(m);
    const double sd = std::sqrt(var);
    for (std::size_t r = 0; r < m; ++r) z[r * n_cols + c] = sd > 0.0 ? z[r * n_cols + c] / sd : 0.0;
  }
  return z;
}

double lasso_lambda_max(std::span<const double> rows, std::size_t n_cols, std::span<const double> y) {
  check_shape(rows, n_cols, y);
  const auto z = standardize_columns(rows, n_cols);
  const std::size_t m = y.size();
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(m);
  double best = 0.0;
  for (std::size_t c = 0; c < n_cols; ++c) {
    double dot = 0.0;
    for (std::size_t r = 0; r < m; ++r) dot += z[r * n_cols + c] * (y[r] - ybar);
    best = std::max(best, std::abs(dot));
  }
  return best;
}

LassoFit lasso_fit(std::span<const double> rows, std::size_t n_cols, std::span<const double> y,
                   double lambda, const LassoOptions& options) {
  check_shape(rows, n_cols, y);
  require(lambda >= 0.0, ErrorCode::kInvalidArgument, "lambda must be >= 0");
  const std::size_t m = y.size();
  const auto z = standardize_columns(rows, n_cols);

  LassoFit fit;
  fit.intercept = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(m);
  fit.beta.assign(n_cols, 0.0);

  std::vector<double> norm(n_cols, 0.0);
  for (std::size_t c = 0; c < n_cols; ++c)
    for (std::size_t r = 0; r < m; ++r) norm[c] += z[r * n_cols + c] * z[r * n_cols + c];

  std::vector<double> residual(m);
  for (std::size_t r = 0; r < m; ++r) residual[r] = y[r] - fit.intercept;

  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (norm[c] == 0.0) continue;
      const double old = fit.beta[c];
      double rho = 0.0;
      for (std::size_t r = 0; r < m; ++r) rho += z[r * n_cols + c] * residual[r];
      rho += norm[c] * old;
      const double updated = soft_threshold(rho, lambda) / norm[c];
      const double delta = updated - old;
      if (delta != 0.0) {
        for (std::size_t r = 0; r < m; ++r) residual[r] -= z[r * n_cols + c] * delta;
        fit.beta[c] = updated;
      }
      max_change = std::max(max_change, std::abs(delta));
    }
    fit.sweeps = sweep;
    if (max_change < options.tolerance) return fit;
  }
  throw LassoNotConverged(std::move(fit));
}

}  // namespace wsn
