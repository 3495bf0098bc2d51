#include "wsn/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "wsn/error.hpp"
#include "wsn/rng.hpp"

namespace wsn {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y, std::size_t min_len) {
  require(x.size() == y.size(), ErrorCode::kInvalidArgument, "series lengths differ");
  require(x.size() >= min_len, ErrorCode::kInvalidArgument,
          "need at least " + std::to_string(min_len) + " samples");
  for (std::size_t i = 0; i < x.size(); ++i)
    require(std::isfinite(x[i]) && std::isfinite(y[i]), ErrorCode::kInvalidArgument,
            "series contain non-finite values");
}

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double correlate(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) fail(ErrorCode::kDegenerate, "zero variance: correlation undefined");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Adaptive Simpson on [a, b].
template <typename F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole,
               double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

/// Relative tolerance against a coarse first estimate, so tiny tails keep
/// their significant digits.
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(rel_tol * std::abs(whole), 1e-300);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y, 3);
  return correlate(x, y);
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y, 3);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return correlate(rx, ry);
}

double nonlinear_corr(std::span<const double> x, std::span<const double> y, int degree) {
  check_pair(x, y, 3);
  require(degree >= 1, ErrorCode::kInvalidArgument, "degree must be >= 1");
  std::vector<double> px(x.size()), py(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    px[i] = std::pow(x[i], degree);
    py[i] = std::pow(y[i], degree);
  }
  return correlate(px, py);
}

double student_t_density(double t, double dof) {
  const double log_norm = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                          0.5 * std::log(dof * 3.14159265358979323846);
  return std::exp(log_norm - 0.5 * (dof + 1.0) * std::log1p(t * t / dof));
}

double student_t_two_tailed(double t, double dof) {
  require(dof > 0.0, ErrorCode::kInvalidArgument, "degrees of freedom must be > 0");
  const double a = std::abs(t);
  if (std::isinf(a)) return 0.0;
  if (a == 0.0) return 1.0;
  // Tail integral of the density over [a, inf) after x = a / s.
  const auto integrand = [&](double s) {
    if (s <= 0.0) return 0.0;
    return student_t_density(a / s, dof) * a / (s * s);
  };
  const double tail = integrate(integrand, 0.0, 1.0, 1e-12);
  return std::clamp(2.0 * tail, 0.0, 1.0);
}

double p_value_from_r(double r, std::size_t samples) {
  require(samples >= 4, ErrorCode::kInvalidArgument, "p-value needs at least 4 samples");
  require(r >= -1.0 && r <= 1.0, ErrorCode::kInvalidArgument, "correlation outside [-1, 1]");
  if (std::abs(r) >= 1.0) return 0.0;
  const double dof = static_cast<double>(samples - 2);
  return student_t_two_tailed(r * std::sqrt(dof / (1.0 - r * r)), dof);
}

double p_value_pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y, 4);
  return p_value_from_r(correlate(x, y), x.size());
}

std::vector<double> ols_fit(std::span<const double> rows, std::size_t n_cols, std::span<const double> y) {
  require(n_cols > 0 && rows.size() == y.size() * n_cols, ErrorCode::kInvalidArgument,
          "design shape does not match target length");
  const auto m = static_cast<Eigen::Index>(y.size());
  const auto p = static_cast<Eigen::Index>(n_cols + 1);
  require(m > p - 1, ErrorCode::kInvalidArgument, "need more rows than columns");
  Eigen::MatrixXd design(m, p);
  Eigen::VectorXd target(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    design(r, 0) = 1.0;
    for (Eigen::Index c = 1; c < p; ++c)
      design(r, c) = rows[static_cast<std::size_t>(r) * n_cols + static_cast<std::size_t>(c - 1)];
    target(r) = y[static_cast<std::size_t>(r)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  require(qr.rank() == p, ErrorCode::kRankDeficient, "design matrix is rank deficient");
  const Eigen::VectorXd coef = qr.solve(target);
  return {coef.data(), coef.data() + coef.size()};
}

std::vector<int> kfold_split(std::size_t samples, int k, std::uint64_t seed) {
  require(k >= 2, ErrorCode::kInvalidArgument, "k must be >= 2");
  require(samples >= static_cast<std::size_t>(k), ErrorCode::kInvalidArgument,
          "fewer samples than folds");
  std::vector<std::size_t> order(samples);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = samples - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)));
    std::swap(order[i], order[j]);
  }
  std::vector<int> fold(samples);
  const std::size_t base = samples / static_cast<std::size_t>(k);
  const std::size_t extra = samples % static_cast<std::size_t>(k);
  std::size_t pos = 0;
  for (int f = 0; f < k; ++f) {
    const std::size_t size = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) fold[order[pos++]] = f;
  }
  return fold;
}

}  // namespace wsn
