#ifndef WSN_STATS_HPP_
#define WSN_STATS_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace wsn {

/// Normalised linear correlation. Throws kDegenerate on zero variance and
/// kInvalidArgument for fewer than 3 samples or mismatched lengths.
double pearson(std::span<const double> x, std::span<const double> y);

/// Ranks starting at 1; tied values share the average of their ranks.
std::vector<double> average_ranks(std::span<const double> x);

/// Pearson correlation of the average-rank vectors.
double spearman(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of x^degree against y^degree (elementwise powers,
/// centred after powering). degree 1 reduces to pearson().
double nonlinear_corr(std::span<const double> x, std::span<const double> y, int degree);

/// Density of Student's t with `dof` degrees of freedom.
double student_t_density(double t, double dof);

/// P(|T| >= |t|) for Student's t, by adaptive Simpson quadrature of the
/// density over the mapped tail x = |t| / s, s in (0, 1].
double student_t_two_tailed(double t, double dof);

/// Two-tailed p-value of H0: rho = 0 from t = r sqrt((M-2)/(1-r^2)),
/// M - 2 degrees of freedom. Requires M >= 4. |r| = 1 gives 0.
double p_value_pearson(std::span<const double> x, std::span<const double> y);
double p_value_from_r(double r, std::size_t samples);

/// Least squares with an intercept. Returns {intercept, b_1, ..., b_N}.
/// `rows` is row-major M x N.
std::vector<double> ols_fit(std::span<const double> rows, std::size_t n_cols, std::span<const double> y);

/// Fold index per sample after a seeded shuffle; fold sizes differ by at
/// most one, with the larger folds first.
std::vector<int> kfold_split(std::size_t samples, int k, std::uint64_t seed);

}  // namespace wsn

#endif  // WSN_STATS_HPP_
