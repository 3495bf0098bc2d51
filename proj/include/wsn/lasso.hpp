#ifndef WSN_LASSO_HPP_
#define WSN_LASSO_HPP_

#include <span>
#include <vector>

#include "wsn/error.hpp"

namespace wsn {

struct LassoOptions {
  double tolerance = 1e-8;  // on the largest coefficient change per sweep
  int max_sweeps = 100000;
};

/// Coefficients on the standardised scale: every column is centred and
/// scaled to unit (population) variance before fitting, y is centred, and
/// the intercept is the unpenalised mean of y.
struct LassoFit {
  double intercept = 0.0;
  std::vector<double> beta;
  int sweeps = 0;
};

class LassoNotConverged : public Error {
 public:
  LassoNotConverged(LassoFit last)
      : Error(ErrorCode::kNotConverged, "lasso did not converge within max_sweeps"),
        last_(std::move(last)) {}
  const LassoFit& last_iterate() const noexcept { return last_; }

 private:
  LassoFit last_;
};

/// Cyclic coordinate descent on 0.5 * ||y - Xb||^2 + lambda * ||b||_1.
/// `rows` is row-major M x N. Constant columns keep a zero coefficient.
LassoFit lasso_fit(std::span<const double> rows, std::size_t n_cols, std::span<const double> y,
                   double lambda, const LassoOptions& options = {});

/// Smallest lambda at which every standardised coefficient is zero:
/// max_j |x_j' (y - mean(y))|.
double lasso_lambda_max(std::span<const double> rows, std::size_t n_cols, std::span<const double> y);

/// Standardised copy of row-major data; constant columns become 0.
std::vector<double> standardize_columns(std::span<const double> rows, std::size_t n_cols);

}  // namespace wsn

#endif  // WSN_LASSO_HPP_
