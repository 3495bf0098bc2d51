#ifndef WSN_METRICS_HPP_
#define WSN_METRICS_HPP_

#include <optional>
#include <span>
#include <string>

namespace wsn {

/// Prediction accuracy of a regression model.
///
/// `r2` follows the goodness-of-fit formula whose denominator is centred on
/// the mean of the actual values but sums the *predictions'* squared
/// deviations from it: 1 - sum (E - P)^2 / sum (P - mean(E))^2.
/// `r2_conventional` is the usual 1 - SSE / sum (E - mean(E))^2. The two
/// agree only for particular prediction sets; both are reported.
struct EvalReport {
  std::optional<double> mape;  // empty when some actual value is 0
  double pred25 = 0.0;
  double rmse = 0.0;
  double r2 = 0.0;
  double r2_conventional = 0.0;
  std::string diagnostic;
};

/// MAPE = mean |E - P| / E; PRED(25) = share of samples with
/// |E - P| < 0.25 E; RMSE = sqrt(mean (E - P)^2).
EvalReport evaluate(std::span<const double> actual, std::span<const double> predicted);

}  // namespace wsn

#endif  // WSN_METRICS_HPP_
