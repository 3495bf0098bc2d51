#include "wsn/metrics.hpp"

#include <cmath>
#include <limits>

#include "wsn/error.hpp"

namespace wsn {

namespace {

double ratio_r2(double sse, double denom) {
  if (sse == 0.0) return 1.0;
  if (denom == 0.0) return -std::numeric_limits<double>::infinity();
  return 1.0 - sse / denom;
}

}  // namespace

EvalReport evaluate(std::span<const double> actual, std::span<const double> predicted) {
  require(actual.size() == predicted.size(), ErrorCode::kInvalidArgument, "length mismatch");
  require(!actual.empty(), ErrorCode::kInvalidArgument, "no samples to evaluate");
  const auto m = static_cast<double>(actual.size());

  EvalReport report;
  double mean_actual = 0.0;
  for (double e : actual) mean_actual += e;
  mean_actual /= m;

  bool zero_actual = false;
  double ape = 0.0, sse = 0.0, pred_spread = 0.0, actual_spread = 0.0;
  long within = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double e = actual[i];
    const double p = predicted[i];
    const double err = std::abs(e - p);
    if (e == 0.0)
      zero_actual = true;
    else
      ape += err / e;
    if (err < 0.25 * e) ++within;
    sse += (e - p) * (e - p);
    pred_spread += (p - mean_actual) * (p - mean_actual);
    actual_spread += (e - mean_actual) * (e - mean_actual);
  }

  if (zero_actual)
    report.diagnostic = "MAPE undefined: actual series contains 0";
  else
    report.mape = ape / m;
  report.pred25 = static_cast<double>(within) / m;
  report.rmse = std::sqrt(sse / m);
  report.r2 = ratio_r2(sse, pred_spread);
  report.r2_conventional = ratio_r2(sse, actual_spread);
  return report;
}

}  // namespace wsn
