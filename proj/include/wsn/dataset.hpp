#ifndef WSN_DATASET_HPP_
#define WSN_DATASET_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace wsn {

/// Parameter observations (row-major) plus one target column.
struct Dataset {
  std::vector<std::string> column_names;  // parameters only
  std::string target_name = "target";
  std::vector<double> X;                  // rows() x cols(), row-major
  std::vector<double> y;
  std::vector<std::string> header_comments;  // '#' lines, without the '#'

  std::size_t rows() const noexcept { return y.size(); }
  std::size_t cols() const noexcept { return column_names.size(); }
  std::vector<double> column(std::size_t c) const;
  /// Row-major copy restricted to the given columns.
  std::vector<double> select(const std::vector<std::size_t>& columns) const;
  void validate() const;
};

/// Comma-separated text: '#' comment lines, one header row, then numeric
/// rows. The last column is the target; the rest are parameters in file order.
Dataset read_dataset(std::istream& in);
Dataset read_dataset_file(const std::string& path);
void write_dataset(std::ostream& out, const Dataset& data);

struct ParameterDependency {
  std::string name;
  double pearson = 0.0;
  double spearman = 0.0;
  double corr2 = 0.0;
  double corr3 = 0.0;
  double lasso_coefficient = 0.0;  // standardised scale
  double lasso_score = 0.0;        // |beta| / max |beta|
  double p_value = 1.0;
  bool prevalent = false;
  std::string diagnostic;          // non-empty when correlations were undefined
};

struct DependencyReport {
  std::vector<ParameterDependency> parameters;
  double lasso_lambda = 0.0;
};

struct DependencyOptions {
  /// Lasso penalty as a fraction of the all-zero threshold lambda_max.
  double lasso_lambda_ratio = 0.1;
};

/// Every correlation, the Pearson p-value and a joint Lasso fit per column.
/// Columns whose correlations are undefined carry NaN and a diagnostic.
DependencyReport build_dependency_report(const Dataset& data, const DependencyOptions& options = {});

/// Prevalent iff max(|pearson|, |spearman|, |corr2|, |corr3|) >= corr_threshold
/// and p_value <= p_threshold. NaN correlations never pass.
void select_prevalent(DependencyReport& report, double corr_threshold = 0.35, double p_threshold = 0.05);

void write_dependency_report(std::ostream& out, const DependencyReport& report);

}  // namespace wsn

#endif  // WSN_DATASET_HPP_
