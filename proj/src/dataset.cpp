#include "wsn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "wsn/error.hpp"
#include "wsn/lasso.hpp"
#include "wsn/stats.hpp"

namespace wsn {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": '" + text + "' is not a number");
  }
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::vector<double> Dataset::column(std::size_t c) const {
  require(c < cols(), ErrorCode::kOutOfRange, "column out of range");
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = X[r * cols() + c];
  return out;
}

std::vector<double> Dataset::select(const std::vector<std::size_t>& columns) const {
  std::vector<double> out;
  out.reserve(rows() * columns.size());
  for (std::size_t r = 0; r < rows(); ++r)
    for (auto c : columns) out.push_back(X[r * cols() + c]);
  return out;
}

void Dataset::validate() const {
  require(X.size() == rows() * cols(), ErrorCode::kInvalidArgument, "dataset shape mismatch");
  for (double v : X)
    require(std::isfinite(v), ErrorCode::kInvalidArgument, "dataset contains non-finite values");
  for (double v : y)
    require(std::isfinite(v), ErrorCode::kInvalidArgument, "dataset contains non-finite targets");
}

Dataset read_dataset(std::istream& in) {
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      data.header_comments.push_back(trim(t.substr(1)));
      continue;
    }
    auto fields = split_fields(t);
    if (!have_header) {
      require(fields.size() >= 2, ErrorCode::kParse, "header needs at least one parameter and a target");
      data.target_name = fields.back();
      fields.pop_back();
      data.column_names = std::move(fields);
      have_header = true;
      continue;
    }
    require(fields.size() == data.cols() + 1, ErrorCode::kParse,
            "line " + std::to_string(line_no) + ": expected " + std::to_string(data.cols() + 1) + " fields");
    for (std::size_t c = 0; c < data.cols(); ++c) data.X.push_back(parse_number(fields[c], line_no));
    data.y.push_back(parse_number(fields.back(), line_no));
  }
  require(have_header, ErrorCode::kParse, "empty dataset: no header row");
  require(data.rows() > 0, ErrorCode::kParse, "dataset has a header but no rows");
  data.validate();
  return data;
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  for (const auto& c : data.header_comments) out << "# " << c << '\n';
  for (const auto& name : data.column_names) out << name << ',';
  out << data.target_name << '\n';
  out << std::setprecision(12);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t c = 0; c < data.cols(); ++c) out << data.X[r * data.cols() + c] << ',';
    out << data.y[r] << '\n';
  }
}

DependencyReport build_dependency_report(const Dataset& data, const DependencyOptions& options) {
  data.validate();
  DependencyReport report;
  const std::size_t n = data.cols();

  for (std::size_t c = 0; c < n; ++c) {
    ParameterDependency dep;
    dep.name = data.column_names[c];
    const auto x = data.column(c);
    try {
      dep.pearson = pearson(x, data.y);
      dep.spearman = spearman(x, data.y);
      dep.corr2 = nonlinear_corr(x, data.y, 2);
      dep.corr3 = nonlinear_corr(x, data.y, 3);
      dep.p_value = p_value_from_r(dep.pearson, data.rows());
    } catch (const Error& e) {
      dep.pearson = dep.spearman = dep.corr2 = dep.corr3 = kNaN;
      dep.p_value = kNaN;
      dep.diagnostic = e.what();
    }
    report.parameters.push_back(std::move(dep));
  }

  if (data.rows() >= 2) {
    const double lambda_max = lasso_lambda_max(data.X, n, data.y);
    report.lasso_lambda = options.lasso_lambda_ratio * lambda_max;
    LassoFit fit;
    try {
      fit = lasso_fit(data.X, n, data.y, report.lasso_lambda);
    } catch (const LassoNotConverged& e) {
      fit = e.last_iterate();
    }
    double largest = 0.0;
    for (double b : fit.beta) largest = std::max(largest, std::abs(b));
    for (std::size_t c = 0; c < n; ++c) {
      report.parameters[c].lasso_coefficient = fit.beta[c];
      report.parameters[c].lasso_score = largest > 0.0 ? std::abs(fit.beta[c]) / largest : 0.0;
    }
  }
  return report;
}

void select_prevalent(DependencyReport& report, double corr_threshold, double p_threshold) {
  for (auto& dep : report.parameters) {
    const double strongest = std::max({std::abs(dep.pearson), std::abs(dep.spearman),
                                       std::abs(dep.corr2), std::abs(dep.corr3)});
    // Comparisons with NaN are false, so undefined rows stay non-prevalent.
    dep.prevalent = strongest >= corr_threshold && dep.p_value <= p_threshold;
  }
}

void write_dependency_report(std::ostream& out, const DependencyReport& report) {
  out << "# lasso_lambda=" << std::setprecision(12) << report.lasso_lambda << '\n';
  out << "parameter,p_value,pearson,spearman,corr2,corr3,lasso_coefficient,lasso_score,prevalent,diagnostic\n";
  for (const auto& d : report.parameters) {
    out << d.name << ',' << d.p_value << ',' << d.pearson << ',' << d.spearman << ',' << d.corr2 << ','
        << d.corr3 << ',' << d.lasso_coefficient << ',' << d.lasso_score << ',' << (d.prevalent ? 1 : 0)
        << ',' << d.diagnostic << '\n';
  }
}

}  // namespace wsn
