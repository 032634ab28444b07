#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

namespace survkit {

// One parsed column: numeric values or categorical labels, with an explicit
// per-cell missing mask (a missing cell is flagged, never a sentinel value).
struct RawColumn {
  enum class Type { kNumeric, kCategorical };
  Type type = Type::kNumeric;
  std::vector<double> numeric;        // valid where !missing, type kNumeric
  std::vector<std::string> category;  // valid where !missing, type kCategorical
  std::vector<bool> missing;

  std::size_t size() const { return missing.size(); }
};

// Column-role mapping for CSV ingestion. Feature columns not listed in
// numeric_features/categorical_features are ignored.
struct TableSchema {
  std::string time_column;
  std::string event_column;
  std::optional<std::string> treatment_column;
  std::vector<std::string> numeric_features;
  std::vector<std::string> categorical_features;
};

// Parsed CSV contents plus the roles resolved against its header.
struct RawTable {
  std::vector<std::string> column_names;
  std::vector<RawColumn> columns;
  std::size_t n_rows = 0;
  TableSchema schema;

  const RawColumn& column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

// The universal model input: preprocessed covariates plus outcomes.
struct SurvivalDataset {
  Eigen::MatrixXd features;  // n x d, no missing values
  std::vector<std::string> feature_names;
  std::vector<double> times;   // strictly positive
  std::vector<int> events;     // 1 = event observed, 0 = censored
  std::optional<std::vector<int>> treatment;  // 0/1 arms
  std::optional<std::vector<double>> weights; // nonnegative, not all zero

  std::size_t n_rows() const { return times.size(); }
  std::size_t n_features() const { return static_cast<std::size_t>(features.cols()); }
  std::size_t n_events() const;

  // Throws ValidationError if any invariant is violated.
  void validate() const;

  // Rows with the given treatment arm. Requires treatment to be present.
  SurvivalDataset subset(const std::vector<std::size_t>& rows) const;
  std::vector<std::size_t> arm_rows(int arm) const;
};

// Parses a CSV file (UTF-8, header row, '.' decimal separator). Numeric
// parse failures and empty cells become missing markers in feature columns;
// the time/event/treatment columns must parse cleanly and are validated
// (times > 0, events and treatment in {0,1}).
RawTable load_csv(const std::string& path, const TableSchema& schema);

// Same parser over an in-memory string, for tests and generated data.
RawTable load_csv_string(const std::string& text, const TableSchema& schema);

}  // namespace survkit
