#pragma once

#include <string>
#include <vector>

#include "survkit/dataset.hpp"

namespace survkit {

// Fitted imputation / scaling / encoding state.
//
// Numeric columns: impute with the fitted mean, then standardize to mean 0
// and variance 1 (population variance, divide by n). A zero-variance column
// transforms to all zeros. Categorical columns: impute with the fitted mode
// (ties broken lexicographically), then one-hot expand over the fitted level
// dictionary (levels sorted lexicographically); a level unseen at fit time
// maps to an all-zeros block.
struct PreprocessorState {
  struct NumericColumn {
    std::string name;
    double impute_value = 0.0;
    double mean = 0.0;
    double stddev = 0.0;  // population; 0 flags a constant column
  };
  struct CategoricalColumn {
    std::string name;
    std::string mode;
    std::vector<std::string> levels;  // sorted lexicographically
  };

  std::vector<NumericColumn> numeric;
  std::vector<CategoricalColumn> categorical;

  // Output column names: numeric names in declared order, then one
  // "<col>=<level>" name per categorical level.
  std::vector<std::string> output_names() const;
};

PreprocessorState fit_preprocessor(const RawTable& table,
                                   const std::vector<std::string>& numeric_cols,
                                   const std::vector<std::string>& categorical_cols);

// Applies a fitted state and assembles the full dataset (features plus the
// outcome columns named by the table's schema).
SurvivalDataset transform(const PreprocessorState& state, const RawTable& table);

// Feature matrix only; used on tables without outcome columns.
Eigen::MatrixXd transform_features(const PreprocessorState& state, const RawTable& table);

}  // namespace survkit
