#include "survkit/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "survkit/error.hpp"

namespace survkit {

std::vector<std::string> PreprocessorState::output_names() const {
  std::vector<std::string> names;
  for (const auto& c : numeric) names.push_back(c.name);
  for (const auto& c : categorical)
    for (const auto& level : c.levels) names.push_back(c.name + "=" + level);
  return names;
}

PreprocessorState fit_preprocessor(const RawTable& table,
                                   const std::vector<std::string>& numeric_cols,
                                   const std::vector<std::string>& categorical_cols) {
  PreprocessorState state;
  for (const auto& name : numeric_cols) {
    const RawColumn& col = table.column(name);
    if (col.type != RawColumn::Type::kNumeric)
      throw SchemaError("preprocessor: column '" + name + "' is not numeric");
    double sum = 0.0;
    std::size_t n_obs = 0;
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (col.missing[r]) continue;
      sum += col.numeric[r];
      ++n_obs;
    }
    if (n_obs == 0) throw FitError("preprocessor: column '" + name + "' is entirely missing");
    const double impute = sum / static_cast<double>(n_obs);

    // Post-imputation moments, so transform(fit data) is exactly centered.
    const auto n = static_cast<double>(col.size());
    double mean = 0.0;
    for (std::size_t r = 0; r < col.size(); ++r)
      mean += col.missing[r] ? impute : col.numeric[r];
    mean /= n;
    double var = 0.0;
    for (std::size_t r = 0; r < col.size(); ++r) {
      const double v = col.missing[r] ? impute : col.numeric[r];
      var += (v - mean) * (v - mean);
    }
    var /= n;
    state.numeric.push_back({name, impute, mean, std::sqrt(var)});
  }

  for (const auto& name : categorical_cols) {
    const RawColumn& col = table.column(name);
    if (col.type != RawColumn::Type::kCategorical)
      throw SchemaError("preprocessor: column '" + name + "' is not categorical");
    std::map<std::string, std::size_t> counts;
    for (std::size_t r = 0; r < col.size(); ++r)
      if (!col.missing[r]) ++counts[col.category[r]];
    if (counts.empty())
      throw FitError("preprocessor: column '" + name + "' is entirely missing");
    // std::map iterates lexicographically, so the first maximal count is the
    // lexicographically smallest mode.
    std::string mode = counts.begin()->first;
    std::size_t best = counts.begin()->second;
    for (const auto& [level, count] : counts) {
      if (count > best) {
        mode = level;
        best = count;
      }
    }
    std::vector<std::string> levels;
    levels.reserve(counts.size());
    for (const auto& [level, _] : counts) levels.push_back(level);
    state.categorical.push_back({name, mode, levels});
  }
  return state;
}

Eigen::MatrixXd transform_features(const PreprocessorState& state, const RawTable& table) {
  const auto n = static_cast<Eigen::Index>(table.n_rows);
  Eigen::Index d = static_cast<Eigen::Index>(state.numeric.size());
  for (const auto& c : state.categorical) d += static_cast<Eigen::Index>(c.levels.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, d);

  Eigen::Index j = 0;
  for (const auto& spec : state.numeric) {
    const RawColumn& col = table.column(spec.name);
    if (col.type != RawColumn::Type::kNumeric)
      throw SchemaError("preprocessor: column '" + spec.name + "' is not numeric");
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto rr = static_cast<std::size_t>(r);
      const double v = col.missing[rr] ? spec.impute_value : col.numeric[rr];
      out(r, j) = spec.stddev > 0.0 ? (v - spec.mean) / spec.stddev : 0.0;
    }
    ++j;
  }
  for (const auto& spec : state.categorical) {
    const RawColumn& col = table.column(spec.name);
    if (col.type != RawColumn::Type::kCategorical)
      throw SchemaError("preprocessor: column '" + spec.name + "' is not categorical");
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto rr = static_cast<std::size_t>(r);
      const std::string& level = col.missing[rr] ? spec.mode : col.category[rr];
      const auto it = std::lower_bound(spec.levels.begin(), spec.levels.end(), level);
      if (it != spec.levels.end() && *it == level)
        out(r, j + (it - spec.levels.begin())) = 1.0;
      // Unseen level: leave the block all zeros.
    }
    j += static_cast<Eigen::Index>(spec.levels.size());
  }
  return out;
}

SurvivalDataset transform(const PreprocessorState& state, const RawTable& table) {
  SurvivalDataset ds;
  ds.features = transform_features(state, table);
  ds.feature_names = state.output_names();
  const RawColumn& time_col = table.column(table.schema.time_column);
  const RawColumn& event_col = table.column(table.schema.event_column);
  ds.times.assign(time_col.numeric.begin(), time_col.numeric.end());
  ds.events.reserve(table.n_rows);
  for (double e : event_col.numeric) ds.events.push_back(static_cast<int>(e));
  if (table.schema.treatment_column) {
    const RawColumn& trt = table.column(*table.schema.treatment_column);
    ds.treatment.emplace();
    for (double a : trt.numeric) ds.treatment->push_back(static_cast<int>(a));
  }
  ds.validate();
  return ds;
}

}  // namespace survkit
