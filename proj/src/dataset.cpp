#include "survkit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "survkit/error.hpp"

namespace survkit {

const RawColumn& RawTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < column_names.size(); ++i)
    if (column_names[i] == name) return columns[i];
  throw SchemaError("no such column: " + name);
}

bool RawTable::has_column(const std::string& name) const {
  return std::find(column_names.begin(), column_names.end(), name) != column_names.end();
}

std::size_t SurvivalDataset::n_events() const {
  std::size_t k = 0;
  for (int e : events) k += (e == 1);
  return k;
}

void SurvivalDataset::validate() const {
  const std::size_t n = times.size();
  if (static_cast<std::size_t>(features.rows()) != n)
    throw ValidationError("dataset: features/times row count mismatch");
  if (events.size() != n) throw ValidationError("dataset: events length mismatch");
  if (!feature_names.empty() &&
      feature_names.size() != static_cast<std::size_t>(features.cols()))
    throw ValidationError("dataset: feature_names length mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(times[i] > 0.0))
      throw ValidationError("dataset: nonpositive time at row " + std::to_string(i));
    if (events[i] != 0 && events[i] != 1)
      throw ValidationError("dataset: event not in {0,1} at row " + std::to_string(i));
  }
  if (!features.allFinite()) throw ValidationError("dataset: non-finite feature value");
  if (treatment) {
    if (treatment->size() != n) throw ValidationError("dataset: treatment length mismatch");
    for (int a : *treatment)
      if (a != 0 && a != 1) throw ValidationError("dataset: treatment not in {0,1}");
  }
  if (weights) {
    if (weights->size() != n) throw ValidationError("dataset: weights length mismatch");
    double total = 0.0;
    for (double w : *weights) {
      if (!(w >= 0.0) || !std::isfinite(w))
        throw ValidationError("dataset: weights must be finite and nonnegative");
      total += w;
    }
    if (!(total > 0.0)) throw ValidationError("dataset: at least one weight must be positive");
  }
}

SurvivalDataset SurvivalDataset::subset(const std::vector<std::size_t>& rows) const {
  SurvivalDataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.feature_names = feature_names;
  out.times.reserve(rows.size());
  out.events.reserve(rows.size());
  if (treatment) out.treatment.emplace();
  if (weights) out.weights.emplace();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t i = rows[k];
    out.features.row(static_cast<Eigen::Index>(k)) = features.row(static_cast<Eigen::Index>(i));
    out.times.push_back(times[i]);
    out.events.push_back(events[i]);
    if (treatment) out.treatment->push_back((*treatment)[i]);
    if (weights) out.weights->push_back((*weights)[i]);
  }
  return out;
}

std::vector<std::size_t> SurvivalDataset::arm_rows(int arm) const {
  if (!treatment) throw ValidationError("dataset: treatment column required");
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < treatment->size(); ++i)
    if ((*treatment)[i] == arm) rows.push_back(i);
  return rows;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double* out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  std::size_t pos = 0;
  try {
    *out = std::stod(t, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == t.size() && std::isfinite(*out);
}

RawTable parse_csv(std::istream& in, const TableSchema& schema) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("csv: empty input");
  RawTable table;
  table.schema = schema;
  table.column_names = split_csv_line(line);
  for (auto& name : table.column_names) name = trim(name);
  {
    auto sorted = table.column_names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw SchemaError("csv: duplicate column name in header");
  }

  const std::size_t n_cols = table.column_names.size();
  std::vector<std::vector<std::string>> cells(n_cols);
  std::size_t n_rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() && in.eof()) break;
    auto fields = split_csv_line(line);
    if (fields.size() != n_cols)
      throw ValidationError("csv: row " + std::to_string(n_rows + 1) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(n_cols));
    for (std::size_t c = 0; c < n_cols; ++c) cells[c].push_back(fields[c]);
    ++n_rows;
  }
  table.n_rows = n_rows;

  // Resolve roles before typing columns.
  auto require = [&](const std::string& name, const char* role) {
    if (!std::count(table.column_names.begin(), table.column_names.end(), name))
      throw SchemaError(std::string("csv: missing required ") + role + " column '" + name + "'");
  };
  require(schema.time_column, "time");
  require(schema.event_column, "event");
  if (schema.treatment_column) require(*schema.treatment_column, "treatment");
  for (const auto& name : schema.numeric_features) require(name, "numeric feature");
  for (const auto& name : schema.categorical_features) require(name, "categorical feature");

  auto is_categorical = [&](const std::string& name) {
    return std::count(schema.categorical_features.begin(), schema.categorical_features.end(),
                      name) > 0;
  };

  table.columns.resize(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    RawColumn& col = table.columns[c];
    col.missing.assign(n_rows, false);
    if (is_categorical(table.column_names[c])) {
      col.type = RawColumn::Type::kCategorical;
      col.category.resize(n_rows);
      for (std::size_t r = 0; r < n_rows; ++r) {
        const std::string v = trim(cells[c][r]);
        if (v.empty())
          col.missing[r] = true;
        else
          col.category[r] = v;
      }
    } else {
      col.type = RawColumn::Type::kNumeric;
      col.numeric.assign(n_rows, 0.0);
      for (std::size_t r = 0; r < n_rows; ++r) {
        double v;
        if (parse_double(cells[c][r], &v))
          col.numeric[r] = v;
        else
          col.missing[r] = true;
      }
    }
  }

  // Outcome columns must be complete and valid.
  auto outcome_check = [&](const std::string& name, auto&& cell_check) {
    const RawColumn& col = table.column(name);
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (col.missing[r])
        throw ValidationError("csv: missing value in column '" + name + "' at row " +
                              std::to_string(r));
      cell_check(col.numeric[r], r);
    }
  };
  outcome_check(schema.time_column, [&](double v, std::size_t r) {
    if (!(v > 0.0))
      throw ValidationError("csv: nonpositive time " + std::to_string(v) + " at row " +
                            std::to_string(r));
  });
  outcome_check(schema.event_column, [&](double v, std::size_t r) {
    if (v != 0.0 && v != 1.0)
      throw ValidationError("csv: event value must be 0 or 1 at row " + std::to_string(r));
  });
  if (schema.treatment_column) {
    outcome_check(*schema.treatment_column, [&](double v, std::size_t r) {
      if (v != 0.0 && v != 1.0)
        throw ValidationError("csv: treatment value must be 0 or 1 at row " + std::to_string(r));
    });
  }
  return table;
}

}  // namespace

RawTable load_csv(const std::string& path, const TableSchema& schema) {
  std::ifstream in(path);
  if (!in) throw ValidationError("csv: cannot open file " + path);
  return parse_csv(in, schema);
}

RawTable load_csv_string(const std::string& text, const TableSchema& schema) {
  std::istringstream in(text);
  return parse_csv(in, schema);
}

}  // namespace survkit
