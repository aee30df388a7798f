#include "rashomon/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "rashomon/error.hpp"

namespace rashomon {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error("line " + std::to_string(line_no) + ": cannot parse feature '" + text + "'");
  }
  return value;
}

}  // namespace

RawTable read_table(std::istream& in, bool has_header) {
  RawTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    auto fields = split_fields(content);
    if (header_pending) {
      table.header = std::move(fields);
      header_pending = false;
      continue;
    }
    if (fields.size() < 2) {
      throw Error("line " + std::to_string(line_no) + ": need at least one feature and a label");
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw Error("line " + std::to_string(line_no) + ": expected " + std::to_string(width) + " columns, got " +
                  std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(width - 1);
    for (std::size_t k = 0; k + 1 < width; ++k) row.push_back(parse_number(fields[k], line_no));
    rows.push_back(std::move(row));
    table.labels.push_back(fields.back());
  }
  if (rows.empty()) throw Error("table has no data rows");

  table.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width - 1));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k + 1 < width; ++k)
      table.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
  return table;
}

RawTable read_table_file(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_table(in, has_header);
}

Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& features) {
  Eigen::MatrixXd out = features;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    if (!(norm > 0.0)) throw Error("row " + std::to_string(i) + " has zero norm and cannot be normalized");
    out.row(i) /= norm;
  }
  return out;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> find_duplicate_rows(const Eigen::MatrixXd& features,
                                                                         double tol) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> dups;
  for (Eigen::Index i = 0; i < features.rows(); ++i)
    for (Eigen::Index j = i + 1; j < features.rows(); ++j)
      if ((features.row(i) - features.row(j)).cwiseAbs().maxCoeff() <= tol) dups.emplace_back(i, j);
  return dups;
}

LabeledDataset select_classes(const RawTable& table, const std::pair<std::string, std::string>& class_pair) {
  const auto& [positive, negative] = class_pair;
  if (positive == negative) throw Error("class pair must name two different classes");

  std::vector<Eigen::Index> keep;
  std::vector<double> labels;
  bool seen_positive = false;
  bool seen_negative = false;
  for (std::size_t i = 0; i < table.labels.size(); ++i) {
    if (table.labels[i] == positive) {
      keep.push_back(static_cast<Eigen::Index>(i));
      labels.push_back(1.0);
      seen_positive = true;
    } else if (table.labels[i] == negative) {
      keep.push_back(static_cast<Eigen::Index>(i));
      labels.push_back(-1.0);
      seen_negative = true;
    }
  }
  if (!seen_positive) throw Error("class '" + positive + "' not present in table");
  if (!seen_negative) throw Error("class '" + negative + "' not present in table");

  LabeledDataset ds;
  ds.features.resize(static_cast<Eigen::Index>(keep.size()), table.features.cols());
  for (std::size_t r = 0; r < keep.size(); ++r) ds.features.row(static_cast<Eigen::Index>(r)) = table.features.row(keep[r]);
  ds.labels = Eigen::Map<const Eigen::VectorXd>(labels.data(), static_cast<Eigen::Index>(labels.size()));
  return ds;
}

LabeledDataset load_and_normalize(const RawTable& table, const std::pair<std::string, std::string>& class_pair) {
  LabeledDataset ds = select_classes(table, class_pair);
  ds.features = normalize_rows(ds.features);
  ds.normalized = true;
  ds.duplicate_rows = find_duplicate_rows(ds.features, 1e-12);
  return ds;
}

LabeledDataset load_and_normalize(const std::string& path, const std::pair<std::string, std::string>& class_pair,
                                  bool has_header) {
  return load_and_normalize(read_table_file(path, has_header), class_pair);
}

bool has_sign_labels(const LabeledDataset& dataset) {
  return (dataset.labels.array().abs() == 1.0).all();
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m, int precision) {
  const auto old_precision = out.precision(precision);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace rashomon
