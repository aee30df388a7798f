#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace rashomon {

/// n rows of d features with labels in [-1, 1].
struct LabeledDataset {
  Eigen::MatrixXd features;  // n x d
  Eigen::VectorXd labels;    // n
  bool normalized = false;
  /// Pairs of row indices (i < j) with identical features after normalization.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> duplicate_rows;

  Eigen::Index size() const { return features.rows(); }
  Eigen::Index dim() const { return features.cols(); }
};

/// Parsed comma-separated table: numeric feature columns then one label column.
struct RawTable {
  std::vector<std::string> header;
  Eigen::MatrixXd features;
  std::vector<std::string> labels;
};

RawTable read_table(std::istream& in, bool has_header);
RawTable read_table_file(const std::string& path, bool has_header);

/// Keep rows of the two named classes; first -> +1, second -> -1. Features untouched.
LabeledDataset select_classes(const RawTable& table, const std::pair<std::string, std::string>& class_pair);

/// Keep rows of the two named classes, map first -> +1 and second -> -1,
/// and scale every feature row to unit Euclidean norm.
LabeledDataset load_and_normalize(const RawTable& table, const std::pair<std::string, std::string>& class_pair);
LabeledDataset load_and_normalize(const std::string& path, const std::pair<std::string, std::string>& class_pair,
                                  bool has_header);

/// Divides each row by its norm. Throws naming the first zero-norm row.
Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& features);

/// Row pairs whose features agree within tol in max-norm.
std::vector<std::pair<Eigen::Index, Eigen::Index>> find_duplicate_rows(const Eigen::MatrixXd& features,
                                                                         double tol = 0.0);

/// Rows with labels of exactly +1 and -1 are required by 0-1 loss consumers.
bool has_sign_labels(const LabeledDataset& dataset);

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m, int precision = 17);

}  // namespace rashomon
