#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "rashomon/dataset.hpp"
#include "rashomon/error.hpp"

using namespace rashomon;

namespace {
const std::string kIris = std::string(RASHOMON_DATA_DIR) + "/iris.csv";
}

TEST_CASE("read_table parses header, comments and blank lines") {
  std::istringstream in("a,b,label\n# comment\n1,2,x\n\n3,4.5,y\n");
  const auto t = read_table(in, true);
  CHECK(t.header == std::vector<std::string>{"a", "b", "label"});
  REQUIRE(t.features.rows() == 2);
  CHECK(t.features(1, 1) == 4.5);
  CHECK(t.labels == std::vector<std::string>{"x", "y"});
}

TEST_CASE("read_table rejects malformed input") {
  std::istringstream ragged("1,2,x\n3,y\n");
  CHECK_THROWS_AS(read_table(ragged, false), Error);
  std::istringstream junk("1,abc,x\n");
  CHECK_THROWS_AS(read_table(junk, false), Error);
  std::istringstream empty("h1,h2\n");
  CHECK_THROWS_WITH(read_table(empty, true), "table has no data rows");
  CHECK_THROWS(read_table_file("/nonexistent/file.csv", false));
}

TEST_CASE("Iris two-class subset") {
  const auto ds = load_and_normalize(kIris, {"setosa", "versicolor"}, true);
  CHECK(ds.size() == 100);
  CHECK(ds.dim() == 4);
  CHECK(ds.normalized);
  CHECK((ds.features.rowwise().norm().array() - 1.0).abs().maxCoeff() <= 1e-10);
  CHECK(ds.labels.head(50).minCoeff() == 1.0);
  CHECK(ds.labels.tail(50).maxCoeff() == -1.0);
  CHECK(ds.duplicate_rows.empty());
  CHECK(has_sign_labels(ds));
  CHECK_THROWS_WITH(load_and_normalize(kIris, {"setosa", "nope"}, true), "class 'nope' not present in table");
  CHECK_THROWS(load_and_normalize(kIris, {"setosa", "setosa"}, true));
}

TEST_CASE("single row and duplicates") {
  std::istringstream one("3,4,a\n0,1,b\n");
  const auto t = read_table(one, false);
  RawTable only_a = t;
  const auto ds = load_and_normalize(t, {"a", "b"});
  CHECK(ds.features(0, 0) == doctest::Approx(0.6));
  CHECK(ds.features(0, 1) == doctest::Approx(0.8));

  std::istringstream dup("1,1,a\n2,2,a\n0,1,b\n");
  const auto dd = load_and_normalize(read_table(dup, false), {"a", "b"});
  REQUIRE(dd.duplicate_rows.size() == 1);
  CHECK(dd.duplicate_rows[0] == std::pair<Eigen::Index, Eigen::Index>{0, 1});
}

TEST_CASE("single-row input gives a 1 x d unit row") {
  RawTable t;
  t.features = Eigen::MatrixXd(2, 3);
  t.features << 1, 2, 2, 5, 5, 5;
  t.labels = {"p", "q"};
  const auto ds = select_classes(t, {"p", "q"});
  CHECK(ds.size() == 2);
  CHECK_FALSE(ds.normalized);
  const Eigen::MatrixXd single = normalize_rows(t.features.topRows(1));
  CHECK(single.rows() == 1);
  CHECK(single.row(0).norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("zero-norm row is named") {
  std::istringstream in("0,0,a\n1,0,b\n");
  CHECK_THROWS_WITH(load_and_normalize(read_table(in, false), {"a", "b"}),
                    "row 0 has zero norm and cannot be normalized");
}

TEST_CASE("write_matrix_csv round-trips at full precision") {
  Eigen::MatrixXd m(2, 2);
  m << 0.1, 1.0 / 3.0, -2.5e-300, 7.0;
  std::ostringstream out;
  write_matrix_csv(out, m);
  std::istringstream in(out.str());
  // Append a dummy label column so read_table accepts the rows.
  std::string line, text;
  while (std::getline(in, line)) text += line + ",x\n";
  std::istringstream back(text);
  const auto t = read_table(back, false);
  CHECK(t.features == m);
}
