#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "sanc/dataset.hpp"

using namespace sanc;

TEST_CASE("parse basics") {
  std::istringstream in("1 1:0.5 3:2.0\n-1 2:1.5\n");
  const Dataset ds = parse_libsvm(in);
  REQUIRE(ds.size() == 2);
  CHECK(ds.dim == 3);
  CHECK(ds.labels[0] == 1.0);
  CHECK(ds.labels[1] == -1.0);
  REQUIRE(ds.rows[0].size() == 2);
  CHECK(ds.rows[0][0].index == 0);
  CHECK(ds.rows[0][0].value == 0.5);
  CHECK(ds.rows[0][1].index == 2);
  CHECK(ds.rows[0][1].value == 2.0);
  REQUIRE(ds.rows[1].size() == 1);
  CHECK(ds.rows[1][0].index == 1);
  CHECK(ds.rows[1][0].value == 1.5);
}

TEST_CASE("comments, blank lines, CRLF, label-only rows") {
  std::istringstream in(
      "# header comment\n"
      "1 1:2.0  # trailing comment\r\n"
      "\n"
      "0 2:3.0\r\n"
      "1\n");
  const Dataset ds = parse_libsvm(in);
  REQUIRE(ds.size() == 3);
  CHECK(ds.dim == 2);
  CHECK(ds.rows[0][0].value == 2.0);
  CHECK(ds.rows[2].empty());
}

TEST_CASE("dim override pins the feature dimension") {
  std::istringstream in("1 1:1.0\n");
  const Dataset ds = parse_libsvm(in, 7);
  CHECK(ds.dim == 7);

  std::istringstream in2("1 5:1.0\n");
  CHECK_THROWS_AS(parse_libsvm(in2, 3), ParseError);
}

TEST_CASE("malformed input reports the offending line") {
  SUBCASE("non-ascending indices") {
    std::istringstream in("1 1:1.0\n1 3:1.0 2:1.0\n");
    try {
      parse_libsvm(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line_number == 2);
    }
  }
  SUBCASE("duplicate index") {
    std::istringstream in("1 2:1.0 2:4.0\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
  SUBCASE("zero index") {
    std::istringstream in("1 0:1.0\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
  SUBCASE("garbage feature token") {
    std::istringstream in("1 a:b\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
  SUBCASE("missing label") {
    std::istringstream in(":1.0\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
  SUBCASE("empty input") {
    std::istringstream in("# only a comment\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
  SUBCASE("non-finite value") {
    std::istringstream in("1 1:nan\n");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
}

TEST_CASE("missing file raises a runtime error") {
  CHECK_THROWS_AS(parse_libsvm_file("/nonexistent/path/data.libsvm"), std::runtime_error);
}

TEST_CASE("round trip preserves the dataset exactly") {
  std::mt19937_64 gen(47);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  Dataset ds;
  ds.dim = 12;
  for (int i = 0; i < 40; ++i) {
    Dataset::Row row;
    for (std::size_t k = 0; k < 12; ++k)
      if (gen() % 3 == 0) row.push_back({k, u(gen)});
    ds.rows.push_back(row);
    ds.labels.push_back(gen() % 2 ? 1.0 : -1.0);
  }
  std::ostringstream out;
  write_libsvm(out, ds);
  std::istringstream back(out.str());
  const Dataset rt = parse_libsvm(back, ds.dim);
  REQUIRE(rt.size() == ds.size());
  CHECK(rt.dim == ds.dim);
  CHECK(rt.labels == ds.labels);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    REQUIRE(rt.rows[i].size() == ds.rows[i].size());
    for (std::size_t k = 0; k < ds.rows[i].size(); ++k) {
      CHECK(rt.rows[i][k].index == ds.rows[i][k].index);
      CHECK(rt.rows[i][k].value == ds.rows[i][k].value);  // %.17g is lossless
    }
  }
}

TEST_CASE("label remapping") {
  std::istringstream in("2 1:1.0\n4 1:2.0\n2 1:3.0\n");
  const Dataset ds = parse_libsvm(in);

  const Dataset zo = map_labels(ds, LabelScheme::zero_one);
  CHECK(zo.labels == std::vector<double>{0.0, 1.0, 0.0});
  const Dataset pm = map_labels(ds, LabelScheme::plus_minus);
  CHECK(pm.labels == std::vector<double>{-1.0, 1.0, -1.0});

  SUBCASE("already-canonical labels pass through") {
    std::istringstream c("1 1:1.0\n-1 1:2.0\n");
    const Dataset cd = parse_libsvm(c);
    CHECK(map_labels(cd, LabelScheme::plus_minus).labels == std::vector<double>{1.0, -1.0});
    CHECK(map_labels(cd, LabelScheme::zero_one).labels == std::vector<double>{1.0, 0.0});
  }
  SUBCASE("one or three distinct labels are rejected") {
    std::istringstream one("5 1:1.0\n5 1:2.0\n");
    const Dataset d1 = parse_libsvm(one);
    CHECK_THROWS_AS(map_labels(d1, LabelScheme::zero_one), std::invalid_argument);

    std::istringstream three("1 1:1.0\n2 1:2.0\n3 1:3.0\n");
    const Dataset d3 = parse_libsvm(three);
    CHECK_THROWS_AS(map_labels(d3, LabelScheme::zero_one), std::invalid_argument);
  }
}
