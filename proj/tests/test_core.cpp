#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tsmatch/core.hpp"

using namespace tsmatch;

namespace {

Vector vec(std::initializer_list<Scalar> vals) {
  Vector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (Scalar x : vals) v[i++] = x;
  return v;
}

Dataset parse(const std::string& text, DatasetFormat format, bool labeled) {
  std::istringstream in(text);
  return parse_dataset(in, format, labeled, "inline");
}

}  // namespace

TEST_CASE("labeled whitespace lines become sequences in line order") {
  Dataset ds = parse("1 0.5 0.7 0.9\n2 1.0 1.1\n", DatasetFormat::ucr_whitespace, true);
  REQUIRE(ds.size() == 2);
  CHECK(ds.sequences[0].id == 0);
  CHECK(ds.sequences[0].label == "1");
  CHECK(ds.sequences[0].length() == 3);
  CHECK(ds.sequences[0].values[0] == doctest::Approx(0.5));
  CHECK(ds.sequences[1].id == 1);
  CHECK(ds.sequences[1].label == "2");
  CHECK(ds.sequences[1].length() == 2);
}

TEST_CASE("unlabeled parse keeps every token as a value") {
  Dataset ds = parse("1 0.5 0.7\n", DatasetFormat::ucr_whitespace, false);
  REQUIRE(ds.size() == 1);
  CHECK(ds.sequences[0].label.empty());
  CHECK(ds.sequences[0].length() == 3);
  CHECK(ds.sequences[0].values[0] == doctest::Approx(1.0));
}

TEST_CASE("csv format splits on commas") {
  Dataset ds = parse("0.5,0.7,0.9\n1.0,1.1\n", DatasetFormat::csv, false);
  REQUIRE(ds.size() == 2);
  CHECK(ds.sequences[0].length() == 3);
  CHECK(ds.sequences[1].values[1] == doctest::Approx(1.1));
}

TEST_CASE("comment lines and blank lines are skipped") {
  Dataset ds = parse("# header\n\n1 2 3\n# tail\n", DatasetFormat::ucr_whitespace, false);
  REQUIRE(ds.size() == 1);
  CHECK(ds.sequences[0].length() == 3);
}

TEST_CASE("malformed numeric token reports its line") {
  try {
    parse("1 0.5 abc\n", DatasetFormat::ucr_whitespace, false);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(e.line() == 1);
  }
}

TEST_CASE("empty input raises EmptyDataset") {
  CHECK_THROWS_AS(parse("", DatasetFormat::ucr_whitespace, false), Error);
  try {
    parse("# only comments\n", DatasetFormat::ucr_whitespace, false);
    FAIL("expected EmptyDataset");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_dataset);
  }
}

TEST_CASE("load_dataset reads files and rejects missing paths") {
  const std::string path = "core_roundtrip.txt";
  {
    std::ofstream out(path);
    out << "1 2 3\n4 5\n";
  }
  Dataset ds = load_dataset(path, DatasetFormat::ucr_whitespace);
  CHECK(ds.size() == 2);
  CHECK(ds.source == path);
  std::remove(path.c_str());

  try {
    load_dataset("no_such_file.txt", DatasetFormat::ucr_whitespace);
    FAIL("expected FileNotFound");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::file_not_found);
  }
}

TEST_CASE("slice returns the half-open range") {
  Sequence s{0, "", vec({1, 2, 3, 4})};
  Vector v = slice(s, 1, 3);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == 2);
  CHECK(v[1] == 3);

  Sequence one{0, "", vec({7})};
  CHECK(slice(one, 0, 1)[0] == 7);

  CHECK(slice(s, 0, s.length()) == s.values);
}

TEST_CASE("slice bounds are checked") {
  Sequence s{0, "", vec({1, 2})};
  CHECK_THROWS_AS(slice(s, 1, 4), Error);
  CHECK_THROWS_AS(slice(s, 1, 1), Error);
  try {
    slice(s, 0, 3);
    FAIL("expected OutOfBounds");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_bounds);
  }
}

TEST_CASE("zscore of 2,4,6 matches the hand-computed values") {
  Vector out = normalize(vec({2, 4, 6}), NormalizeMethod::zscore);
  CHECK(out[0] == doctest::Approx(-1.2247).epsilon(1e-4));
  CHECK(out[1] == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(out[2] == doctest::Approx(1.2247).epsilon(1e-4));
}

TEST_CASE("constant input normalizes to zeros") {
  CHECK(normalize(vec({5, 5, 5}), NormalizeMethod::zscore).isZero(0));
  CHECK(normalize(vec({5, 5, 5}), NormalizeMethod::minmax).isZero(0));
}

TEST_CASE("minmax maps endpoints to 0 and 1") {
  Vector out = normalize(vec({1, 3}), NormalizeMethod::minmax);
  CHECK(out[0] == 0);
  CHECK(out[1] == 1);
}

TEST_CASE("zscore output has mean 0 and population std 1") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Vector x = oracle::random_vector(rng, 3 + static_cast<Eigen::Index>(rng() % 40));
    Vector y = normalize(x, NormalizeMethod::zscore);
    CHECK(std::abs(y.mean()) < 1e-9);
    CHECK(std::abs(population_std(y) - 1) < 1e-9);
    Vector again = normalize(y, NormalizeMethod::zscore);
    CHECK((again - y).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("minmax output stays inside the unit interval") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    Vector x = oracle::random_vector(rng, 2 + static_cast<Eigen::Index>(rng() % 40));
    Vector y = normalize(x, NormalizeMethod::minmax);
    CHECK(y.minCoeff() == doctest::Approx(0.0));
    CHECK(y.maxCoeff() == doctest::Approx(1.0));
  }
}

TEST_CASE("fingerprint identifies content, not instance") {
  Dataset a = parse("1 2 3\n4 5\n", DatasetFormat::ucr_whitespace, false);
  Dataset b = parse("1 2 3\n4 5\n", DatasetFormat::ucr_whitespace, false);
  CHECK(fingerprint(a) == fingerprint(b));

  Dataset c = parse("1 2 3\n4 6\n", DatasetFormat::ucr_whitespace, false);
  CHECK(fingerprint(a) != fingerprint(c));

  Dataset d = parse("4 5\n1 2 3\n", DatasetFormat::ucr_whitespace, false);
  CHECK(fingerprint(a) != fingerprint(d));
}
