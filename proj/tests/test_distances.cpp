#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tsmatch/distances.hpp"

using namespace tsmatch;

namespace {

Vector vec(std::initializer_list<Scalar> vals) {
  Vector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (Scalar x : vals) v[i++] = x;
  return v;
}

Vector short_random(std::mt19937_64& rng, Eigen::Index max_len) {
  return oracle::random_vector(rng, 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(max_len)));
}

}  // namespace

TEST_CASE("lp norms on known vectors") {
  Vector x = vec({0, 0});
  Vector y = vec({3, 4});
  CHECK(lp_norm(x, y, 2) == doctest::Approx(5.0));
  CHECK(lp_norm(x, y, 1) == doctest::Approx(7.0));
  CHECK(lp_norm(x, y, 3) == doctest::Approx(std::cbrt(27.0 + 64.0)));
  CHECK(lp_norm(x, x, 2) == 0);
}

TEST_CASE("lp norm rejects bad arguments") {
  try {
    lp_norm(vec({1}), vec({1, 2}), 2);
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::length_mismatch);
  }
  try {
    lp_norm(vec({1}), vec({2}), 0.5);
    FAIL("expected InvalidP");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_p);
  }
}

TEST_CASE("warping absorbs a one-step shift that costs Euclidean 1") {
  Vector x = vec({0, 0, 1, 1});
  Vector y = vec({0, 1, 1, 1});
  CHECK(dtw(x, y, {DtwConstraintKind::none, 0}) == doctest::Approx(0.0));
  CHECK(lp_norm(x, y, 2) == doctest::Approx(1.0));
}

TEST_CASE("unconstrained warping matches exhaustive path enumeration") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    Vector x = short_random(rng, 5);
    Vector y = short_random(rng, 5);
    CHECK(dtw(x, y, {DtwConstraintKind::none, 0}) ==
          doctest::Approx(oracle::dtw(x, y)).epsilon(1e-9));
  }
}

TEST_CASE("zero-width band equals the euclidean distance") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 16);
    Vector x = oracle::random_vector(rng, n);
    Vector y = oracle::random_vector(rng, n);
    CHECK(dtw(x, y, {DtwConstraintKind::sakoe_chiba, 0}) ==
          doctest::Approx(lp_norm(x, y, 2)).epsilon(1e-9));
  }
}

TEST_CASE("a band wider than both lengths changes nothing") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    Vector x = short_random(rng, 8);
    Vector y = short_random(rng, 8);
    CHECK(dtw(x, y, {DtwConstraintKind::sakoe_chiba, 16}) ==
          doctest::Approx(dtw(x, y, {DtwConstraintKind::none, 0})).epsilon(1e-9));
  }
}

TEST_CASE("band distance never falls below the unconstrained distance") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 12);
    Vector x = oracle::random_vector(rng, n);
    Vector y = oracle::random_vector(rng, n);
    const auto r = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
    CHECK(dtw(x, y, {DtwConstraintKind::sakoe_chiba, r}) >=
          dtw(x, y, {DtwConstraintKind::none, 0}) - 1e-9);
  }
}

TEST_CASE("infeasible constraints are reported") {
  try {
    dtw(vec({1, 2, 3, 4}), vec({1}), {DtwConstraintKind::sakoe_chiba, 1});
    FAIL("expected InfeasibleConstraint");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::infeasible_constraint);
  }
  CHECK_THROWS_AS(dtw(vec({1, 2}), vec({1, 2, 3}), {DtwConstraintKind::itakura, 0}), Error);
  CHECK_THROWS_AS(dtw(Vector(0), vec({1}), {DtwConstraintKind::none, 0}), Error);
}

TEST_CASE("itakura never beats the unconstrained distance") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 10);
    Vector x = oracle::random_vector(rng, n);
    Vector y = oracle::random_vector(rng, n);
    CHECK(dtw(x, y, {DtwConstraintKind::itakura, 0}) >=
          dtw(x, y, {DtwConstraintKind::none, 0}) - 1e-9);
  }
}

TEST_CASE("alignment path is monotone, complete, and scores the distance") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 60; ++trial) {
    Vector x = short_random(rng, 7);
    Vector y = short_random(rng, 7);
    const auto align = dtw_path(x, y, {DtwConstraintKind::none, 0});
    CHECK(align.distance == doctest::Approx(dtw(x, y, {DtwConstraintKind::none, 0})));
    REQUIRE(!align.path.empty());
    CHECK(align.path.front() == std::pair<Eigen::Index, Eigen::Index>{0, 0});
    CHECK(align.path.back() == std::pair<Eigen::Index, Eigen::Index>{x.size() - 1, y.size() - 1});
    Scalar cost = 0;
    for (std::size_t i = 0; i < align.path.size(); ++i) {
      const auto [a, b] = align.path[i];
      cost += (x[a] - y[b]) * (x[a] - y[b]);
      if (i > 0) {
        const auto [pa, pb] = align.path[i - 1];
        CHECK(a - pa >= 0);
        CHECK(b - pb >= 0);
        CHECK(a - pa <= 1);
        CHECK(b - pb <= 1);
        CHECK(a - pa + b - pb >= 1);
      }
    }
    CHECK(std::sqrt(cost) == doctest::Approx(align.distance));
  }
}

TEST_CASE("gap-penalty distance on the worked examples") {
  CHECK(erp(vec({1, 2}), Vector(0), 0) == doctest::Approx(3.0));
  CHECK(erp(vec({0}), vec({2}), 0) == doctest::Approx(2.0));
  CHECK(erp(vec({1, 2, 3}), vec({1, 2, 3}), 0) == 0);
}

TEST_CASE("gap-penalty distance matches exhaustive alignment enumeration") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    Vector x = short_random(rng, 5);
    Vector y = short_random(rng, 5);
    const Scalar g = oracle::random_vector(rng, 1)[0];
    CHECK(erp(x, y, g) == doctest::Approx(oracle::erp(x, y, g)).epsilon(1e-9));
  }
}

TEST_CASE("edit distance on the worked example") {
  CHECK(edr(vec({1, 5}), vec({1, 2}), 0.5) == doctest::Approx(1.0));
  CHECK(edr(vec({1, 2}), vec({1, 2}), 0.1) == 0);
  CHECK(edr(vec({1, 2}), Vector(0), 0.1) == doctest::Approx(2.0));
}

TEST_CASE("edit distance matches exhaustive alignment enumeration") {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 200; ++trial) {
    Vector x = short_random(rng, 5);
    Vector y = short_random(rng, 5);
    const Scalar tol = std::abs(oracle::random_vector(rng, 1)[0]);
    CHECK(edr(x, y, tol) == doctest::Approx(oracle::edr(x, y, tol)).epsilon(1e-9));
  }
}

TEST_CASE("elastic distances are symmetric") {
  std::mt19937_64 rng(39);
  for (int trial = 0; trial < 100; ++trial) {
    Vector x = short_random(rng, 6);
    Vector y = short_random(rng, 6);
    CHECK(dtw(x, y, {DtwConstraintKind::none, 0}) ==
          doctest::Approx(dtw(y, x, {DtwConstraintKind::none, 0})));
    CHECK(erp(x, y, 0) == doctest::Approx(erp(y, x, 0)));
    CHECK(edr(x, y, 0.3) == doctest::Approx(edr(y, x, 0.3)));
  }
}

TEST_CASE("distance spec dispatches with its parameters") {
  Vector x = vec({0, 1, 2});
  Vector y = vec({2, 1, 0});
  CHECK(DistanceSpec{DistanceKind::l2}.evaluate(x, y) == doctest::Approx(lp_norm(x, y, 2)));
  CHECK(DistanceSpec{DistanceKind::l1}.evaluate(x, y) == doctest::Approx(lp_norm(x, y, 1)));
  DistanceSpec banded{DistanceKind::dtw, {DtwConstraintKind::sakoe_chiba, 1}};
  CHECK(banded.evaluate(x, y) ==
        doctest::Approx(dtw(x, y, {DtwConstraintKind::sakoe_chiba, 1})));
  DistanceSpec gapped{DistanceKind::erp};
  gapped.erp_gap = 1.5;
  CHECK(gapped.evaluate(x, y) == doctest::Approx(erp(x, y, 1.5)));
  DistanceSpec edits{DistanceKind::edr};
  CHECK(edits.evaluate(x, y) ==
        doctest::Approx(edr(x, y, edr_default_tolerance(x, y))));
}
