#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tsmatch/distances.hpp"
#include "tsmatch/lower_bounds.hpp"
#include "tsmatch/transforms.hpp"

using namespace tsmatch;

namespace {

Vector vec(std::initializer_list<Scalar> vals) {
  Vector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (Scalar x : vals) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("reduced distance of the frame-mean example is 2 sqrt 2") {
  ReducedVector a = paa(vec({1, 2, 3, 4}), 2);
  ReducedVector b = paa(vec({1, 2, 1, 2}), 2);
  CHECK(reduced_lb(a, b) == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(lp_norm(vec({1, 2, 3, 4}), vec({1, 2, 1, 2}), 2) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("reduced distance demands matching shapes") {
  ReducedVector a = paa(vec({1, 2, 3, 4}), 2);
  ReducedVector b = dct(vec({1, 2, 3, 4}), 2);
  try {
    reduced_lb(a, b);
    FAIL("expected TransformMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::transform_mismatch);
  }
  ReducedVector c = paa(vec({1, 2, 3, 4}), 4);
  CHECK_THROWS_AS(reduced_lb(a, c), Error);
}

TEST_CASE("tightness ratio behaves at the edges") {
  CHECK(tlb(0, 5) == 0);
  CHECK(tlb(0, 0) == 1);
  CHECK(tlb(5.0 + 1e-10, 5.0) == 1);
  try {
    tlb(5.1, 5.0);
    FAIL("expected BoundViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bound_violation);
  }
}

TEST_CASE("feature bound on the worked example is 3") {
  CHECK(lb_kim(vec({0, 1, 2}), vec({0, 1, 5})) == doctest::Approx(3.0));
  CHECK(lb_kim(vec({1, 2}), vec({1, 2})) == 0);
  CHECK_THROWS_AS(lb_kim(Vector(0), vec({1})), Error);
}

TEST_CASE("feature bound never exceeds the warping distance") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 12);
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 12);
    Vector x = oracle::random_vector(rng, n);
    Vector y = oracle::random_vector(rng, m);
    CHECK(lb_kim(x, y) <= dtw(x, y, {DtwConstraintKind::none, 0}) + 1e-9);
  }
}

TEST_CASE("range bound takes the larger one-sided excess") {
  // x side: both 3s sit 2 above max(y)=1, giving 8; y side: 0 and 1 sit 3 and
  // 2 below min(x)=3, giving 13. dtw([3,3],[0,1]) = sqrt(13), so the bound is
  // tight here.
  CHECK(lb_yi(vec({3, 3}), vec({0, 1})) == doctest::Approx(std::sqrt(13.0)));
  // x lies inside [0,3] so that side is 0, but y's endpoints each sit 1
  // outside [1,2]
  CHECK(lb_yi(vec({1, 2}), vec({0, 3})) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("range bound never exceeds the warping distance") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 12);
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 12);
    Vector x = oracle::random_vector(rng, n);
    Vector y = oracle::random_vector(rng, m);
    CHECK(lb_yi(x, y) <= dtw(x, y, {DtwConstraintKind::none, 0}) + 1e-9);
  }
}

TEST_CASE("envelope of the worked example") {
  Envelope env = envelope(vec({1, 3, 2}), 1);
  CHECK(env.upper == vec({3, 3, 3}));
  CHECK(env.lower == vec({1, 1, 2}));
}

TEST_CASE("zero radius and constant input give degenerate envelopes") {
  Vector q = vec({1, 2, 3});
  Envelope tight = envelope(q, 0);
  CHECK(tight.upper == q);
  CHECK(tight.lower == q);

  Vector flat = vec({4, 4, 4, 4});
  Envelope wide = envelope(flat, 3);
  CHECK(wide.upper == flat);
  CHECK(wide.lower == flat);
}

TEST_CASE("envelope bound on the worked example is sqrt 3") {
  Envelope env = envelope(vec({0, 0, 0}), 1);
  CHECK(lb_keogh(env, vec({1, 1, 1})) == doctest::Approx(std::sqrt(3.0)));
  CHECK(lb_keogh(envelope(vec({1, 3, 2}), 1), vec({2, 2, 2})) == 0);
}

TEST_CASE("envelope bound respects the banded warping distance") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 2000; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 12);
    const auto r = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
    Vector q = oracle::random_vector(rng, n);
    Vector s = oracle::random_vector(rng, n);
    CHECK(lb_keogh(envelope(q, r), s) <= dtw(q, s, {DtwConstraintKind::sakoe_chiba, r}) + 1e-9);
  }
}

TEST_CASE("frame-mean envelope bound stays below the pointwise one") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 2000; ++trial) {
    const Eigen::Index frames = 1 + static_cast<Eigen::Index>(rng() % 4);
    const Eigen::Index w = 1 + static_cast<Eigen::Index>(rng() % 4);
    const Eigen::Index n = frames * w;
    const auto r = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
    Vector q = oracle::random_vector(rng, n);
    Vector s = oracle::random_vector(rng, n);
    Envelope env = envelope(q, r);
    CHECK(lb_paa(env, frames, paa(s, frames)) <= lb_keogh(env, s) + 1e-9);
  }
}

TEST_CASE("single-point frames recover the pointwise envelope bound") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 10);
    const auto r = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
    Vector q = oracle::random_vector(rng, n);
    Vector s = oracle::random_vector(rng, n);
    Envelope env = envelope(q, r);
    CHECK(lb_paa(env, n, paa(s, n)) == doctest::Approx(lb_keogh(env, s)).epsilon(1e-12));
  }
}

TEST_CASE("frame bound is zero inside the frame envelope") {
  Envelope env = envelope(vec({0, 2, 0, 2}), 1);
  CHECK(lb_paa(env, 2, paa(vec({1, 1, 1, 1}), 2)) == 0);
}

TEST_CASE("frame bound validates its inputs") {
  Envelope env = envelope(vec({1, 2, 3, 4}), 1);
  try {
    lb_paa(env, 3, paa(vec({1, 2, 3}), 3));
    FAIL("expected FrameMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::frame_mismatch);
  }
  try {
    lb_paa(env, 2, dct(vec({1, 2, 3, 4}), 2));
    FAIL("expected TransformMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::transform_mismatch);
  }
}

TEST_CASE("reduced distances lower-bound true distance across transforms") {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 500; ++trial) {
    Vector x = oracle::random_walk(rng, 16);
    Vector y = oracle::random_walk(rng, 16);
    const Scalar ed = lp_norm(x, y, 2);
    CHECK(reduced_lb(paa(x, 4), paa(y, 4)) <= ed + 1e-9);
    CHECK(reduced_lb(dft(x, 3), dft(y, 3)) <= ed + 1e-9);
    CHECK(reduced_lb(dct(x, 4), dct(y, 4)) <= ed + 1e-9);
    CHECK(reduced_lb(haar(x, 4), haar(y, 4)) <= ed + 1e-9);
  }
}
