#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "tsmatch/windowing.hpp"

using namespace tsmatch;

namespace {

Sequence seq(Eigen::Index len) {
  Sequence s;
  s.values = Vector::LinSpaced(len, 0, static_cast<Scalar>(len - 1));
  return s;
}

std::vector<Eigen::Index> starts(const std::vector<Window>& ws) {
  std::vector<Eigen::Index> out;
  for (const Window& w : ws) out.push_back(w.start);
  return out;
}

}  // namespace

TEST_CASE("sliding windows cover every offset") {
  CHECK(starts(sliding_windows(seq(4), 2)) == std::vector<Eigen::Index>{0, 1, 2});
  CHECK(starts(sliding_windows(seq(3), 3)) == std::vector<Eigen::Index>{0});
  CHECK_THROWS_AS(sliding_windows(seq(2), 3), Error);
}

TEST_CASE("disjoint windows discard the trailing remainder") {
  CHECK(starts(disjoint_windows(seq(9), 4)) == std::vector<Eigen::Index>{0, 4});
  CHECK(starts(disjoint_windows(seq(8), 4)) == std::vector<Eigen::Index>{0, 4});
  CHECK(starts(disjoint_windows(seq(4), 4)) == std::vector<Eigen::Index>{0});
}

TEST_CASE("window lengths and bounds are consistent") {
  for (const Window& w : sliding_windows(seq(10), 3)) {
    CHECK(w.length == 3);
    CHECK(w.start >= 0);
    CHECK(w.start + w.length <= 10);
  }
}

TEST_CASE("4-step windows of length 16 start at 0, 4, 8") {
  CHECK(starts(j_sliding_windows(seq(24), 16, 4)) == std::vector<Eigen::Index>{0, 4, 8});
}

TEST_CASE("step-window count matches the closed form") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index len = 1 + static_cast<Eigen::Index>(rng() % 64);
    const Eigen::Index w = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(len));
    const Eigen::Index j = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(w));
    const auto ws = j_sliding_windows(seq(len), w, j);
    CHECK(static_cast<Eigen::Index>(ws.size()) == (len - w) / j + 1);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      CHECK(ws[i].start == static_cast<Eigen::Index>(i) * j);
      CHECK(ws[i].start + ws[i].length <= len);
    }
  }
}

TEST_CASE("step 1 collapses to sliding, step w to disjoint") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index len = 1 + static_cast<Eigen::Index>(rng() % 50);
    const Eigen::Index w = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(len));
    const Sequence s = seq(len);
    CHECK(j_sliding_windows(s, w, 1) == sliding_windows(s, w));
    CHECK(j_sliding_windows(s, w, w) == disjoint_windows(s, w));
  }
}

TEST_CASE("invalid step factors are rejected") {
  try {
    j_sliding_windows(seq(8), 4, 0);
    FAIL("expected InvalidSlidingFactor");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_sliding_factor);
  }
  CHECK_THROWS_AS(j_sliding_windows(seq(8), 4, 5), Error);
  CHECK_THROWS_AS(j_sliding_windows(seq(2), 4, 1), Error);
}

TEST_CASE("shifted disjoint groups for length 8, window 4, step 2") {
  const auto groups = j_disjoint_windows(seq(8), 4, 2);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].shift == 0);
  CHECK(starts(groups[0].windows) == std::vector<Eigen::Index>{0, 4});
  CHECK(groups[1].shift == 1);
  CHECK(starts(groups[1].windows) == std::vector<Eigen::Index>{1});
}

TEST_CASE("shifted disjoint groups collapse at the step extremes") {
  const Sequence q = seq(12);
  const auto single = j_disjoint_windows(q, 4, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].windows == disjoint_windows(q, 4));

  const auto full = j_disjoint_windows(seq(6), 6, 3);
  CHECK(full[0].windows.size() == 1);
  CHECK(full[0].windows[0].start == 0);
  CHECK(full[1].windows.empty());
  CHECK(full[2].windows.empty());
}

TEST_CASE("shifted disjoint groups tile without overlap inside each shift") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index len = 2 + static_cast<Eigen::Index>(rng() % 60);
    const Eigen::Index w = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(len));
    const Eigen::Index j = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(w));
    const auto groups = j_disjoint_windows(seq(len), w, j);
    REQUIRE(static_cast<Eigen::Index>(groups.size()) == j);
    for (const auto& g : groups) {
      Eigen::Index expected = g.shift;
      for (const Window& win : g.windows) {
        CHECK(win.start == expected);
        CHECK(win.length == w);
        CHECK(win.start + win.length <= len);
        expected += w;
      }
    }
  }
}

TEST_CASE("storage counts: length 1024 with window 16") {
  CHECK(sliding_windows(seq(1024), 16).size() == 1009);
  CHECK(disjoint_windows(seq(1024), 16).size() == 64);
}
