#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "tsmatch/core.hpp"
#include "tsmatch/motifs.hpp"
#include "tsmatch/synthetic.hpp"

using namespace tsmatch;

namespace {

Sequence seq_of(std::initializer_list<Scalar> vals, int id = 0) {
  Sequence s;
  s.id = id;
  s.values = Vector(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (Scalar v : vals) s.values[i++] = v;
  return s;
}

SymbolString string_of(std::initializer_list<int> symbols, int id = 0) {
  return {id, std::vector<int>(symbols)};
}

// Exhaustive pattern counter, overlap allowed.
std::map<std::vector<int>, std::vector<MotifOccurrence>> count_all(
    const std::vector<SymbolString>& strings, Eigen::Index len) {
  std::map<std::vector<int>, std::vector<MotifOccurrence>> out;
  for (const auto& s : strings) {
    for (std::size_t i = 0; i + static_cast<std::size_t>(len) <= s.symbols.size(); ++i) {
      std::vector<int> pat(s.symbols.begin() + static_cast<std::ptrdiff_t>(i),
                           s.symbols.begin() + static_cast<std::ptrdiff_t>(i) + len);
      out[pat].push_back({s.sequence_id, static_cast<Eigen::Index>(i)});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("identical windows collapse to one symbol") {
  Dataset ds;
  ds.sequences.push_back(seq_of({3, 3, 3, 3, 3, 3, 3, 3}));
  auto strings = symbolize(ds, 2, 1, 42);
  REQUIRE(strings.size() == 1);
  CHECK(strings[0].symbols == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("string length is the disjoint window count") {
  Dataset ds = random_walk_dataset(3, 50, 71);
  auto strings = symbolize(ds, 16, 2, 42);
  for (const auto& s : strings) CHECK(s.symbols.size() == 3);  // floor(50/16)
}

TEST_CASE("well-separated levels form pure clusters") {
  // two shapes after z-normalization: rising and falling ramps
  Dataset ds;
  ds.sequences.push_back(seq_of({0, 1, 2, 3, 3, 2, 1, 0, 0, 1, 2, 3}));
  SymbolizeOptions opt;
  opt.window = 4;
  opt.clusters = 2;
  auto result = symbolize(ds, opt);
  REQUIRE(result.strings.size() == 1);
  const auto& sym = result.strings[0].symbols;
  REQUIRE(sym.size() == 3);
  CHECK(sym[0] == sym[2]);     // both rising ramps
  CHECK(sym[0] != sym[1]);     // falling ramp is the other shape
  CHECK(result.objective_trace.back() < 1e-18);
}

TEST_CASE("raw-level clustering separates constant plateaus without normalization") {
  Dataset ds;
  ds.sequences.push_back(seq_of({0, 0, 0, 0, 10, 10, 10, 10, 0, 0, 0, 0}));
  SymbolizeOptions opt;
  opt.window = 4;
  opt.clusters = 2;
  opt.normalize = false;
  auto result = symbolize(ds, opt);
  const auto& sym = result.strings[0].symbols;
  CHECK(sym[0] == sym[2]);
  CHECK(sym[0] != sym[1]);
}

TEST_CASE("symbolization is deterministic for a fixed seed") {
  Dataset ds = random_walk_dataset(4, 64, 72);
  auto a = symbolize(ds, 8, 4, 7);
  auto b = symbolize(ds, 8, 4, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].symbols == b[i].symbols);
}

TEST_CASE("objective never increases across assignment passes") {
  Dataset ds = random_walk_dataset(5, 80, 73);
  SymbolizeOptions opt;
  opt.window = 8;
  opt.clusters = 5;
  auto result = symbolize(ds, opt);
  REQUIRE(!result.objective_trace.empty());
  for (std::size_t i = 1; i < result.objective_trace.size(); ++i) {
    CHECK(result.objective_trace[i] <= result.objective_trace[i - 1] + 1e-9);
  }
}

TEST_CASE("every window lies within its cluster radius") {
  Dataset ds = random_walk_dataset(3, 60, 74);
  SymbolizeOptions opt;
  opt.window = 6;
  opt.clusters = 4;
  auto result = symbolize(ds, opt);
  for (const auto& s : result.strings) {
    const Sequence& raw = ds.at(s.sequence_id);
    for (std::size_t w = 0; w < s.symbols.size(); ++w) {
      Vector win = slice(raw, static_cast<Eigen::Index>(w) * 6,
                         static_cast<Eigen::Index>(w) * 6 + 6);
      win = normalize(win, NormalizeMethod::zscore);
      const int c = s.symbols[w];
      const Scalar d = (win - result.centroids.row(c).transpose()).norm();
      CHECK(d <= result.radii[c] + 1e-9);
    }
  }
}

TEST_CASE("cluster count is validated") {
  Dataset ds;
  ds.sequences.push_back(seq_of({1, 2, 3, 4}));
  try {
    symbolize(ds, 2, 3, 42);  // only 2 windows
    FAIL("expected TooManyClusters");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::too_many_clusters);
  }
  try {
    symbolize(ds, 5, 1, 42);  // window longer than the sequence
    FAIL("expected WindowTooLong");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::window_too_long);
  }
}

TEST_CASE("fixed shape primitives replace clustering") {
  Dataset ds;
  ds.sequences.push_back(seq_of({0, 0, 10, 10, 0, 0}));
  SymbolizeOptions opt;
  opt.window = 2;
  opt.clusters = 2;
  opt.normalize = false;
  opt.centroids = Matrix(2, 2);
  opt.centroids << 10, 10, 0, 0;  // symbol 0 = high plateau, symbol 1 = low
  auto result = symbolize(ds, opt);
  CHECK(result.strings[0].symbols == std::vector<int>{1, 0, 1});

  opt.centroids = Matrix(2, 3);  // wrong width
  CHECK_THROWS_AS(symbolize(ds, opt), Error);
}

TEST_CASE("repeated pattern in a single string is found") {
  auto motifs = find_motifs({string_of({0, 1, 0, 1})}, 2, 2);
  REQUIRE(motifs.size() == 1);
  CHECK(motifs[0].pattern == std::vector<int>{0, 1});
  CHECK(motifs[0].count == 2);
  CHECK(motifs[0].occurrences ==
        std::vector<MotifOccurrence>{{0, 0}, {0, 2}});
}

TEST_CASE("an unreachable support threshold yields nothing") {
  CHECK(find_motifs({string_of({0, 1, 2})}, 2, 5).empty());
  CHECK(find_motifs({string_of({0})}, 2, 1).empty());
}

TEST_CASE("patterns across strings accumulate occurrences") {
  auto motifs = find_motifs({string_of({1, 2, 3}, 0), string_of({1, 2, 9}, 1)}, 2, 2);
  REQUIRE(!motifs.empty());
  CHECK(motifs[0].pattern == std::vector<int>{1, 2});
  CHECK(motifs[0].count == 2);
  CHECK(motifs[0].occurrences[0].sequence_id == 0);
  CHECK(motifs[0].occurrences[1].sequence_id == 1);
}

TEST_CASE("overlap handling is a choice") {
  const std::vector<SymbolString> strings = {string_of({0, 0, 0, 0})};
  auto with = find_motifs(strings, 2, 1, true);
  REQUIRE(with.size() == 1);
  CHECK(with[0].count == 3);

  auto without = find_motifs(strings, 2, 1, false);
  REQUIRE(without.size() == 1);
  CHECK(without[0].count == 2);
  CHECK(without[0].occurrences ==
        std::vector<MotifOccurrence>{{0, 0}, {0, 2}});
}

TEST_CASE("motif mining matches the exhaustive substring counter") {
  std::mt19937_64 rng(75);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<SymbolString> strings;
    const int n_strings = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < n_strings; ++s) {
      SymbolString str;
      str.sequence_id = s;
      const int len = 1 + static_cast<int>(rng() % 12);
      for (int i = 0; i < len; ++i) str.symbols.push_back(static_cast<int>(rng() % 3));
      strings.push_back(std::move(str));
    }
    const Eigen::Index plen = 1 + static_cast<Eigen::Index>(rng() % 3);
    const long min_count = 1 + static_cast<long>(rng() % 3);

    auto got = find_motifs(strings, plen, min_count);
    auto want = count_all(strings, plen);

    std::size_t expected = 0;
    for (const auto& [pat, occ] : want) {
      if (static_cast<long>(occ.size()) < min_count) continue;
      ++expected;
      bool found = false;
      for (const auto& m : got) {
        if (m.pattern == pat) {
          found = true;
          CHECK(m.occurrences == occ);
          CHECK(m.count == static_cast<long>(occ.size()));
        }
      }
      CHECK(found);
    }
    CHECK(got.size() == expected);

    for (std::size_t i = 1; i < got.size(); ++i) {
      const bool ordered = got[i - 1].count > got[i].count ||
                           (got[i - 1].count == got[i].count &&
                            got[i - 1].pattern < got[i].pattern);
      CHECK(ordered);
    }
  }
}

TEST_CASE("motif pipeline runs end to end on generated data") {
  Dataset ds = random_walk_dataset(4, 96, 76);
  auto strings = symbolize(ds, 8, 3, 42);
  auto motifs = find_motifs(strings, 2, 2);
  for (const auto& m : motifs) {
    CHECK(m.count >= 2);
    CHECK(m.count == static_cast<long>(m.occurrences.size()));
    for (const auto& occ : m.occurrences) {
      const auto& sym = strings[static_cast<std::size_t>(occ.sequence_id)].symbols;
      for (Eigen::Index p = 0; p < 2; ++p) {
        CHECK(sym[static_cast<std::size_t>(occ.offset + p)] ==
              m.pattern[static_cast<std::size_t>(p)]);
      }
    }
  }
}
