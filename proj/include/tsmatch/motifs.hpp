#pragma once

#include "tsmatch/types.hpp"

#include <vector>

namespace tsmatch {

/// One sequence reduced to the cluster ids of its disjoint windows,
/// in window order. symbols.size() == floor(Len[S] / window).
struct SymbolString {
  int sequence_id = 0;
  std::vector<int> symbols;
};

struct MotifOccurrence {
  int sequence_id = 0;
  Eigen::Index offset = 0;  // symbol offset, not a sample offset
  friend bool operator==(const MotifOccurrence&, const MotifOccurrence&) = default;
  friend auto operator<=>(const MotifOccurrence&, const MotifOccurrence&) = default;
};

struct Motif {
  std::vector<int> pattern;
  std::vector<MotifOccurrence> occurrences;
  long count = 0;  // == occurrences.size()
};

struct SymbolizeOptions {
  Eigen::Index window = 16;
  Eigen::Index clusters = 8;
  std::uint64_t seed = 42;
  bool normalize = true;  // z-normalize each window before clustering
  int max_iterations = 100;
  Scalar tolerance = 1e-6;  // max centroid movement below this stops iterating
  /// When non-empty (rows = clusters, cols = window) k-means is skipped and
  /// windows are assigned to these fixed shape primitives instead.
  Matrix centroids;
  int threads = 1;
};

struct SymbolizeResult {
  std::vector<SymbolString> strings;
  Matrix centroids;  // clusters x window, post-normalization space
  Vector radii;      // per cluster, max distance of an assigned window
  std::vector<Scalar> objective_trace;  // sum of squared distances per assignment pass
};

/// Slices every sequence into disjoint windows of length `window`, clusters
/// them with seeded k-means (farthest-point init, empty clusters re-seeded
/// from the globally farthest window), and emits one symbol per window.
SymbolizeResult symbolize(const Dataset& ds, const SymbolizeOptions& options);

/// Shorthand for the common case; returns just the strings.
std::vector<SymbolString> symbolize(const Dataset& ds, Eigen::Index window,
                                    Eigen::Index clusters, std::uint64_t seed);

/// Every length-`pattern_len` symbol pattern occurring at least `min_count`
/// times across the strings, sorted by count descending then pattern
/// ascending. With `count_overlapping` off, occurrences of a pattern within
/// one string are taken greedily left to right without overlap.
std::vector<Motif> find_motifs(const std::vector<SymbolString>& strings, Eigen::Index pattern_len,
                               long min_count, bool count_overlapping = true);

}  // namespace tsmatch
