#pragma once

#include "tsmatch/distances.hpp"
#include "tsmatch/index.hpp"

namespace tsmatch {

struct MatchResult {
  int sequence_id = 0;
  Eigen::Index start = 0;
  Scalar distance = 0;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

struct MatchStats {
  long searches = 0;           // reduced-space range searches issued
  long candidate_windows = 0;  // raw index entries those searches returned
  long candidates = 0;         // deduplicated valid placements sent to refinement
  long refined = 0;            // true-distance evaluations
  long results = 0;
  long total_placements = 0;   // every (sequence, start) placement of the query
};

enum class MatchAlgorithm { frm, dualmatch, generalmatch };

std::string to_string(MatchAlgorithm a);
MatchAlgorithm algorithm_from_string(const std::string& name);

/// The windowing kind an algorithm requires of its index.
WindowingKind required_kind(MatchAlgorithm a);

struct MatchConfig {
  MatchAlgorithm algorithm = MatchAlgorithm::frm;
  Scalar epsilon = 0;
  Eigen::Index sliding_factor = 1;  // J, generalmatch only
  DistanceSpec refine;  // l2 keeps exactness; other kinds rescore the l2 set
};

/// Exhaustive scan; the correctness oracle for the indexed algorithms.
/// Results sorted by (sequence_id, start).
std::vector<MatchResult> brute_force_range(const Dataset& ds, const Sequence& q, Scalar eps,
                                           const DistanceSpec& dist = {}, int threads = 1);

/// Sliding data windows, disjoint query windows, per-window radius
/// eps/sqrt(p) with p = floor(Len[Q]/w). Exact for Euclidean distance.
std::vector<MatchResult> frm_range(const SubsequenceIndex& idx, const Dataset& ds,
                                   const Sequence& q, Scalar eps, MatchStats* stats = nullptr,
                                   int threads = 1);

/// Disjoint data windows, sliding query windows, radius eps. Needs
/// w <= floor((Len[Q]+1)/2) so every placement fully contains an indexed
/// window. Exact for Euclidean distance.
std::vector<MatchResult> dualmatch_range(const SubsequenceIndex& idx, const Dataset& ds,
                                         const Sequence& q, Scalar eps,
                                         MatchStats* stats = nullptr, int threads = 1);

/// J-sliding data windows, J-disjoint query windows. When J divides w each
/// shift group i with p_i windows is searched at radius eps/sqrt(p_i); when
/// it does not, the group windows a placement aligns with can overlap by up
/// to J-1, so every group is searched at the safe radius
/// eps/sqrt(ceil(p_min/2)) instead (an every-other-window subset is always
/// disjoint). Exact for Euclidean distance either way.
std::vector<MatchResult> generalmatch_range(const SubsequenceIndex& idx, const Dataset& ds,
                                            const Sequence& q, Scalar eps,
                                            MatchStats* stats = nullptr, int threads = 1);

/// Dispatches to frm/dualmatch/generalmatch by the index windowing kind.
std::vector<MatchResult> range_match(const SubsequenceIndex& idx, const Dataset& ds,
                                     const Sequence& q, Scalar eps, MatchStats* stats = nullptr,
                                     int threads = 1);

/// Exact k nearest placements under Euclidean distance, nondecreasing
/// distance, ties by (sequence_id, start). Works on any index kind; stops
/// once the k-th refined distance is at or below the lemma-scaled frontier
/// of the unvisited index region.
std::vector<MatchResult> knn(const SubsequenceIndex& idx, const Dataset& ds, const Sequence& q,
                             Eigen::Index k, MatchStats* stats = nullptr);

/// Re-evaluates the distances of an existing result set under another
/// measure and re-sorts. The set membership stays the Euclidean one, so for
/// DTW/ERP/EDR this is a labeled rescoring, not an exact search.
std::vector<MatchResult> rescore(const Dataset& ds, const Sequence& q,
                                 std::vector<MatchResult> results, const DistanceSpec& dist);

struct WindowEffectRow {
  Eigen::Index omega = 0;
  std::string algorithm;
  long candidates = 0;
  long results = 0;
  Scalar pruning_ratio = 0;
};

/// Runs all three algorithms at each window size over every query and
/// reports candidate and result counts. Result counts are constant across
/// window sizes (the algorithms are exact); candidate counts expose the
/// window size effect.
std::vector<WindowEffectRow> bench_window_effect(const Dataset& ds, const Dataset& queries,
                                                 Scalar eps,
                                                 const std::vector<Eigen::Index>& omegas,
                                                 TransformId transform = TransformId::paa,
                                                 int threads = 1);

}  // namespace tsmatch
