#pragma once

#include <cstdint>
#include <optional>
#include <queue>

#include "tsmatch/core.hpp"
#include "tsmatch/transforms.hpp"
#include "tsmatch/types.hpp"

namespace tsmatch {

struct IndexEntry {
  int sequence_id = 0;
  Eigen::Index start = 0;

  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
  friend auto operator<=>(const IndexEntry&, const IndexEntry&) = default;
};

/// Axis-aligned bounding box over a run of offset-consecutive window vectors.
struct Mbr {
  Vector low;
  Vector high;
  std::vector<IndexEntry> entries;
};

/// Euclidean distance from a point to the nearest face of the box, 0 inside.
Scalar mindist(VecRef point, const Mbr& m);

/// Packs consecutive runs of pack_count vectors into one Mbr each; the last
/// run may be shorter. Input order is preserved.
std::vector<Mbr> build_mbrs(const std::vector<std::pair<IndexEntry, Vector>>& vectors,
                            Eigen::Index pack_count);

enum class WindowingKind { sliding, disjoint, j_sliding };

std::string to_string(WindowingKind kind);
WindowingKind windowing_from_string(const std::string& name);

struct IndexConfig {
  WindowingKind kind = WindowingKind::sliding;
  Eigen::Index window = 16;
  Eigen::Index sliding_factor = 1;  // J, consulted for j_sliding only
  TransformSpec transform;
  Eigen::Index pack_count = 16;
  Eigen::Index tree_fanout = 16;
  bool use_tree = true;  // runtime toggle, not persisted; false = linear Mbr scan
};

struct TreeNode {
  Vector low;
  Vector high;
  std::vector<std::uint32_t> children;  // node ids, empty at leaves
  std::vector<std::uint32_t> mbr_ids;   // leaf payload

  bool leaf() const { return children.empty(); }
};

/// Reduced-space index over the windows of one dataset. Mbr boxes and the
/// tree live in lb_embedding space, so mindist values lower-bound true
/// Euclidean distances of the source windows.
struct SubsequenceIndex {
  IndexConfig config;
  std::uint64_t dataset_fingerprint = 0;
  std::vector<int> skipped;  // ids of sequences shorter than the window
  std::vector<Mbr> mbrs;
  std::vector<TreeNode> nodes;  // STR-packed; the last node is the root

  Eigen::Index dim() const { return mbrs.empty() ? 0 : mbrs.front().low.size(); }
  std::size_t entry_count() const;
};

SubsequenceIndex build_index(const Dataset& ds, const IndexConfig& config);

/// Entries of every Mbr with mindist(q, Mbr) <= radius + kBoundSlack, sorted
/// by (sequence_id, start). The slack keeps embedding rounding noise from
/// dismissing boundary boxes. use_tree=false scans the Mbr list directly and
/// serves as the oracle for the tree traversal.
std::vector<IndexEntry> range_search(const SubsequenceIndex& idx, const ReducedVector& q,
                                     Scalar radius, bool use_tree = true);

/// Lazy best-first traversal emitting MBRs in nondecreasing mindist order.
class MbrScan {
public:
  MbrScan(const SubsequenceIndex& idx, Vector embedded_query);

  struct Batch {
    Scalar dist = 0;
    const Mbr* mbr = nullptr;
  };

  std::optional<Batch> next();

  /// Lower bound on the mindist of every MBR not yet emitted; +inf once
  /// the scan is exhausted.
  Scalar frontier() const;

private:
  struct QueueItem {
    Scalar dist;
    bool is_node;
    std::uint32_t id;

    // min-heap on dist; nodes expand before MBRs of equal dist so emitted
    // MBR order is deterministic (dist, then id)
    bool operator<(const QueueItem& o) const {
      if (dist != o.dist) return dist > o.dist;
      if (is_node != o.is_node) return o.is_node;
      return id > o.id;
    }
  };

  const SubsequenceIndex* idx_;
  Vector q_;
  std::priority_queue<QueueItem> heap_;
};

/// First k entries (all of them when k exceeds the total) in the order
/// MbrScan emits their MBRs.
std::vector<IndexEntry> knn_mbr_scan(const SubsequenceIndex& idx, const ReducedVector& q,
                                     Eigen::Index k);

/// Versioned little-endian flat file: magic "TSIX", config, fingerprint,
/// MBR table with entries. The tree is rebuilt on load.
void save_index(const SubsequenceIndex& idx, const std::string& path);
SubsequenceIndex load_index(const std::string& path);

}  // namespace tsmatch
