#pragma once

#include "tsmatch/types.hpp"

namespace tsmatch {

/// Windows at every offset 0..Len-w.
std::vector<Window> sliding_windows(const Sequence& s, Eigen::Index w);

/// Windows at offsets 0, w, 2w, ...; a trailing remainder shorter than w
/// is discarded.
std::vector<Window> disjoint_windows(const Sequence& s, Eigen::Index w);

/// Windows at offsets 0, j, 2j, ... with 1 <= j <= w. j = 1 collapses to
/// sliding_windows, j = w to disjoint_windows.
std::vector<Window> j_sliding_windows(const Sequence& s, Eigen::Index w, Eigen::Index j);

struct WindowGroup {
  Eigen::Index shift = 0;
  std::vector<Window> windows;
};

/// For each shift i in 0..j-1, the disjoint w-windows of Q[i:Len). Groups
/// with no room for a full window come back empty.
std::vector<WindowGroup> j_disjoint_windows(const Sequence& q, Eigen::Index w, Eigen::Index j);

}  // namespace tsmatch
