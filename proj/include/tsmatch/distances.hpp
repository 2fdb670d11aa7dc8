#pragma once

#include <optional>

#include "tsmatch/types.hpp"

namespace tsmatch {

enum class DtwConstraintKind { none, sakoe_chiba, itakura };

struct DtwConstraint {
  DtwConstraintKind kind = DtwConstraintKind::none;
  Eigen::Index r = 0;  // band half-width, sakoe_chiba only
};

/// (sum |x_i - y_i|^p)^(1/p), p >= 1.
Scalar lp_norm(VecRef x, VecRef y, Scalar p);

/// sqrt of the minimum monotone-path sum of squared pointwise costs, so the
/// result is commensurate with lp_norm(x, y, 2). Sakoe-Chiba keeps |i-j| <= r
/// and needs r >= |n-m|; Itakura needs equal lengths and keeps the
/// intersection of the slope-2 and slope-1/2 cones anchored at both
/// endpoints: j <= 2i, i <= 2j, (N-1-i) <= 2(N-1-j), (N-1-j) <= 2(N-1-i).
Scalar dtw(VecRef x, VecRef y, const DtwConstraint& c = {});

struct DtwAlignment {
  Scalar distance = 0;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> path;  // (x index, y index)
};

/// Full-matrix DTW that also extracts one optimal warping path.
DtwAlignment dtw_path(VecRef x, VecRef y, const DtwConstraint& c = {});

/// Edit distance with real penalty: a gap aligned against value v costs
/// |v - g|, a substitution |x_i - y_j|. Metric for any fixed g.
Scalar erp(VecRef x, VecRef y, Scalar g = 0);

/// Edit distance on real sequences: pointwise match is free when
/// |x_i - y_j| <= tol, every other edit costs 1.
Scalar edr(VecRef x, VecRef y, Scalar tol);

/// 0.25 times the population std of the concatenated inputs.
Scalar edr_default_tolerance(VecRef x, VecRef y);

enum class DistanceKind { l1, l2, dtw, erp, edr };

std::string to_string(DistanceKind kind);

struct DistanceSpec {
  DistanceKind kind = DistanceKind::l2;
  DtwConstraint constraint;
  std::optional<Scalar> erp_gap;
  std::optional<Scalar> edr_tol;

  Scalar evaluate(VecRef x, VecRef y) const;
};

}  // namespace tsmatch
