#pragma once

#include "tsmatch/transforms.hpp"
#include "tsmatch/types.hpp"

namespace tsmatch {

/// Running min/max bands of a query under a warping half-width r.
struct Envelope {
  Vector upper;
  Vector lower;
  Eigen::Index r = 0;

  Eigen::Index size() const { return upper.size(); }
};

/// Euclidean distance between lb_embedding(a) and lb_embedding(b); lower
/// bounds the true Euclidean distance of the source windows.
Scalar reduced_lb(const ReducedVector& a, const ReducedVector& b);

/// Tightness of a lower bound, in [0, 1]. Defined as 1 when both distances
/// are 0 (the bound is perfectly tight on identical objects).
Scalar tlb(Scalar lb, Scalar true_dist);

/// Max absolute difference over the four features (first, last, min, max).
/// Lower bounds unconstrained DTW.
Scalar lb_kim(VecRef x, VecRef y);

/// Points of one sequence outside the other's [min, max] range must pay at
/// least their excess; evaluated in both orientations, larger taken.
Scalar lb_yi(VecRef x, VecRef y);

/// U[i] = max(q[i-r .. i+r]), L[i] = min(...), ranges clipped at the ends.
Envelope envelope(VecRef q, Eigen::Index r);

/// sqrt of the summed squared excursions of s outside the envelope. Lower
/// bounds dtw(q, s, sakoe_chiba r) for the envelope's r.
Scalar lb_keogh(const Envelope& env, VecRef s);

/// lb_keogh evaluated frame-wise on PAA'd envelope borders against the PAA
/// of s, with the sqrt(n/N) scaling. Never exceeds lb_keogh.
Scalar lb_paa(const Envelope& env, Eigen::Index n_frames, const ReducedVector& s_paa);

}  // namespace tsmatch
