#include "tsmatch/lower_bounds.hpp"

#include <algorithm>
#include <cmath>

namespace tsmatch {

Scalar reduced_lb(const ReducedVector& a, const ReducedVector& b) {
  if (a.transform_id != b.transform_id || a.coords.size() != b.coords.size() ||
      a.source_len != b.source_len) {
    raise(Errc::transform_mismatch, "reduced vectors from different transforms or shapes");
  }
  return (lb_embedding(a) - lb_embedding(b)).norm();
}

Scalar tlb(Scalar lb, Scalar true_dist) {
  if (lb > true_dist + kBoundSlack) {
    raise(Errc::bound_violation,
          "lower bound " + std::to_string(lb) + " exceeds true distance " +
              std::to_string(true_dist));
  }
  if (true_dist <= kBoundSlack) return 1;  // identical objects up to the bound slack
  // lb may exceed true_dist by up to the slack; keep the ratio in [0,1]
  return std::min(Scalar(1), lb / true_dist);
}

Scalar lb_kim(VecRef x, VecRef y) {
  if (x.size() == 0 || y.size() == 0) raise(Errc::empty_input, "lb_kim of empty input");
  const Scalar d_first = std::abs(x[0] - y[0]);
  const Scalar d_last = std::abs(x[x.size() - 1] - y[y.size() - 1]);
  const Scalar d_min = std::abs(x.minCoeff() - y.minCoeff());
  const Scalar d_max = std::abs(x.maxCoeff() - y.maxCoeff());
  return std::max({d_first, d_last, d_min, d_max});
}

namespace {

Scalar yi_one_sided(VecRef x, VecRef y) {
  const Scalar y_min = y.minCoeff();
  const Scalar y_max = y.maxCoeff();
  Scalar acc = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Scalar excess = 0;
    if (x[i] > y_max) excess = x[i] - y_max;
    else if (x[i] < y_min) excess = y_min - x[i];
    acc += excess * excess;
  }
  return acc;
}

}  // namespace

Scalar lb_yi(VecRef x, VecRef y) {
  if (x.size() == 0 || y.size() == 0) raise(Errc::empty_input, "lb_yi of empty input");
  return std::sqrt(std::max(yi_one_sided(x, y), yi_one_sided(y, x)));
}

Envelope envelope(VecRef q, Eigen::Index r) {
  if (q.size() == 0) raise(Errc::empty_input, "envelope of empty input");
  if (r < 0) raise(Errc::invalid_argument, "negative envelope half-width");
  Envelope env;
  env.r = r;
  env.upper.resize(q.size());
  env.lower.resize(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, i - r);
    const Eigen::Index hi = std::min<Eigen::Index>(q.size() - 1, i + r);
    env.upper[i] = q.segment(lo, hi - lo + 1).maxCoeff();
    env.lower[i] = q.segment(lo, hi - lo + 1).minCoeff();
  }
  return env;
}

Scalar lb_keogh(const Envelope& env, VecRef s) {
  if (s.size() != env.size()) {
    raise(Errc::length_mismatch, "envelope length " + std::to_string(env.size()) +
                                     " vs sequence length " + std::to_string(s.size()));
  }
  Scalar acc = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    Scalar d = 0;
    if (s[i] > env.upper[i]) d = s[i] - env.upper[i];
    else if (s[i] < env.lower[i]) d = env.lower[i] - s[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

Scalar lb_paa(const Envelope& env, Eigen::Index n_frames, const ReducedVector& s_paa) {
  const Eigen::Index n = env.size();
  if (n_frames < 1 || n % n_frames != 0) {
    raise(Errc::frame_mismatch, std::to_string(n_frames) + " frames do not divide envelope length " +
                                    std::to_string(n));
  }
  if (s_paa.transform_id != TransformId::paa || s_paa.coords.size() != n_frames ||
      s_paa.source_len != n) {
    raise(Errc::transform_mismatch, "s_paa is not a matching PAA vector");
  }
  const Eigen::Index w = n / n_frames;
  Scalar acc = 0;
  for (Eigen::Index f = 0; f < n_frames; ++f) {
    const Scalar u = env.upper.segment(f * w, w).mean();
    const Scalar l = env.lower.segment(f * w, w).mean();
    const Scalar v = s_paa.coords[f];
    Scalar d = 0;
    if (v > u) d = v - u;
    else if (v < l) d = l - v;
    acc += d * d;
  }
  return std::sqrt(static_cast<Scalar>(n) / static_cast<Scalar>(n_frames) * acc);
}

}  // namespace tsmatch
