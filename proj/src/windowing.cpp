#include "tsmatch/windowing.hpp"

namespace tsmatch {

namespace {

void check_window(const Sequence& s, Eigen::Index w) {
  if (w < 1 || w > s.length()) {
    raise(Errc::window_too_long,
          "window length " + std::to_string(w) + " does not fit sequence " +
              std::to_string(s.id) + " of length " + std::to_string(s.length()));
  }
}

}  // namespace

std::vector<Window> sliding_windows(const Sequence& s, Eigen::Index w) {
  return j_sliding_windows(s, w, 1);
}

std::vector<Window> disjoint_windows(const Sequence& s, Eigen::Index w) {
  check_window(s, w);
  return j_sliding_windows(s, w, w);
}

std::vector<Window> j_sliding_windows(const Sequence& s, Eigen::Index w, Eigen::Index j) {
  check_window(s, w);
  if (j < 1 || j > w) {
    raise(Errc::invalid_sliding_factor,
          "sliding factor " + std::to_string(j) + " outside [1, " + std::to_string(w) + "]");
  }
  std::vector<Window> out;
  out.reserve(static_cast<std::size_t>((s.length() - w) / j + 1));
  for (Eigen::Index start = 0; start + w <= s.length(); start += j) {
    out.push_back(Window{s.id, start, w});
  }
  return out;
}

std::vector<WindowGroup> j_disjoint_windows(const Sequence& q, Eigen::Index w, Eigen::Index j) {
  check_window(q, w);
  if (j < 1 || j > w) {
    raise(Errc::invalid_sliding_factor,
          "sliding factor " + std::to_string(j) + " outside [1, " + std::to_string(w) + "]");
  }
  std::vector<WindowGroup> groups(static_cast<std::size_t>(j));
  for (Eigen::Index shift = 0; shift < j; ++shift) {
    auto& g = groups[static_cast<std::size_t>(shift)];
    g.shift = shift;
    for (Eigen::Index start = shift; start + w <= q.length(); start += w) {
      g.windows.push_back(Window{q.id, start, w});
    }
  }
  return groups;
}

}  // namespace tsmatch
