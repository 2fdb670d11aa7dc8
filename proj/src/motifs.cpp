#include "tsmatch/motifs.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "tsmatch/core.hpp"
#include "tsmatch/parallel.hpp"
#include "tsmatch/windowing.hpp"

namespace tsmatch {

namespace {

// nearest centroid, ties to the lowest cluster id
int assign_one(const Matrix& centroids, const Vector& win) {
  int best = 0;
  Scalar best_d = (centroids.row(0).transpose() - win).squaredNorm();
  for (Eigen::Index c = 1; c < centroids.rows(); ++c) {
    const Scalar d = (centroids.row(c).transpose() - win).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

SymbolizeResult symbolize(const Dataset& ds, const SymbolizeOptions& options) {
  if (ds.empty()) raise(Errc::empty_dataset, "no sequences to symbolize");
  const Eigen::Index w = options.window;

  std::vector<Vector> windows;
  std::vector<std::size_t> counts;  // windows per sequence, in dataset order
  for (const auto& s : ds.sequences) {
    const auto wins = disjoint_windows(s, w);  // raises window_too_long
    counts.push_back(wins.size());
    for (const Window& win : wins) {
      Vector v = s.values.segment(win.start, w);
      if (options.normalize) v = normalize(v, NormalizeMethod::zscore);
      windows.push_back(std::move(v));
    }
  }
  const auto n = static_cast<Eigen::Index>(windows.size());

  Matrix centroids;
  std::vector<int> assignment(windows.size(), 0);
  std::vector<Scalar> trace;

  auto assign_all = [&]() {
    parallel_for(0, n, options.threads, [&](Eigen::Index i) {
      assignment[static_cast<std::size_t>(i)] =
          assign_one(centroids, windows[static_cast<std::size_t>(i)]);
    });
    Scalar objective = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      objective += (centroids.row(assignment[idx]).transpose() - windows[idx]).squaredNorm();
    }
    trace.push_back(objective);
  };

  if (options.centroids.size() > 0) {
    if (options.centroids.cols() != w) {
      raise(Errc::dimension_mismatch,
            "centroid length " + std::to_string(options.centroids.cols()) +
                " does not match window " + std::to_string(w));
    }
    centroids = options.centroids;
    assign_all();
  } else {
    const Eigen::Index k = options.clusters;
    if (k < 1) raise(Errc::invalid_argument, "clusters below 1");
    if (k > n) {
      raise(Errc::too_many_clusters, std::to_string(k) + " clusters but only " +
                                         std::to_string(n) + " windows");
    }

    // farthest-point init: first centroid seeded, the rest maximally spread
    std::mt19937_64 rng(options.seed);
    centroids.resize(k, w);
    centroids.row(0) = windows[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n))];
    Vector nearest_sq = Vector::Constant(n, std::numeric_limits<Scalar>::infinity());
    for (Eigen::Index c = 1; c < k; ++c) {
      Eigen::Index far = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        nearest_sq[i] = std::min(
            nearest_sq[i],
            (centroids.row(c - 1).transpose() - windows[static_cast<std::size_t>(i)]).squaredNorm());
        if (nearest_sq[i] > nearest_sq[far]) far = i;
      }
      centroids.row(c) = windows[static_cast<std::size_t>(far)];
    }

    for (int iter = 0; iter < options.max_iterations; ++iter) {
      assign_all();

      Matrix next = Matrix::Zero(k, w);
      std::vector<long> members(static_cast<std::size_t>(k), 0);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        next.row(assignment[idx]) += windows[idx].transpose();
        members[static_cast<std::size_t>(assignment[idx])] += 1;
      }
      Vector dist_sq(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        dist_sq[i] = (centroids.row(assignment[idx]).transpose() - windows[idx]).squaredNorm();
      }
      for (Eigen::Index c = 0; c < k; ++c) {
        if (members[static_cast<std::size_t>(c)] > 0) {
          next.row(c) /= static_cast<Scalar>(members[static_cast<std::size_t>(c)]);
        } else {
          // re-seed from the window farthest from its current centroid
          Eigen::Index far = 0;
          for (Eigen::Index i = 1; i < n; ++i) {
            if (dist_sq[i] > dist_sq[far]) far = i;
          }
          next.row(c) = windows[static_cast<std::size_t>(far)];
          dist_sq[far] = -1;  // keep a second empty cluster from taking the same window
        }
      }
      const Scalar movement = (next - centroids).rowwise().norm().maxCoeff();
      centroids = std::move(next);
      if (movement <= options.tolerance) break;
    }
    assign_all();
  }

  SymbolizeResult result;
  result.centroids = centroids;
  result.radii = Vector::Zero(centroids.rows());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Scalar d = (centroids.row(assignment[idx]).transpose() - windows[idx]).norm();
    result.radii[assignment[idx]] = std::max(result.radii[assignment[idx]], d);
  }
  result.objective_trace = std::move(trace);

  std::size_t cursor = 0;
  for (std::size_t si = 0; si < ds.sequences.size(); ++si) {
    SymbolString str;
    str.sequence_id = ds.sequences[si].id;
    str.symbols.assign(assignment.begin() + static_cast<std::ptrdiff_t>(cursor),
                       assignment.begin() + static_cast<std::ptrdiff_t>(cursor + counts[si]));
    cursor += counts[si];
    result.strings.push_back(std::move(str));
  }
  return result;
}

std::vector<SymbolString> symbolize(const Dataset& ds, Eigen::Index window,
                                    Eigen::Index clusters, std::uint64_t seed) {
  SymbolizeOptions opt;
  opt.window = window;
  opt.clusters = clusters;
  opt.seed = seed;
  return symbolize(ds, opt).strings;
}

std::vector<Motif> find_motifs(const std::vector<SymbolString>& strings, Eigen::Index pattern_len,
                               long min_count, bool count_overlapping) {
  if (pattern_len < 1) raise(Errc::invalid_argument, "pattern length below 1");
  if (min_count < 1) raise(Errc::invalid_argument, "min_count below 1");

  std::map<std::vector<int>, std::vector<MotifOccurrence>> table;
  for (const auto& str : strings) {
    const auto len = static_cast<Eigen::Index>(str.symbols.size());
    for (Eigen::Index off = 0; off + pattern_len <= len; ++off) {
      std::vector<int> pat(str.symbols.begin() + off, str.symbols.begin() + off + pattern_len);
      table[std::move(pat)].push_back({str.sequence_id, off});
    }
  }

  std::vector<Motif> out;
  for (auto& [pattern, occurrences] : table) {
    if (!count_overlapping) {
      std::vector<MotifOccurrence> kept;
      int cur_sid = 0;
      Eigen::Index next_free = 0;
      bool first = true;
      for (const auto& occ : occurrences) {  // already (sid, offset) ordered
        if (first || occ.sequence_id != cur_sid) {
          cur_sid = occ.sequence_id;
          next_free = occ.offset;
          first = false;
        }
        if (occ.offset >= next_free) {
          kept.push_back(occ);
          next_free = occ.offset + pattern_len;
        }
      }
      occurrences = std::move(kept);
    }
    if (static_cast<long>(occurrences.size()) < min_count) continue;
    Motif m;
    m.pattern = pattern;
    m.count = static_cast<long>(occurrences.size());
    m.occurrences = std::move(occurrences);
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const Motif& a, const Motif& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.pattern < b.pattern;
  });
  return out;
}

}  // namespace tsmatch
