#include "tsmatch/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>
#include <utility>

#include "tsmatch/lower_bounds.hpp"
#include "tsmatch/parallel.hpp"
#include "tsmatch/windowing.hpp"

namespace tsmatch {

namespace {

constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

void check_same_dataset(const SubsequenceIndex& idx, const Dataset& ds) {
  if (idx.dataset_fingerprint != fingerprint(ds)) {
    raise(Errc::index_config_mismatch, "index was built from a different dataset");
  }
}

void check_kind(const SubsequenceIndex& idx, WindowingKind wanted, const char* algorithm) {
  if (idx.config.kind != wanted) {
    raise(Errc::index_config_mismatch, std::string(algorithm) + " needs a " +
                                           to_string(wanted) + " index, got " +
                                           to_string(idx.config.kind));
  }
}

long count_placements(const Dataset& ds, Eigen::Index qlen) {
  long total = 0;
  for (const auto& s : ds.sequences) {
    if (s.length() >= qlen) total += static_cast<long>(s.length() - qlen + 1);
  }
  return total;
}

using Placement = std::pair<int, Eigen::Index>;

// one reduced-space search: entries filtered by per-entry reduced distance,
// then mapped from data window offsets to placement starts
void collect_candidates(const SubsequenceIndex& idx, const Dataset& ds, const ReducedVector& rq,
                        Scalar radius, Eigen::Index qoff, Eigen::Index qlen,
                        std::vector<Placement>& out, MatchStats* stats) {
  const auto entries = range_search(idx, rq, radius, idx.config.use_tree);
  if (stats) {
    stats->searches += 1;
    stats->candidate_windows += static_cast<long>(entries.size());
  }
  const Eigen::Index w = idx.config.window;
  for (const auto& e : entries) {
    const Sequence& s = ds.at(e.sequence_id);
    const Eigen::Index start = e.start - qoff;
    if (start < 0 || start + qlen > s.length()) continue;
    const ReducedVector rs = apply_transform(s.values.segment(e.start, w), idx.config.transform);
    if (reduced_lb(rs, rq) > radius + kBoundSlack) continue;
    out.emplace_back(e.sequence_id, start);
  }
}

std::vector<MatchResult> refine(const Dataset& ds, const Sequence& q, Scalar eps,
                                std::vector<Placement> candidates, MatchStats* stats,
                                int threads) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (stats) {
    stats->candidates += static_cast<long>(candidates.size());
    stats->refined += static_cast<long>(candidates.size());
    stats->total_placements += count_placements(ds, q.length());
  }
  const Eigen::Index L = q.length();
  std::vector<Scalar> dist(candidates.size());
  parallel_for(0, static_cast<Eigen::Index>(candidates.size()), threads, [&](Eigen::Index i) {
    const auto& [sid, start] = candidates[static_cast<std::size_t>(i)];
    dist[static_cast<std::size_t>(i)] = lp_norm(q.values, ds.at(sid).values.segment(start, L), 2);
  });
  std::vector<MatchResult> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (dist[i] <= eps) out.push_back({candidates[i].first, candidates[i].second, dist[i]});
  }
  if (stats) stats->results += static_cast<long>(out.size());
  return out;  // candidates were sorted, so this is (sequence_id, start) order
}

void check_epsilon(Scalar eps) {
  if (!(eps >= 0)) raise(Errc::conflicting_options, "epsilon must be >= 0");
}

}  // namespace

std::vector<MatchResult> brute_force_range(const Dataset& ds, const Sequence& q, Scalar eps,
                                           const DistanceSpec& dist, int threads) {
  check_epsilon(eps);
  const Eigen::Index L = q.length();
  std::vector<Placement> placements;
  for (const auto& s : ds.sequences) {
    for (Eigen::Index start = 0; start + L <= s.length(); ++start) {
      placements.emplace_back(s.id, start);
    }
  }
  if (placements.empty()) {
    raise(Errc::query_too_long,
          "no sequence admits a placement of length " + std::to_string(L));
  }
  std::vector<Scalar> d(placements.size());
  parallel_for(0, static_cast<Eigen::Index>(placements.size()), threads, [&](Eigen::Index i) {
    const auto& [sid, start] = placements[static_cast<std::size_t>(i)];
    d[static_cast<std::size_t>(i)] = dist.evaluate(q.values, ds.at(sid).values.segment(start, L));
  });
  std::vector<MatchResult> out;
  for (std::size_t i = 0; i < placements.size(); ++i) {
    if (d[i] <= eps) out.push_back({placements[i].first, placements[i].second, d[i]});
  }
  return out;
}

std::vector<MatchResult> frm_range(const SubsequenceIndex& idx, const Dataset& ds,
                                   const Sequence& q, Scalar eps, MatchStats* stats,
                                   int threads) {
  check_kind(idx, WindowingKind::sliding, "frm");
  check_same_dataset(idx, ds);
  check_epsilon(eps);
  const Eigen::Index L = q.length();
  const Eigen::Index w = idx.config.window;
  const Eigen::Index p = L / w;
  if (p < 1) {
    raise(Errc::query_shorter_than_window, "query length " + std::to_string(L) +
                                               " below window " + std::to_string(w));
  }
  const Scalar radius = eps / std::sqrt(static_cast<Scalar>(p));
  std::vector<Placement> candidates;
  for (Eigen::Index m = 0; m < p; ++m) {
    const Eigen::Index qoff = m * w;
    const ReducedVector rq = apply_transform(q.values.segment(qoff, w), idx.config.transform);
    collect_candidates(idx, ds, rq, radius, qoff, L, candidates, stats);
  }
  return refine(ds, q, eps, std::move(candidates), stats, threads);
}

std::vector<MatchResult> dualmatch_range(const SubsequenceIndex& idx, const Dataset& ds,
                                         const Sequence& q, Scalar eps, MatchStats* stats,
                                         int threads) {
  check_kind(idx, WindowingKind::disjoint, "dualmatch");
  check_same_dataset(idx, ds);
  check_epsilon(eps);
  const Eigen::Index L = q.length();
  const Eigen::Index w = idx.config.window;
  if (w > (L + 1) / 2) {
    raise(Errc::window_too_large_for_query,
          "dualmatch needs window <= floor((Len[Q]+1)/2) = " + std::to_string((L + 1) / 2) +
              ", got " + std::to_string(w));
  }
  std::vector<Placement> candidates;
  for (Eigen::Index u = 0; u + w <= L; ++u) {
    const ReducedVector rq = apply_transform(q.values.segment(u, w), idx.config.transform);
    collect_candidates(idx, ds, rq, eps, u, L, candidates, stats);
  }
  return refine(ds, q, eps, std::move(candidates), stats, threads);
}

std::vector<MatchResult> generalmatch_range(const SubsequenceIndex& idx, const Dataset& ds,
                                            const Sequence& q, Scalar eps, MatchStats* stats,
                                            int threads) {
  check_kind(idx, WindowingKind::j_sliding, "generalmatch");
  check_same_dataset(idx, ds);
  check_epsilon(eps);
  const Eigen::Index L = q.length();
  const Eigen::Index w = idx.config.window;
  const Eigen::Index J = idx.config.sliding_factor;
  if (L < w + J - 1) {
    raise(Errc::query_shorter_than_window,
          "query length " + std::to_string(L) + " leaves shift " + std::to_string(J - 1) +
              " without a full window of length " + std::to_string(w));
  }
  const auto groups = j_disjoint_windows(q, w, J);
  const Eigen::Index p_min = (L - J + 1) / w;
  const bool aligned_groups = w % J == 0;
  // when J does not divide w, a placement's aligned group windows may overlap
  // by up to J-1, so Lemma-2 style scaling only holds for an every-other
  // subset of them: ceil(p_min/2) disjoint windows, same radius for all groups
  const Scalar flat_radius = eps / std::sqrt(static_cast<Scalar>((p_min + 1) / 2));
  std::vector<Placement> candidates;
  for (const auto& g : groups) {
    const Scalar radius =
        aligned_groups ? eps / std::sqrt(static_cast<Scalar>(g.windows.size())) : flat_radius;
    for (const Window& win : g.windows) {
      const ReducedVector rq =
          apply_transform(q.values.segment(win.start, w), idx.config.transform);
      collect_candidates(idx, ds, rq, radius, win.start, L, candidates, stats);
    }
  }
  return refine(ds, q, eps, std::move(candidates), stats, threads);
}

std::string to_string(MatchAlgorithm a) {
  switch (a) {
    case MatchAlgorithm::frm: return "frm";
    case MatchAlgorithm::dualmatch: return "dualmatch";
    case MatchAlgorithm::generalmatch: return "generalmatch";
  }
  return "frm";
}

MatchAlgorithm algorithm_from_string(const std::string& name) {
  if (name == "frm") return MatchAlgorithm::frm;
  if (name == "dualmatch") return MatchAlgorithm::dualmatch;
  if (name == "generalmatch") return MatchAlgorithm::generalmatch;
  raise(Errc::invalid_argument, "unknown algorithm '" + name + "'");
}

WindowingKind required_kind(MatchAlgorithm a) {
  switch (a) {
    case MatchAlgorithm::frm: return WindowingKind::sliding;
    case MatchAlgorithm::dualmatch: return WindowingKind::disjoint;
    case MatchAlgorithm::generalmatch: return WindowingKind::j_sliding;
  }
  return WindowingKind::sliding;
}

std::vector<MatchResult> range_match(const SubsequenceIndex& idx, const Dataset& ds,
                                     const Sequence& q, Scalar eps, MatchStats* stats,
                                     int threads) {
  switch (idx.config.kind) {
    case WindowingKind::sliding: return frm_range(idx, ds, q, eps, stats, threads);
    case WindowingKind::disjoint: return dualmatch_range(idx, ds, q, eps, stats, threads);
    case WindowingKind::j_sliding: return generalmatch_range(idx, ds, q, eps, stats, threads);
  }
  raise(Errc::invalid_argument, "bad windowing kind");
}

namespace {

struct KnnStream {
  MbrScan scan;
  Eigen::Index qoff;
};

}  // namespace

std::vector<MatchResult> knn(const SubsequenceIndex& idx, const Dataset& ds, const Sequence& q,
                             Eigen::Index k, MatchStats* stats) {
  if (k < 1) raise(Errc::invalid_argument, "k below 1");
  check_same_dataset(idx, ds);
  const Eigen::Index L = q.length();
  const Eigen::Index w = idx.config.window;
  const long total = count_placements(ds, L);
  if (total < k) {
    raise(Errc::not_enough_placements,
          std::to_string(total) + " placements exist, k = " + std::to_string(k));
  }
  if (stats) stats->total_placements += total;

  std::vector<KnnStream> streams;
  std::vector<std::vector<std::size_t>> groups;  // stream ids per shift class
  bool grouped = false;   // per-group sqrt(sum of squared frontiers) bound applies
  Scalar flat_scale = 1;  // otherwise: flat_scale * min frontier

  auto add_stream = [&](Eigen::Index qoff) {
    const ReducedVector rq = apply_transform(q.values.segment(qoff, w), idx.config.transform);
    streams.push_back({MbrScan(idx, lb_embedding(rq)), qoff});
  };

  switch (idx.config.kind) {
    case WindowingKind::sliding: {
      if (L < w) {
        raise(Errc::query_shorter_than_window, "query length " + std::to_string(L) +
                                                   " below window " + std::to_string(w));
      }
      grouped = true;
      groups.emplace_back();
      for (const Window& win : disjoint_windows(q, w)) {
        groups.back().push_back(streams.size());
        add_stream(win.start);
      }
      break;
    }
    case WindowingKind::disjoint: {
      if (w > (L + 1) / 2) {
        raise(Errc::window_too_large_for_query,
              "dualmatch index needs window <= floor((Len[Q]+1)/2) = " +
                  std::to_string((L + 1) / 2) + ", got " + std::to_string(w));
      }
      // worst case over placement phases: every placement fully contains at
      // least floor((Len[Q]+1)/w) - 1 indexed disjoint windows
      flat_scale = std::sqrt(static_cast<Scalar>((L + 1) / w - 1));
      for (Eigen::Index u = 0; u + w <= L; ++u) add_stream(u);
      break;
    }
    case WindowingKind::j_sliding: {
      const Eigen::Index J = idx.config.sliding_factor;
      if (L < w + J - 1) {
        raise(Errc::query_shorter_than_window,
              "query length " + std::to_string(L) + " leaves shift " + std::to_string(J - 1) +
                  " without a full window of length " + std::to_string(w));
      }
      const auto jd = j_disjoint_windows(q, w, J);
      if (w % J == 0) {
        grouped = true;
        for (const auto& g : jd) {
          groups.emplace_back();
          for (const Window& win : g.windows) {
            groups.back().push_back(streams.size());
            add_stream(win.start);
          }
        }
      } else {
        const Eigen::Index p_min = (L - J + 1) / w;
        flat_scale = std::sqrt(static_cast<Scalar>((p_min + 1) / 2));
        for (const auto& g : jd) {
          for (const Window& win : g.windows) add_stream(win.start);
        }
      }
      break;
    }
  }

  auto unseen_bound = [&]() -> Scalar {
    if (grouped) {
      Scalar best = kInf;
      for (const auto& g : groups) {
        Scalar sum_sq = 0;
        for (std::size_t sidx : g) {
          const Scalar f = streams[sidx].scan.frontier();
          if (f == kInf) {
            sum_sq = kInf;
            break;
          }
          sum_sq += f * f;
        }
        best = std::min(best, sum_sq == kInf ? kInf : std::sqrt(sum_sq));
      }
      return best;
    }
    Scalar fmin = kInf;
    for (const auto& st : streams) fmin = std::min(fmin, st.scan.frontier());
    return flat_scale * fmin;
  };

  std::set<Placement> seen;
  std::vector<MatchResult> refined;
  std::multiset<Scalar> dists;
  auto kth = [&]() -> Scalar {
    if (static_cast<Eigen::Index>(dists.size()) < k) return kInf;
    auto it = dists.begin();
    std::advance(it, k - 1);
    return *it;
  };

  while (kth() > unseen_bound() - kBoundSlack) {
    std::size_t pick = streams.size();
    Scalar best_f = kInf;
    for (std::size_t i = 0; i < streams.size(); ++i) {
      const Scalar f = streams[i].scan.frontier();
      if (f < best_f) {
        best_f = f;
        pick = i;
      }
    }
    if (pick == streams.size()) break;  // all streams exhausted, kth is exact
    const auto batch = streams[pick].scan.next();
    if (!batch) continue;
    if (stats) {
      stats->searches += 1;
      stats->candidate_windows += static_cast<long>(batch->mbr->entries.size());
    }
    for (const auto& e : batch->mbr->entries) {
      const Sequence& s = ds.at(e.sequence_id);
      const Eigen::Index start = e.start - streams[pick].qoff;
      if (start < 0 || start + L > s.length()) continue;
      if (!seen.emplace(e.sequence_id, start).second) continue;
      const Scalar d = lp_norm(q.values, s.values.segment(start, L), 2);
      refined.push_back({e.sequence_id, start, d});
      dists.insert(d);
    }
  }

  if (stats) {
    stats->candidates += static_cast<long>(seen.size());
    stats->refined += static_cast<long>(seen.size());
    stats->results += static_cast<long>(k);
  }
  std::sort(refined.begin(), refined.end(), [](const MatchResult& a, const MatchResult& b) {
    return std::tie(a.distance, a.sequence_id, a.start) <
           std::tie(b.distance, b.sequence_id, b.start);
  });
  refined.resize(static_cast<std::size_t>(k));
  return refined;
}

std::vector<MatchResult> rescore(const Dataset& ds, const Sequence& q,
                                 std::vector<MatchResult> results, const DistanceSpec& dist) {
  const Eigen::Index L = q.length();
  for (auto& r : results) {
    r.distance = dist.evaluate(q.values, ds.at(r.sequence_id).values.segment(r.start, L));
  }
  std::sort(results.begin(), results.end(), [](const MatchResult& a, const MatchResult& b) {
    return std::tie(a.distance, a.sequence_id, a.start) <
           std::tie(b.distance, b.sequence_id, b.start);
  });
  return results;
}

namespace {

Eigen::Index bench_transform_param(TransformId id, Eigen::Index w) {
  switch (id) {
    case TransformId::identity:
      return 0;
    case TransformId::paa:
      for (Eigen::Index d = std::max<Eigen::Index>(1, w / 4); d > 1; --d) {
        if (w % d == 0) return d;
      }
      return 1;
    case TransformId::dft:
      return std::max<Eigen::Index>(1, w / 8);
    case TransformId::dct:
    case TransformId::haar:
      return std::max<Eigen::Index>(1, w / 4);
  }
  return 1;
}

}  // namespace

std::vector<WindowEffectRow> bench_window_effect(const Dataset& ds, const Dataset& queries,
                                                 Scalar eps,
                                                 const std::vector<Eigen::Index>& omegas,
                                                 TransformId transform, int threads) {
  if (queries.empty()) raise(Errc::empty_dataset, "no query sequences");
  std::vector<WindowEffectRow> rows;
  for (const Eigen::Index w : omegas) {
    IndexConfig base;
    base.window = w;
    base.transform = {transform, bench_transform_param(transform, w)};
    const struct {
      const char* name;
      WindowingKind kind;
      Eigen::Index j;
    } algos[] = {
        {"frm", WindowingKind::sliding, 1},
        {"dualmatch", WindowingKind::disjoint, 1},
        {"generalmatch", WindowingKind::j_sliding, std::max<Eigen::Index>(1, w / 2)},
    };
    for (const auto& algo : algos) {
      IndexConfig config = base;
      config.kind = algo.kind;
      config.sliding_factor = algo.j;
      const SubsequenceIndex idx = build_index(ds, config);
      MatchStats st;
      for (const auto& q : queries.sequences) {
        range_match(idx, ds, q, eps, &st, threads);
      }
      WindowEffectRow row;
      row.omega = w;
      row.algorithm = algo.name;
      row.candidates = st.candidates;
      row.results = st.results;
      row.pruning_ratio =
          st.total_placements == 0
              ? 0
              : 1 - static_cast<Scalar>(st.candidates) / static_cast<Scalar>(st.total_placements);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace tsmatch
