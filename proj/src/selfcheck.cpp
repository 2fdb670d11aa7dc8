#include "tsmatch/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "tsmatch/distances.hpp"
#include "tsmatch/index.hpp"
#include "tsmatch/lower_bounds.hpp"
#include "tsmatch/matcher.hpp"
#include "tsmatch/motifs.hpp"
#include "tsmatch/synthetic.hpp"
#include "tsmatch/transforms.hpp"
#include "tsmatch/windowing.hpp"

namespace tsmatch {

bool SelfcheckReport::all_passed() const {
  for (const auto& s : suites) {
    if (!s.passed) return false;
  }
  return true;
}

const SuiteResult* SelfcheckReport::first_failure() const {
  for (const auto& s : suites) {
    if (!s.passed) return &s;
  }
  return nullptr;
}

namespace {

constexpr Scalar kSlack = 1e-9;

struct SuiteCheck {
  bool ok = true;
  std::string first_failure;
  long checks = 0;

  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

Vector random_walk(GaussianSource& g, Eigen::Index n) {
  Vector v(n);
  Scalar level = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    level += g();
    v[i] = level;
  }
  return v;
}

SuiteResult suite_windowing(const SelfcheckOptions& opt) {
  SuiteCheck c;
  GaussianSource g(opt.seed * 31 + 1);
  for (int t = 0; t < opt.trials; ++t) {
    const Eigen::Index len = 8 + static_cast<Eigen::Index>(g.raw() % 120);
    const Eigen::Index w = 1 + static_cast<Eigen::Index>(g.raw() % static_cast<std::uint64_t>(len));
    Sequence s{0, "", random_walk(g, len)};
    c.expect(j_sliding_windows(s, w, 1) == sliding_windows(s, w), "j_sliding(J=1) != sliding");
    c.expect(j_sliding_windows(s, w, w) == disjoint_windows(s, w), "j_sliding(J=w) != disjoint");
    const auto sl = sliding_windows(s, w);
    c.expect(static_cast<Eigen::Index>(sl.size()) == len - w + 1, "sliding count");
    const auto dj = disjoint_windows(s, w);
    c.expect(static_cast<Eigen::Index>(dj.size()) == len / w, "disjoint count");
  }
  Sequence big{0, "", Vector::Zero(1024)};
  c.expect(sliding_windows(big, 16).size() == 1009, "Len=1024 w=16 sliding != 1009");
  c.expect(disjoint_windows(big, 16).size() == 64, "Len=1024 w=16 disjoint != 64");
  return {"windowing", c.ok,
          c.ok ? std::to_string(c.checks) + " checks" : c.first_failure};
}

SuiteResult suite_transforms(const SelfcheckOptions& opt) {
  SuiteCheck c;
  GaussianSource g(opt.seed * 31 + 2);
  const Eigen::Index lens[] = {8, 16, 32};
  for (int t = 0; t < opt.trials; ++t) {
    const Eigen::Index n = lens[t % 3];
    const Vector x = random_walk(g, n);
    const Vector y = random_walk(g, n);
    const Scalar ed = lp_norm(x, y, 2);
    for (const TransformId id :
         {TransformId::paa, TransformId::dft, TransformId::dct, TransformId::haar}) {
      const Eigen::Index max_param = id == TransformId::dft ? n / 2 + 1 : n;
      for (Eigen::Index param = 1; param <= max_param; ++param) {
        if (id == TransformId::paa && n % param != 0) continue;
        const TransformSpec spec{id, param};
        const Scalar lb = reduced_lb(apply_transform(x, spec), apply_transform(y, spec));
        c.expect(lb <= ed + kSlack, to_string(id) + " reduced distance above ED");
        const bool full = (id == TransformId::paa && param == n) ||
                          (id == TransformId::dft && param == n / 2 + 1) ||
                          (id != TransformId::paa && id != TransformId::dft && param == n);
        if (full) c.expect(std::abs(lb - ed) <= kSlack, to_string(id) + " full-dim != ED");
      }
    }
  }
  return {"transforms", c.ok,
          c.ok ? std::to_string(c.checks) + " checks" : c.first_failure};
}

SuiteResult suite_lower_bound_chain(const SelfcheckOptions& opt) {
  SuiteCheck c;
  GaussianSource g(opt.seed * 31 + 3);
  for (int t = 0; t < opt.trials; ++t) {
    const Eigen::Index n = 32;
    const Vector x = random_walk(g, n);
    const Vector y = random_walk(g, n);
    const Eigen::Index r = static_cast<Eigen::Index>(g.raw() % 8);
    const Scalar ed = lp_norm(x, y, 2);
    const Scalar d_free = dtw(x, y, {DtwConstraintKind::none, 0});
    const Scalar d_band = dtw(x, y, {DtwConstraintKind::sakoe_chiba, r});
    const Envelope env = envelope(y, r);
    const Scalar keogh = lb_keogh(env, x);
    const Scalar paa_lb = lb_paa(env, 8, apply_transform(x, TransformSpec{TransformId::paa, 8}));
    c.expect(paa_lb <= keogh + kSlack, "lb_paa above lb_keogh");
    c.expect(keogh <= d_band + kSlack, "lb_keogh above banded DTW");
    c.expect(d_band + kSlack >= d_free, "banded DTW below free DTW");
    c.expect(d_free <= ed + kSlack, "free DTW above ED");
    c.expect(lb_kim(x, y) <= d_free + kSlack, "lb_kim above DTW");
    c.expect(lb_yi(x, y) <= d_free + kSlack, "lb_yi above DTW");
    const Envelope env0 = envelope(y, 0);
    c.expect(std::abs(dtw(x, y, {DtwConstraintKind::sakoe_chiba, 0}) - ed) <= kSlack,
             "DTW r=0 != ED");
    c.expect(std::abs(lb_paa(env0, n, apply_transform(x, TransformSpec{TransformId::paa, n})) -
                      lb_keogh(env0, x)) <= kSlack,
             "lb_paa N=n != lb_keogh");
  }
  return {"lower-bound-chain", c.ok,
          c.ok ? std::to_string(c.checks) + " checks" : c.first_failure};
}

SuiteResult suite_metric_axioms(const SelfcheckOptions& opt) {
  SuiteCheck c;
  GaussianSource g(opt.seed * 31 + 4);
  for (int t = 0; t < opt.trials; ++t) {
    const Eigen::Index n = 16;
    const Vector a = random_walk(g, n);
    const Vector b = random_walk(g, n);
    const Vector d = random_walk(g, n);
    const Scalar gap = 0;
    for (int which = 0; which < 3; ++which) {
      auto dist = [&](const Vector& u, const Vector& v) {
        if (which == 0) return lp_norm(u, v, 2);
        if (which == 1) return lp_norm(u, v, 1);
        return erp(u, v, gap);
      };
      c.expect(dist(a, d) <= dist(a, b) + dist(b, d) + kSlack, "triangle inequality violated");
      c.expect(std::abs(dist(a, b) - dist(b, a)) <= kSlack, "asymmetric distance");
      c.expect(dist(a, a) <= kSlack, "nonzero self distance");
    }
  }
  // DTW is not a metric: hunt for a violating triple on short sequences
  bool found = false;
  GaussianSource g2(opt.seed * 31 + 5);
  for (int t = 0; t < 20000 && !found; ++t) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(g2.raw() % 3);
    Vector a(n), b(n), d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      a[i] = static_cast<Scalar>(g2.raw() % 4);
      b[i] = static_cast<Scalar>(g2.raw() % 4);
      d[i] = static_cast<Scalar>(g2.raw() % 4);
    }
    const DtwConstraint none{DtwConstraintKind::none, 0};
    found = dtw(a, d, none) > dtw(a, b, none) + dtw(b, d, none) + 1e-6;
  }
  c.expect(found, "no DTW triangle violation found");
  return {"metric-axioms", c.ok,
          c.ok ? std::to_string(c.checks) + " checks" : c.first_failure};
}

SuiteResult suite_lemma_fuzz(const SelfcheckOptions& opt) {
  SuiteCheck c;
  GaussianSource g(opt.seed * 31 + 6);
  for (int t = 0; t < opt.trials; ++t) {
    const Eigen::Index L = 16 + static_cast<Eigen::Index>(g.raw() % 49);
    const Eigen::Index w = 2 + static_cast<Eigen::Index>(g.raw() % 8);
    const Vector s = random_walk(g, L);
    const Vector q = random_walk(g, L);
    const Scalar eps = lp_norm(s, q, 2);  // premise D(S,Q) <= eps holds exactly

    // disjoint query windows: some aligned pair within eps/sqrt(p)
    const Eigen::Index p = L / w;
    if (p >= 1) {
      Scalar best = std::numeric_limits<Scalar>::infinity();
      Scalar sum_sq = 0;
      for (Eigen::Index m = 0; m < p; ++m) {
        const Scalar d = lp_norm(s.segment(m * w, w), q.segment(m * w, w), 2);
        best = std::min(best, d);
        sum_sq += d * d;
      }
      c.expect(best <= eps / std::sqrt(static_cast<Scalar>(p)) + kSlack,
               "no aligned window within eps/sqrt(p)");
      c.expect(sum_sq <= eps * eps + kSlack, "window squares exceed total");
    }

    // any aligned slice stays within eps
    const Eigen::Index u = static_cast<Eigen::Index>(g.raw() % static_cast<std::uint64_t>(L - w + 1));
    c.expect(lp_norm(s.segment(u, w), q.segment(u, w), 2) <= eps + kSlack,
             "aligned slice above eps");

    // J-sliding candidate rule: the shift group of a placement contains a
    // window within the search radius used by the matcher
    const Eigen::Index J = 1 + static_cast<Eigen::Index>(g.raw() % w);
    if (L >= w + J - 1) {
      const Eigen::Index margin = 16;
      const Eigen::Index start = static_cast<Eigen::Index>(g.raw() % margin);
      Vector data(L + margin);
      data.head(start) = random_walk(g, start);
      data.segment(start, L) = s;
      data.tail(L + margin - start - L) = random_walk(g, margin - start);

      // the matcher finds this placement iff some query window aligned with
      // an indexed data offset sits within its group's search radius
      const auto groups = j_disjoint_windows(Sequence{0, "", q}, w, J);
      const Eigen::Index p_min = (L - J + 1) / w;
      const Scalar flat_radius = eps / std::sqrt(static_cast<Scalar>((p_min + 1) / 2));
      bool hit = false;
      for (const auto& grp : groups) {
        const Scalar radius = w % J == 0
                                  ? eps / std::sqrt(static_cast<Scalar>(grp.windows.size()))
                                  : flat_radius;
        for (const Window& win : grp.windows) {
          if ((start + win.start) % J != 0) continue;  // not an indexed data offset
          const Scalar d =
              lp_norm(data.segment(start + win.start, w), q.segment(win.start, w), 2);
          hit = hit || d <= radius + kSlack;
        }
      }
      c.expect(hit, "no aligned window within its search radius");
    }
  }
  return {"lemma-fuzz", c.ok,
          c.ok ? std::to_string(c.checks) + " checks" : c.first_failure};
}

std::string result_key(const std::vector<MatchResult>& rs) {
  std::ostringstream os;
  for (const auto& r : rs) os << r.sequence_id << ":" << r.start << ";";
  return os.str();
}

SuiteResult suite_range_exactness(const SelfcheckOptions& opt) {
  SuiteCheck c;
  const int rounds = std::max(1, opt.trials / 20);
  for (int t = 0; t < rounds; ++t) {
    const Dataset ds = random_walk_dataset(6, 128, opt.seed + static_cast<std::uint64_t>(t));
    GaussianSource g(opt.seed * 31 + 7 + static_cast<std::uint64_t>(t));
    Sequence q{100, "", random_walk(g, 32)};
    // epsilon at roughly the first percentile of placement distances
    std::vector<Scalar> dists;
    for (const auto& s : ds.sequences) {
      for (Eigen::Index st = 0; st + q.length() <= s.length(); ++st) {
        dists.push_back(lp_norm(q.values, s.values.segment(st, q.length()), 2));
      }
    }
    std::sort(dists.begin(), dists.end());
    const Scalar eps = dists[dists.size() / 100];
    const auto expected = brute_force_range(ds, q, eps, {}, opt.threads);

    for (const Eigen::Index w : {Eigen::Index(8), Eigen::Index(16)}) {
      for (const Eigen::Index J : {Eigen::Index(1), Eigen::Index(3), Eigen::Index(8)}) {
        if (J > w) continue;
        IndexConfig cfg;
        cfg.window = w;
        cfg.transform = {TransformId::paa, 4};
        cfg.kind = WindowingKind::j_sliding;
        cfg.sliding_factor = J;
        const auto idx = build_index(ds, cfg);
        const auto got = generalmatch_range(idx, ds, q, eps, nullptr, opt.threads);
        c.expect(result_key(got) == result_key(expected), "generalmatch misses matches");
      }
      IndexConfig cfg;
      cfg.window = w;
      cfg.transform = {TransformId::dft, 2};
      cfg.kind = WindowingKind::sliding;
      const auto idx_s = build_index(ds, cfg);
      c.expect(result_key(frm_range(idx_s, ds, q, eps, nullptr, opt.threads)) ==
                   result_key(expected),
               "frm misses matches");
      cfg.kind = WindowingKind::disjoint;
      const auto idx_d = build_index(ds, cfg);
      c.expect(result_key(dualmatch_range(idx_d, ds, q, eps, nullptr, opt.threads)) ==
                   result_key(expected),
               "dualmatch misses matches");
    }
  }
  return {"range-exactness", c.ok,
          c.ok ? std::to_string(c.checks) + " checks" : c.first_failure};
}

SuiteResult suite_knn(const SelfcheckOptions& opt) {
  SuiteCheck c;
  const int rounds = std::max(1, opt.trials / 25);
  for (int t = 0; t < rounds; ++t) {
    const Dataset ds = random_walk_dataset(4, 96, opt.seed + 1000 + static_cast<std::uint64_t>(t));
    GaussianSource g(opt.seed * 31 + 8 + static_cast<std::uint64_t>(t));
    Sequence q{100, "", random_walk(g, 24)};

    std::vector<MatchResult> all;
    for (const auto& s : ds.sequences) {
      for (Eigen::Index st = 0; st + q.length() <= s.length(); ++st) {
        all.push_back({s.id, st, lp_norm(q.values, s.values.segment(st, q.length()), 2)});
      }
    }
    std::sort(all.begin(), all.end(), [](const MatchResult& a, const MatchResult& b) {
      return std::tie(a.distance, a.sequence_id, a.start) <
             std::tie(b.distance, b.sequence_id, b.start);
    });

    for (const auto kind : {WindowingKind::sliding, WindowingKind::disjoint,
                            WindowingKind::j_sliding}) {
      IndexConfig cfg;
      cfg.window = 8;
      cfg.transform = {TransformId::paa, 4};
      cfg.kind = kind;
      cfg.sliding_factor = kind == WindowingKind::j_sliding ? 3 : 1;
      const auto idx = build_index(ds, cfg);
      for (const Eigen::Index k : {Eigen::Index(1), Eigen::Index(5)}) {
        const auto got = knn(idx, ds, q, k);
        bool same = static_cast<Eigen::Index>(got.size()) == k;
        for (Eigen::Index i = 0; same && i < k; ++i) {
          same = std::abs(got[static_cast<std::size_t>(i)].distance -
                          all[static_cast<std::size_t>(i)].distance) <= kSlack;
        }
        c.expect(same, "knn disagrees with oracle distances");
      }
    }
  }
  return {"knn", c.ok, c.ok ? std::to_string(c.checks) + " checks" : c.first_failure};
}

SuiteResult suite_motifs(const SelfcheckOptions& opt) {
  SuiteCheck c;
  GaussianSource g(opt.seed * 31 + 9);
  // find_motifs against a naive substring enumeration
  for (int t = 0; t < std::max(1, opt.trials / 2); ++t) {
    std::vector<SymbolString> strings;
    const int nstr = 1 + static_cast<int>(g.raw() % 4);
    for (int i = 0; i < nstr; ++i) {
      SymbolString s;
      s.sequence_id = i;
      const int len = 3 + static_cast<int>(g.raw() % 10);
      for (int j = 0; j < len; ++j) s.symbols.push_back(static_cast<int>(g.raw() % 3));
      strings.push_back(std::move(s));
    }
    const Eigen::Index L = 1 + static_cast<Eigen::Index>(g.raw() % 3);
    const long min_count = 1 + static_cast<long>(g.raw() % 3);

    std::map<std::vector<int>, long> naive;
    for (const auto& s : strings) {
      for (std::size_t off = 0; off + static_cast<std::size_t>(L) <= s.symbols.size(); ++off) {
        naive[std::vector<int>(s.symbols.begin() + static_cast<std::ptrdiff_t>(off),
                               s.symbols.begin() + static_cast<std::ptrdiff_t>(off) +
                                   static_cast<std::ptrdiff_t>(L))] += 1;
      }
    }
    long expected = 0;
    for (const auto& [pat, count] : naive) {
      if (count >= min_count) ++expected;
    }
    const auto motifs = find_motifs(strings, L, min_count);
    c.expect(static_cast<long>(motifs.size()) == expected, "motif set differs from oracle");
    bool counts_ok = true;
    for (const auto& m : motifs) {
      counts_ok = counts_ok && naive[m.pattern] == m.count &&
                  m.count == static_cast<long>(m.occurrences.size());
    }
    c.expect(counts_ok, "motif counts differ from oracle");
  }
  // determinism and objective monotonicity of symbolize
  const Dataset ds = random_walk_dataset(3, 96, opt.seed + 7);
  SymbolizeOptions so;
  so.window = 8;
  so.clusters = 4;
  so.seed = opt.seed;
  so.threads = opt.threads;
  const auto a = symbolize(ds, so);
  const auto b = symbolize(ds, so);
  bool same = a.strings.size() == b.strings.size();
  for (std::size_t i = 0; same && i < a.strings.size(); ++i) {
    same = a.strings[i].symbols == b.strings[i].symbols;
  }
  c.expect(same, "symbolize not deterministic");
  bool monotone = true;
  for (std::size_t i = 1; i < a.objective_trace.size(); ++i) {
    monotone = monotone && a.objective_trace[i] <= a.objective_trace[i - 1] + kSlack;
  }
  c.expect(monotone, "k-means objective increased");
  return {"motifs", c.ok, c.ok ? std::to_string(c.checks) + " checks" : c.first_failure};
}

SuiteResult suite_tlb(const SelfcheckOptions& opt) {
  SuiteCheck c;
  GaussianSource g(opt.seed * 31 + 10);
  const Scalar inject = opt.break_bound ? 1.01 : 1.0;
  for (int t = 0; t < opt.trials; ++t) {
    const Eigen::Index n = 32;
    const Vector x = random_walk(g, n);
    const Vector y = random_walk(g, n);
    const Scalar ed = lp_norm(x, y, 2);
    try {
      const TransformSpec ident{TransformId::identity, 0};
      const Scalar lb_id =
          inject * reduced_lb(apply_transform(x, ident), apply_transform(y, ident));
      const Scalar r_id = tlb(lb_id, ed);
      c.expect(std::abs(r_id - 1.0) <= kSlack, "identity TLB != 1");

      const TransformSpec paa_spec{TransformId::paa, 4};
      const Scalar r_paa =
          tlb(reduced_lb(apply_transform(x, paa_spec), apply_transform(y, paa_spec)), ed);
      const Scalar d_free = dtw(x, y, {DtwConstraintKind::none, 0});
      const Scalar r_kim = tlb(lb_kim(x, y), d_free);
      const Scalar r_keogh =
          tlb(lb_keogh(envelope(y, 4), x), dtw(x, y, {DtwConstraintKind::sakoe_chiba, 4}));
      for (const Scalar r : {r_paa, r_kim, r_keogh}) {
        c.expect(r >= 0 && r <= 1, "TLB outside [0,1]");
      }
    } catch (const Error& e) {
      c.expect(false, std::string("bound violation: ") + e.what());
    }
  }
  return {"tlb", c.ok, c.ok ? std::to_string(c.checks) + " checks" : c.first_failure};
}

}  // namespace

SelfcheckReport run_selfcheck(const SelfcheckOptions& options) {
  if (options.trials < 1) {
    raise(Errc::conflicting_options, "selfcheck needs --trials >= 1");
  }
  SelfcheckReport report;
  report.suites.push_back(suite_windowing(options));
  report.suites.push_back(suite_transforms(options));
  report.suites.push_back(suite_lower_bound_chain(options));
  report.suites.push_back(suite_metric_axioms(options));
  report.suites.push_back(suite_lemma_fuzz(options));
  report.suites.push_back(suite_range_exactness(options));
  report.suites.push_back(suite_knn(options));
  report.suites.push_back(suite_motifs(options));
  report.suites.push_back(suite_tlb(options));
  return report;
}

}  // namespace tsmatch
