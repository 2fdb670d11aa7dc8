#include "tsmatch/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tsmatch/core.hpp"
#include "tsmatch/distances.hpp"
#include "tsmatch/index.hpp"
#include "tsmatch/lower_bounds.hpp"
#include "tsmatch/matcher.hpp"
#include "tsmatch/motifs.hpp"
#include "tsmatch/selfcheck.hpp"
#include "tsmatch/synthetic.hpp"
#include "tsmatch/transforms.hpp"

namespace tsmatch {

namespace {

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::unknown_flag:
    case Errc::conflicting_options:
    case Errc::missing_required:
    case Errc::invalid_argument:
    case Errc::invalid_p:
    case Errc::invalid_sliding_factor:
      return 1;
    case Errc::bound_violation:
      return 3;
    default:
      return 2;
  }
}

std::string fmt(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// All parsed parameters of one invocation; filled by CLI11, consumed by
/// the subcommand handlers.
struct RunConfig {
  std::string input, data, query, queries, index_path, out, centroids_path;
  std::string format = "ucr";
  bool labeled = false;
  int threads = 1;
  std::uint64_t seed = 42;

  std::string transform = "paa";
  long frames = 0;
  long coeffs = 0;
  long window = 16;
  std::string slide = "sliding";
  long j = 1;
  long pack = 16;
  long fanout = 16;

  double epsilon = 0;
  std::string algorithm;
  long k = 1;
  bool no_tree = false;

  std::string distance = "l2";
  std::string dtw_constraint = "none";
  double erp_gap = 0;
  double edr_tol = 0;
  bool erp_gap_set = false;
  bool edr_tol_set = false;

  long pairs = 200;
  long length = 64;

  std::vector<long> omegas{8, 16, 32, 64};

  long clusters = 8;
  long motif_len = 3;
  long min_count = 2;
  bool no_normalize = false;
  bool no_overlap = false;

  long trials = 100;
  bool break_bound = false;
};

DatasetFormat parse_format(const std::string& f) {
  if (f == "ucr" || f == "whitespace" || f == "ucr_whitespace") {
    return DatasetFormat::ucr_whitespace;
  }
  if (f == "csv") return DatasetFormat::csv;
  raise(Errc::invalid_argument, "unknown format '" + f + "' (ucr or csv)");
}

DtwConstraint parse_dtw_constraint(const std::string& s) {
  if (s == "none") return {DtwConstraintKind::none, 0};
  if (s == "itakura") return {DtwConstraintKind::itakura, 0};
  if (s.rfind("sakoe", 0) == 0) {
    const auto colon = s.find(':');
    if (colon == std::string::npos || colon + 1 == s.size()) {
      raise(Errc::invalid_argument, "sakoe needs a band half-width, e.g. sakoe:4");
    }
    long r = 0;
    const auto [ptr, ec] = std::from_chars(s.data() + colon + 1, s.data() + s.size(), r);
    if (ec != std::errc() || ptr != s.data() + s.size() || r < 0) {
      raise(Errc::invalid_argument, "bad band half-width in '" + s + "'");
    }
    return {DtwConstraintKind::sakoe_chiba, r};
  }
  raise(Errc::invalid_argument, "unknown DTW constraint '" + s + "' (none, sakoe:r, itakura)");
}

DistanceKind distance_from_string(const std::string& name) {
  if (name == "l1") return DistanceKind::l1;
  if (name == "l2") return DistanceKind::l2;
  if (name == "dtw") return DistanceKind::dtw;
  if (name == "erp") return DistanceKind::erp;
  if (name == "edr") return DistanceKind::edr;
  raise(Errc::invalid_argument, "unknown distance '" + name + "'");
}

DistanceSpec make_distance(const RunConfig& rc) {
  DistanceSpec spec;
  spec.kind = distance_from_string(rc.distance);
  spec.constraint = parse_dtw_constraint(rc.dtw_constraint);
  if (rc.erp_gap_set) spec.erp_gap = rc.erp_gap;
  if (rc.edr_tol_set) spec.edr_tol = rc.edr_tol;
  return spec;
}

TransformSpec make_transform_spec(const RunConfig& rc, bool frames_set, bool coeffs_set) {
  const TransformId id = transform_from_string(rc.transform);
  switch (id) {
    case TransformId::identity:
      if (frames_set || coeffs_set) {
        raise(Errc::conflicting_options, "identity takes neither --frames nor --coeffs");
      }
      return {id, 0};
    case TransformId::paa:
      if (coeffs_set) {
        raise(Errc::conflicting_options, "--coeffs applies to dft/dct/haar; paa takes --frames");
      }
      if (!frames_set) raise(Errc::missing_required, "paa needs --frames");
      return {id, rc.frames};
    default:
      if (frames_set) {
        raise(Errc::conflicting_options, "--frames applies to paa; use --coeffs");
      }
      if (!coeffs_set) raise(Errc::missing_required, rc.transform + " needs --coeffs");
      return {id, rc.coeffs};
  }
}

Dataset load(const std::string& path, const RunConfig& rc) {
  return load_dataset(path, parse_format(rc.format), rc.labeled);
}

Sequence load_query_sequence(const std::string& path, const RunConfig& rc, std::ostream& err) {
  Dataset qs = load(path, rc);
  if (qs.size() > 1) {
    err << "query file holds " << qs.size() << " sequences; using the first\n";
  }
  return qs.sequences.front();
}

/// CSV and report destination: --out file when given, stdout otherwise.
class OutTarget {
 public:
  OutTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) raise(Errc::io_error, "cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void print_stats(const MatchStats& st, std::ostream& err) {
  err << "searches=" << st.searches << " candidate_windows=" << st.candidate_windows
      << " candidates=" << st.candidates << " refined=" << st.refined
      << " results=" << st.results << " total_placements=" << st.total_placements << "\n";
}

void print_results(const std::vector<MatchResult>& results, std::ostream& out) {
  for (const auto& r : results) {
    out << r.sequence_id << '\t' << r.start << '\t' << fmt(r.distance) << '\n';
  }
}

int run_build_index(const RunConfig& rc, bool frames_set, bool coeffs_set, bool j_set,
                    std::ostream& err) {
  if (rc.window < 1) raise(Errc::conflicting_options, "--window must be >= 1");
  IndexConfig cfg;
  cfg.kind = windowing_from_string(rc.slide);
  if (j_set && cfg.kind != WindowingKind::j_sliding) {
    raise(Errc::conflicting_options, "--j applies to --slide jsliding only");
  }
  cfg.window = rc.window;
  cfg.sliding_factor = cfg.kind == WindowingKind::j_sliding ? rc.j : 1;
  cfg.pack_count = rc.pack;
  cfg.tree_fanout = rc.fanout;
  cfg.transform = make_transform_spec(rc, frames_set, coeffs_set);

  const Dataset ds = load(rc.input, rc);
  const SubsequenceIndex idx = build_index(ds, cfg);
  save_index(idx, rc.out);
  err << "indexed " << idx.entry_count() << " windows in " << idx.mbrs.size() << " boxes to "
      << rc.out << "\n";
  if (!idx.skipped.empty()) {
    err << idx.skipped.size() << " sequences shorter than the window were skipped\n";
  }
  return 0;
}

int run_range_query(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  if (rc.epsilon < 0) {
    raise(Errc::conflicting_options, "--epsilon must be >= 0 (a distance tolerance)");
  }
  SubsequenceIndex idx = load_index(rc.index_path);
  idx.config.use_tree = !rc.no_tree;
  if (!rc.algorithm.empty()) {
    const MatchAlgorithm algo = algorithm_from_string(rc.algorithm);
    if (required_kind(algo) != idx.config.kind) {
      raise(Errc::index_config_mismatch, to_string(algo) + " needs a " +
                                             to_string(required_kind(algo)) +
                                             " index, this one uses " +
                                             to_string(idx.config.kind) + " windows");
    }
  }
  const Dataset ds = load(rc.data, rc);
  const Sequence q = load_query_sequence(rc.query, rc, err);

  MatchStats st;
  auto results = range_match(idx, ds, q, rc.epsilon, &st, rc.threads);
  const DistanceSpec dist = make_distance(rc);
  if (dist.kind != DistanceKind::l2) {
    results = rescore(ds, q, results, dist);
    err << "distances rescored with " << to_string(dist.kind)
        << "; the result set is the Euclidean epsilon-match set\n";
  }
  print_results(results, out);
  print_stats(st, err);
  return 0;
}

int run_knn_query(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  if (rc.k < 1) raise(Errc::conflicting_options, "--k must be >= 1");
  SubsequenceIndex idx = load_index(rc.index_path);
  idx.config.use_tree = !rc.no_tree;
  const Dataset ds = load(rc.data, rc);
  const Sequence q = load_query_sequence(rc.query, rc, err);

  MatchStats st;
  auto results = knn(idx, ds, q, rc.k, &st);
  const DistanceSpec dist = make_distance(rc);
  if (dist.kind != DistanceKind::l2) {
    results = rescore(ds, q, results, dist);
    err << "distances rescored with " << to_string(dist.kind)
        << "; the result set is the Euclidean k-nearest set\n";
  }
  print_results(results, out);
  print_stats(st, err);
  return 0;
}

Eigen::Index largest_divisor_at_most(Eigen::Index n, Eigen::Index cap) {
  for (Eigen::Index d = std::max<Eigen::Index>(1, cap); d > 1; --d) {
    if (n % d == 0) return d;
  }
  return 1;
}

int run_tlb_bench(const RunConfig& rc, bool input_set, std::ostream& out, std::ostream& err) {
  if (rc.pairs < 1) raise(Errc::conflicting_options, "--pairs must be >= 1");
  if (rc.length < 2) raise(Errc::conflicting_options, "--length must be >= 2");
  const Eigen::Index n = rc.length;

  std::vector<std::pair<Vector, Vector>> sample;
  GaussianSource g(rc.seed);
  if (input_set) {
    const Dataset ds = load(rc.input, rc);
    std::vector<const Sequence*> eligible;
    for (const auto& s : ds.sequences) {
      if (s.length() >= n) eligible.push_back(&s);
    }
    if (eligible.empty()) {
      raise(Errc::window_too_long, "no sequence is at least --length " + std::to_string(n));
    }
    auto draw = [&]() -> Vector {
      const Sequence& s = *eligible[g.raw() % eligible.size()];
      const auto span = static_cast<std::uint64_t>(s.length() - n + 1);
      return s.values.segment(static_cast<Eigen::Index>(g.raw() % span), n);
    };
    for (long i = 0; i < rc.pairs; ++i) sample.emplace_back(draw(), draw());
  } else {
    auto walk = [&]() {
      Vector v(n);
      Scalar level = 0;
      for (Eigen::Index t = 0; t < n; ++t) {
        level += g();
        v[t] = level;
      }
      return v;
    };
    for (long i = 0; i < rc.pairs; ++i) sample.emplace_back(walk(), walk());
  }

  struct Row {
    std::string name;
    long parameter = 0;
    Scalar sum = 0;
    Scalar min = std::numeric_limits<Scalar>::infinity();
    long count = 0;

    void add(Scalar v) {
      sum += v;
      min = std::min(min, v);
      ++count;
    }
  };

  const Eigen::Index frames = largest_divisor_at_most(n, std::max<Eigen::Index>(1, n / 8));
  const Eigen::Index coeffs = std::max<Eigen::Index>(1, n / 8);
  const Eigen::Index band = std::max<Eigen::Index>(1, n / 10);
  const bool pow2 = (n & (n - 1)) == 0;

  std::vector<Row> rows = {
      {"identity", n, 0, std::numeric_limits<Scalar>::infinity(), 0},
      {"paa", frames, 0, std::numeric_limits<Scalar>::infinity(), 0},
      {"dft", std::min<Eigen::Index>(coeffs, n / 2 + 1), 0,
       std::numeric_limits<Scalar>::infinity(), 0},
      {"dct", coeffs, 0, std::numeric_limits<Scalar>::infinity(), 0},
      {"haar", coeffs, 0, std::numeric_limits<Scalar>::infinity(), 0},
      {"lb_kim", 0, 0, std::numeric_limits<Scalar>::infinity(), 0},
      {"lb_yi", 0, 0, std::numeric_limits<Scalar>::infinity(), 0},
      {"lb_keogh", band, 0, std::numeric_limits<Scalar>::infinity(), 0},
      {"lb_paa", frames, 0, std::numeric_limits<Scalar>::infinity(), 0},
  };

  for (const auto& [x, y] : sample) {
    const Scalar ed = lp_norm(x, y, 2);
    const Scalar d_free = dtw(x, y, {DtwConstraintKind::none, 0});
    const Scalar d_band = dtw(x, y, {DtwConstraintKind::sakoe_chiba, band});
    const Envelope env = envelope(y, band);

    auto reduced = [&](const TransformSpec& spec) {
      return reduced_lb(apply_transform(x, spec), apply_transform(y, spec));
    };
    rows[0].add(tlb(reduced({TransformId::identity, 0}), ed));
    rows[1].add(tlb(reduced({TransformId::paa, frames}), ed));
    rows[2].add(tlb(reduced({TransformId::dft, static_cast<Eigen::Index>(rows[2].parameter)}), ed));
    rows[3].add(tlb(reduced({TransformId::dct, coeffs}), ed));
    if (pow2) rows[4].add(tlb(reduced({TransformId::haar, coeffs}), ed));
    rows[5].add(tlb(lb_kim(x, y), d_free));
    rows[6].add(tlb(lb_yi(x, y), d_free));
    rows[7].add(tlb(lb_keogh(env, x), d_band));
    rows[8].add(tlb(lb_paa(env, frames, paa(x, frames)), d_band));
  }
  if (!pow2) err << "haar row skipped: --length " << n << " is not a power of two\n";

  OutTarget target(rc.out, out);
  target.get() << "name,parameter,mean_tlb,min_tlb,pairs\n";
  for (const auto& r : rows) {
    if (r.count == 0) continue;
    target.get() << r.name << ',' << r.parameter << ','
                 << fmt(r.sum / static_cast<Scalar>(r.count)) << ',' << fmt(r.min) << ','
                 << r.count << '\n';
  }
  return 0;
}

int run_window_bench(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  if (rc.epsilon < 0) {
    raise(Errc::conflicting_options, "--epsilon must be >= 0 (a distance tolerance)");
  }
  if (rc.omegas.empty()) raise(Errc::conflicting_options, "--omegas must name a window size");
  std::vector<Eigen::Index> omegas;
  for (const long w : rc.omegas) {
    if (w < 1) raise(Errc::conflicting_options, "window sizes must be >= 1");
    omegas.push_back(w);
  }
  const Dataset ds = load(rc.input, rc);
  const Dataset queries = load(rc.queries, rc);
  const auto bench_rows = bench_window_effect(ds, queries, rc.epsilon, omegas,
                                              transform_from_string(rc.transform), rc.threads);
  OutTarget target(rc.out, out);
  target.get() << "omega,algorithm,candidates,results,pruning_ratio\n";
  for (const auto& r : bench_rows) {
    target.get() << r.omega << ',' << r.algorithm << ',' << r.candidates << ',' << r.results
                 << ',' << fmt(r.pruning_ratio) << '\n';
  }
  (void)err;
  return 0;
}

int run_motif_discover(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  SymbolizeOptions so;
  so.window = rc.window;
  so.clusters = rc.clusters;
  so.seed = rc.seed;
  so.normalize = !rc.no_normalize;
  so.threads = rc.threads;
  if (!rc.centroids_path.empty()) {
    const Dataset cents = load(rc.centroids_path, rc);
    so.centroids.resize(static_cast<Eigen::Index>(cents.size()), rc.window);
    for (Eigen::Index i = 0; i < so.centroids.rows(); ++i) {
      const Sequence& s = cents.sequences[static_cast<std::size_t>(i)];
      if (s.length() != rc.window) {
        raise(Errc::dimension_mismatch,
              "centroid " + std::to_string(i) + " has length " + std::to_string(s.length()) +
                  ", window is " + std::to_string(rc.window));
      }
      so.centroids.row(i) = s.values.transpose();
    }
  }
  const Dataset ds = load(rc.input, rc);
  const SymbolizeResult res = symbolize(ds, so);
  const auto motifs = find_motifs(res.strings, rc.motif_len, rc.min_count, !rc.no_overlap);

  for (const auto& m : motifs) {
    std::ostringstream pat, occ;
    for (std::size_t i = 0; i < m.pattern.size(); ++i) {
      if (i) pat << '-';
      pat << m.pattern[i];
    }
    for (std::size_t i = 0; i < m.occurrences.size(); ++i) {
      if (i) occ << ',';
      occ << m.occurrences[i].sequence_id << ':' << m.occurrences[i].offset;
    }
    out << pat.str() << '\t' << m.count << '\t' << occ.str() << '\n';
  }
  err << "clusters=" << res.centroids.rows() << " passes=" << res.objective_trace.size()
      << " objective=" << fmt(res.objective_trace.empty() ? 0 : res.objective_trace.back())
      << " motifs=" << motifs.size() << "\n";
  return 0;
}

int run_selfcheck_cmd(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  SelfcheckOptions so;
  so.seed = rc.seed;
  so.trials = static_cast<int>(rc.trials);
  so.break_bound = rc.break_bound;
  so.threads = rc.threads;
  const SelfcheckReport report = run_selfcheck(so);
  for (const auto& suite : report.suites) {
    out << (suite.passed ? "[PASS] " : "[FAIL] ") << suite.name << ": " << suite.detail << "\n";
  }
  if (const SuiteResult* fail = report.first_failure()) {
    err << "first failing suite: " << fail->name << "\n";
    return 3;
  }
  return 0;
}

void add_common(CLI::App* sub, RunConfig& rc, std::string& config_sink) {
  sub->add_option("--config", config_sink,
                  "read options from a key = value file; flags given on the "
                  "command line win");
  sub->add_option("--threads", rc.threads, "worker threads for parallel stages");
  sub->add_option("--format", rc.format, "input format: ucr or csv");
  sub->add_flag("--labeled", rc.labeled, "first token of each line is a label");
}

std::string trim_copy(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Pulls --config out of the raw args, reads the file, and appends one
/// --key=value token per config entry whose option the command line left
/// unset. Flat keys address the active subcommand's own options; unknown
/// keys are rejected.
std::vector<std::string> apply_config_file(const CLI::App& app, std::vector<std::string> args) {
  std::string path;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" || a.rfind("--config=", 0) == 0) {
      if (!path.empty()) raise(Errc::conflicting_options, "--config given twice");
      if (a == "--config") {
        if (i + 1 >= args.size()) raise(Errc::missing_required, "--config needs a file path");
        path = args[++i];
      } else {
        path = a.substr(std::string("--config=").size());
      }
      if (path.empty()) raise(Errc::missing_required, "--config needs a file path");
    } else {
      kept.push_back(a);
    }
  }
  if (path.empty()) return kept;
  if (kept.empty() || kept.front().rfind('-', 0) == 0) {
    raise(Errc::conflicting_options, "--config needs a subcommand to apply to");
  }
  const CLI::App* sub = nullptr;
  for (const CLI::App* cand : app.get_subcommands([](const CLI::App*) { return true; })) {
    if (cand->get_name() == kept.front()) sub = cand;
  }
  if (sub == nullptr) return kept;  // let the parser report the bad subcommand

  std::ifstream in(path);
  if (!in) raise(Errc::file_not_found, "cannot read config file '" + path + "'");
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_copy(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::parse_error, "config line is not 'key = value'", lineno, 1);
    }
    const std::string key = trim_copy(line.substr(0, eq));
    std::string value = trim_copy(line.substr(eq + 1));
    if (key.empty()) throw Error(Errc::parse_error, "config line has an empty key", lineno, 1);
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "config") raise(Errc::conflicting_options, "config files cannot nest");
    const std::string flag = "--" + key;
    if (sub->get_option_no_throw(flag) == nullptr) {
      raise(Errc::unknown_flag,
            "unknown config key '" + key + "' for " + sub->get_name());
    }
    bool on_cmdline = false;
    for (const std::string& a : kept) {
      on_cmdline = on_cmdline || a == flag || a.rfind(flag + "=", 0) == 0;
    }
    if (on_cmdline) continue;  // command line wins
    kept.push_back(flag + "=" + value);
  }
  return kept;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  std::string config_sink;  // --config is handled before parsing; this keeps it in --help
  CLI::App app{"exact subsequence matching over time series"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build-index", "build a reduced-space window index");
  add_common(build, rc, config_sink);
  build->add_option("--input", rc.input, "dataset file")->required();
  build->add_option("--out", rc.out, "index file to write")->required();
  build->add_option("--transform", rc.transform, "identity, paa, dft, dct or haar");
  auto* frames_opt = build->add_option("--frames", rc.frames, "PAA frame count");
  auto* coeffs_opt = build->add_option("--coeffs", rc.coeffs, "kept coefficients");
  build->add_option("--window", rc.window, "window length");
  build->add_option("--slide", rc.slide, "sliding, disjoint or jsliding");
  auto* j_opt = build->add_option("--j", rc.j, "sliding factor J for jsliding");
  build->add_option("--pack", rc.pack, "window vectors per bounding box");
  build->add_option("--fanout", rc.fanout, "tree fanout");

  auto* range = app.add_subcommand("range-query", "all placements within epsilon of the query");
  add_common(range, rc, config_sink);
  range->add_option("--index", rc.index_path, "index file")->required();
  range->add_option("--data", rc.data, "dataset the index was built from")->required();
  range->add_option("--query", rc.query, "query sequence file")->required();
  range->add_option("--epsilon", rc.epsilon, "match tolerance")->required();
  range->add_option("--algorithm", rc.algorithm, "frm, dualmatch or generalmatch");
  range->add_option("--distance", rc.distance, "reported distance: l1, l2, dtw, erp, edr");
  range->add_option("--dtw-constraint", rc.dtw_constraint, "none, sakoe:r or itakura");
  auto* erp_opt = range->add_option("--erp-gap", rc.erp_gap, "ERP gap value");
  auto* edr_opt = range->add_option("--edr-tol", rc.edr_tol, "EDR match tolerance");
  range->add_flag("--no-tree", rc.no_tree, "linear box scan instead of the tree");

  auto* knnq = app.add_subcommand("knn-query", "k nearest placements to the query");
  add_common(knnq, rc, config_sink);
  knnq->add_option("--index", rc.index_path, "index file")->required();
  knnq->add_option("--data", rc.data, "dataset the index was built from")->required();
  knnq->add_option("--query", rc.query, "query sequence file")->required();
  knnq->add_option("--k", rc.k, "neighbor count")->required();
  knnq->add_option("--distance", rc.distance, "reported distance: l1, l2, dtw, erp, edr");
  knnq->add_option("--dtw-constraint", rc.dtw_constraint, "none, sakoe:r or itakura");
  auto* erp_opt2 = knnq->add_option("--erp-gap", rc.erp_gap, "ERP gap value");
  auto* edr_opt2 = knnq->add_option("--edr-tol", rc.edr_tol, "EDR match tolerance");
  knnq->add_flag("--no-tree", rc.no_tree, "linear box scan instead of the tree");

  auto* tlbb = app.add_subcommand("tlb-bench", "lower-bound tightness report");
  add_common(tlbb, rc, config_sink);
  auto* tlb_input = tlbb->add_option("--input", rc.input, "sample window pairs from this file");
  tlbb->add_option("--pairs", rc.pairs, "pair count");
  tlbb->add_option("--length", rc.length, "window length per pair");
  tlbb->add_option("--seed", rc.seed, "sampling seed");
  tlbb->add_option("--out", rc.out, "CSV destination (stdout when absent)");

  auto* wbench = app.add_subcommand("window-bench", "window size effect report");
  add_common(wbench, rc, config_sink);
  wbench->add_option("--input", rc.input, "dataset file")->required();
  wbench->add_option("--queries", rc.queries, "query sequences file")->required();
  wbench->add_option("--epsilon", rc.epsilon, "match tolerance")->required();
  wbench->add_option("--omegas", rc.omegas, "window sizes to sweep")->delimiter(',');
  wbench->add_option("--transform", rc.transform, "reduction used for every index");
  wbench->add_option("--out", rc.out, "CSV destination (stdout when absent)");

  auto* motif = app.add_subcommand("motif-discover", "repeated shape patterns via symbols");
  add_common(motif, rc, config_sink);
  motif->add_option("--input", rc.input, "dataset file")->required();
  motif->add_option("--window", rc.window, "window length per symbol");
  motif->add_option("--clusters", rc.clusters, "symbol alphabet size");
  motif->add_option("--motif-len", rc.motif_len, "pattern length in symbols");
  motif->add_option("--min-count", rc.min_count, "minimum occurrences");
  motif->add_option("--seed", rc.seed, "clustering seed");
  motif->add_flag("--no-normalize", rc.no_normalize, "cluster raw windows, not z-scored ones");
  motif->add_flag("--no-overlap", rc.no_overlap, "count non-overlapping occurrences only");
  motif->add_option("--centroids", rc.centroids_path,
                    "fixed shape primitives file; skips k-means");

  auto* check = app.add_subcommand("selfcheck", "run every module property suite");
  add_common(check, rc, config_sink);
  check->add_option("--seed", rc.seed, "data generation seed");
  check->add_option("--trials", rc.trials, "fuzz iterations per suite");
  check->add_flag("--break-bound", rc.break_bound, "scale one lower bound by 1.01 (must fail)");

  int code = 0;
  build->callback([&] {
    code = run_build_index(rc, frames_opt->count() > 0, coeffs_opt->count() > 0,
                           j_opt->count() > 0, err);
  });
  range->callback([&] {
    rc.erp_gap_set = erp_opt->count() > 0;
    rc.edr_tol_set = edr_opt->count() > 0;
    code = run_range_query(rc, out, err);
  });
  knnq->callback([&] {
    rc.erp_gap_set = erp_opt2->count() > 0;
    rc.edr_tol_set = edr_opt2->count() > 0;
    code = run_knn_query(rc, out, err);
  });
  tlbb->callback([&] { code = run_tlb_bench(rc, tlb_input->count() > 0, out, err); });
  wbench->callback([&] { code = run_window_bench(rc, out, err); });
  motif->callback([&] { code = run_motif_discover(rc, out, err); });
  check->callback([&] { code = run_selfcheck_cmd(rc, out, err); });

  try {
    std::vector<std::string> merged = apply_config_file(app, args);
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
    out << target->help();
    return 0;
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}

}  // namespace tsmatch
